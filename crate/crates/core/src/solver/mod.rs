//! Optimal profiles: regime dispatch, the convex arc, reflection, the band
//! family, and sweeps of the optimal value over `L`.

mod hypocycloid;
mod reduced;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use hypocycloid::hypocycloid_curve;
pub use reduced::{
    arc_height, eta_range, minimize_on_t, phi_big, psi_big, psi_on_t, solve_xi, TPoint, DIAG_EPS, PHI_TOL,
    QUAD_TOL, XTOL,
};

use crate::curve::{gamma_circle, Params, Point, Polyline};
use crate::error::{Error, Result};
use crate::kernels::g_prime;

/// Relative width of the regime boundaries.
pub const REGIME_GUARD: f64 = 1e-12;

/// Default number of arc samples in [`assemble_solution`].
///
/// With uniform sampling in the slope parameter the area error decays like
/// `m⁻²`; 8192 samples keep it below `1e-8` and the resistance within `2e-9`
/// of the reduced energy.
pub const DEFAULT_SAMPLES: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `2L < (ah) ∧ a²`: convex arc plus a vertical tail at `x = a`.
    UniqueConvex,
    /// `2L = (ah) ∧ a²`: straight segment to `(a, a ∧ h)`, then vertical.
    DegenerateAffine,
    /// `h > a` and `a² < 2L < 2ah - a²`: infinitely many optimal profiles.
    NonuniqueBand,
    /// `2L = (ah) ∨ (2ah - a²)`: point reflection of the affine case.
    DegenerateAffineReflected,
    /// `2L > (ah) ∨ (2ah - a²)`: point reflection of the convex case.
    UniqueConcaveReflected,
}

impl Regime {
    pub fn classify(params: &Params) -> Regime {
        let Params { a, h, l } = *params;
        let two_l = 2.0 * l;
        let lo = (a * h).min(a * a);
        let hi = (a * h).max(2.0 * a * h - a * a);
        if (two_l - lo).abs() <= REGIME_GUARD * lo {
            Regime::DegenerateAffine
        } else if two_l < lo {
            Regime::UniqueConvex
        } else if (two_l - hi).abs() <= REGIME_GUARD * hi {
            Regime::DegenerateAffineReflected
        } else if two_l > hi {
            Regime::UniqueConcaveReflected
        } else {
            Regime::NonuniqueBand
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Regime::UniqueConvex => "UNIQUE_CONVEX",
            Regime::DegenerateAffine => "DEGENERATE_AFFINE",
            Regime::NonuniqueBand => "NONUNIQUE_BAND",
            Regime::DegenerateAffineReflected => "DEGENERATE_AFFINE_REFLECTED",
            Regime::UniqueConcaveReflected => "UNIQUE_CONCAVE_REFLECTED",
        }
    }

    pub fn is_reflected(self) -> bool {
        matches!(self, Regime::DegenerateAffineReflected | Regime::UniqueConcaveReflected)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Solution of one instance.
///
/// In the reflected regimes `xi_star`, `eta_star` and `h_star` describe the
/// solution of the reflected problem `L' = ah - L`; the returned curve and
/// multipliers belong to the original one.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalProfile {
    pub regime: Regime,
    pub xi_star: Option<f64>,
    pub eta_star: Option<f64>,
    pub h_star: f64,
    pub f_min: f64,
    pub curve: Polyline,
    pub lambda_bar: Option<f64>,
    pub mu_bar: Option<f64>,
    pub unique: bool,
}

pub fn assemble_solution(params: &Params) -> Result<OptimalProfile> {
    assemble_solution_with(params, DEFAULT_SAMPLES)
}

/// Optimal profile with the convex arc sampled at `samples` points.
pub fn assemble_solution_with(params: &Params, samples: usize) -> Result<OptimalProfile> {
    params.validate()?;
    let regime = Regime::classify(params);
    match regime {
        Regime::UniqueConvex => convex_solution(params, samples),
        Regime::DegenerateAffine => Ok(affine_solution(params)),
        Regime::NonuniqueBand => {
            let curve = gamma_circle(params)?;
            let h_star = curve.vertices()[2].y;
            Ok(OptimalProfile {
                regime,
                xi_star: None,
                eta_star: None,
                h_star,
                f_min: params.h - params.a / 2.0,
                curve,
                lambda_bar: None,
                mu_bar: None,
                unique: false,
            })
        }
        Regime::DegenerateAffineReflected | Regime::UniqueConcaveReflected => {
            let inner = if regime == Regime::DegenerateAffineReflected {
                affine_solution(&params.reflected())
            } else {
                assemble_solution_with(&params.reflected(), samples)?
            };
            let (lambda_bar, mu_bar) = match (inner.lambda_bar, inner.mu_bar) {
                // g'(u̇(a - x)) = λ(a - x) + μ
                (Some(l), Some(m)) => (Some(-l), Some(l * params.a + m)),
                _ => (None, None),
            };
            Ok(OptimalProfile {
                regime,
                curve: inner.curve.reflect(params),
                lambda_bar,
                mu_bar,
                ..inner
            })
        }
    }
}

fn convex_solution(params: &Params, samples: usize) -> Result<OptimalProfile> {
    let tp = minimize_on_t(params)?;
    let (graph, h_star) = hypocycloid_curve(tp, params, samples)?;
    let mut v = graph.into_vertices();
    if params.h > h_star {
        v.push(Point::new(params.a, params.h));
    }
    let gx = g_prime(tp.xi);
    Ok(OptimalProfile {
        regime: Regime::UniqueConvex,
        xi_star: Some(tp.xi),
        eta_star: Some(tp.eta),
        h_star,
        f_min: psi_big(tp.xi, tp.eta, params)?,
        curve: Polyline::new(v)?,
        lambda_bar: Some((g_prime(tp.eta) - gx) / params.a),
        mu_bar: Some(gx),
        unique: true,
    })
}

fn affine_solution(params: &Params) -> OptimalProfile {
    let Params { a, h, .. } = *params;
    let top = a.min(h);
    let curve = Polyline::dedup(vec![Point::new(0.0, 0.0), Point::new(a, top), Point::new(a, h)])
        .expect("corner points are distinct");
    let slope = top / a;
    OptimalProfile {
        regime: Regime::DegenerateAffine,
        xi_star: Some(slope),
        eta_star: Some(slope),
        h_star: top,
        f_min: curve.resistance(),
        curve,
        lambda_bar: Some(0.0),
        mu_bar: Some(g_prime(slope)),
        unique: true,
    }
}

/// Optimal value and regime without sampling a curve.
pub fn fmin(params: &Params) -> Result<(Regime, f64)> {
    params.validate()?;
    let regime = Regime::classify(params);
    let value = match regime {
        Regime::UniqueConvex => {
            let tp = minimize_on_t(params)?;
            psi_big(tp.xi, tp.eta, params)?
        }
        Regime::DegenerateAffine => affine_solution(params).f_min,
        Regime::NonuniqueBand => params.h - params.a / 2.0,
        Regime::DegenerateAffineReflected => affine_solution(&params.reflected()).f_min,
        Regime::UniqueConcaveReflected => fmin(&params.reflected())?.1,
    };
    Ok((regime, value))
}

/// Least-squares fit of `g'(slope) ≈ λ x + μ` over the non-vertical segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElFit {
    pub lambda: f64,
    pub mu: f64,
    /// Largest absolute deviation from the fitted line.
    pub residual: f64,
}

/// Fits the Euler–Lagrange relation on a curve, sampling each non-vertical
/// segment at its midpoint.
pub fn el_fit(curve: &Polyline) -> Result<ElFit> {
    let v = curve.vertices();
    let span = v.iter().map(|p| p.x.abs()).fold(0.0_f64, f64::max).max(1.0);
    let samples: Vec<(f64, f64)> = v
        .windows(2)
        .filter(|w| w[1].x - w[0].x > 1e-14 * span)
        .map(|w| {
            let s = (w[1].y - w[0].y) / (w[1].x - w[0].x);
            (0.5 * (w[0].x + w[1].x), g_prime(s))
        })
        .collect();
    if samples.is_empty() {
        return Err(Error::NotApplicable("curve has no non-vertical segment".into()));
    }
    let n = samples.len() as f64;
    let mx = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let my = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|s| (s.0 - mx).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 - mx) * (s.1 - my)).sum();
    let lambda = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let mu = my - lambda * mx;
    let residual = samples
        .iter()
        .map(|&(x, y)| (y - lambda * x - mu).abs())
        .fold(0.0, f64::max);
    Ok(ElFit { lambda, mu, residual })
}

/// Euler–Lagrange residual of a solution; stores the fitted multipliers.
pub fn el_residual(profile: &mut OptimalProfile) -> Result<f64> {
    if profile.regime == Regime::NonuniqueBand {
        return Err(Error::NotApplicable(
            "the band regime has no unique multipliers".into(),
        ));
    }
    let fit = el_fit(&profile.curve)?;
    profile.lambda_bar = Some(fit.lambda);
    profile.mu_bar = Some(fit.mu);
    Ok(fit.residual)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "F_min")]
    pub f_min: f64,
    pub regime: Regime,
}

/// Environment variable capping the number of sweep threads.
pub const THREADS_ENV: &str = "EULER_PROFILE_THREADS";

/// Optimal value over a grid of areas, sorted by `L`.
///
/// Each entry is solved independently; an invalid `L` produces an error in
/// its slot without affecting the others.
pub fn fmin_sweep(a: f64, h: f64, grid: &[f64]) -> Vec<Result<SweepRow>> {
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let solve = |&l: &f64| -> Result<SweepRow> {
        let (regime, f_min) = fmin(&Params::new(a, h, l)?)?;
        Ok(SweepRow { l, f_min, regime })
    };
    let threads = std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok());
    match threads.filter(|&t| t > 0) {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| grid.par_iter().map(solve).collect()),
            Err(_) => grid.iter().map(solve).collect(),
        },
        None => grid.par_iter().map(solve).collect(),
    }
}

/// `steps` evenly spaced values from `lo` to `hi`, both included.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, h: f64, l: f64) -> Params {
        Params::new(a, h, l).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(Regime::classify(&p(3.0, 2.0, 2.0)), Regime::UniqueConvex);
        assert_eq!(Regime::classify(&p(3.0, 2.0, 3.0)), Regime::DegenerateAffine);
        assert_eq!(Regime::classify(&p(3.0, 2.0, 4.0)), Regime::UniqueConcaveReflected);
        assert_eq!(Regime::classify(&p(1.0, 2.0, 1.25)), Regime::NonuniqueBand);
        assert_eq!(Regime::classify(&p(1.0, 2.0, 0.5)), Regime::DegenerateAffine);
        assert_eq!(Regime::classify(&p(1.0, 2.0, 1.5)), Regime::DegenerateAffineReflected);
        assert_eq!(Regime::classify(&p(1.0, 1.0, 0.5)), Regime::DegenerateAffine);
        assert_eq!(Regime::UniqueConvex.tag(), "UNIQUE_CONVEX");
        let json = serde_json::to_string(&Regime::DegenerateAffineReflected).unwrap();
        assert_eq!(json, "\"DEGENERATE_AFFINE_REFLECTED\"");
    }

    #[test]
    fn band_solution() {
        let s = assemble_solution(&p(1.0, 2.0, 1.25)).unwrap();
        assert_eq!(s.f_min, 1.5);
        assert!(!s.unique);
        assert_eq!(s.curve.resistance(), 1.5);
    }

    #[test]
    fn diagonal_solution() {
        let s = assemble_solution(&p(3.0, 2.0, 3.0)).unwrap();
        assert_eq!(s.curve.len(), 2);
        assert!((s.f_min - 8.0 / 13.0).abs() < 1e-15);
    }

    #[test]
    fn convex_solution_checks() {
        let q = p(3.0, 2.0, 2.0);
        let s = assemble_solution(&q).unwrap();
        assert_eq!(s.regime, Regime::UniqueConvex);
        assert!(s.h_star < 2.0);
        assert!((s.curve.area_below(&q) - 2.0).abs() < 1e-6);
        assert!((s.curve.resistance() - s.f_min).abs() < 1e-8);
    }

    #[test]
    fn reflected_matches() {
        let q = p(3.0, 2.0, 4.0);
        let s = assemble_solution_with(&q, 512).unwrap();
        let t = assemble_solution_with(&q.reflected(), 512).unwrap();
        assert_eq!(s.f_min, t.f_min);
        assert!((s.curve.area_below(&q) - 4.0).abs() < 1e-5);
    }

    #[test]
    fn el_on_affine_is_zero() {
        let mut s = assemble_solution(&p(1.0, 1.0, 0.5)).unwrap();
        assert_eq!(el_residual(&mut s).unwrap(), 0.0);
        let mut b = assemble_solution(&p(1.0, 2.0, 1.25)).unwrap();
        assert!(matches!(el_residual(&mut b), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn sweep_sorts_and_reports() {
        let rows = fmin_sweep(1.0, 1.0, &[0.5, 0.25, 2.0]);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].as_ref().unwrap().l, 0.25);
        assert_eq!(rows[1].as_ref().unwrap().regime, Regime::DegenerateAffine);
        assert!(rows[2].is_err());
    }

    #[test]
    fn linspace_inclusive() {
        assert_eq!(linspace(0.1, 5.9, 59).len(), 59);
        assert_eq!(*linspace(0.1, 5.9, 59).last().unwrap(), 5.9);
        assert_eq!(linspace(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
    }
}

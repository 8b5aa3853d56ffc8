//! Independent numerical check of the optimal value.
//!
//! [`minimize_relaxed`] solves the discretized relaxed problem, a convex
//! program over monotone grid functions. [`anneal_original`] searches the
//! unrelaxed functional directly over x-monotone polylines.

mod anneal;
pub mod projection;

use serde::Serialize;

pub use anneal::anneal_original;

use crate::curve::Params;
use crate::error::{Error, Result};
use crate::fmt::{serialize_g17, serialize_g17_seq};
use crate::grid::GridFunction;
use crate::kernels::{psi, psi_prime};
use projection::{project, trapezoid_weights};

/// Upper bound on `ψ''` used for the gradient step.
const PSI_LIP: f64 = 6.0;
pub const MAX_ITERATIONS: usize = 100_000;
/// Default stationarity tolerance of [`minimize_relaxed`], in units of the
/// energy density. The gradient mapping stalls near `1e-6` in floating point.
pub const DEFAULT_TOL: f64 = 1e-5;

/// `h + Σ Δx ψ(slope)`. The end gaps `u₀` and `h - u_n` count as vertical
/// jumps through the identity `Σ Δx·slope = u_n - u₀`.
pub fn relaxed_energy(u: &GridFunction, params: &Params) -> Result<f64> {
    if !u.is_monotone() {
        return Err(Error::Domain("relaxed energy needs a nondecreasing grid function".into()));
    }
    Ok(energy(&u.values, u.dx(), params.h))
}

fn energy(u: &[f64], dx: f64, h: f64) -> f64 {
    h + u.windows(2).map(|w| dx * psi((w[1] - w[0]) / dx)).sum::<f64>()
}

fn gradient(u: &[f64], dx: f64, out: &mut [f64]) {
    out.iter_mut().for_each(|g| *g = 0.0);
    for i in 0..u.len() - 1 {
        let d = psi_prime((u[i + 1] - u[i]) / dx);
        out[i] -= d;
        out[i + 1] += d;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    #[serde(serialize_with = "serialize_g17")]
    pub f_min: f64,
    pub iterations: usize,
    pub converged: bool,
    #[serde(serialize_with = "serialize_g17")]
    pub area_error: f64,
    #[serde(rename = "u", serialize_with = "serialize_grid")]
    pub u: GridFunction,
}

fn serialize_grid<S: serde::Serializer>(u: &GridFunction, s: S) -> std::result::Result<S::Ok, S::Error> {
    serialize_g17_seq(&u.values, s)
}

/// Minimizes the relaxed energy on `n` cells.
///
/// Accelerated projected gradient with adaptive restart; the projection is
/// exact. Stops when the gradient mapping, scaled to a per-length density,
/// drops below `tol`.
pub fn minimize_relaxed(params: &Params, n: usize, tol: f64) -> Result<OracleResult> {
    params.validate()?;
    if n < 16 {
        return Err(Error::InvalidInput(format!("need at least 16 cells, got {n}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let Params { a, h, l } = *params;
    let dx = a / n as f64;
    let w = trapezoid_weights(n, dx);
    let step = 0.5 * dx / PSI_LIP;
    let mut theta = 0.0;

    let start: Vec<f64> = (0..=n).map(|i| l / a + 1e-3 * h * (i as f64 / n as f64 - 0.5)).collect();
    let mut u = project(&start, &w, h, l, &mut theta);
    let mut e = energy(&u, dx, h);
    let mut y = u.clone();
    let mut t = 1.0_f64;
    let mut grad = vec![0.0; n + 1];
    let mut trial = vec![0.0; n + 1];

    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        gradient(&y, dx, &mut grad);
        for i in 0..=n {
            trial[i] = y[i] - step * grad[i];
        }
        let next = project(&trial, &w, h, l, &mut theta);
        let mapping = next
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
            / (step * dx);
        let e_next = energy(&next, dx, h);

        if e_next > e {
            // restart the momentum from the last iterate
            y.clone_from(&u);
            t = 1.0;
            continue;
        }
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let beta = (t - 1.0) / t_next;
        for i in 0..=n {
            y[i] = next[i] + beta * (next[i] - u[i]);
        }
        u = next;
        e = e_next;
        t = t_next;
        if mapping < tol {
            converged = true;
            break;
        }
    }

    let area_error = (w.iter().zip(&u).map(|(a, b)| a * b).sum::<f64>() - l).abs();
    Ok(OracleResult {
        f_min: e,
        iterations,
        converged: converged && area_error <= 1e-9,
        area_error,
        u: GridFunction::new(a, u)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_examples() {
        let q = Params::new(3.0, 2.0, 3.0).unwrap();
        let diag = GridFunction::from_fn(3.0, 30, |x| 2.0 * x / 3.0).unwrap();
        assert!((relaxed_energy(&diag, &q).unwrap() - 8.0 / 13.0).abs() < 1e-14);
        let flat = GridFunction::new(3.0, vec![0.0; 31]).unwrap();
        assert_eq!(relaxed_energy(&flat, &q).unwrap(), 2.0);

        let b = Params::new(1.0, 2.0, 1.0).unwrap();
        let ramp = GridFunction::from_fn(1.0, 20, |x| 0.5 + x).unwrap();
        assert!((relaxed_energy(&ramp, &b).unwrap() - 1.5).abs() < 1e-14);
    }

    #[test]
    fn energy_rejects_decreasing() {
        let q = Params::new(1.0, 1.0, 0.5).unwrap();
        let u = GridFunction::new(1.0, vec![0.0, 0.6, 0.4, 1.0]).unwrap();
        assert!(matches!(relaxed_energy(&u, &q), Err(Error::Domain(_))));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let u = vec![0.0, 0.1, 0.35, 0.5, 0.9, 1.6];
        let dx = 0.4;
        let mut g = vec![0.0; 6];
        gradient(&u, dx, &mut g);
        for j in 0..6 {
            let (mut up, mut dn) = (u.clone(), u.clone());
            up[j] += 1e-6;
            dn[j] -= 1e-6;
            let fd = (energy(&up, dx, 2.0) - energy(&dn, dx, 2.0)) / 2e-6;
            assert!((fd - g[j]).abs() < 1e-6);
        }
    }

    #[test]
    fn small_band_instance() {
        let q = Params::new(1.0, 2.0, 1.25).unwrap();
        let r = minimize_relaxed(&q, 40, DEFAULT_TOL).unwrap();
        assert!((r.f_min - 1.5).abs() < 1e-3, "{}", r.f_min);
        assert!(r.area_error <= 1e-9);
    }
}

//! The two-variable reduction: energy `Ψ(ξ,η)` and area `Φ(ξ,η)` of the
//! convex arc whose slope runs from `ξ` at `x = 0` to `η` at `x = a`.

use serde::{Deserialize, Serialize};

use super::Regime;
use crate::curve::Params;
use crate::error::{Error, Result};
use crate::kernels::{g, g_prime};
use crate::numeric::{adaptive_simpson, bisect_increasing, golden_section};

/// Below this gap the ratio integrands are 0/0 and the diagonal forms are used.
pub const DIAG_EPS: f64 = 1e-7;
/// Absolute tolerance of every quadrature.
pub const QUAD_TOL: f64 = 1e-11;
/// Argument tolerance of every bisection.
pub const XTOL: f64 = 1e-12;
/// Slack allowed when checking that a bracket contains the target area.
pub const PHI_TOL: f64 = 1e-10;

const SCAN_POINTS: usize = 256;
const ETA_WIDTH: f64 = 1e-10;

/// A point of the constraint set `{0 ≤ ξ ≤ η ≤ 1, Φ(ξ,η) = L}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TPoint {
    pub xi: f64,
    pub eta: f64,
}

fn check_domain(xi: f64, eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&xi) && (0.0..=1.0).contains(&eta) && xi <= eta {
        Ok(())
    } else {
        Err(Error::Domain(format!("need 0 <= xi <= eta <= 1, got xi = {xi}, eta = {eta}")))
    }
}

pub fn psi_big(xi: f64, eta: f64, params: &Params) -> Result<f64> {
    check_domain(xi, eta)?;
    let Params { a, h, .. } = *params;
    if eta - xi < DIAG_EPS {
        return Ok(h - a * xi / (1.0 + xi * xi));
    }
    let (gx, d) = (g_prime(xi), g_prime(eta) - g_prime(xi));
    let q = adaptive_simpson(
        |t| {
            let tt = 1.0 + t * t;
            (1.0 - t * t) / (tt * tt) * (g_prime(t) - gx) / d
        },
        xi,
        eta,
        QUAD_TOL,
    );
    Ok(h + a * q - a * eta / (1.0 + eta * eta))
}

pub fn phi_big(xi: f64, eta: f64, params: &Params) -> Result<f64> {
    check_domain(xi, eta)?;
    Ok(phi_unchecked(xi, eta, params.a))
}

fn phi_unchecked(xi: f64, eta: f64, a: f64) -> f64 {
    let a2 = a * a;
    if eta - xi < DIAG_EPS {
        return 0.5 * a2 * xi;
    }
    let (ge, d) = (g_prime(eta), g_prime(eta) - g_prime(xi));
    let q = adaptive_simpson(
        |t| {
            let r = (ge - g_prime(t)) / d;
            r * r
        },
        xi,
        eta,
        QUAD_TOL,
    );
    0.5 * a2 * xi + 0.5 * a2 * q
}

/// The `ξ ∈ [0, η]` with `Φ(ξ, η) = L`.
///
/// `Φ(·, η)` is strictly increasing, so a root exists iff
/// `Φ(0, η) ≤ L ≤ a²η/2`.
pub fn solve_xi(eta: f64, params: &Params) -> Result<f64> {
    check_domain(0.0, eta)?;
    let (a, l) = (params.a, params.l);
    let at_zero = phi_unchecked(0.0, eta, a) - l;
    let at_diag = 0.5 * a * a * eta - l;
    if at_zero > PHI_TOL || at_diag < -PHI_TOL {
        return Err(Error::InfeasibleEta { eta });
    }
    if at_zero >= 0.0 {
        return Ok(0.0);
    }
    if at_diag <= 0.0 {
        return Ok(eta);
    }
    Ok(bisect_increasing(|xi| phi_unchecked(xi, eta, a) - l, 0.0, eta, XTOL))
}

/// Feasible `η` range `[2L/a², η_max]`.
pub fn eta_range(params: &Params) -> (f64, f64) {
    let (a, l) = (params.a, params.l);
    let lo = (2.0 * l / (a * a)).min(1.0);
    let hi = if phi_unchecked(0.0, 1.0, a) <= l {
        1.0
    } else {
        bisect_increasing(|eta| phi_unchecked(0.0, eta, a) - l, lo, 1.0, XTOL)
    };
    (lo, hi.max(lo))
}

/// Height `y(η)` reached by the arc at `x = a`.
///
/// Integrating `y' = τ x'` by parts gives
/// `aη - a (g(η) - g(ξ) - g'(ξ)(η - ξ)) / (g'(η) - g'(ξ))`.
pub fn arc_height(xi: f64, eta: f64, params: &Params) -> Result<f64> {
    check_domain(xi, eta)?;
    let a = params.a;
    if eta - xi < DIAG_EPS {
        return Ok(a * eta);
    }
    let gx = g_prime(xi);
    Ok(a * eta - a * (g(eta) - g(xi) - gx * (eta - xi)) / (g_prime(eta) - gx))
}

/// `Ψ(ξ(η), η)` along the constraint set.
pub fn psi_on_t(eta: f64, params: &Params) -> Result<(f64, f64)> {
    let xi = solve_xi(eta, params)?;
    Ok((xi, psi_big(xi, eta, params)?))
}

/// Minimizer of `Ψ` on the constraint set, among arcs that stay below `h`.
///
/// Only defined for `0 < 2L ≤ (ah) ∧ a²`. On the boundary the minimizer is
/// the diagonal point `2L/a²`. Otherwise `η` is scanned over its feasible
/// range and the best bracket refined by golden-section search.
///
/// For `h < a` and `2L` close to `ah` the unconstrained minimizer ends above
/// `h`; the height bound is then active and the arc ends exactly at `(a,h)`.
/// The diagonal end `η = 2L/a²` ends at height `2L/a < h`, so some scanned
/// point is always admissible.
pub fn minimize_on_t(params: &Params) -> Result<TPoint> {
    params.validate()?;
    match Regime::classify(params) {
        Regime::DegenerateAffine => {
            let d = (2.0 * params.l / (params.a * params.a)).min(1.0);
            return Ok(TPoint { xi: d, eta: d });
        }
        Regime::UniqueConvex => {}
        other => {
            return Err(Error::Regime(format!(
                "minimization on T needs 2L <= min(ah, a^2); parameters are in {}",
                other.tag()
            )))
        }
    }

    let h = params.h;
    let (lo, hi) = eta_range(params);
    // height above h, or +inf where no ξ exists
    let excess = |eta: f64| -> f64 {
        solve_xi(eta, params)
            .and_then(|xi| arc_height(xi, eta, params))
            .map(|y| y - h)
            .unwrap_or(f64::INFINITY)
    };
    let objective = |eta: f64| -> f64 {
        match psi_on_t(eta, params) {
            Ok((xi, v)) if arc_height(xi, eta, params).is_ok_and(|y| y <= h) => v,
            _ => f64::INFINITY,
        }
    };

    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let etas: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| if i == SCAN_POINTS - 1 { hi } else { lo + i as f64 * step })
        .collect();
    let (best, best_val) = etas
        .iter()
        .map(|&e| objective(e))
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    if !best_val.is_finite() {
        return Err(Error::Regime("no admissible arc on the constraint set".into()));
    }

    // shrink each side of the bracket to the admissible part
    let mut left = etas[best.saturating_sub(1)];
    let mut right = etas[(best + 1).min(SCAN_POINTS - 1)];
    let centre = etas[best];
    if excess(left) > 0.0 {
        left = admissible_edge(&excess, centre, left);
    }
    if excess(right) > 0.0 {
        right = admissible_edge(&excess, centre, right);
    }
    let (eta, _) = golden_section(objective, left, right, ETA_WIDTH);
    let xi = solve_xi(eta, params)?;
    Ok(TPoint { xi, eta })
}

/// Last admissible point between `inside` (excess ≤ 0) and `outside`.
fn admissible_edge(excess: &impl Fn(f64) -> f64, mut inside: f64, mut outside: f64) -> f64 {
    while (outside - inside).abs() > XTOL {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if excess(mid) <= 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    inside
}

//! Sampling of the convex optimal arc, parametrized by its slope `τ`.
//!
//! `x(τ) = a (g'(τ) - g'(ξ)) / (g'(η) - g'(ξ))` and `y' = τ x'`, so the slope
//! of the graph at parameter `τ` is `τ` itself.

use super::reduced::{TPoint, DIAG_EPS, QUAD_TOL};
use crate::curve::{Params, Point, Polyline};
use crate::error::{Error, Result};
use crate::kernels::{g_prime, g_second};
use crate::numeric::adaptive_simpson;

/// Graph of the arc sampled at `m` uniform values of `τ` in `[ξ, η]`.
///
/// Returns the polyline from `(0,0)` to `(a, h*)` and `h*`. The vertical
/// tail up to `(a,h)` is not included.
pub fn hypocycloid_curve(tp: TPoint, params: &Params, m: usize) -> Result<(Polyline, f64)> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 samples, got {m}")));
    }
    if tp.eta - tp.xi < DIAG_EPS {
        return Err(Error::Degenerate);
    }
    let a = params.a;
    let (xi, eta) = (tp.xi, tp.eta);
    let gx = g_prime(xi);
    let d = g_prime(eta) - gx;
    let dtau = (eta - xi) / (m - 1) as f64;
    let piece_tol = QUAD_TOL / m as f64;

    let mut v = Vec::with_capacity(m);
    v.push(Point::new(0.0, 0.0));
    let mut y = 0.0;
    let mut prev = xi;
    for k in 1..m {
        let tau = if k == m - 1 { eta } else { xi + k as f64 * dtau };
        y += adaptive_simpson(|s| s * a * g_second(s) / d, prev, tau, piece_tol);
        let x = if k == m - 1 { a } else { a * (g_prime(tau) - gx) / d };
        v.push(Point::new(x, y));
        prev = tau;
    }
    let h_star = y;
    Ok((Polyline::new(v)?, h_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::g;

    const TP: TPoint = TPoint { xi: 0.2, eta: 0.95 };

    fn params() -> Params {
        Params::new(3.0, 2.0, 2.0).unwrap()
    }

    #[test]
    fn endpoints_and_monotone_x() {
        let (c, h_star) = hypocycloid_curve(TP, &params(), 200).unwrap();
        assert_eq!(c.first(), Point::new(0.0, 0.0));
        assert_eq!(c.last().x, 3.0);
        assert_eq!(c.last().y, h_star);
        assert!(c.vertices().windows(2).all(|w| w[1].x > w[0].x));
    }

    #[test]
    fn height_matches_integration_by_parts() {
        // y(τ) = τ x(τ) - a (g(τ) - g(ξ) - g'(ξ)(τ - ξ)) / d
        let (xi, eta) = (TP.xi, TP.eta);
        let d = g_prime(eta) - g_prime(xi);
        let exact = |tau: f64| {
            let x = 3.0 * (g_prime(tau) - g_prime(xi)) / d;
            tau * x - 3.0 * (g(tau) - g(xi) - g_prime(xi) * (tau - xi)) / d
        };
        let (c, h_star) = hypocycloid_curve(TP, &params(), 50).unwrap();
        assert!((h_star - exact(eta)).abs() < 1e-12);
        for (k, p) in c.vertices().iter().enumerate() {
            let tau = xi + k as f64 * (eta - xi) / 49.0;
            assert!((p.y - exact(tau)).abs() < 1e-12);
        }
    }

    #[test]
    fn chord_slope_tracks_parameter() {
        let m = 400;
        let (c, _) = hypocycloid_curve(TP, &params(), m).unwrap();
        let dtau = (TP.eta - TP.xi) / (m - 1) as f64;
        for (k, (dx, dy)) in c.increments().enumerate() {
            let mid = TP.xi + (k as f64 + 0.5) * dtau;
            assert!((dy / dx - mid).abs() < 10.0 * dtau * dtau);
        }
    }

    #[test]
    fn diagonal_is_degenerate() {
        let tp = TPoint { xi: 0.5, eta: 0.5 };
        assert!(matches!(hypocycloid_curve(tp, &params(), 10), Err(Error::Degenerate)));
    }
}

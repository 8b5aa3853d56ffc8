//! Slope-energy densities.
//!
//! A graph `y = u(x)` with slope `z` pays `g(z) = z₊³ / (1 + z²)` per unit of
//! horizontal length. `g` is not convex (it is asymptotically affine with
//! slope 1), and its convex envelope `g_star` replaces it by the tangent line
//! `z - 1/2` from `z = 1` on. `psi = g_star - id` is the integrand of the
//! relaxed energy once the boundary jumps have been folded in.

/// `z₊³ / (1 + z²)`.
#[inline]
pub fn g(z: f64) -> f64 {
    if z <= 0.0 {
        0.0
    } else {
        z * z * z / (1.0 + z * z)
    }
}

/// Closed-form derivative of [`g`]: `z²(z² + 3) / (1 + z²)²` for `z ≥ 0`.
#[inline]
pub fn g_prime(z: f64) -> f64 {
    if z <= 0.0 {
        0.0
    } else {
        let z2 = z * z;
        let d = 1.0 + z2;
        z2 * (z2 + 3.0) / (d * d)
    }
}

/// Closed-form second derivative of [`g`]: `2z(3 - z²) / (1 + z²)³` for `z ≥ 0`.
#[inline]
pub fn g_second(z: f64) -> f64 {
    if z <= 0.0 {
        0.0
    } else {
        let z2 = z * z;
        let d = 1.0 + z2;
        2.0 * z * (3.0 - z2) / (d * d * d)
    }
}

/// Convex envelope of [`g`].
///
/// Both branches give `1/2` at `z = 1`; the affine branch is used there.
#[inline]
pub fn g_star(z: f64) -> f64 {
    if z < 1.0 {
        g(z)
    } else {
        z - 0.5
    }
}

/// Derivative of [`g_star`]. Continuous: `g'(1) = 1`.
#[inline]
pub fn g_star_prime(z: f64) -> f64 {
    if z < 1.0 {
        g_prime(z)
    } else {
        1.0
    }
}

/// `g_star(z) - z`: `-z` for `z ≤ 0`, `-z / (1 + z²)` on `[0, 1]`, `-1/2` beyond.
#[inline]
pub fn psi(z: f64) -> f64 {
    g_star(z) - z
}

/// Derivative of [`psi`].
#[inline]
pub fn psi_prime(z: f64) -> f64 {
    g_star_prime(z) - 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central(f: impl Fn(f64) -> f64, z: f64, step: f64) -> f64 {
        (f(z + step) - f(z - step)) / (2.0 * step)
    }

    #[test]
    fn g_values() {
        assert_eq!(g(1.0), 0.5);
        assert_eq!(g(-3.0), 0.0);
        assert!((g(0.5) - 0.1).abs() < 1e-16);
    }

    #[test]
    fn g_prime_values_against_finite_differences() {
        assert_eq!(g_prime(0.0), 0.0);
        let fd1 = central(g, 1.0, 1e-6);
        assert!((fd1 - 1.0).abs() < 1e-8, "fd = {fd1}");
        assert!((g_prime(1.0) - fd1).abs() < 1e-8);
        let fd_half = central(g, 0.5, 1e-6);
        assert!((fd_half - 0.52).abs() < 1e-8, "fd = {fd_half}");
        assert!((g_prime(0.5) - 0.52).abs() < 1e-15);
    }

    #[test]
    fn g_second_values() {
        assert_eq!(g_second(0.0), 0.0);
        let fd = central(g_prime, 1.0, 1e-6);
        assert!((fd - 0.5).abs() < 1e-8);
        assert!((g_second(1.0) - 0.5).abs() < 1e-15);
        assert!(g_second(0.9) > 0.0);
    }

    #[test]
    fn g_star_branches() {
        assert!((g_star(0.5) - 0.1).abs() < 1e-16);
        assert_eq!(g_star(2.0), 1.5);
        assert_eq!(g_star(-1.0), 0.0);
        assert_eq!(g_star(1.0), g(1.0));
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(0.0), 0.0);
        assert_eq!(psi(1.0), -0.5);
        assert_eq!(psi(3.0), -0.5);
        assert_eq!(psi(-2.0), 2.0);
    }

    #[test]
    fn psi_strictly_decreasing_on_unit_interval() {
        let mut prev = psi(0.0);
        for i in 1..=1000 {
            let z = i as f64 / 1000.0;
            let v = psi(z);
            assert!(v < prev, "psi not decreasing at {z}");
            prev = v;
        }
    }

    #[test]
    fn derivatives_match_finite_differences_on_unit_interval() {
        for i in 1..100 {
            let z = i as f64 / 100.0;
            assert!((g_prime(z) - central(g, z, 1e-5)).abs() < 1e-6);
            assert!((g_second(z) - central(g_prime, z, 1e-5)).abs() < 1e-6);
            assert!((psi_prime(z) - central(psi, z, 1e-5)).abs() < 1e-6);
        }
    }

    #[test]
    fn g_prime_nondecreasing_on_unit_interval() {
        let mut prev = g_prime(0.0);
        for i in 1..=1000 {
            let v = g_prime(i as f64 / 1000.0);
            assert!(v >= prev);
            prev = v;
        }
    }
}

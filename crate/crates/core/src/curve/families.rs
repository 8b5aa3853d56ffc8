//! Explicit curve constructions: test curves, the sawtooth minimizing
//! sequence, band solutions, staircase maximizers and seeded random curves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Params, Point, Polyline};
use crate::error::{Error, Result};
use crate::solver::Regime;

/// Parameters of the sawtooth construction: `a = h = 1/2`, `L = 1/8`.
pub const SAWTOOTH_PARAMS: Params = Params { a: 0.5, h: 0.5, l: 0.125 };

const SPEC_TOL: f64 = 1e-12;
const AREA_TOL: f64 = 1e-9;

/// Two-segment curve `(0,0) → (0,r) → (a,h)`.
pub fn test_curve_r(params: &Params, r: f64) -> Result<Polyline> {
    if !(0.0..=params.h).contains(&r) {
        return Err(Error::InvalidInput(format!("r = {r} outside [0, {}]", params.h)));
    }
    Polyline::dedup(vec![
        Point::new(0.0, 0.0),
        Point::new(0.0, r),
        Point::new(params.a, params.h),
    ])
}

/// The `n`-tooth curve in the `1/2 × 1/2` box enclosing area `1/8`.
///
/// `n` strokes run right across the whole box while rising `1/(2n)`; between
/// them `n - 1` flat strokes run back to `x = 0`. The curve is simple but not
/// x-monotone, and its resistance `1/(2(n²+1))` tends to zero.
pub fn sawtooth_counterexample(n: usize) -> Result<Polyline> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("sawtooth needs n >= 2, got {n}")));
    }
    let half = 0.5;
    let rise = |j: usize| j as f64 / (2 * n) as f64;
    let mut v = Vec::with_capacity(2 * n);
    v.push(Point::new(0.0, 0.0));
    for j in 1..n {
        v.push(Point::new(half, rise(j)));
        v.push(Point::new(0.0, rise(j)));
    }
    v.push(Point::new(half, half));
    Polyline::new(v)
}

/// Canonical band solution through `(0,0)`, `(0,p)`, `(a,p+a)`, `(a,h)` with
/// `p = L/a - a/2`.
pub fn gamma_circle(params: &Params) -> Result<Polyline> {
    require_band(params)?;
    let Params { a, h, l } = *params;
    let p = l / a - a / 2.0;
    Polyline::new(vec![
        Point::new(0.0, 0.0),
        Point::new(0.0, p),
        Point::new(a, p + a),
        Point::new(a, h),
    ])
}

fn require_band(params: &Params) -> Result<()> {
    params.validate()?;
    match Regime::classify(params) {
        Regime::NonuniqueBand => Ok(()),
        other => Err(Error::Regime(format!(
            "band construction needs h > a and a^2 < 2L < 2ah - a^2; parameters are in {}",
            other.tag()
        ))),
    }
}

/// Validates a band profile given by its interior vertices.
///
/// Every step must be vertical or have slope exactly 1, every vertex must lie
/// in `{x ≤ y ≤ h - a + x}`, and the enclosed area must equal `L`. Nothing is
/// repaired: the first violation is reported with its vertex index (counted
/// in the full list, endpoints included).
pub fn nonunique_profile(params: &Params, interior: &[Point]) -> Result<Polyline> {
    require_band(params)?;
    let Params { a, h, l } = *params;
    let scale = a.max(h);
    let tol = SPEC_TOL * scale;

    let mut v = Vec::with_capacity(interior.len() + 2);
    v.push(Point::new(0.0, 0.0));
    v.extend_from_slice(interior);
    v.push(Point::new(a, h));

    for (i, p) in v.iter().enumerate() {
        if !(p.x.is_finite() && p.y.is_finite()) {
            return Err(spec_err(i, "non-finite coordinates"));
        }
        if p.x < -tol || p.x > a + tol {
            return Err(spec_err(i, format!("x = {} outside [0, {a}]", p.x)));
        }
        if p.y < p.x - tol || p.y > h - a + p.x + tol {
            return Err(spec_err(i, format!("({}, {}) outside the region x <= y <= h - a + x", p.x, p.y)));
        }
    }

    let mut doubled_area = 0.0;
    for i in 1..v.len() {
        let (dx, dy) = (v[i].x - v[i - 1].x, v[i].y - v[i - 1].y);
        if dx.abs() <= tol {
            if dy <= tol {
                return Err(spec_err(i, format!("vertical step must rise, got dy = {dy}")));
            }
        } else if dx < 0.0 {
            return Err(spec_err(i, format!("x decreases by {}", -dx)));
        } else {
            if (dy - dx).abs() > tol {
                return Err(spec_err(i, format!("slope {} is neither vertical nor 1", dy / dx)));
            }
            doubled_area += (v[i].y + v[i - 1].y) * dx;
        }
    }
    let area = 0.5 * doubled_area;
    if (area - l).abs() > AREA_TOL {
        return Err(spec_err(
            v.len() - 1,
            format!("enclosed area {area} differs from L = {l}"),
        ));
    }
    Polyline::new(v)
}

fn spec_err(index: usize, reason: impl Into<String>) -> Error {
    Error::InvalidSpec { index, reason: reason.into() }
}

/// Random band profile with `k` slope-1 runs; always passes [`nonunique_profile`].
///
/// The vertical rises are drawn at random and then mixed linearly with the
/// extreme layout (all rise at `x = 0`, or all at `x = a`) until the area
/// matches `L`; the area is affine in the rises, so the mix is exact.
pub fn random_nonunique(params: &Params, k: usize, seed: u64) -> Result<Polyline> {
    require_band(params)?;
    if k == 0 {
        return Err(Error::InvalidInput("need at least one slope-1 run".into()));
    }
    let Params { a, h, l } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut cuts: Vec<f64> = (0..k - 1).map(|_| rng.random::<f64>() * a).collect();
    cuts.sort_by(f64::total_cmp);
    // rise i happens at x = starts[i]
    let mut starts = Vec::with_capacity(k + 1);
    starts.push(0.0);
    starts.extend(cuts);
    starts.push(a);

    let total = h - a;
    let weights: Vec<f64> = (0..=k).map(|_| rng.random::<f64>() + 1e-3).collect();
    let wsum: f64 = weights.iter().sum();
    let random_rises: Vec<f64> = weights.iter().map(|w| total * w / wsum).collect();
    let area_of = |rises: &[f64]| {
        0.5 * a * a + rises.iter().zip(&starts).map(|(r, x)| r * (a - x)).sum::<f64>()
    };
    let area_rand = area_of(&random_rises);
    let mut extreme = vec![0.0; k + 1];
    if l > area_rand {
        extreme[0] = total;
    } else {
        extreme[k] = total;
    }
    let area_ext = area_of(&extreme);
    let theta = if (area_ext - area_rand).abs() > 0.0 {
        ((l - area_rand) / (area_ext - area_rand)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let rises: Vec<f64> = random_rises
        .iter()
        .zip(&extreme)
        .map(|(r, e)| (1.0 - theta) * r + theta * e)
        .collect();

    let mut v = vec![Point::new(0.0, 0.0)];
    let mut y = 0.0;
    for i in 0..k {
        y += rises[i];
        v.push(Point::new(starts[i], y));
        let run = starts[i + 1] - starts[i];
        y += run;
        v.push(Point::new(starts[i + 1], y));
    }
    // final rise closes exactly at (a, h)
    if (h - y).abs() <= SPEC_TOL * a.max(h) {
        v.pop();
    }
    v.push(Point::new(a, h));
    v.dedup();
    let interior = &v[1..v.len() - 1];
    nonunique_profile(params, interior)
}

/// Monotone staircase of `k` horizontal treads joined by vertical risers.
///
/// Every tread contributes nothing and every riser contributes its height, so
/// the resistance is `h` whatever the layout. Tread levels are blended toward
/// `0` or `h` until the area is `L`.
pub fn staircase_maximizer(params: &Params, k: usize, seed: u64) -> Result<Polyline> {
    params.validate()?;
    if k < 2 {
        return Err(Error::InvalidInput(format!("staircase needs k >= 2 treads, got {k}")));
    }
    let Params { a, h, .. } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (0..k - 1).map(|_| a * rng.random_range(0.05..0.95)).collect();
    xs.sort_by(f64::total_cmp);
    let mut levels: Vec<f64> = (0..k).map(|_| h * rng.random_range(0.05..0.95)).collect();
    levels.sort_by(f64::total_cmp);

    let mut v = vec![Point::new(0.0, 0.0)];
    let mut x_prev = 0.0;
    for (j, &y) in levels.iter().enumerate() {
        let x_next = if j + 1 < k { xs[j] } else { a };
        v.push(Point::new(x_prev, y));
        v.push(Point::new(x_next, y));
        x_prev = x_next;
    }
    v.push(Point::new(a, h));
    blend_to_area(&mut v, params)?;
    Polyline::dedup(v)
}

/// Random curve in the doubly monotone class with `k` interior vertices.
pub fn random_monotone(params: &Params, k: usize, seed: u64) -> Result<Polyline> {
    params.validate()?;
    if k == 0 {
        return Err(Error::InvalidInput("need at least one interior vertex".into()));
    }
    let Params { a, h, l } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<f64> = (0..k).map(|_| a * rng.random_range(1e-3..1.0)).collect();
    let mut ys: Vec<f64> = (0..k).map(|_| h * rng.random_range(1e-3..1.0)).collect();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);

    // The blend reaches areas in ((a - x_k) h / 2, a h - x_1 h / 2); open the
    // range with a vertical first or last segment when L falls outside it.
    let cushion = 1e-6 * a * h;
    if l <= (a - xs[k - 1]) * h / 2.0 + cushion {
        xs[k - 1] = a;
    }
    if l >= a * h - xs[0] * h / 2.0 - cushion {
        xs[0] = 0.0;
    }

    let mut v = Vec::with_capacity(k + 2);
    v.push(Point::new(0.0, 0.0));
    v.extend(xs.iter().zip(&ys).map(|(&x, &y)| Point::new(x, y)));
    v.push(Point::new(a, h));
    blend_to_area(&mut v, params)?;
    Polyline::dedup(v)
}

/// Trapezoid area of an x-monotone vertex list.
pub(crate) fn trapezoid_area(v: &[Point]) -> f64 {
    v.windows(2).map(|w| 0.5 * (w[1].x - w[0].x) * (w[0].y + w[1].y)).sum()
}

/// Moves the interior vertices vertically, `y ↦ (1-|σ|) y + σ₊ h`, with `σ`
/// found by bisection so the trapezoid area equals `params.l`.
///
/// The endpoints stay put. For x-monotone lists the area is increasing in
/// `σ`. Returns the `σ` used.
pub(crate) fn blend_to_area(v: &mut [Point], params: &Params) -> Result<f64> {
    let n = v.len();
    if n < 3 {
        return Err(Error::InvalidInput("area matching needs an interior vertex".into()));
    }
    let base: Vec<f64> = v.iter().map(|p| p.y).collect();
    let h = params.h;
    let target = params.l;
    let mut scratch = v.to_vec();
    let area_at = |sigma: f64, out: &mut [Point]| {
        for i in 1..n - 1 {
            out[i].y = (1.0 - sigma.abs()) * base[i] + sigma.max(0.0) * h;
        }
        trapezoid_area(out)
    };
    let lo_area = area_at(-1.0, &mut scratch);
    let hi_area = area_at(1.0, &mut scratch);
    if !(lo_area <= target && target <= hi_area) {
        return Err(Error::InvalidInput(format!(
            "area {target} not reachable by blending; range is [{lo_area}, {hi_area}]"
        )));
    }
    let tol = 1e-13 * params.box_area().max(1.0);
    let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
    let mut sigma = 0.0;
    for _ in 0..200 {
        sigma = 0.5 * (lo + hi);
        let area = area_at(sigma, &mut scratch);
        if (area - target).abs() <= tol || hi - lo < 1e-17 {
            break;
        }
        if area < target {
            lo = sigma;
        } else {
            hi = sigma;
        }
    }
    area_at(sigma, v);
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, h: f64, l: f64) -> Params {
        Params::new(a, h, l).unwrap()
    }

    #[test]
    fn test_curve_energies() {
        let params = p(3.0, 2.0, 3.0);
        let c0 = test_curve_r(&params, 0.0).unwrap();
        assert!((c0.resistance() - 8.0 / 13.0).abs() < 1e-15);
        let ch = test_curve_r(&params, 2.0).unwrap();
        assert!((ch.resistance() - 2.0).abs() < 1e-15);
        assert!(test_curve_r(&params, 2.5).is_err());
        assert!(test_curve_r(&params, -0.1).is_err());

        // h > a: r* = h - a gives h - a/2
        let params = p(2.0, 3.0, 3.0);
        let c = test_curve_r(&params, 1.0).unwrap();
        assert!((c.resistance() - 2.0).abs() < 1e-15);
        for i in 0..=20 {
            let r = 3.0 * i as f64 / 20.0;
            let closed = r + (3.0 - r).powi(3) / (4.0 + (3.0 - r).powi(2));
            let c = test_curve_r(&params, r).unwrap();
            assert!((c.resistance() - closed).abs() < 1e-15);
        }
    }

    #[test]
    fn sawtooth_energy_and_area() {
        for n in [2usize, 4, 16, 64] {
            let c = sawtooth_counterexample(n).unwrap();
            let expect = 1.0 / (2.0 * ((n * n) as f64 + 1.0));
            assert!((c.resistance() - expect).abs() < 1e-15, "n = {n}");
            assert_eq!(c.area_below(&SAWTOOTH_PARAMS), 0.125);
            let rep = c.check_admissible(&SAWTOOTH_PARAMS, 1e-12);
            assert!(!rep.x_monotone);
            assert!(rep.endpoints_ok && rep.in_box);
        }
        assert!((sawtooth_counterexample(4).unwrap().resistance() - 1.0 / 34.0).abs() < 1e-15);
        assert!(sawtooth_counterexample(1).is_err());
    }

    #[test]
    fn sawtooth_resistance_decreases() {
        let vals: Vec<f64> = (2..20).map(|n| sawtooth_counterexample(n).unwrap().resistance()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn gamma_circle_examples() {
        let params = p(1.0, 2.0, 1.25);
        let c = gamma_circle(&params).unwrap();
        let expect = Polyline::from_xy(&[(0.0, 0.0), (0.0, 0.75), (1.0, 1.75), (1.0, 2.0)]).unwrap();
        assert_eq!(c, expect);
        assert!((c.resistance() - 1.5).abs() < 1e-15);
        assert!((c.area_below(&params) - 1.25).abs() < 1e-15);

        let c = gamma_circle(&p(1.0, 2.0, 0.75)).unwrap();
        assert_eq!(c.vertices()[1], Point::new(0.0, 0.25));

        assert!(matches!(gamma_circle(&p(1.0, 2.0, 0.4)), Err(Error::Regime(_))));
        assert!(matches!(gamma_circle(&p(3.0, 2.0, 3.0)), Err(Error::Regime(_))));
    }

    #[test]
    fn gamma_circle_reflects_to_complementary_area() {
        let params = p(1.0, 2.0, 1.25);
        let r = gamma_circle(&params).unwrap().reflect(&params);
        assert_eq!(r, gamma_circle(&params.reflected()).unwrap());
    }

    #[test]
    fn nonunique_accepts_family_members() {
        let params = p(1.0, 2.0, 1.25);
        let circle = nonunique_profile(&params, &[Point::new(0.0, 0.75), Point::new(1.0, 1.75)]).unwrap();
        assert!((circle.resistance() - 1.5).abs() < 1e-15);

        let zigzag = [
            Point::new(0.0, 0.6),
            Point::new(0.5, 1.1),
            Point::new(0.5, 1.4),
            Point::new(1.0, 1.9),
        ];
        let c = nonunique_profile(&params, &zigzag).unwrap();
        assert_eq!(c.len(), 6);
        assert!((c.resistance() - 1.5).abs() < 1e-15);
        assert!((c.area_below(&params) - 1.25).abs() < 1e-12);
    }

    #[test]
    fn nonunique_rejects_violations() {
        let params = p(1.0, 2.0, 1.25);
        // slope 2 segment
        let err = nonunique_profile(&params, &[Point::new(0.0, 0.5), Point::new(0.5, 1.5)]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { .. }));
        // leaves the region y <= h - a + x
        let err = nonunique_profile(&params, &[Point::new(0.0, 1.5), Point::new(0.5, 2.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { index: 1, .. }), "{err}");
        // right shape, wrong area
        let err = nonunique_profile(&params, &[Point::new(0.0, 0.5), Point::new(1.0, 1.5)]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { index: 3, .. }), "{err}");
        // outside the band
        assert!(matches!(
            nonunique_profile(&p(1.0, 2.0, 0.3), &[]),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn random_nonunique_members_are_valid() {
        for (l, seed) in [(0.55, 1u64), (0.75, 2), (1.0, 3), (1.25, 4), (1.45, 5)] {
            let params = p(1.0, 2.0, l);
            for k in 1..6 {
                let c = random_nonunique(&params, k, seed + 10 * k as u64).unwrap();
                assert!((c.resistance() - 1.5).abs() < 1e-12);
                assert!((c.area_below(&params) - l).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn staircase_realizes_h() {
        let params = p(1.0, 1.0, 0.5);
        let s = staircase_maximizer(&params, 2, 7).unwrap();
        assert!((s.resistance() - 1.0).abs() < 1e-12);
        assert!((s.area_below(&params) - 0.5).abs() < 1e-9);

        let params = p(3.0, 2.0, 2.0);
        let s = staircase_maximizer(&params, 5, 11).unwrap();
        assert!((s.resistance() - 2.0).abs() < 1e-12);
        let rep = s.check_admissible(&params, 1e-9);
        assert!(rep.in_class_a_plus(1e-9), "{rep:?}");

        let params = p(1.0, 1.0, 0.999);
        let s = staircase_maximizer(&params, 4, 3).unwrap();
        assert!((s.resistance() - 1.0).abs() < 1e-12);
        assert!((s.area_below(&params) - 0.999).abs() < 1e-9);
        assert!(s.increments().all(|(dx, dy)| dx == 0.0 || dy == 0.0));
    }

    #[test]
    fn random_monotone_is_admissible_and_deterministic() {
        let params = p(2.0, 3.0, 1.7);
        let c = random_monotone(&params, 6, 42).unwrap();
        let rep = c.check_admissible(&params, 1e-9);
        assert!(rep.in_class_a_plus(1e-9), "{rep:?}");
        assert!(c.resistance() >= 2.0 - 1e-12);
        assert_eq!(c, random_monotone(&params, 6, 42).unwrap());
        assert_ne!(c, random_monotone(&params, 6, 43).unwrap());
    }

    #[test]
    fn random_monotone_reaches_extreme_areas() {
        for l in [1e-4, 0.01, 5.99, 5.9999] {
            let params = p(2.0, 3.0, l);
            for seed in 0..20 {
                let c = random_monotone(&params, 3, seed).unwrap();
                assert!(c.check_admissible(&params, 1e-9).in_class_a_plus(1e-9));
            }
        }
    }
}

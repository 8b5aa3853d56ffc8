//! Simulated annealing over x-monotone polylines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{blend_to_area, random_monotone, Params, Point, Polyline};
use crate::error::{Error, Result};

const START_VERTICES: usize = 6;
const MAX_VERTICES: usize = 48;
const COOLING: f64 = 0.995;
const COOLING_EVERY: usize = 100;

/// Best curve found in `budget` proposals, with its resistance.
///
/// Proposals move, insert or delete an interior vertex (70/15/15), keeping
/// x nondecreasing and y in `[0, h]`. The area is restored after every move
/// by the vertical blend; moves it cannot repair are rejected.
pub fn anneal_original(params: &Params, budget: usize, seed: u64) -> Result<(Polyline, f64)> {
    params.validate()?;
    if budget == 0 {
        return Err(Error::InvalidInput("budget must be at least 1".into()));
    }
    let Params { a, h, .. } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = random_monotone(params, START_VERTICES, seed)?.into_vertices();
    let mut f_cur = segments_energy(&current);
    let mut best = (current.clone(), f_cur);

    let t0 = 0.1 * h;
    let mut temp = t0;
    for k in 0..budget {
        if k > 0 && k % COOLING_EVERY == 0 {
            temp *= COOLING;
        }
        let scale = 0.2 * (temp / t0).sqrt() + 1e-4;
        let Some(candidate) = propose(&current, params, scale, &mut rng) else {
            continue;
        };
        let f_new = segments_energy(&candidate);
        let accept = f_new <= f_cur || rng.random::<f64>() < ((f_cur - f_new) / temp).exp();
        if accept {
            current = candidate;
            f_cur = f_new;
            if f_cur < best.1 {
                best = (current.clone(), f_cur);
            }
        }
    }
    let curve = Polyline::new(best.0)?;
    let f = curve.resistance();
    debug_assert!(curve.first() == Point::new(0.0, 0.0) && curve.last() == Point::new(a, h));
    Ok((curve, f))
}

fn segments_energy(v: &[Point]) -> f64 {
    v.windows(2)
        .map(|w| crate::curve::segment_resistance(w[1].x - w[0].x, w[1].y - w[0].y))
        .sum()
}

fn propose(v: &[Point], params: &Params, scale: f64, rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    let Params { a, h, .. } = *params;
    let interior = v.len() - 2;
    let mut next = v.to_vec();
    let roll: f64 = rng.random();
    if roll < 0.7 || (roll >= 0.85 && interior <= 1) || (roll < 0.85 && v.len() >= MAX_VERTICES) {
        if interior == 0 {
            return None;
        }
        let i = rng.random_range(1..=interior);
        let (xl, xr) = (next[i - 1].x, next[i + 1].x);
        let p = &mut next[i];
        p.x = (p.x + scale * a * rng.random_range(-1.0..=1.0)).clamp(xl, xr);
        p.y = (p.y + scale * h * rng.random_range(-1.0..=1.0)).clamp(0.0, h);
    } else if roll < 0.85 {
        let i = rng.random_range(0..v.len() - 1);
        let (p, q) = (v[i], v[i + 1]);
        let t: f64 = rng.random();
        let y = p.y + t * (q.y - p.y) + scale * h * rng.random_range(-1.0..=1.0);
        next.insert(i + 1, Point::new(p.x + t * (q.x - p.x), y.clamp(0.0, h)));
    } else {
        let i = rng.random_range(1..=interior);
        next.remove(i);
    }
    blend_to_area(&mut next, params).ok()?;
    if next.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(next)
}

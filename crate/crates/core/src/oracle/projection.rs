//! Euclidean projection onto `{u nondecreasing, 0 ≤ u ≤ h, wᵀu = L}` with
//! trapezoid weights `w`.
//!
//! For fixed multiplier `θ` the projection of `y - θw` onto the monotone box
//! is exact: isotonic regression followed by clipping. The area of that point
//! is nonincreasing in `θ`, so the multiplier is found by bisection.

/// Isotonic (nondecreasing) least-squares fit by pool-adjacent-violators.
pub fn pava(y: &[f64]) -> Vec<f64> {
    let mut means: Vec<f64> = Vec::with_capacity(y.len());
    let mut sizes: Vec<usize> = Vec::with_capacity(y.len());
    for &v in y {
        let (mut m, mut s) = (v, 1usize);
        while let Some(&last) = means.last() {
            if last <= m {
                break;
            }
            let ls = sizes.pop().expect("sizes track means");
            means.pop();
            m = (last * ls as f64 + m * s as f64) / (ls + s) as f64;
            s += ls;
        }
        means.push(m);
        sizes.push(s);
    }
    let mut out = Vec::with_capacity(y.len());
    for (m, s) in means.into_iter().zip(sizes) {
        out.extend(std::iter::repeat_n(m, s));
    }
    out
}

/// Trapezoid weights `Δx (½, 1, …, 1, ½)` for `n` cells.
pub fn trapezoid_weights(n: usize, dx: f64) -> Vec<f64> {
    let mut w = vec![dx; n + 1];
    w[0] = 0.5 * dx;
    w[n] = 0.5 * dx;
    w
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projection onto the monotone box for multiplier `theta`.
fn shifted(y: &[f64], w: &[f64], theta: f64, h: f64, out: &mut Vec<f64>) {
    let z: Vec<f64> = y.iter().zip(w).map(|(yi, wi)| yi - theta * wi).collect();
    *out = pava(&z);
    for v in out.iter_mut() {
        *v = v.clamp(0.0, h);
    }
}

/// Projects `y`; `hint` seeds the multiplier search and receives the
/// multiplier found.
pub fn project(y: &[f64], w: &[f64], h: f64, area: f64, hint: &mut f64) -> Vec<f64> {
    let mut u = Vec::with_capacity(y.len());
    let area_at = |theta: f64, u: &mut Vec<f64>| {
        shifted(y, w, theta, h, u);
        dot(w, u)
    };
    let scale = y.iter().fold(h, |m, v| m.max(v.abs())) / w.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(*v));

    let mut step = scale.max(1e-12) * 1e-3;
    let (mut lo, mut hi) = (*hint, *hint);
    while area_at(lo, &mut u) < area {
        lo -= step;
        step *= 2.0;
    }
    step = scale.max(1e-12) * 1e-3;
    while area_at(hi, &mut u) > area {
        hi += step;
        step *= 2.0;
    }
    let tol = 1e-14 * area.abs().max(1.0);
    let mut theta = 0.5 * (lo + hi);
    for _ in 0..200 {
        theta = 0.5 * (lo + hi);
        let a = area_at(theta, &mut u);
        if (a - area).abs() <= tol || theta <= lo || theta >= hi {
            break;
        }
        if a > area {
            lo = theta;
        } else {
            hi = theta;
        }
    }
    *hint = theta;
    shifted(y, w, theta, h, &mut u);
    u
}

/// The same projection by Dykstra's alternating scheme over the three sets.
///
/// Slow but built only from the individual exact projections; kept as an
/// independent reference.
pub fn project_dykstra(y: &[f64], w: &[f64], h: f64, area: f64, iters: usize) -> Vec<f64> {
    let n = y.len();
    let ww = dot(w, w);
    let mut x = y.to_vec();
    let mut p = vec![vec![0.0; n]; 3];
    for _ in 0..iters {
        for (k, pk) in p.iter_mut().enumerate() {
            let z: Vec<f64> = x.iter().zip(pk.iter()).map(|(a, b)| a + b).collect();
            let next = match k {
                0 => pava(&z),
                1 => z.iter().map(|v| v.clamp(0.0, h)).collect(),
                _ => {
                    let c = (dot(w, &z) - area) / ww;
                    z.iter().zip(w).map(|(v, wi)| v - c * wi).collect()
                }
            };
            for i in 0..n {
                pk[i] = z[i] - next[i];
            }
            x = next;
        }
    }
    x
}

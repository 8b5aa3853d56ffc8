//! The acceptance checks, shared by `euler-profile verify` and the
//! `acceptance` test target.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{
    gamma_circle, random_monotone, random_nonunique, sawtooth_counterexample, Params, SAWTOOTH_PARAMS,
};
use crate::error::Result;
use crate::grid::{monotone_rearrange, GridFunction};
use crate::kernels::{g, g_prime, g_second, g_star};
use crate::oracle::{minimize_relaxed, DEFAULT_TOL};
use crate::solver::{
    assemble_solution, assemble_solution_with, el_residual, fmin_sweep, phi_big, psi_big, SweepRow,
};

#[derive(Debug, Clone)]
pub struct Check {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<24} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

/// Accumulates the failed assertions of one check.
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), notes: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn close(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let ok = (got - want).abs() <= tol;
        self.require(ok, || format!("{label}: got {got}, want {want} ± {tol:e}"));
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, id: u32, name: &'static str) -> Check {
        let passed = self.failures.is_empty();
        let detail = if passed {
            self.notes.join("; ")
        } else {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            let more = self.failures.len().saturating_sub(3);
            if more > 0 {
                format!("{} (+{more} more)", shown.join("; "))
            } else {
                shown.join("; ")
            }
        };
        Check { id, name, passed, detail }
    }
}

fn guarded(id: u32, name: &'static str, body: impl FnOnce(&mut Outcome) -> Result<()>) -> Check {
    let mut out = Outcome::new();
    if let Err(e) = body(&mut out) {
        out.failures.push(format!("error: {e}"));
    }
    out.finish(id, name)
}

pub type CheckFn = fn() -> Check;

pub const ALL: [CheckFn; 10] = [
    band_value,
    degenerate_diagonal,
    sweep_shape_wide,
    sweep_shape_tall,
    hypocycloid_instance,
    reflection,
    nonexistence_demo,
    young_floor,
    kernel_suite,
    rearrangement,
];

pub fn run_all() -> Vec<Check> {
    ALL.iter().map(|f| f()).collect()
}

/// 61 areas `6i/62` strictly inside `(0, 6)`.
fn sweep_grid() -> Vec<f64> {
    (1..=61).map(|i| 6.0 * i as f64 / 62.0).collect()
}

fn sweep_rows(a: f64, h: f64) -> Result<Vec<SweepRow>> {
    fmin_sweep(a, h, &sweep_grid()).into_iter().collect()
}

fn check_symmetry(out: &mut Outcome, rows: &[SweepRow]) {
    let n = rows.len();
    for i in 0..n {
        let (p, q) = (&rows[i], &rows[n - 1 - i]);
        out.require((p.f_min - q.f_min).abs() < 1e-6, || {
            format!("asymmetric at L = {}: {} vs {}", p.l, p.f_min, q.f_min)
        });
    }
}

pub fn band_value() -> Check {
    guarded(1, "band value", |out| {
        for l in [0.55, 0.75, 1.0, 1.25, 1.45] {
            let p = Params::new(1.0, 2.0, l)?;
            let s = assemble_solution(&p)?;
            out.close(&format!("analytic L={l}"), s.f_min, 1.5, 1e-12);
            let r = minimize_relaxed(&p, 200, DEFAULT_TOL)?;
            out.close(&format!("oracle L={l}"), r.f_min, 1.5, 2e-3);
        }
        out.note("analytic 1.5 and oracle within 2e-3 at 5 areas");
        Ok(())
    })
}

pub fn degenerate_diagonal() -> Check {
    guarded(2, "degenerate diagonal", |out| {
        let p = Params::new(1.0, 1.0, 0.5)?;
        out.close("analytic (1,1,0.5)", assemble_solution(&p)?.f_min, 0.5, 1e-12);
        let r = minimize_relaxed(&p, 200, DEFAULT_TOL)?;
        out.close("oracle (1,1,0.5)", r.f_min, 0.5, 1e-3);
        let q = Params::new(3.0, 2.0, 3.0)?;
        let f = assemble_solution(&q)?.f_min;
        out.close("analytic (3,2,3)", f, 8.0 / 13.0, 1e-12);
        out.note(format!("oracle {:.9}, F(3,2,3) = {f:.15}", r.f_min));
        Ok(())
    })
}

pub fn sweep_shape_wide() -> Check {
    guarded(3, "sweep shape h <= a", |out| {
        let rows = sweep_rows(3.0, 2.0)?;
        check_symmetry(out, &rows);
        let mid = &rows[30];
        out.close("L = 3 value", mid.f_min, 8.0 / 13.0, 1e-6);
        let min = rows.iter().map(|r| r.f_min).fold(f64::INFINITY, f64::min);
        out.require(mid.f_min <= min, || format!("minimum {min} not at L = 3"));
        for w in rows.windows(2) {
            let d = w[1].f_min - w[0].f_min;
            if w[1].l <= 3.0 {
                out.require(d < -1e-8, || format!("not decreasing on [{}, {}]: {d}", w[0].l, w[1].l));
            } else {
                out.require(d > 1e-8, || format!("not increasing on [{}, {}]: {d}", w[0].l, w[1].l));
            }
        }
        out.require(rows.iter().all(|r| r.f_min < 2.0), || "value reached h".into());
        out.note(format!("min {:.12} at L = 3, ends {:.6}", mid.f_min, rows[0].f_min));
        Ok(())
    })
}

pub fn sweep_shape_tall() -> Check {
    guarded(4, "sweep shape h > a", |out| {
        let rows = sweep_rows(2.0, 3.0)?;
        check_symmetry(out, &rows);
        let mut plateau = 0;
        for r in rows.iter().filter(|r| (2.0..=4.0).contains(&r.l)) {
            out.close(&format!("plateau L={}", r.l), r.f_min, 2.0, 1e-9);
            plateau += 1;
        }
        for w in rows.windows(2) {
            let d = w[1].f_min - w[0].f_min;
            if w[0].l < 2.0 {
                out.require(d < -1e-8, || format!("not decreasing on [{}, {}]: {d}", w[0].l, w[1].l));
            } else if w[1].l > 4.0 {
                out.require(d > 1e-8, || format!("not increasing on [{}, {}]: {d}", w[0].l, w[1].l));
            }
        }
        out.note(format!("plateau of {plateau} points at 2.0"));
        Ok(())
    })
}

pub fn hypocycloid_instance() -> Check {
    guarded(5, "hypocycloid instance", |out| {
        let p = Params::new(3.0, 2.0, 2.0)?;
        let s = assemble_solution(&p)?;
        out.close("area", s.curve.area_below(&p), 2.0, 1e-6);

        let graph: Vec<_> = s.curve.vertices().iter().filter(|v| v.y <= s.h_star).copied().collect();
        let slopes: Vec<f64> = graph.windows(2).map(|w| (w[1].y - w[0].y) / (w[1].x - w[0].x)).collect();
        let worst = slopes.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        out.require(worst >= -1e-9, || format!("slope decreases by {}", -worst));
        out.require(s.h_star < 2.0, || format!("h* = {} is not below h", s.h_star));

        let mut coarse = assemble_solution_with(&p, 2000)?;
        let el = el_residual(&mut coarse)?;
        out.require(el < 1e-6, || format!("EL residual {el:e}"));

        let (xi, eta) = (s.xi_star.unwrap_or(0.0), s.eta_star.unwrap_or(0.0));
        let psi = psi_big(xi, eta, &p)?;
        out.close("resistance vs reduced energy", s.curve.resistance(), psi, 1e-8);
        let r = minimize_relaxed(&p, 400, DEFAULT_TOL)?;
        out.close("oracle", r.f_min, psi, 2e-3);
        out.note(format!(
            "F = {psi:.10}, xi* = {xi:.6}, eta* = {eta:.6}, h* = {:.6} (2L/a = {:.6}), EL {el:.1e}",
            s.h_star,
            2.0 * p.l / p.a
        ));
        Ok(())
    })
}

pub fn reflection() -> Check {
    guarded(6, "reflection", |out| {
        for l in [2.0, 2.3] {
            let p = Params::new(3.0, 2.0, l)?;
            let q = p.reflected();
            let s = assemble_solution(&p)?;
            let t = assemble_solution(&q)?;
            out.close(&format!("F({l}) vs F({})", q.l), s.f_min, t.f_min, 1e-8);
            let r = s.curve.reflect(&p);
            out.require(r.len() == t.curve.len(), || format!("vertex count differs at L={l}"));
            let dev = r
                .vertices()
                .iter()
                .zip(t.curve.vertices())
                .map(|(u, v)| (u.x - v.x).abs().max((u.y - v.y).abs()))
                .fold(0.0, f64::max);
            out.require(dev <= 1e-9, || format!("vertex deviation {dev:e} at L={l}"));
        }
        out.note("L in {2, 2.3} against 6 - L");
        Ok(())
    })
}

pub fn nonexistence_demo() -> Check {
    guarded(7, "nonexistence demo", |out| {
        let p = SAWTOOTH_PARAMS;
        for n in [4usize, 8, 16, 64, 256] {
            let c = sawtooth_counterexample(n)?;
            let want = 1.0 / (2.0 * ((n * n) as f64 + 1.0));
            out.close(&format!("F(n={n})"), c.resistance(), want, 1e-15);
            let area = c.area_below(&p);
            out.require(area == 0.125, || format!("area {area} at n={n}"));
        }
        let f = assemble_solution(&p)?.f_min;
        out.require(f > 0.19, || format!("class-A optimum {f} not above 0.19"));
        out.note(format!("F(256) = {:.3e}, class-A optimum {f}", 1.0 / (2.0 * 65537.0)));
        Ok(())
    })
}

pub fn young_floor() -> Check {
    guarded(8, "Young floor", |out| {
        let (a, h) = (2.0, 3.0);
        let floor = h - a / 2.0;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut lowest = f64::INFINITY;
        for seed in 0..1000u64 {
            let l = a * h * rng.random_range(0.02..0.98);
            let k = rng.random_range(1..12);
            let c = random_monotone(&Params::new(a, h, l)?, k, seed)?;
            let f = c.resistance();
            lowest = lowest.min(f);
            out.require(f >= floor - 1e-12, || format!("F = {f} below floor at seed {seed}"));
        }
        for l in [2.2, 2.5, 3.0, 3.5, 3.9] {
            let p = Params::new(a, h, l)?;
            out.close(&format!("gamma circle L={l}"), gamma_circle(&p)?.resistance(), floor, 1e-12);
            for seed in 0..20 {
                let c = random_nonunique(&p, 1 + seed as usize % 5, seed)?;
                out.close(&format!("band profile L={l} seed={seed}"), c.resistance(), floor, 1e-12);
            }
        }
        out.note(format!("lowest random F = {lowest:.6}; 105 band profiles at 2"));
        Ok(())
    })
}

pub fn kernel_suite() -> Check {
    guarded(9, "kernel suite", |out| {
        for i in 0..=6000 {
            let z = -2.0 + i as f64 * 1e-3;
            out.require(g_star(z) <= g(z) + 1e-15, || format!("g** > g at {z}"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let (x, y): (f64, f64) = (rng.random_range(-2.0..4.0), rng.random_range(-2.0..4.0));
            let lhs = g_star(0.5 * (x + y));
            let rhs = 0.5 * (g_star(x) + g_star(y));
            out.require(lhs <= rhs + 1e-12, || format!("midpoint convexity fails at ({x}, {y})"));
        }
        let step = 1e-6;
        for i in 0..=100 {
            let z = i as f64 / 100.0;
            let fd1 = (g(z + step) - g(z - step)) / (2.0 * step);
            let fd2 = (g_prime(z + step) - g_prime(z - step)) / (2.0 * step);
            out.require((fd1 - g_prime(z)).abs() <= 1e-6, || format!("g' mismatch at {z}"));
            if z > 0.0 {
                out.require((fd2 - g_second(z)).abs() <= 1e-6, || format!("g'' mismatch at {z}"));
            }
        }
        let p = Params::new(3.0, 2.0, 2.0)?;
        let d = 1e-3;
        let mut count = 0;
        for j in 1..=50 {
            let eta = j as f64 / 50.0;
            for i in 0..50 {
                let xi = (eta - d) * i as f64 / 49.0;
                let diff = phi_big((xi + d).min(eta), eta, &p)? - phi_big(xi, eta, &p)?;
                out.require(diff > 0.0, || format!("Phi not increasing at ({xi}, {eta})"));
                count += 1;
            }
        }
        out.note(format!("6001 envelope points, 1000 pairs, {count} Phi sign checks"));
        Ok(())
    })
}

pub fn rearrangement() -> Check {
    guarded(10, "rearrangement", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut gain = 0.0_f64;
        for case in 0..100 {
            let a = rng.random_range(0.5..3.0);
            let h = rng.random_range(0.5..3.0);
            let n = rng.random_range(4..64);
            let mut values: Vec<f64> = (0..=n).map(|_| rng.random_range(0.0..h)).collect();
            values[0] = 0.0;
            values[n] = h;
            let u = GridFunction::new(a, values)?;
            let w = monotone_rearrange(&u)?;
            let (au, aw) = (u.trapezoid_area(), w.trapezoid_area());
            out.require(w.is_monotone(), || format!("case {case}: result not monotone"));
            out.require((au - aw).abs() <= 1e-9, || format!("case {case}: area {au} -> {aw}"));
            let (eu, ew) = (u.envelope_energy(), w.envelope_energy());
            out.require(ew <= eu + 1e-12, || format!("case {case}: energy {eu} -> {ew}"));
            gain = gain.max(eu - ew);
        }
        out.note(format!("100 cases, largest energy drop {gain:.4}"));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_reported() {
        let c = guarded(0, "demo", |out| {
            out.close("x", 1.0, 2.0, 0.1);
            Ok(())
        });
        assert!(!c.passed);
        assert!(c.line().starts_with("[FAIL]"));
    }
}

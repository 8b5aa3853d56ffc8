//! Uniform-grid graphs `u₀ … u_n` on `[0, a]`.
//!
//! The linear interpolant of the nodal values is the function represented.
//! Nothing forces `u₀ = 0` or `u_n = h`: in the relaxed problem a gap at
//! either end stands for a vertical jump of the profile.

use serde::{Deserialize, Serialize};

use crate::curve::{Point, Polyline};
use crate::error::{Error, Result};
use crate::kernels::{g, g_star};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub n: usize,
    pub a: f64,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn new(a: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidInput("a grid function needs at least 2 nodes".into()));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidInput(format!("grid length must be positive, got {a}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite grid value".into()));
        }
        Ok(GridFunction { n: values.len() - 1, a, values })
    }

    /// Samples `f` at the `n + 1` nodes.
    pub fn from_fn(a: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let dx = a / n as f64;
        Self::new(a, (0..=n).map(|i| f(i as f64 * dx)).collect())
    }

    pub fn dx(&self) -> f64 {
        self.a / self.n as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.n {
            self.a
        } else {
            i as f64 * self.dx()
        }
    }

    pub fn slopes(&self) -> impl Iterator<Item = f64> + '_ {
        let dx = self.dx();
        self.values.windows(2).map(move |w| (w[1] - w[0]) / dx)
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0])
    }

    pub fn trapezoid_area(&self) -> f64 {
        let dx = self.dx();
        self.values.windows(2).map(|w| 0.5 * dx * (w[0] + w[1])).sum()
    }

    /// `Σ Δx g(slope)`: the resistance of the graph.
    pub fn graph_energy(&self) -> f64 {
        let dx = self.dx();
        self.slopes().map(|s| dx * g(s)).sum()
    }

    /// `Σ Δx g**(slope)`.
    pub fn envelope_energy(&self) -> f64 {
        let dx = self.dx();
        self.slopes().map(|s| dx * g_star(s)).sum()
    }

    /// Polyline through the nodes.
    pub fn from_graph(&self) -> Polyline {
        let v = (0..=self.n).map(|i| Point::new(self.node(i), self.values[i])).collect();
        Polyline::new(v).expect("grid nodes have strictly increasing x")
    }

    /// Polyline through the nodes, closed with vertical jumps from `(0,0)`
    /// and up to `(a,h)` where the end values leave a gap.
    pub fn to_profile(&self, h: f64) -> Polyline {
        let mut v = Vec::with_capacity(self.n + 3);
        v.push(Point::new(0.0, 0.0));
        v.extend((0..=self.n).map(|i| Point::new(self.node(i), self.values[i])));
        v.push(Point::new(self.a, h));
        Polyline::dedup(v).expect("grid nodes have strictly increasing x")
    }
}

/// Samples an x-monotone curve starting at `x = 0` on `n` uniform cells.
///
/// Every segment must advance strictly in `x`; vertical pieces have no graph
/// representation.
pub fn to_graph(p: &Polyline, n: usize) -> Result<GridFunction> {
    if n == 0 {
        return Err(Error::InvalidInput("need at least one grid cell".into()));
    }
    let v = p.vertices();
    if let Some(i) = v.windows(2).position(|w| w[1].x <= w[0].x) {
        return Err(Error::Conversion(format!(
            "segment {i} does not advance in x ({} -> {})",
            v[i].x,
            v[i + 1].x
        )));
    }
    if v[0].x != 0.0 {
        return Err(Error::Conversion(format!("curve starts at x = {}, expected 0", v[0].x)));
    }
    let a = v[v.len() - 1].x;
    let dx = a / n as f64;
    let mut seg = 0;
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = if i == n { a } else { i as f64 * dx };
        while seg + 2 < v.len() && x > v[seg + 1].x {
            seg += 1;
        }
        let (p0, p1) = (v[seg], v[seg + 1]);
        let t = (x - p0.x) / (p1.x - p0.x);
        values.push(if t == 1.0 { p1.y } else { p0.y + t * (p1.y - p0.y) });
    }
    GridFunction::new(a, values)
}

/// Nondecreasing replacement with the same end values and area, and no more
/// `g**` energy.
///
/// Two monotone graphs with vertices on the graph of `u` bracket it: the
/// lower one runs through the strict suffix minima, the upper one through
/// the strict prefix maxima. Between consecutive vertices each has the same
/// increment as `u`, so Jensen's inequality bounds its energy by that of `u`.
/// The result is the convex combination of the two whose area matches `u`;
/// convexity of the energy keeps the bound.
///
/// The end values must bound all the others (e.g. `u₀ = 0`, `u_n = h`).
pub fn monotone_rearrange(u: &GridFunction) -> Result<GridFunction> {
    let first = u.values[0];
    let last = u.values[u.n];
    if u.values.iter().any(|&v| v < first || v > last) {
        return Err(Error::InvalidInput(
            "end values must be the minimum and maximum of the grid function".into(),
        ));
    }
    let lower = lower_envelope(&u.values);
    let upper: Vec<f64> = {
        let mirrored: Vec<f64> = u.values.iter().rev().map(|v| first + last - v).collect();
        lower_envelope(&mirrored).into_iter().rev().map(|v| first + last - v).collect()
    };
    let dx = u.dx();
    let area = |vals: &[f64]| vals.windows(2).map(|w| 0.5 * dx * (w[0] + w[1])).sum::<f64>();
    let (a_lo, a_mid, a_up) = (area(&lower), area(&u.values), area(&upper));
    let theta = if a_up > a_lo { ((a_mid - a_lo) / (a_up - a_lo)).clamp(0.0, 1.0) } else { 0.0 };
    let values = lower
        .iter()
        .zip(&upper)
        .map(|(lo, up)| (1.0 - theta) * lo + theta * up)
        .collect();
    GridFunction::new(u.a, values)
}

/// Nondecreasing interpolant of the strict suffix minima over the interior
/// nodes, pinned at both ends.
fn lower_envelope(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    let mut chain = vec![n];
    let mut running = f64::INFINITY;
    for i in (1..n).rev() {
        if values[i] < running {
            chain.push(i);
            running = values[i];
        }
    }
    chain.push(0);
    chain.reverse();

    let mut out = vec![0.0; n + 1];
    for w in chain.windows(2) {
        let (p, q) = (w[0], w[1]);
        let (vp, vq) = (values[p], values[q]);
        for (k, slot) in out.iter_mut().enumerate().take(q + 1).skip(p) {
            let t = (k - p) as f64 / (q - p) as f64;
            *slot = vp + t * (vq - vp);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_round_trip() {
        let p = Polyline::from_xy(&[(0.0, 0.0), (1.0, 1.0)]).unwrap();
        let u = to_graph(&p, 10).unwrap();
        assert!(u.slopes().all(|s| (s - 1.0).abs() < 1e-12));
        assert!((u.graph_energy() - 0.5).abs() < 1e-12);
        assert!((u.from_graph().resistance() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vertical_segments_do_not_convert() {
        let p = Polyline::from_xy(&[(0.0, 0.0), (0.0, 0.75), (1.0, 1.75), (1.0, 2.0)]).unwrap();
        assert!(matches!(to_graph(&p, 8), Err(Error::Conversion(_))));
    }

    #[test]
    fn nodes_on_grid_survive_round_trip() {
        let p = Polyline::from_xy(&[(0.0, 0.0), (0.5, 0.1), (1.5, 0.4), (2.0, 1.0)]).unwrap();
        let u = to_graph(&p, 8).unwrap();
        let q = u.from_graph();
        for v in p.vertices() {
            assert!(q.vertices().iter().any(|w| (w.x - v.x).abs() < 1e-15 && (w.y - v.y).abs() < 1e-15));
        }
        assert!((q.resistance() - p.resistance()).abs() < 1e-12);
    }

    #[test]
    fn profile_closes_jumps() {
        let u = GridFunction::new(2.0, vec![0.5, 1.0, 1.5]).unwrap();
        let p = u.to_profile(3.0);
        assert_eq!(p.first(), Point::new(0.0, 0.0));
        assert_eq!(p.last(), Point::new(2.0, 3.0));
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn rearrange_keeps_monotone_input() {
        let u = GridFunction::from_fn(2.0, 20, |x| x * x / 4.0).unwrap();
        let w = monotone_rearrange(&u).unwrap();
        for (a, b) in u.values.iter().zip(&w.values) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn rearrange_w_shape() {
        // W-shaped: down, up, down, up on [0, 2] with u(0) = 0, u(2) = 1
        let vals = vec![0.0, 0.6, 0.2, 0.8, 0.3, 0.9, 1.0];
        let u = GridFunction::new(2.0, vals).unwrap();
        let w = monotone_rearrange(&u).unwrap();
        assert!(w.is_monotone());
        assert_eq!(w.values[0], 0.0);
        assert_eq!(w.values[6], 1.0);
        assert!((w.trapezoid_area() - u.trapezoid_area()).abs() < 1e-12);
        assert!(w.envelope_energy() < u.envelope_energy());
    }

    #[test]
    fn rearrange_rejects_bad_endpoints() {
        let u = GridFunction::new(1.0, vec![0.5, 0.2, 1.0]).unwrap();
        assert!(monotone_rearrange(&u).is_err());
    }
}

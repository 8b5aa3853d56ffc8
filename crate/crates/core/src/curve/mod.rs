//! Polyline curves and the exact resistance functional.
//!
//! A curve from `(0,0)` to `(a,h)` is stored as its vertex list. The
//! resistance integrand is homogeneous of degree one in the velocity, so the
//! energy of an affine segment does not depend on how fast it is traversed
//! and node times carry no information.

mod families;
pub mod io;

pub use families::{
    gamma_circle, nonunique_profile, random_monotone, random_nonunique, sawtooth_counterexample,
    staircase_maximizer, test_curve_r, SAWTOOTH_PARAMS,
};
pub(crate) use families::blend_to_area;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The problem triple: half-beam `a`, height `h`, area `l` below the profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub a: f64,
    pub h: f64,
    #[serde(rename = "L")]
    pub l: f64,
}

impl Params {
    pub fn new(a: f64, h: f64, l: f64) -> Result<Self> {
        let p = Params { a, h, l };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let Params { a, h, l } = *self;
        if !(a.is_finite() && h.is_finite() && l.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite parameters a={a}, h={h}, L={l}")));
        }
        if a <= 0.0 || h <= 0.0 {
            return Err(Error::InvalidInput(format!("need a > 0 and h > 0, got a={a}, h={h}")));
        }
        if l <= 0.0 || l >= a * h {
            return Err(Error::InvalidInput(format!("need 0 < L < a*h = {}, got L={l}", a * h)));
        }
        Ok(())
    }

    /// Area of the bounding box.
    pub fn box_area(&self) -> f64 {
        self.a * self.h
    }

    /// Same box, complementary area `a*h - L`.
    pub fn reflected(&self) -> Params {
        Params { l: self.a * self.h - self.l, ..*self }
    }

    /// Same box, different area.
    pub fn with_area(&self, l: f64) -> Params {
        Params { l, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

/// Energy of one affine segment with increments `(dx, dy)`.
///
/// A vertical rise returns `dy` exactly.
#[inline]
pub fn segment_resistance(dx: f64, dy: f64) -> f64 {
    if dy <= 0.0 {
        0.0
    } else if dx == 0.0 {
        dy
    } else {
        dy * dy * dy / (dx * dx + dy * dy)
    }
}

/// Ordered vertex list with no repeated consecutive vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a polyline needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite()) {
                return Err(Error::InvalidInput(format!("vertex {i} is not finite")));
            }
        }
        if let Some(i) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "zero-length segment between vertices {i} and {}",
                i + 1
            )));
        }
        Ok(Polyline { vertices })
    }

    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(points.iter().copied().map(Point::from).collect())
    }

    /// Builds from a vertex list after dropping consecutive duplicates.
    pub fn dedup(mut vertices: Vec<Point>) -> Result<Self> {
        vertices.dedup();
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first(&self) -> Point {
        self.vertices[0]
    }

    pub fn last(&self) -> Point {
        self.vertices[self.vertices.len() - 1]
    }

    /// Segment increments `(dx, dy)`.
    pub fn increments(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.vertices.windows(2).map(|w| (w[1].x - w[0].x, w[1].y - w[0].y))
    }

    /// Exact resistance: `Σ (Δy)₊³ / (Δx² + Δy²)` over the segments.
    pub fn resistance(&self) -> f64 {
        self.increments().map(|(dx, dy)| segment_resistance(dx, dy)).sum()
    }

    /// `a*h - Σ Δy (xᵢ + xᵢ₊₁)/2`; the trapezoid area under the graph for
    /// x-monotone curves ending at `(a, h)`.
    pub fn area_below(&self, params: &Params) -> f64 {
        let swept: f64 = self
            .vertices
            .windows(2)
            .map(|w| (w[1].y - w[0].y) * 0.5 * (w[0].x + w[1].x))
            .sum();
        params.box_area() - swept
    }

    /// Point reflection through the box centre, traversed backwards.
    pub fn reflect(&self, params: &Params) -> Polyline {
        let vertices = self
            .vertices
            .iter()
            .rev()
            .map(|v| Point::new(params.a - v.x, params.h - v.y))
            .collect();
        Polyline { vertices }
    }

    pub fn is_x_monotone(&self) -> bool {
        self.increments().all(|(dx, _)| dx >= 0.0)
    }

    pub fn is_y_monotone(&self) -> bool {
        self.increments().all(|(_, dy)| dy >= 0.0)
    }

    pub fn check_admissible(&self, params: &Params, tol: f64) -> AdmissibilityReport {
        let near = |p: Point, q: Point| (p.x - q.x).abs() <= tol && (p.y - q.y).abs() <= tol;
        let endpoints_ok =
            near(self.first(), Point::new(0.0, 0.0)) && near(self.last(), Point::new(params.a, params.h));
        let in_box = self.vertices.iter().all(|v| {
            v.x >= -tol && v.x <= params.a + tol && v.y >= -tol && v.y <= params.h + tol
        });
        let area_below = self.area_below(params);
        AdmissibilityReport {
            endpoints_ok,
            in_box,
            x_monotone: self.is_x_monotone(),
            y_monotone: self.is_y_monotone(),
            area_below,
            area_error: (area_below - params.l).abs(),
        }
    }
}

/// Membership flags for the admissible classes.
///
/// Class `A` needs endpoints, box, x-monotonicity and the area; class `A⁺`
/// additionally needs y-monotonicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub endpoints_ok: bool,
    pub in_box: bool,
    pub x_monotone: bool,
    pub y_monotone: bool,
    pub area_below: f64,
    pub area_error: f64,
}

impl AdmissibilityReport {
    /// Admissible in the x-monotone class with area error at most `tol`.
    pub fn in_class_a(&self, tol: f64) -> bool {
        self.endpoints_ok && self.in_box && self.x_monotone && self.area_error <= tol
    }

    pub fn in_class_a_plus(&self, tol: f64) -> bool {
        self.in_class_a(tol) && self.y_monotone
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(a: f64, h: f64) -> Polyline {
        Polyline::from_xy(&[(0.0, 0.0), (a, h)]).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(1.0, 1.0, 0.5).is_ok());
        assert!(Params::new(0.0, 1.0, 0.5).is_err());
        assert!(Params::new(1.0, -1.0, 0.5).is_err());
        assert!(Params::new(1.0, 1.0, 1.0).is_err());
        assert!(Params::new(1.0, 1.0, 0.0).is_err());
        assert!(Params::new(f64::NAN, 1.0, 0.5).is_err());
    }

    #[test]
    fn rejects_degenerate_polylines() {
        assert!(Polyline::from_xy(&[(0.0, 0.0)]).is_err());
        assert!(Polyline::from_xy(&[(0.0, 0.0), (0.0, 0.0), (1.0, 1.0)]).is_err());
        assert!(Polyline::from_xy(&[(0.0, 0.0), (f64::INFINITY, 1.0)]).is_err());
        let p = Polyline::dedup(vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0), Point::new(1.0, 1.0)]).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn resistance_examples() {
        let vertical = Polyline::from_xy(&[(0.0, 0.0), (0.0, 2.0)]).unwrap();
        assert_eq!(vertical.resistance(), 2.0);
        assert!((diag(3.0, 2.0).resistance() - 8.0 / 13.0).abs() < 1e-15);
        let flat = Polyline::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert_eq!(flat.resistance(), 0.0);
        let down = Polyline::from_xy(&[(0.0, 1.0), (1.0, 0.0)]).unwrap();
        assert_eq!(down.resistance(), 0.0);
    }

    #[test]
    fn resistance_invariant_under_collinear_insertion() {
        let p = diag(3.0, 2.0);
        let q = Polyline::from_xy(&[(0.0, 0.0), (1.5, 1.0), (2.25, 1.5), (3.0, 2.0)]).unwrap();
        assert!((p.resistance() - q.resistance()).abs() < 1e-15);
    }

    #[test]
    fn area_examples() {
        let params = Params::new(1.0, 1.0, 0.5).unwrap();
        assert!((diag(1.0, 1.0).area_below(&params) - 0.5).abs() < 1e-15);
        let params = Params::new(3.0, 2.0, 1.0).unwrap();
        let tail = Polyline::from_xy(&[(0.0, 0.0), (3.0, 0.0), (3.0, 2.0)]).unwrap();
        assert_eq!(tail.area_below(&params), 0.0);
    }

    #[test]
    fn reflect_diagonal_is_fixed() {
        let params = Params::new(3.0, 2.0, 3.0).unwrap();
        assert_eq!(diag(3.0, 2.0).reflect(&params), diag(3.0, 2.0));
    }

    #[test]
    fn reflect_moves_tail_to_head() {
        let params = Params::new(3.0, 2.0, 2.0).unwrap();
        let p = Polyline::from_xy(&[(0.0, 0.0), (1.5, 0.5), (3.0, 1.5), (3.0, 2.0)]).unwrap();
        let r = p.reflect(&params);
        let expect = Polyline::from_xy(&[(0.0, 0.0), (0.0, 0.5), (1.5, 1.5), (3.0, 2.0)]).unwrap();
        assert_eq!(r, expect);
        assert!((r.resistance() - p.resistance()).abs() < 1e-12);
        assert!((r.area_below(&params) - (6.0 - p.area_below(&params))).abs() < 1e-12);
    }

    #[test]
    fn admissibility_of_diagonal_and_staircase() {
        let params = Params::new(1.0, 1.0, 0.5).unwrap();
        let rep = diag(1.0, 1.0).check_admissible(&params, 1e-9);
        assert!(rep.endpoints_ok && rep.in_box && rep.x_monotone && rep.y_monotone);
        assert!(rep.in_class_a_plus(1e-9));

        let stairs =
            Polyline::from_xy(&[(0.0, 0.0), (0.0, 0.5), (0.5, 0.5), (0.5, 1.0), (1.0, 1.0)]).unwrap();
        let rep = stairs.check_admissible(&params.with_area(0.75), 1e-9);
        assert!(rep.x_monotone && rep.y_monotone);
        assert!(rep.area_error < 1e-15, "{rep:?}");
    }

    #[test]
    fn admissibility_flags_failures() {
        let params = Params::new(1.0, 1.0, 0.5).unwrap();
        let p = Polyline::from_xy(&[(0.0, 0.0), (1.2, 0.5), (0.8, 0.5), (1.0, 0.9)]).unwrap();
        let rep = p.check_admissible(&params, 1e-9);
        assert!(!rep.endpoints_ok);
        assert!(!rep.in_box);
        assert!(!rep.x_monotone);
        assert!(rep.y_monotone);
    }
}

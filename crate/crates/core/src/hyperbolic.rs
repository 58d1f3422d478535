//! Hyperbolic plane geometry in the hyperboloid model.
//!
//! Points are unit timelike vectors `(t, x, y)` with `⟨p, p⟩ = -1` for the
//! form `J = diag(-1, 1, 1)`; isometries are 3×3 matrices `M` with
//! `Mᵀ J M = J`. Geodesics are represented by their unit spacelike polar
//! vectors, so reflections and perpendicular distances are linear algebra.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::math::{abs, acos, acosh, asinh, cos, cosh, sin, sinh, sqrt};

pub type Point = [f64; 3];

/// Tolerance used when checking constructed polygons.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum HyperbolicError {
    #[error("argument outside the domain: {0}")]
    DomainError(&'static str),
    #[error("isometry is not hyperbolic (trace {trace})")]
    NotHyperbolic { trace: f64 },
    #[error("sides {0} and {1} are adjacent")]
    SidesAdjacent(usize, usize),
    #[error("constructed polygon is off by {0}")]
    NumericalFailure(f64),
}

/// Minkowski form `-a₀b₀ + a₁b₁ + a₂b₂`.
pub fn minkowski(a: &Point, b: &Point) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Hyperbolic distance between two points of the hyperboloid, via
/// `⟨a-b, a-b⟩ = 4 sinh²(d/2)`, which stays accurate for nearby points.
pub fn distance(a: &Point, b: &Point) -> f64 {
    let diff = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    2.0 * asinh(sqrt(minkowski(&diff, &diff).max(0.0)) / 2.0)
}

/// Point at hyperbolic distance `r` from the origin in direction `angle`.
pub fn polar_point(r: f64, angle: f64) -> Point {
    [cosh(r), sinh(r) * cos(angle), sinh(r) * sin(angle)]
}

fn scale(a: &Point, s: f64) -> Point {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: &Point, b: &Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Minkowski cross product `J(a × b)`, orthogonal to both arguments for the form.
fn cross(a: &Point, b: &Point) -> Point {
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    [-c[0], c[1], c[2]]
}

fn normalize_spacelike(v: &Point) -> Point {
    scale(v, 1.0 / sqrt(minkowski(v, v)))
}

/// Unit polar vector of the geodesic through `a` and `b`.
pub fn geodesic_normal(a: &Point, b: &Point) -> Point {
    normalize_spacelike(&cross(a, b))
}

/// Midpoint of the segment `ab`.
pub fn midpoint(a: &Point, b: &Point) -> Point {
    let s = add(a, b);
    scale(&s, 1.0 / sqrt(-minkowski(&s, &s)))
}

/// Unit tangent vector at `a` pointing towards `b`.
fn tangent_towards(a: &Point, b: &Point) -> Point {
    normalize_spacelike(&add(b, &scale(a, minkowski(a, b))))
}

/// Angle at `at` between the geodesics towards `b` and towards `c`.
pub fn angle_at(at: &Point, b: &Point, c: &Point) -> f64 {
    let u = tangent_towards(at, b);
    let w = tangent_towards(at, c);
    acos(minkowski(&u, &w).clamp(-1.0, 1.0))
}

/// An isometry of the hyperbolic plane as a Lorentz matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    pub m: [[f64; 3]; 3],
}

impl Isometry {
    pub fn identity() -> Self {
        Self { m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] }
    }

    /// Translation of the given length along the `x` axis.
    pub fn boost(rapidity: f64) -> Self {
        let (c, s) = (cosh(rapidity), sinh(rapidity));
        Self { m: [[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]] }
    }

    /// Rotation about the origin.
    pub fn rotation(angle: f64) -> Self {
        let (c, s) = (cos(angle), sin(angle));
        Self { m: [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]] }
    }

    /// Reflection in the geodesic with unit polar vector `n`: `x ↦ x - 2⟨x,n⟩n`.
    pub fn reflection(n: &Point) -> Self {
        let jn = [-n[0], n[1], n[2]];
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if i == j { 1.0 } else { 0.0 } - 2.0 * n[i] * jn[j];
            }
        }
        Self { m }
    }

    /// The isometry sending `a0 ↦ b0` and the direction `a0 → a1` to `b0 → b1`,
    /// preserving or reversing orientation as requested.
    pub fn from_frames(a0: &Point, a1: &Point, b0: &Point, b1: &Point, preserve: bool) -> Self {
        let fa = frame(a0, a1);
        let fb = frame(b0, b1);
        let flip = if preserve { 1.0 } else { -1.0 };
        let mut mid = fb;
        for row in mid.iter_mut() {
            row[2] *= flip;
        }
        // frame inverse is J Fᵀ J
        let mut inv = [[0.0; 3]; 3];
        let sign = [-1.0, 1.0, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                inv[i][j] = sign[i] * fa[j][i] * sign[j];
            }
        }
        Self { m: mul(&mid, &inv) }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: mul(&self.m, &other.m) }
    }

    pub fn inverse(&self) -> Self {
        let sign = [-1.0, 1.0, 1.0];
        let mut m = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = sign[i] * self.m[j][i] * sign[j];
            }
        }
        Self { m }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|j| self.m[i][j] * p[j]).sum();
        }
        out
    }

    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn preserves_orientation(&self) -> bool {
        self.determinant() > 0.0
    }

    /// Largest entry of `Mᵀ J M - J`.
    pub fn form_defect(&self) -> f64 {
        let sign = [-1.0, 1.0, 1.0];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| self.m[k][i] * sign[k] * self.m[k][j]).sum();
                let target = if i == j { sign[i] } else { 0.0 };
                worst = worst.max(abs(v - target));
            }
        }
        worst
    }

    /// Translation length of a hyperbolic isometry or glide reflection.
    pub fn translation_length(&self) -> Result<f64, HyperbolicError> {
        length_from_trace(self)
    }
}

fn mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Columns: the point, the unit tangent towards `b`, and the normal completing
/// a positively oriented frame.
fn frame(a: &Point, b: &Point) -> [[f64; 3]; 3] {
    let u = tangent_towards(a, b);
    let mut n = normalize_spacelike(&cross(a, &u));
    let cols = |n: &Point| [[a[0], u[0], n[0]], [a[1], u[1], n[1]], [a[2], u[2], n[2]]];
    if (Isometry { m: cols(&n) }).determinant() < 0.0 {
        n = scale(&n, -1.0);
    }
    cols(&n)
}

/// Translation length from the trace: `tr = 1 + 2cosh ℓ` for orientation
/// preserving isometries, `tr = 2cosh ℓ - 1` for glide reflections.
pub fn length_from_trace(m: &Isometry) -> Result<f64, HyperbolicError> {
    let tr = m.trace();
    let arg = if m.preserves_orientation() { (tr - 1.0) / 2.0 } else { (tr + 1.0) / 2.0 };
    if arg <= 1.0 + 1e-12 {
        return Err(HyperbolicError::NotHyperbolic { trace: tr });
    }
    Ok(acosh(arg))
}

/// Side length `L` of the regular right-angled `2q`-gon:
/// `cosh(L/2) = √2·cos(π/2q)`.
pub fn regular_side_length(q: usize) -> Result<f64, HyperbolicError> {
    if q < 3 {
        return Err(HyperbolicError::DomainError("q must be at least 3"));
    }
    Ok(2.0 * acosh(sqrt(2.0) * cos(PI / (2.0 * q as f64))))
}

fn check_theta(theta: f64) -> Result<(), HyperbolicError> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(HyperbolicError::DomainError("theta must lie in (0, pi)"))
    }
}

/// Side length of the equilateral `2q`-gon with angles alternating `θ`, `π-θ`,
/// from the triangle with angles `π/q`, `θ/2`, `(π-θ)/2`.
pub fn deformed_side_length(q: usize, theta: f64) -> Result<f64, HyperbolicError> {
    if q < 3 {
        return Err(HyperbolicError::DomainError("q must be at least 3"));
    }
    check_theta(theta)?;
    let (b, c) = (theta / 2.0, (PI - theta) / 2.0);
    let a = PI / q as f64;
    Ok(acosh((cos(b) * cos(c) + cos(a)) / (sin(b) * sin(c))))
}

/// Derivative of [`deformed_side_length`] in `θ`, using
/// `cosh s = 1 + 2cos(π/q)/sin θ`.
pub fn deformed_side_length_derivative(q: usize, theta: f64) -> Result<f64, HyperbolicError> {
    let s = deformed_side_length(q, theta)?;
    let c = cos(PI / q as f64);
    Ok(-2.0 * c * cos(theta) / (sin(theta) * sin(theta) * sinh(s)))
}

/// `sinh a · sinh b - cos(π/q)`, zero on a quadrilateral with three right angles and one angle `π/q`.
pub fn quad_relation_check(a: f64, b: f64, q: usize) -> f64 {
    sinh(a) * sinh(b) - cos(PI / q as f64)
}

/// An equilateral `2q`-gon centred at the origin.
///
/// Vertex `k` sits at polar angle `kπ/q`. Even vertices carry the angle `θ`,
/// odd ones `π-θ`; side `k` runs from vertex `k` to vertex `k+1` and is red
/// when `k` is even.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonMetric {
    pub q: usize,
    pub theta: f64,
    pub side_length: f64,
    pub vertices: Vec<Point>,
}

pub fn build_polygon(q: usize, theta: f64) -> Result<PolygonMetric, HyperbolicError> {
    let side_length = deformed_side_length(q, theta)?;
    let (a, b, c) = (PI / q as f64, theta / 2.0, (PI - theta) / 2.0);
    let r_even = acosh((cos(a) * cos(b) + cos(c)) / (sin(a) * sin(b)));
    let r_odd = acosh((cos(a) * cos(c) + cos(b)) / (sin(a) * sin(c)));
    let vertices = (0..2 * q)
        .map(|k| polar_point(if k % 2 == 0 { r_even } else { r_odd }, k as f64 * a))
        .collect();
    let poly = PolygonMetric { q, theta, side_length, vertices };
    let residual = poly.residual();
    if residual > 1e-8 {
        return Err(HyperbolicError::NumericalFailure(residual));
    }
    Ok(poly)
}

impl PolygonMetric {
    pub fn num_sides(&self) -> usize {
        2 * self.q
    }

    pub fn vertex(&self, k: usize) -> &Point {
        &self.vertices[k % self.num_sides()]
    }

    /// Endpoints of side `k`, in counterclockwise order.
    pub fn side(&self, k: usize) -> (&Point, &Point) {
        (self.vertex(k), self.vertex(k + 1))
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        (0..self.num_sides()).map(|k| distance(self.vertex(k), self.vertex(k + 1))).collect()
    }

    pub fn interior_angles(&self) -> Vec<f64> {
        let n = self.num_sides();
        (0..n)
            .map(|k| angle_at(self.vertex(k), self.vertex(k + n - 1), self.vertex(k + 1)))
            .collect()
    }

    /// Largest deviation of side lengths from `side_length` and of angles
    /// from the alternating pattern.
    pub fn residual(&self) -> f64 {
        let sides = self.side_lengths().into_iter().map(|s| abs(s - self.side_length));
        let angles = self.interior_angles().into_iter().enumerate().map(|(k, a)| {
            let want = if k % 2 == 0 { self.theta } else { PI - self.theta };
            abs(a - want)
        });
        sides.chain(angles).fold(0.0, f64::max)
    }

    pub fn side_normal(&self, k: usize) -> Point {
        let (a, b) = self.side(k);
        geodesic_normal(a, b)
    }

    /// Length of the common perpendicular of the geodesics extending sides `i` and `j`.
    pub fn side_distance(&self, i: usize, j: usize) -> Result<f64, HyperbolicError> {
        let n = self.num_sides();
        let (i, j) = (i % n, j % n);
        if i == j {
            return Ok(0.0);
        }
        if (i + 1) % n == j || (j + 1) % n == i {
            return Err(HyperbolicError::SidesAdjacent(i, j));
        }
        let c = abs(minkowski(&self.side_normal(i), &self.side_normal(j)));
        Ok(if c <= 1.0 { 0.0 } else { acosh(c) })
    }

    /// Reflection in the geodesic through side `k`.
    pub fn side_reflection(&self, k: usize) -> Isometry {
        Isometry::reflection(&self.side_normal(k))
    }

    /// Side lengths `(a, b)` of the quadrilateral cut out by the centre, the
    /// midpoints of sides `k`, `k+1` and their common vertex; the two sides
    /// away from the centre.
    pub fn quadrilateral_sides(&self, k: usize) -> (f64, f64) {
        let m0 = midpoint(self.vertex(k), self.vertex(k + 1));
        let m1 = midpoint(self.vertex(k + 1), self.vertex(k + 2));
        let v = self.vertex(k + 1);
        (distance(&m0, v), distance(v, &m1))
    }

    /// The orientation-preserving isometry carrying side `from` of this
    /// polygon onto side `to` of a copy, reversing its direction: vertex
    /// `from` goes to vertex `to + 1` and vertex `from + 1` to vertex `to`.
    pub fn side_pairing(&self, to: usize, from: usize) -> Isometry {
        let (a0, a1) = self.side(from);
        let (b1, b0) = self.side(to);
        Isometry::from_frames(a0, a1, b0, b1, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_side_length() {
        let l = regular_side_length(3).unwrap();
        assert!(abs(l - 1.3169578969248166).abs() < 1e-12);
        assert!(abs(cosh(l) - 2.0) < 1e-12);
        assert!(regular_side_length(2).is_err());
    }

    #[test]
    fn large_q_limit() {
        let l = regular_side_length(100_000).unwrap();
        assert!(abs(l - 2.0 * acosh(sqrt(2.0))) < 1e-6);
    }

    #[test]
    fn deformed_matches_regular_at_right_angle() {
        for q in 3..=12 {
            let a = deformed_side_length(q, PI / 2.0).unwrap();
            let b = regular_side_length(q).unwrap();
            assert!(abs(a - b) < 1e-12);
        }
        assert!(deformed_side_length(3, 0.0).is_err());
        assert!(deformed_side_length(3, PI).is_err());
    }

    #[test]
    fn polygon_angles_alternate() {
        let p = build_polygon(3, 2.0).unwrap();
        let angles = p.interior_angles();
        for (k, a) in angles.iter().enumerate() {
            let want = if k % 2 == 0 { 2.0 } else { PI - 2.0 };
            assert!(abs(a - want) < 1e-10);
        }
        assert!((angles.iter().sum::<f64>() - 3.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn boost_length() {
        assert!(abs(Isometry::boost(1.5).translation_length().unwrap() - 1.5) < 1e-12);
        assert!(Isometry::identity().translation_length().is_err());
        assert!(Isometry::rotation(1.0).translation_length().is_err());
    }

    #[test]
    fn two_reflections_translate_by_twice_the_distance() {
        let t = 0.8;
        // geodesics x = 0 and its image under a boost of t, both perpendicular to the x axis
        let n0 = [0.0, 1.0, 0.0];
        let n1 = Isometry::boost(t).apply(&n0);
        let m = Isometry::reflection(&n1).compose(&Isometry::reflection(&n0));
        assert!(abs(m.translation_length().unwrap() - 2.0 * t) < 1e-12);
        assert!(m.form_defect() < 1e-12);
    }

    #[test]
    fn frames_map_points() {
        let p = build_polygon(4, PI / 2.0).unwrap();
        let g = p.side_pairing(0, 3);
        let (a0, a1) = p.side(3);
        let img0 = g.apply(a0);
        let img1 = g.apply(a1);
        assert!(distance(&img0, p.vertex(1)) < 1e-10);
        assert!(distance(&img1, p.vertex(0)) < 1e-10);
        assert!(g.preserves_orientation());
        assert!(g.form_defect() < 1e-10);
        // the image of the polygon lies across side 0: its centre is reflected
        let centre = g.apply(&[1.0, 0.0, 0.0]);
        let mirrored = p.side_reflection(0).apply(&[1.0, 0.0, 0.0]);
        assert!(distance(&centre, &mirrored) < 1e-10);
    }
}

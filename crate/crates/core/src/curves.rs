//! Discretized boundary parametrizations.
//!
//! Every constructor samples a 2π-periodic parametrization `η(t)` at the
//! uniform nodes `t_j = 2πj/n` (starting at `t = 0`) together with `η'` and
//! `η''`. Piecewise smooth boundaries (polygons, circular-arc chains, opened
//! slit disks) give each piece an equal share of `[0, 2π)` and cluster nodes
//! at the junctions with the grading substitution
//! `g(τ) = τ^p / (τ^p + (1-τ)^p)`. The junction nodes are kept; `η'`
//! vanishes there, so they carry no quadrature weight.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier;

pub use crate::fourier::spectral_derivative;

/// Default grading exponent for piecewise smooth boundaries.
pub const DEFAULT_GRADING: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Bounded domain to the left of the curve.
    CounterClockwise,
    /// Unbounded domain (containing ∞) to the left of the curve.
    Clockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EllipseKind {
    Interior,
    Exterior,
}

/// Sampled boundary curve. Immutable once constructed.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    t: Vec<f64>,
    eta: Vec<Complex64>,
    deta: Vec<Complex64>,
    ddeta: Vec<Complex64>,
    orientation: Orientation,
    corners: Vec<usize>,
    corner_mask: Vec<bool>,
}

impl BoundaryCurve {
    fn new(
        eta: Vec<Complex64>,
        deta: Vec<Complex64>,
        ddeta: Vec<Complex64>,
        orientation: Orientation,
        corners: Vec<usize>,
    ) -> Self {
        let n = eta.len();
        let t = (0..n).map(|j| 2.0 * PI * j as f64 / n as f64).collect();
        let mut corner_mask = vec![false; n];
        for &c in &corners {
            corner_mask[c] = true;
        }
        Self {
            t,
            eta,
            deta,
            ddeta,
            orientation,
            corners,
            corner_mask,
        }
    }

    pub fn n(&self) -> usize {
        self.eta.len()
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn eta(&self) -> &[Complex64] {
        &self.eta
    }

    pub fn deta(&self) -> &[Complex64] {
        &self.deta
    }

    pub fn ddeta(&self) -> &[Complex64] {
        &self.ddeta
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// True when the curve bounds a bounded domain (counterclockwise).
    pub fn is_bounded(&self) -> bool {
        self.orientation == Orientation::CounterClockwise
    }

    /// Node indices where `η' = 0`.
    pub fn corners(&self) -> &[usize] {
        &self.corners
    }

    pub fn is_corner(&self, j: usize) -> bool {
        self.corner_mask[j]
    }

    /// Constant trapezoidal weight `2π/n`.
    pub fn weight(&self) -> f64 {
        2.0 * PI / self.n() as f64
    }

    /// Image of the curve under `z ↦ a z + b` (a ≠ 0). Orientation is kept.
    pub fn affine(&self, a: Complex64, b: Complex64) -> Self {
        Self {
            t: self.t.clone(),
            eta: self.eta.iter().map(|&z| a * z + b).collect(),
            deta: self.deta.iter().map(|&z| a * z).collect(),
            ddeta: self.ddeta.iter().map(|&z| a * z).collect(),
            orientation: self.orientation,
            corners: self.corners.clone(),
            corner_mask: self.corner_mask.clone(),
        }
    }

    /// Distance from `z` to the nearest node.
    pub fn node_distance(&self, z: Complex64) -> f64 {
        self.eta
            .iter()
            .map(|&e| (e - z).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest node spacing estimate `(2π/n)·max|η'|`.
    pub fn max_spacing(&self) -> f64 {
        self.weight() * self.deta.iter().map(|d| d.norm()).fold(0.0, f64::max)
    }

    /// Discrete winding number of the node polygon around `z`.
    pub fn winding_number(&self, z: Complex64) -> f64 {
        let n = self.n();
        let total: f64 = (0..n)
            .map(|j| {
                let a = self.eta[j] - z;
                let b = self.eta[(j + 1) % n] - z;
                (b / a).arg()
            })
            .sum();
        total / (2.0 * PI)
    }

    /// Whether `z` lies in the domain bounded by the curve, with no
    /// proximity check.
    pub fn contains(&self, z: Complex64) -> bool {
        let w = self.winding_number(z).round() as i64;
        match self.orientation {
            Orientation::CounterClockwise => w == 1,
            Orientation::Clockwise => w == 0,
        }
    }
}

/// Membership test used for grid masking. Points closer to a node than
/// `10·(2π/n)·max|η'|` are rejected with [`Error::NearBoundary`].
pub fn winding_inside(curve: &BoundaryCurve, z: Complex64) -> Result<bool> {
    let distance = curve.node_distance(z);
    if distance < 10.0 * curve.max_spacing() {
        return Err(Error::NearBoundary {
            re: z.re,
            im: z.im,
            distance,
        });
    }
    Ok(curve.contains(z))
}

/// Grading substitution and its first two derivatives at `tau ∈ [0, 1]`.
pub fn grading(tau: f64, p: f64) -> (f64, f64, f64) {
    if p == 1.0 {
        return (tau, 1.0, 0.0);
    }
    let u = tau.powf(p);
    let v = (1.0 - tau).powf(p);
    let d = u + v;
    let w = p * tau.powf(p - 1.0) * (1.0 - tau).powf(p - 1.0);
    let dw = p * (p - 1.0) * tau.powf(p - 2.0) * (1.0 - tau).powf(p - 2.0) * (1.0 - 2.0 * tau);
    let dd = p * tau.powf(p - 1.0) - p * (1.0 - tau).powf(p - 1.0);
    let g1 = w / (d * d);
    let g2 = dw / (d * d) - 2.0 * w * dd / (d * d * d);
    (u / d, g1, g2)
}

/// One smooth piece of a piecewise boundary, parametrized over `u ∈ [0, 1]`.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Line {
        a: Complex64,
        b: Complex64,
    },
    Arc {
        center: Complex64,
        radius: f64,
        start: f64,
        end: f64,
    },
    /// `u ↦ k·sqrt(σ(e^{iθ} - a))`, θ from `start` to `end`, principal
    /// branch; where the endpoint lands on the cut the start takes the
    /// lower side and the end the upper side.
    SqrtCircle {
        k: Complex64,
        sigma: f64,
        shift: f64,
        start: f64,
        end: f64,
    },
}

impl Piece {
    /// Point, first and second derivative with respect to `u`.
    fn eval(&self, u: f64) -> (Complex64, Complex64, Complex64) {
        let i = Complex64::i();
        match *self {
            Piece::Line { a, b } => (a + (b - a) * u, b - a, Complex64::new(0.0, 0.0)),
            Piece::Arc {
                center,
                radius,
                start,
                end,
            } => {
                let span = end - start;
                let e = Complex64::from_polar(radius, start + span * u);
                (center + e, i * e * span, -e * span * span)
            }
            Piece::SqrtCircle {
                k,
                sigma,
                shift,
                start,
                end,
            } => {
                let span = end - start;
                let z = Complex64::from_polar(1.0, start + span * u);
                let w = sigma * (z - shift);
                let mut arg = w.arg();
                if w.re < 0.0 && w.im.abs() <= 1e-14 * w.norm() {
                    arg = if u < 0.5 { -PI } else { PI };
                }
                let root = Complex64::from_polar(w.norm().sqrt(), arg / 2.0);
                let dw = sigma * i * z;
                let ddw = -sigma * z;
                let d1 = k * dw / (2.0 * root);
                let d2 = k * (ddw / (2.0 * root) - dw * dw / (4.0 * root * root * root));
                (k * root, d1 * span, d2 * span * span)
            }
        }
    }
}

fn build_piecewise(pieces: &[Piece], n_s: usize, p: f64) -> Result<BoundaryCurve> {
    let m = pieces.len();
    let n = m * n_s;
    let scale = m as f64 / (2.0 * PI);
    let mut eta = Vec::with_capacity(n);
    let mut deta = Vec::with_capacity(n);
    let mut ddeta = Vec::with_capacity(n);
    for piece in pieces {
        for l in 0..n_s {
            let tau = l as f64 / n_s as f64;
            let (g, g1, g2) = grading(tau, p);
            let (z, dz, ddz) = piece.eval(g);
            eta.push(z);
            deta.push(dz * g1 * scale);
            ddeta.push((ddz * g1 * g1 + dz * g2) * scale * scale);
        }
    }
    let corners = if p > 1.0 {
        (0..m).map(|k| k * n_s).collect()
    } else {
        Vec::new()
    };
    // Strong grading with many nodes can round the first nodes of a panel
    // onto its endpoint.
    let size = eta.iter().map(|z| z.norm()).fold(0.0, f64::max);
    for j in 0..n {
        if (eta[(j + 1) % n] - eta[j]).norm() <= 4.0 * f64::EPSILON * size {
            return Err(Error::param(
                "p",
                format!("grading exponent {p} with n_s = {n_s} produces coincident nodes"),
            ));
        }
    }
    Ok(BoundaryCurve::new(eta, deta, ddeta, Orientation::CounterClockwise, corners))
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::param(
            "n",
            format!("need at least {min} nodes, got {n}"),
        ));
    }
    if n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    Ok(())
}

fn check_panel(n_s: usize, p: f64, min_p: f64) -> Result<()> {
    if n_s < 8 || n_s % 2 != 0 {
        return Err(Error::param(
            "n_s",
            format!("need an even count >= 8, got {n_s}"),
        ));
    }
    if !(p >= min_p) || !p.is_finite() {
        return Err(Error::param(
            "p",
            format!("grading exponent must be >= {min_p}, got {p}"),
        ));
    }
    Ok(())
}

/// Ellipse with semi-axes `a` (real) and `b` (imaginary).
///
/// Interior: `a cos t + i b sin t`, counterclockwise. Exterior:
/// `a cos t - i b sin t`, clockwise.
pub fn make_ellipse(a: f64, b: f64, n: usize, kind: EllipseKind) -> Result<BoundaryCurve> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::param(
            "axes",
            format!("semi-axes must be positive, got {a}, {b}"),
        ));
    }
    check_n(n, 8)?;
    let (sign, orientation) = match kind {
        EllipseKind::Interior => (1.0, Orientation::CounterClockwise),
        EllipseKind::Exterior => (-1.0, Orientation::Clockwise),
    };
    let b = sign * b;
    let mut eta = Vec::with_capacity(n);
    let mut deta = Vec::with_capacity(n);
    let mut ddeta = Vec::with_capacity(n);
    for j in 0..n {
        let t = 2.0 * PI * j as f64 / n as f64;
        let (s, c) = t.sin_cos();
        eta.push(Complex64::new(a * c, b * s));
        deta.push(Complex64::new(-a * s, b * c));
        ddeta.push(Complex64::new(-a * c, -b * s));
    }
    Ok(BoundaryCurve::new(
        eta,
        deta,
        ddeta,
        orientation,
        Vec::new(),
    ))
}

/// Amoeba-shaped curve `(e^{cos t} cos²2t + e^{sin t} sin²2t) e^{it}`;
/// derivatives are spectral.
pub fn make_amoeba(n: usize) -> Result<BoundaryCurve> {
    check_n(n, 64)?;
    let eta: Vec<Complex64> = (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            let radius =
                t.cos().exp() * (2.0 * t).cos().powi(2) + t.sin().exp() * (2.0 * t).sin().powi(2);
            Complex64::from_polar(radius, t)
        })
        .collect();
    let deta = fourier::spectral_derivative(&eta)?;
    let ddeta = fourier::spectral_derivative(&deta)?;
    Ok(BoundaryCurve::new(
        eta,
        deta,
        ddeta,
        Orientation::CounterClockwise,
        Vec::new(),
    ))
}

fn orient(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    ((b - a).conj() * (c - a)).im
}

fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on_segment = |a: Complex64, b: Complex64, c: Complex64| {
        c.re >= a.re.min(b.re)
            && c.re <= a.re.max(b.re)
            && c.im >= a.im.min(b.im)
            && c.im <= a.im.max(b.im)
    };
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Signed area of a closed vertex polygon (positive when counterclockwise).
pub fn signed_area(vertices: &[Complex64]) -> f64 {
    let m = vertices.len();
    (0..m)
        .map(|k| {
            let a = vertices[k];
            let b = vertices[(k + 1) % m];
            a.re * b.im - b.re * a.im
        })
        .sum::<f64>()
        / 2.0
}

fn validate_polygon(vertices: &[Complex64]) -> Result<()> {
    let m = vertices.len();
    if m < 3 {
        return Err(Error::param(
            "vertices",
            format!("need at least 3 vertices, got {m}"),
        ));
    }
    let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
    for k in 0..m {
        if (vertices[(k + 1) % m] - vertices[k]).norm() <= 1e-14 * scale {
            return Err(Error::DuplicateVertex(k));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(
                vertices[i],
                vertices[(i + 1) % m],
                vertices[j],
                vertices[(j + 1) % m],
            ) {
                return Err(Error::SelfIntersecting(i, j));
            }
        }
    }
    if signed_area(vertices) <= 0.0 {
        return Err(Error::param(
            "vertices",
            "vertices must be in counterclockwise order",
        ));
    }
    Ok(())
}

/// Polygon with `n_s` graded nodes per side; node `k·n_s` is vertex `k`.
pub fn make_polygon(vertices: &[Complex64], n_s: usize, p: f64) -> Result<BoundaryCurve> {
    validate_polygon(vertices)?;
    check_panel(n_s, p, 2.0)?;
    let m = vertices.len();
    let pieces: Vec<Piece> = (0..m)
        .map(|k| Piece::Line {
            a: vertices[k],
            b: vertices[(k + 1) % m],
        })
        .collect();
    build_piecewise(&pieces, n_s, p)
}

/// Regular polygon with vertices `e^{2πik/ℓ}`.
pub fn regular_polygon_vertices(sides: usize) -> Vec<Complex64> {
    (0..sides)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / sides as f64))
        .collect()
}

/// Circular arc `center + radius·e^{iθ}` traversed from `start` to `end`
/// (radians; `end < start` traverses clockwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSpec {
    pub center: Complex64,
    pub radius: f64,
    pub start: f64,
    pub end: f64,
}

impl ArcSpec {
    pub fn start_point(&self) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, self.start)
    }

    pub fn end_point(&self) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, self.end)
    }
}

/// Closed chain of circular arcs. `p = 1` disables grading (and leaves the
/// corner list empty); otherwise `p >= 2`.
pub fn make_circular_arc_polygon(arcs: &[ArcSpec], n_s: usize, p: f64) -> Result<BoundaryCurve> {
    if arcs.is_empty() {
        return Err(Error::param("arcs", "need at least one arc"));
    }
    if p != 1.0 {
        check_panel(n_s, p, 2.0)?;
    } else {
        check_panel(n_s, p, 1.0)?;
    }
    for (k, arc) in arcs.iter().enumerate() {
        if !(arc.radius > 0.0) || arc.start == arc.end {
            return Err(Error::param("arcs", format!("arc {k} is degenerate")));
        }
        let next = &arcs[(k + 1) % arcs.len()];
        let gap = (arc.end_point() - next.start_point()).norm();
        let scale = (arc.center.norm() + arc.radius).max(1.0);
        if gap > 1e-12 * scale {
            return Err(Error::NotClosed { piece: k, gap });
        }
    }
    let pieces: Vec<Piece> = arcs
        .iter()
        .map(|a| Piece::Arc {
            center: a.center,
            radius: a.radius,
            start: a.start,
            end: a.end,
        })
        .collect();
    let curve = build_piecewise(&pieces, n_s, p)?;
    if signed_area(curve.eta()) <= 0.0 {
        return Err(Error::param(
            "arcs",
            "arc chain must traverse the boundary counterclockwise",
        ));
    }
    Ok(curve)
}

/// Rectangle `0 < Re w < 1, 0 < Im w < r` with vertices `0, 1, 1+ir, ir`.
pub fn make_rectangle(r: f64, n_s: usize, p: f64) -> Result<BoundaryCurve> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::param(
            "r",
            format!("aspect must be positive, got {r}"),
        ));
    }
    let vertices = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, r),
        Complex64::new(0.0, r),
    ];
    make_polygon(&vertices, n_s, p)
}

/// The three slit disks: `G1 = D \ (-1, 0]`, `G2 = D \ [r, 1)`,
/// `G3 = D \ (-1, a]`, each paired with the base point used for its
/// reduced modulus (`r`, `0` and `r` respectively).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlitCase {
    G1 { r: f64 },
    G2 { r: f64 },
    G3 { r: f64, a: f64 },
}

impl SlitCase {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            SlitCase::G1 { r } | SlitCase::G2 { r } => r > 0.0 && r < 1.0,
            SlitCase::G3 { r, a } => a >= 0.0 && a < r && r < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(
                "slit",
                format!("parameters out of range: {self:?}"),
            ))
        }
    }

    /// Base point in the slit disk.
    pub fn base_point(&self) -> Complex64 {
        match *self {
            SlitCase::G1 { r } | SlitCase::G3 { r, .. } => Complex64::new(r, 0.0),
            SlitCase::G2 { .. } => Complex64::new(0.0, 0.0),
        }
    }

    /// Image of the base point under the slit-opening map.
    pub fn opened_base_point(&self) -> Complex64 {
        match *self {
            SlitCase::G1 { r } => Complex64::new(2.0 * r, 0.0),
            SlitCase::G2 { r } => Complex64::new(-2.0 * r, 0.0),
            SlitCase::G3 { r, a } => Complex64::new(2.0 * (r - a), 0.0),
        }
    }

    /// Opening map written as `k·sqrt(σ(z - shift))` with the principal root.
    pub(crate) fn sqrt_form(&self) -> (Complex64, f64, f64) {
        match *self {
            SlitCase::G1 { r } => (Complex64::new(2.0 * r.sqrt(), 0.0), 1.0, 0.0),
            SlitCase::G2 { r } => (Complex64::new(-2.0 * r.sqrt(), 0.0), -1.0, r),
            SlitCase::G3 { r, a } => (Complex64::new(2.0 * (r - a).sqrt(), 0.0), 1.0, a),
        }
    }
}

/// Boundary of the slit disk opened up by its square-root map: the image of
/// the unit circle followed by the straight image of the two slit sides.
pub fn make_opened_slit_disk(case: SlitCase, n_s: usize, p: f64) -> Result<BoundaryCurve> {
    case.validate()?;
    check_panel(n_s, p, 2.0)?;
    let (k, sigma, shift) = case.sqrt_form();
    let (start, end, half) = match case {
        SlitCase::G1 { r } => (-PI, PI, 2.0 * r.sqrt()),
        SlitCase::G2 { r } => (0.0, 2.0 * PI, 2.0 * (r * (1.0 - r)).sqrt()),
        SlitCase::G3 { r, a } => (-PI, PI, 2.0 * ((r - a) * (1.0 + a)).sqrt()),
    };
    let arc = Piece::SqrtCircle {
        k,
        sigma,
        shift,
        start,
        end,
    };
    let top = Complex64::new(0.0, half);
    let slit = match case {
        SlitCase::G2 { .. } => Piece::Line { a: -top, b: top },
        _ => Piece::Line { a: top, b: -top },
    };
    build_piecewise(&[arc, slit], n_s, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn l_shape() -> Vec<Complex64> {
        vec![
            c(6.0, 1.0),
            c(1.0, 1.0),
            c(1.0, 4.0),
            c(-1.0, 4.0),
            c(-1.0, -1.0),
            c(6.0, -1.0),
        ]
    }

    fn closure_integral(curve: &BoundaryCurve) -> f64 {
        let s: Complex64 = curve.deta().iter().sum();
        (s * curve.weight()).norm()
    }

    /// Ray-casting point-in-polygon.
    fn ray_cast(vertices: &[Complex64], z: Complex64) -> bool {
        let m = vertices.len();
        let mut inside = false;
        for k in 0..m {
            let a = vertices[k];
            let b = vertices[(k + 1) % m];
            if (a.im > z.im) != (b.im > z.im) {
                let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
                if z.re < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    #[test]
    fn unit_circle_nodes() {
        let curve = make_ellipse(1.0, 1.0, 16, EllipseKind::Interior).unwrap();
        for (j, &t) in curve.t().iter().enumerate() {
            let e = Complex64::from_polar(1.0, t);
            assert!((curve.eta()[j] - e).norm() < 1e-15);
            assert!((curve.deta()[j] - Complex64::i() * e).norm() < 1e-15);
            assert!((curve.ddeta()[j] + e).norm() < 1e-15);
        }
        assert_eq!(curve.orientation(), Orientation::CounterClockwise);
        assert!(curve.corners().is_empty());
    }

    #[test]
    fn exterior_ellipse_is_clockwise() {
        let r = 0.5;
        let curve = make_ellipse(1.0, r, 64, EllipseKind::Exterior).unwrap();
        assert_eq!(curve.orientation(), Orientation::Clockwise);
        for (j, &t) in curve.t().iter().enumerate() {
            assert!((curve.eta()[j] - c(t.cos(), -r * t.sin())).norm() < 1e-15);
        }
        assert!(signed_area(curve.eta()) < 0.0);
    }

    #[test]
    fn interior_ellipse_start() {
        let curve = make_ellipse(1f64.cosh(), 1f64.sinh(), 32, EllipseKind::Interior).unwrap();
        assert!((curve.eta()[0] - c(1f64.cosh(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ellipse_errors() {
        assert!(make_ellipse(0.0, 1.0, 16, EllipseKind::Interior).is_err());
        assert!(make_ellipse(1.0, -1.0, 16, EllipseKind::Interior).is_err());
        assert!(make_ellipse(1.0, 1.0, 6, EllipseKind::Interior).is_err());
    }

    #[test]
    fn amoeba_values() {
        let curve = make_amoeba(256).unwrap();
        assert!((curve.eta()[0] - c(std::f64::consts::E, 0.0)).norm() < 1e-14);
        // t = π/2 is node 64 of 256
        assert!((curve.eta()[64] - c(0.0, 1.0)).norm() < 1e-14);
        assert!(make_amoeba(32).is_err());
    }

    #[test]
    fn amoeba_spectral_derivative_matches_finite_difference() {
        let curve = make_amoeba(1024).unwrap();
        let f = |t: f64| {
            let radius =
                t.cos().exp() * (2.0 * t).cos().powi(2) + t.sin().exp() * (2.0 * t).sin().powi(2);
            Complex64::from_polar(radius, t)
        };
        let h = 1e-5;
        for j in (0..1024).step_by(37) {
            let t = curve.t()[j];
            let fd = (f(t + h) - f(t - h)) / (2.0 * h);
            assert!((fd - curve.deta()[j]).norm() < 1e-8, "node {j}");
        }
    }

    #[test]
    fn l_shape_polygon_layout() {
        let n_s = 512;
        let curve = make_polygon(&l_shape(), n_s, 3.0).unwrap();
        assert_eq!(curve.n(), 6 * n_s);
        assert_eq!(curve.eta()[0], c(6.0, 1.0));
        for (k, v) in l_shape().iter().enumerate() {
            assert!((curve.eta()[k * n_s] - v).norm() < 1e-15);
            assert_eq!(curve.deta()[k * n_s], c(0.0, 0.0));
        }
        assert_eq!(curve.corners(), &[0, 512, 1024, 1536, 2048, 2560]);
    }

    #[test]
    fn derivative_vanishes_only_at_corners() {
        let curve = make_polygon(&l_shape(), 64, 3.0).unwrap();
        for j in 0..curve.n() {
            assert_eq!(
                curve.deta()[j].norm() == 0.0,
                curve.is_corner(j),
                "node {j}"
            );
        }
    }

    #[test]
    fn square_panel_midpoint() {
        let square = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let curve = make_polygon(&square, 8, 3.0).unwrap();
        assert!((curve.eta()[4] - c(0.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn grading_symmetry_and_flat_ends() {
        for p in [2.0, 3.0, 4.5] {
            for k in 0..=20 {
                let tau = k as f64 / 20.0;
                let (g, ..) = grading(tau, p);
                let (gr, ..) = grading(1.0 - tau, p);
                assert!((g + gr - 1.0).abs() < 1e-15);
            }
            assert_eq!(grading(0.0, p).1, 0.0);
            assert_eq!(grading(1.0, p).1, 0.0);
        }
    }

    #[test]
    fn grading_derivatives_match_finite_differences() {
        let h = 1e-6;
        for tau in [0.1, 0.37, 0.5, 0.81] {
            let (_, g1, g2) = grading(tau, 3.0);
            let fd1 = (grading(tau + h, 3.0).0 - grading(tau - h, 3.0).0) / (2.0 * h);
            let fd2 = (grading(tau + h, 3.0).1 - grading(tau - h, 3.0).1) / (2.0 * h);
            assert!((g1 - fd1).abs() < 1e-8);
            assert!((g2 - fd2).abs() < 1e-7);
        }
    }

    #[test]
    fn closure_and_side_length() {
        let curve = make_polygon(&l_shape(), 512, 3.0).unwrap();
        assert!(closure_integral(&curve) < 1e-12);
        let lengths = [5.0, 3.0, 2.0, 5.0, 7.0, 2.0];
        for (k, len) in lengths.iter().enumerate() {
            let panel: f64 = (k * 512..(k + 1) * 512)
                .map(|j| curve.deta()[j].norm())
                .sum::<f64>()
                * curve.weight();
            assert!((panel - len).abs() < 1e-8, "side {k}: {panel}");
        }
        for other in [
            make_ellipse(2.0, 0.5, 64, EllipseKind::Interior).unwrap(),
            make_ellipse(1.0, 0.3, 64, EllipseKind::Exterior).unwrap(),
            make_amoeba(256).unwrap(),
            make_rectangle(2.0, 64, 3.0).unwrap(),
            // curved pieces meeting at graded junctions close at O(n_s^-4)
            make_opened_slit_disk(SlitCase::G2 { r: 0.4 }, 1024, 3.0).unwrap(),
        ] {
            assert!(closure_integral(&other) < 1e-12);
        }
    }

    #[test]
    fn polygon_errors() {
        let bowtie = [c(0.0, 0.0), c(1.0, 1.0), c(1.0, 0.0), c(0.0, 1.0)];
        assert!(matches!(
            make_polygon(&bowtie, 8, 3.0),
            Err(Error::SelfIntersecting(..))
        ));
        let dup = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        assert_eq!(
            make_polygon(&dup, 8, 3.0).unwrap_err(),
            Error::DuplicateVertex(1)
        );
        let cw = [c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)];
        assert!(make_polygon(&cw, 8, 3.0).is_err());
        let tri = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        assert!(make_polygon(&tri, 4, 3.0).is_err());
        assert!(make_polygon(&tri, 8, 1.5).is_err());
    }

    fn four_half_circles() -> Vec<ArcSpec> {
        vec![
            ArcSpec {
                center: c(1.0, 0.0),
                radius: 1.0,
                start: -PI / 2.0,
                end: PI / 2.0,
            },
            ArcSpec {
                center: c(0.0, 1.0),
                radius: 1.0,
                start: 0.0,
                end: PI,
            },
            ArcSpec {
                center: c(-1.0, 0.0),
                radius: 1.0,
                start: PI / 2.0,
                end: 1.5 * PI,
            },
            ArcSpec {
                center: c(0.0, -1.0),
                radius: 1.0,
                start: PI,
                end: 2.0 * PI,
            },
        ]
    }

    #[test]
    fn circular_arc_quadrilateral_junctions() {
        let curve = make_circular_arc_polygon(&four_half_circles(), 64, 3.0).unwrap();
        let expected = [c(1.0, -1.0), c(1.0, 1.0), c(-1.0, 1.0), c(-1.0, -1.0)];
        for (k, e) in expected.iter().enumerate() {
            assert!((curve.eta()[k * 64] - e).norm() < 1e-14);
        }
        assert!(closure_integral(&curve) < 1e-12);
    }

    #[test]
    fn single_ungraded_arc_is_the_circle() {
        let arc = [ArcSpec {
            center: c(0.0, 0.0),
            radius: 1.0,
            start: 0.0,
            end: 2.0 * PI,
        }];
        let curve = make_circular_arc_polygon(&arc, 32, 1.0).unwrap();
        let circle = make_ellipse(1.0, 1.0, 32, EllipseKind::Interior).unwrap();
        for j in 0..32 {
            assert!((curve.eta()[j] - circle.eta()[j]).norm() < 1e-14);
            assert!((curve.deta()[j] - circle.deta()[j]).norm() < 1e-14);
            assert!((curve.ddeta()[j] - circle.ddeta()[j]).norm() < 1e-13);
        }
        assert!(curve.corners().is_empty());
    }

    #[test]
    fn arc_chain_must_close() {
        let mut arcs = four_half_circles();
        arcs[1].center += c(1e-3, 0.0);
        assert!(matches!(
            make_circular_arc_polygon(&arcs, 16, 3.0),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn rectangle_vertices() {
        let curve = make_rectangle(1.0, 16, 3.0).unwrap();
        let expected = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(curve.eta()[k * 16], *e);
        }
        let curve = make_rectangle(2.0, 16, 3.0).unwrap();
        assert_eq!(curve.eta()[16], c(1.0, 0.0));
        assert!(make_rectangle(0.0, 16, 3.0).is_err());
        assert!(make_rectangle(-1.0, 16, 3.0).is_err());
    }

    #[test]
    fn opened_g1_is_a_half_disk() {
        let r: f64 = 0.25;
        let curve = make_opened_slit_disk(SlitCase::G1 { r }, 64, 3.0).unwrap();
        let radius = 2.0 * r.sqrt();
        // corners at ∓2i√r, circle image through 2√r = 1 at the panel midpoint
        assert!((curve.eta()[0] - c(0.0, -radius)).norm() < 1e-14);
        assert!((curve.eta()[64] - c(0.0, radius)).norm() < 1e-14);
        assert!((curve.eta()[32] - c(1.0, 0.0)).norm() < 1e-14);
        for j in 0..64 {
            assert!((curve.eta()[j].norm() - radius).abs() < 1e-14);
            assert!(curve.eta()[j].re >= -1e-15);
        }
        for j in 64..128 {
            assert!(curve.eta()[j].re.abs() < 1e-15);
        }
    }

    #[test]
    fn opened_g2_corners_and_tip() {
        let r: f64 = 0.3;
        let curve = make_opened_slit_disk(SlitCase::G2 { r }, 64, 3.0).unwrap();
        let half = 2.0 * r.sqrt() * (1.0 - r).sqrt();
        assert!((curve.eta()[0] - c(0.0, half)).norm() < 1e-14);
        assert!((curve.eta()[64] - c(0.0, -half)).norm() < 1e-14);
        // slit tip z = r maps to the middle of the straight piece
        assert!(curve.eta()[96].norm() < 1e-14);
        assert!(curve.eta()[32].re < 0.0);
        assert!(signed_area(curve.eta()) > 0.0);
    }

    #[test]
    fn opened_slit_derivatives_match_finite_differences() {
        for case in [
            SlitCase::G1 { r: 0.4 },
            SlitCase::G2 { r: 0.6 },
            SlitCase::G3 { r: 0.7, a: 0.25 },
        ] {
            let (k, sigma, shift) = case.sqrt_form();
            let piece = Piece::SqrtCircle {
                k,
                sigma,
                shift,
                start: 0.3,
                end: 2.1,
            };
            let h = 1e-6;
            for u in [0.1, 0.5, 0.9] {
                let (_, d1, d2) = piece.eval(u);
                let fd1 = (piece.eval(u + h).0 - piece.eval(u - h).0) / (2.0 * h);
                let fd2 = (piece.eval(u + h).1 - piece.eval(u - h).1) / (2.0 * h);
                assert!((d1 - fd1).norm() < 1e-7);
                assert!((d2 - fd2).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn slit_parameter_ranges() {
        assert!(make_opened_slit_disk(SlitCase::G1 { r: 1.0 }, 16, 3.0).is_err());
        assert!(make_opened_slit_disk(SlitCase::G2 { r: 0.0 }, 16, 3.0).is_err());
        assert!(make_opened_slit_disk(SlitCase::G3 { r: 0.3, a: 0.5 }, 16, 3.0).is_err());
        assert!(make_opened_slit_disk(SlitCase::G3 { r: 0.5, a: 0.0 }, 16, 3.0).is_ok());
    }

    #[test]
    fn winding_membership() {
        let circle = make_ellipse(1.0, 1.0, 256, EllipseKind::Interior).unwrap();
        assert!(winding_inside(&circle, c(0.0, 0.0)).unwrap());
        assert!(!winding_inside(&circle, c(2.0, 0.0)).unwrap());
        assert!(matches!(
            winding_inside(&circle, c(0.99, 0.0)),
            Err(Error::NearBoundary { .. })
        ));

        let exterior = make_ellipse(1.0, 1.0, 256, EllipseKind::Exterior).unwrap();
        assert!(winding_inside(&exterior, c(2.0, 1.0)).unwrap());
        assert!(!winding_inside(&exterior, c(0.0, 0.0)).unwrap());
    }

    #[test]
    fn winding_agrees_with_ray_casting_on_l_shape() {
        let vertices = l_shape();
        let curve = make_polygon(&vertices, 512, 3.0).unwrap();
        assert!(!winding_inside(&curve, c(3.0, 3.0)).unwrap());
        for &z in &[
            c(0.0, 0.0),
            c(4.0, 0.2),
            c(0.0, 3.0),
            c(-3.0, 0.0),
            c(5.0, 3.5),
            c(2.5, -2.0),
        ] {
            assert_eq!(curve.contains(z), ray_cast(&vertices, z), "{z}");
        }
    }
}

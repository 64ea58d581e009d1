//! Conformal maps onto the unit disk (bounded domains) or the exterior of
//! the unit disk (unbounded domains), their evaluation at interior points,
//! Möbius maps fixed by three points and the slit-opening square roots.
//!
//! Bounded: `Φ(z) = c (z - α) exp((z - α) f(z))`. Unbounded:
//! `Φ(z) = c (z - β) exp(f(z))` with `f(∞) = 0`. On the boundary
//! `A f = γ + h + iρ` where `ρ, h` come from the integral equation and
//! `c = e^{-h}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::curves::{BoundaryCurve, SlitCase};
use crate::error::{Error, Result};
use crate::fourier::TrigInterpolant;
use crate::gnk::{solve_neumann_system, GnkSolution, KernelContext, SolverConfig};

/// Accepted deviation of `|Φ|` on the boundary from its target radius.
const QUALITY_TOLERANCE: f64 = 1e-6;

/// Points closer than this many node spacings to the boundary are flagged.
const NEAR_BOUNDARY_SPACINGS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `Φ'(α) > 0` (resp. `Φ'(∞) > 0`), image of radius 1.
    Unit,
    /// `Φ'(α) = 1` (resp. `Φ'(∞) = 1`), image of radius `e^h`.
    DerivativeOne,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapMode {
    Bounded { alpha: Complex64 },
    Unbounded { beta: Complex64 },
}

/// A solved boundary integral equation together with everything needed to
/// evaluate `Φ` inside the domain.
#[derive(Debug, Clone)]
pub struct DiskMap {
    mode: MapMode,
    normalization: Normalization,
    curve: BoundaryCurve,
    f_boundary: Vec<Complex64>,
    phi_boundary: Vec<Complex64>,
    h: f64,
    solution: GnkSolution,
}

/// Values of `Φ` at a batch of points, with a flag for points close enough
/// to the boundary that the discrete Cauchy sums lose accuracy.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub values: Vec<Complex64>,
    pub near_boundary: Vec<bool>,
}

/// Map the domain inside a counterclockwise curve onto a disk centred at 0
/// with `Φ(α) = 0`.
pub fn map_bounded(
    curve: &BoundaryCurve,
    alpha: Complex64,
    normalization: Normalization,
    cfg: &SolverConfig,
) -> Result<DiskMap> {
    let ctx = KernelContext::bounded(curve, alpha)?;
    let gamma: Vec<f64> = curve.eta().iter().map(|e| -(e - alpha).norm().ln()).collect();
    let solution = solve_neumann_system(&ctx, &gamma, cfg)?;
    DiskMap::assemble(curve, MapMode::Bounded { alpha }, normalization, &gamma, ctx.a(), solution)
}

/// Map the domain outside a clockwise curve onto the exterior of a disk
/// with `Φ(∞) = ∞`. `β` must lie in the bounded complement.
pub fn map_unbounded(curve: &BoundaryCurve, beta: Complex64, cfg: &SolverConfig) -> Result<DiskMap> {
    map_unbounded_normalized(curve, beta, Normalization::Unit, cfg)
}

pub fn map_unbounded_normalized(
    curve: &BoundaryCurve,
    beta: Complex64,
    normalization: Normalization,
    cfg: &SolverConfig,
) -> Result<DiskMap> {
    let ctx = KernelContext::unbounded(curve)?;
    if curve.contains(beta) || curve.node_distance(beta) == 0.0 {
        return Err(Error::param("beta", "auxiliary point must lie in the bounded complement"));
    }
    let gamma: Vec<f64> = curve.eta().iter().map(|e| -(e - beta).norm().ln()).collect();
    let solution = solve_neumann_system(&ctx, &gamma, cfg)?;
    DiskMap::assemble(curve, MapMode::Unbounded { beta }, normalization, &gamma, ctx.a(), solution)
}

/// Node centroid, the default auxiliary point for unbounded maps. Works for
/// curves whose complement is star-shaped about it, e.g. ellipses.
pub fn default_beta(curve: &BoundaryCurve) -> Complex64 {
    curve.eta().iter().sum::<Complex64>() / curve.n() as f64
}

impl DiskMap {
    fn assemble(
        curve: &BoundaryCurve,
        mode: MapMode,
        normalization: Normalization,
        gamma: &[f64],
        a: &[Complex64],
        solution: GnkSolution,
    ) -> Result<Self> {
        let h = solution.h;
        let f_boundary: Vec<Complex64> = gamma
            .iter()
            .zip(&solution.rho)
            .zip(a)
            .map(|((g, rho), a)| Complex64::new(g + h, *rho) / a)
            .collect();
        let scale = match normalization {
            Normalization::Unit => (-h).exp(),
            Normalization::DerivativeOne => 1.0,
        };
        let phi_boundary: Vec<Complex64> = curve
            .eta()
            .iter()
            .zip(&f_boundary)
            .map(|(&e, &f)| match mode {
                MapMode::Bounded { alpha } => scale * (e - alpha) * ((e - alpha) * f).exp(),
                MapMode::Unbounded { beta } => scale * (e - beta) * f.exp(),
            })
            .collect();
        let map = Self {
            mode,
            normalization,
            curve: curve.clone(),
            f_boundary,
            phi_boundary,
            h,
            solution,
        };
        let target = map.image_radius();
        let worst = map
            .phi_boundary
            .iter()
            .map(|p| (p.norm() - target).abs())
            .fold(0.0, f64::max);
        if !(worst <= QUALITY_TOLERANCE * target.max(1.0)) {
            return Err(Error::Quality(format!(
                "boundary image deviates from radius {target} by {worst:e}"
            )));
        }
        Ok(map)
    }

    pub fn mode(&self) -> MapMode {
        self.mode
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn curve(&self) -> &BoundaryCurve {
        &self.curve
    }

    /// `f(η(t_j))`.
    pub fn f_boundary(&self) -> &[Complex64] {
        &self.f_boundary
    }

    /// `Φ(η(t_j))`.
    pub fn phi_boundary(&self) -> &[Complex64] {
        &self.phi_boundary
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `c = e^{-h}`.
    pub fn c(&self) -> f64 {
        (-self.h).exp()
    }

    /// Conformal radius `e^h` with respect to `α` or `∞`.
    pub fn conformal_radius(&self) -> f64 {
        self.h.exp()
    }

    pub fn solution(&self) -> &GnkSolution {
        &self.solution
    }

    /// Radius of the image circle.
    pub fn image_radius(&self) -> f64 {
        match self.normalization {
            Normalization::Unit => 1.0,
            Normalization::DerivativeOne => self.h.exp(),
        }
    }

    /// `f(z)` by the normalized discrete Cauchy formula. `z` must not be a
    /// node.
    fn eval_f(&self, z: Complex64) -> Complex64 {
        self.eval_f_with_limit(z, Complex64::new(0.0, 0.0))
    }

    /// As [`Self::eval_f`], with `f(∞) = f_inf` in unbounded mode (ignored
    /// for bounded maps). Exact when the density is the constant `f_inf`.
    fn eval_f_with_limit(&self, z: Complex64, f_inf: Complex64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let (mut num, mut den) = (zero, zero);
        for ((e, d), f) in self.curve.eta().iter().zip(self.curve.deta()).zip(&self.f_boundary) {
            let w = d / (e - z);
            num += f * w;
            den += w;
        }
        match self.mode {
            MapMode::Bounded { .. } => num / den,
            MapMode::Unbounded { .. } => {
                // For a clockwise curve the Cauchy integral gives
                // f(z) - f(∞); the 2πi terms carry the value at ∞.
                let weight = self.curve.weight();
                let two_pi_i = Complex64::new(0.0, 2.0 * PI);
                (weight * num + two_pi_i * f_inf) / (weight * den + two_pi_i)
            }
        }
    }

    fn compose(&self, z: Complex64, f: Complex64) -> Complex64 {
        let scale = match self.normalization {
            Normalization::Unit => self.c(),
            Normalization::DerivativeOne => 1.0,
        };
        match self.mode {
            MapMode::Bounded { alpha } => scale * (z - alpha) * ((z - alpha) * f).exp(),
            MapMode::Unbounded { beta } => scale * (z - beta) * f.exp(),
        }
    }

    /// `Φ(z)` for one point of the domain.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        self.cauchy_eval(&[z]).map(|e| e.values[0])
    }

    /// `Φ` at a batch of points of the domain. Boundary nodes return their
    /// boundary values.
    pub fn cauchy_eval(&self, points: &[Complex64]) -> Result<Evaluation> {
        let spacing = self.curve.max_spacing();
        let mut values = Vec::with_capacity(points.len());
        let mut near_boundary = Vec::with_capacity(points.len());
        for &z in points {
            let distance = self.curve.node_distance(z);
            if distance == 0.0 {
                let j = self.curve.eta().iter().position(|&e| e == z).unwrap_or(0);
                values.push(self.phi_boundary[j]);
                near_boundary.push(true);
                continue;
            }
            if !self.curve.contains(z) {
                return Err(Error::PointOutside { re: z.re, im: z.im });
            }
            values.push(self.compose(z, self.eval_f(z)));
            near_boundary.push(distance < NEAR_BOUNDARY_SPACINGS * spacing);
        }
        Ok(Evaluation { values, near_boundary })
    }

    /// Argument of `Φ(η(t))` at an arbitrary parameter, continuous in `t`
    /// and equal to the node values on the grid. Bounded maps only.
    pub fn boundary_angle(&self, t: f64) -> Result<f64> {
        if !matches!(self.mode, MapMode::Bounded { .. }) {
            return Err(Error::param("map", "boundary correspondence needs a bounded map"));
        }
        let unwrapped = self.unwrapped_angles();
        let nodes = self.curve.t();
        let n = nodes.len();
        let turns = (t / (2.0 * PI)).floor();
        let local = t - 2.0 * PI * turns;
        let j = (local / self.curve.weight()).round() as usize;
        let on_node = (local - j as f64 * self.curve.weight()).abs() <= 1e-14 * (1.0 + local);
        let angle = if on_node {
            let wrap = j / n;
            unwrapped[j % n] + 2.0 * PI * wrap as f64
        } else {
            let residual: Vec<f64> = unwrapped.iter().zip(nodes).map(|(a, t)| a - t).collect();
            TrigInterpolant::new(&residual)?.eval(local) + local
        };
        Ok(angle + 2.0 * PI * turns)
    }

    /// `Φ(η(t))` at an arbitrary parameter via [`Self::boundary_angle`].
    pub fn boundary_point(&self, t: f64) -> Result<Complex64> {
        Ok(Complex64::from_polar(self.image_radius(), self.boundary_angle(t)?))
    }

    fn unwrapped_angles(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.phi_boundary.len());
        let mut prev = self.phi_boundary[0].arg();
        out.push(prev);
        for pair in self.phi_boundary.windows(2) {
            prev += (pair[1] / pair[0]).arg();
            out.push(prev);
        }
        out
    }
}

/// Free-function form of [`DiskMap::cauchy_eval`].
pub fn cauchy_eval(map: &DiskMap, points: &[Complex64]) -> Result<Evaluation> {
    map.cauchy_eval(points)
}

/// `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

fn check_distinct(points: &[Complex64; 3], label: &'static str) -> Result<()> {
    let scale = points.iter().map(|p| p.norm()).fold(1.0, f64::max);
    for i in 0..3 {
        for j in i + 1..3 {
            if (points[i] - points[j]).norm() <= 1e-14 * scale {
                return Err(Error::Degenerate(format!("{label} points {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

impl Mobius {
    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        Self { a: one, b: zero, c: zero, d: one }
    }

    /// Sends `z1, z2, z3` to `0, 1, ∞`.
    fn to_standard(z: &[Complex64; 3]) -> Self {
        let (p, q) = (z[1] - z[2], z[1] - z[0]);
        Self {
            a: p,
            b: -z[0] * p,
            c: q,
            d: -z[2] * q,
        }
    }

    /// The unique Möbius map with `sources[k] ↦ targets[k]`.
    pub fn from_three_points(sources: [Complex64; 3], targets: [Complex64; 3]) -> Result<Self> {
        check_distinct(&sources, "source")?;
        check_distinct(&targets, "target")?;
        Ok(Self::to_standard(&targets).inverse().compose(&Self::to_standard(&sources)).normalized())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }

    fn normalized(self) -> Self {
        let det = (self.a * self.d - self.b * self.c).sqrt();
        Self {
            a: self.a / det,
            b: self.b / det,
            c: self.c / det,
            d: self.d / det,
        }
    }
}

/// Free-function form of [`Mobius::from_three_points`].
pub fn mobius_three_points(sources: [Complex64; 3], targets: [Complex64; 3]) -> Result<Mobius> {
    Mobius::from_three_points(sources, targets)
}

/// `|z1, z2, z3, z4| = |z1 - z3||z2 - z4| / (|z1 - z2||z3 - z4|)`.
pub fn absolute_ratio(z1: Complex64, z2: Complex64, z3: Complex64, z4: Complex64) -> f64 {
    (z1 - z3).norm() * (z2 - z4).norm() / ((z1 - z2).norm() * (z3 - z4).norm())
}

/// The square-root map that opens the slit of `case`: `2√r√z` (G1),
/// `2i√r√(z - r)` with the cut along `[r, ∞)` (G2), `2√(r-a)√(z - a)` (G3).
/// It sends the base point to [`SlitCase::opened_base_point`] with
/// derivative 1.
pub fn slit_opening_forward(case: SlitCase, z: Complex64) -> Result<Complex64> {
    case.validate()?;
    let (k, sigma, shift) = case.sqrt_form();
    let w = sigma * (z - shift);
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(Error::param("z", format!("{z} lies on the branch cut")));
    }
    Ok(k * w.sqrt())
}

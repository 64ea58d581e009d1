use std::f64::consts::PI;

use num_complex::Complex64;

use super::field::{GridSpec, ScalarField};
use crate::curves::{make_polygon, BoundaryCurve};
use crate::disk_maps::{map_bounded, mobius_three_points, DiskMap, Mobius, Normalization};
use crate::error::{Error, Result};
use crate::gnk::SolverConfig;

/// `ω(w)` for the unit disk and the right half of the unit circle, via the
/// two-argument arctangent of `(i - w)/(1 - iw)`. Lies in `(0, 1)` for
/// `|w| < 1`.
pub fn disk_harmonic_measure(w: Complex64) -> f64 {
    let i = Complex64::i();
    ((i - w) / (1.0 - i * w)).arg() / PI
}

/// Harmonic measures of the sides of a polygon, sharing one Riemann map.
/// Sides are numbered from 0: side `k` runs from vertex `k` to `k + 1`.
#[derive(Debug, Clone)]
pub struct PolygonHarmonicMeasure {
    map: DiskMap,
    sides: Vec<Mobius>,
}

impl PolygonHarmonicMeasure {
    pub fn new(vertices: &[Complex64], alpha: Complex64, n_s: usize, p: f64, cfg: &SolverConfig) -> Result<Self> {
        let curve = make_polygon(vertices, n_s, p)?;
        let map = map_bounded(&curve, alpha, Normalization::Unit, cfg)?;
        let m = vertices.len();
        let phi = map.phi_boundary();
        let sides = (0..m)
            .map(|k| {
                let ang1 = phi[k * n_s].arg();
                let mut ang3 = phi[((k + 1) % m) * n_s].arg();
                if ang3 < ang1 {
                    ang3 += 2.0 * PI;
                }
                let ang2 = 0.5 * (ang1 + ang3);
                let i = Complex64::i();
                mobius_three_points(
                    [Complex64::cis(ang1), Complex64::cis(ang2), Complex64::cis(ang3)],
                    [-i, Complex64::new(1.0, 0.0), i],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { map, sides })
    }

    pub fn sides(&self) -> usize {
        self.sides.len()
    }

    pub fn map(&self) -> &DiskMap {
        &self.map
    }

    fn check_side(&self, side: usize) -> Result<()> {
        if side >= self.sides.len() {
            return Err(Error::param(
                "side",
                format!("side {side} out of range for {} sides", self.sides.len()),
            ));
        }
        Ok(())
    }

    fn measure_at(&self, side: usize, w: Complex64) -> f64 {
        disk_harmonic_measure(self.sides[side].eval(w))
    }

    /// `ω(z, L_side)` at one interior point.
    pub fn eval(&self, side: usize, z: Complex64) -> Result<f64> {
        self.check_side(side)?;
        Ok(self.measure_at(side, self.interior_image(z)?))
    }

    fn interior_image(&self, z: Complex64) -> Result<Complex64> {
        let curve = self.map.curve();
        if curve.node_distance(z) == 0.0 {
            return Err(Error::NearBoundary { re: z.re, im: z.im, distance: 0.0 });
        }
        self.map.eval(z)
    }

    pub fn eval_many(&self, side: usize, points: &[Complex64]) -> Result<Vec<f64>> {
        self.check_side(side)?;
        points
            .iter()
            .map(|&z| Ok(self.measure_at(side, self.interior_image(z)?)))
            .collect()
    }

    /// `Σ_k ω(z, L_k)`, identically one in exact arithmetic.
    pub fn sum(&self, z: Complex64) -> Result<f64> {
        let w = self.interior_image(z)?;
        Ok((0..self.sides.len()).map(|k| self.measure_at(k, w)).sum())
    }

    /// `ω(·, L_side)` on a grid from the shared map.
    pub fn field(&self, side: usize, grid: &GridSpec) -> Result<ScalarField> {
        self.check_side(side)?;
        ScalarField::sample(self.map.curve(), grid, |points| {
            points
                .iter()
                .map(|&z| self.interior_image(z).ok().map(|w| self.measure_at(side, w)))
                .collect()
        })
    }

    /// `Σ_k ω(·, L_k)` on a grid.
    pub fn sum_field(&self, grid: &GridSpec) -> Result<ScalarField> {
        ScalarField::sample(self.map.curve(), grid, |points| {
            points.iter().map(|&z| self.sum(z).ok()).collect()
        })
    }
}

/// `ω(z, L_side)` at each point, for side `side` (0-based) of the polygon.
pub fn harmonic_measure(
    vertices: &[Complex64],
    side: usize,
    alpha: Complex64,
    points: &[Complex64],
    n_s: usize,
    p: f64,
    cfg: &SolverConfig,
) -> Result<Vec<f64>> {
    PolygonHarmonicMeasure::new(vertices, alpha, n_s, p, cfg)?.eval_many(side, points)
}

/// A point well inside the domain: the node centroid when it is inside,
/// otherwise the sample of a 65×65 box grid farthest from the nodes.
pub fn interior_point(curve: &BoundaryCurve) -> Complex64 {
    let centroid = curve.eta().iter().sum::<Complex64>() / curve.n() as f64;
    if curve.contains(centroid) && curve.node_distance(centroid) > 10.0 * curve.max_spacing() {
        return centroid;
    }
    let (mut lo, mut hi) = (curve.eta()[0], curve.eta()[0]);
    for e in curve.eta() {
        lo = Complex64::new(lo.re.min(e.re), lo.im.min(e.im));
        hi = Complex64::new(hi.re.max(e.re), hi.im.max(e.im));
    }
    let steps = 64;
    let mut best = (f64::NEG_INFINITY, centroid);
    for i in 1..steps {
        for j in 1..steps {
            let z = Complex64::new(
                lo.re + (hi.re - lo.re) * i as f64 / steps as f64,
                lo.im + (hi.im - lo.im) * j as f64 / steps as f64,
            );
            if curve.contains(z) {
                let d = curve.node_distance(z);
                if d > best.0 {
                    best = (d, z);
                }
            }
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::DEFAULT_GRADING;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square() -> Vec<Complex64> {
        vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
    }

    fn pentagon() -> Vec<Complex64> {
        vec![c(2.0, -2.0), c(2.0, 1.0), c(0.0, 2.0), c(-2.0, 0.0), c(-1.0, -3.0)]
    }

    #[test]
    fn disk_formula() {
        assert!((disk_harmonic_measure(c(0.0, 0.0)) - 0.5).abs() < 1e-15);
        assert!(disk_harmonic_measure(c(0.999, 0.0)) > 0.99);
        assert!(disk_harmonic_measure(c(-0.999, 0.0)) < 0.01);
        // Half-plane check: ω(w) + ω(-w) = 1.
        let w = c(0.3, -0.55);
        assert!((disk_harmonic_measure(w) + disk_harmonic_measure(-w) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn square_quarter() {
        let hm = PolygonHarmonicMeasure::new(&square(), c(0.0, 0.0), 128, DEFAULT_GRADING, &SolverConfig::default()).unwrap();
        for k in 0..4 {
            assert!((hm.eval(k, c(0.0, 0.0)).unwrap() - 0.25).abs() < 1e-10);
        }
        assert!(hm.eval(4, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn pentagon_partition_and_limits() {
        let verts = pentagon();
        let alpha = c(0.0, -0.5);
        let hm = PolygonHarmonicMeasure::new(&verts, alpha, 256, DEFAULT_GRADING, &SolverConfig::default()).unwrap();
        for z in [c(0.0, 0.0), c(1.5, -1.5), c(-1.0, 0.5), c(0.5, 1.2)] {
            assert!((hm.sum(z).unwrap() - 1.0).abs() < 1e-8);
            for k in 0..5 {
                let w = hm.eval(k, z).unwrap();
                assert!(w > 0.0 && w < 1.0);
            }
        }
        // Side 0 is the segment x = 2 from -2i to i.
        let near = hm.eval(0, c(1.95, -0.5)).unwrap();
        let far = hm.eval(0, c(-1.2, -1.0)).unwrap();
        assert!(near > 0.9 && far < 0.1, "{near} {far}");
        assert!(hm.eval(0, c(5.0, 0.0)).is_err());
    }

    #[test]
    fn interior_point_is_inside() {
        let l = [c(6.0, 1.0), c(1.0, 1.0), c(1.0, 4.0), c(-1.0, 4.0), c(-1.0, -1.0), c(6.0, -1.0)];
        let curve = make_polygon(&l, 64, DEFAULT_GRADING).unwrap();
        let z = interior_point(&curve);
        assert!(curve.contains(z));
        assert!(curve.node_distance(z) > 0.5);
    }
}

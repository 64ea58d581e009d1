use num_complex::Complex64;

use super::field::{GridSpec, ScalarField};
use crate::curves::BoundaryCurve;
use crate::disk_maps::{map_bounded, DiskMap, Normalization};
use crate::error::{Error, Result};
use crate::gnk::SolverConfig;

/// Poincaré-disk distance
/// `2 asinh(|w1 - w2| / √((1 - |w1|²)(1 - |w2|²)))`.
pub fn disk_distance(w1: Complex64, w2: Complex64) -> Result<f64> {
    let (a, b) = (1.0 - w1.norm_sqr(), 1.0 - w2.norm_sqr());
    for (w, gap) in [(w1, a), (w2, b)] {
        if !(gap > 0.0) {
            return Err(Error::NearBoundary {
                re: w.re,
                im: w.im,
                distance: 0.0,
            });
        }
    }
    Ok(2.0 * ((w1 - w2).norm() / (a * b).sqrt()).asinh())
}

/// Hyperbolic metric of a bounded domain, pulled back through one solved
/// Riemann map so any number of distances reuse a single solve.
#[derive(Debug, Clone)]
pub struct HyperbolicMetric {
    map: DiskMap,
}

impl HyperbolicMetric {
    pub fn new(curve: &BoundaryCurve, alpha: Complex64, cfg: &SolverConfig) -> Result<Self> {
        Ok(Self {
            map: map_bounded(curve, alpha, Normalization::Unit, cfg)?,
        })
    }

    pub fn map(&self) -> &DiskMap {
        &self.map
    }

    fn image(&self, z: Complex64) -> Result<Complex64> {
        let w = self.map.eval(z)?;
        if w.norm() >= 1.0 {
            return Err(Error::NearBoundary {
                re: z.re,
                im: z.im,
                distance: self.map.curve().node_distance(z),
            });
        }
        Ok(w)
    }

    pub fn distance(&self, z1: Complex64, z2: Complex64) -> Result<f64> {
        disk_distance(self.image(z1)?, self.image(z2)?)
    }

    /// Distances from `z1` to each point; `None` where a point is outside,
    /// on the boundary, or numerically mapped onto the unit circle.
    pub fn distances_from(&self, z1: Complex64, points: &[Complex64]) -> Result<Vec<Option<f64>>> {
        let w1 = self.image(z1)?;
        Ok(points
            .iter()
            .map(|&z| self.image(z).ok().and_then(|w| disk_distance(w1, w).ok()))
            .collect())
    }
}

/// `ρ_G(z1, z2)` for the bounded domain inside `curve`. Independent of the
/// interior point `alpha` used to normalize the map.
pub fn hyperbolic_distance(
    curve: &BoundaryCurve,
    alpha: Complex64,
    z1: Complex64,
    z2: Complex64,
    cfg: &SolverConfig,
) -> Result<f64> {
    HyperbolicMetric::new(curve, alpha, cfg)?.distance(z1, z2)
}

/// `u(x, y) = ρ_G(z1, x + iy)` on a grid, from one solve.
pub fn hyperbolic_distance_field(
    curve: &BoundaryCurve,
    alpha: Complex64,
    z1: Complex64,
    grid: &GridSpec,
    cfg: &SolverConfig,
) -> Result<ScalarField> {
    grid.validate()?;
    let metric = HyperbolicMetric::new(curve, alpha, cfg)?;
    metric.image(z1)?;
    ScalarField::sample(curve, grid, |points| {
        metric
            .distances_from(z1, points)
            .unwrap_or_else(|_| vec![None; points.len()])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{make_ellipse, EllipseKind};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn disk_closed_form() {
        let d = disk_distance(c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((d - 3f64.ln()).abs() < 1e-15);
        assert!((d - 2.0 * 0.5f64.atanh()).abs() < 1e-15);
        assert!(disk_distance(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn unit_disk_metric() {
        let circle = make_ellipse(1.0, 1.0, 64, EllipseKind::Interior).unwrap();
        let d = hyperbolic_distance(&circle, c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), &SolverConfig::default()).unwrap();
        assert!((d - 1.098_612_288_668_11).abs() < 1e-12);
        let shifted = hyperbolic_distance(&circle, c(0.3, -0.2), c(0.0, 0.0), c(0.5, 0.0), &SolverConfig::default()).unwrap();
        assert!((shifted - d).abs() < 1e-10);
    }

    #[test]
    fn unit_disk_field_ring() {
        let circle = make_ellipse(1.0, 1.0, 512, EllipseKind::Interior).unwrap();
        let grid = GridSpec { xmin: -1.0, xmax: 1.0, ymin: -1.0, ymax: 1.0, nx: 41, ny: 41 };
        let field = hyperbolic_distance_field(&circle, c(0.0, 0.0), c(0.0, 0.0), &grid, &SolverConfig::default()).unwrap();
        assert_eq!(field.nearest(c(0.0, 0.0)), Some(0.0));
        for z in [c(0.5, 0.0), c(0.0, -0.5), c(-0.3, 0.4)] {
            assert!((field.nearest(z).unwrap() - 3f64.ln()).abs() < 1e-10);
        }
        assert!(field.nearest(c(1.0, 1.0)).is_none());
    }
}

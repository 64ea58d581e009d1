use std::f64::consts::PI;

use num_complex::Complex64;

use crate::curves::{make_opened_slit_disk, BoundaryCurve, SlitCase};
use crate::disk_maps::{default_beta, map_bounded, map_unbounded, Normalization};
use crate::error::Result;
use crate::gnk::SolverConfig;

/// Point with respect to which the radius or modulus is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Base {
    /// Interior point of a bounded domain (counterclockwise curve).
    Point(Complex64),
    /// `∞` for the exterior of a clockwise curve. `beta` defaults to the
    /// node centroid.
    Infinity { beta: Option<Complex64> },
}

fn solved_h(curve: &BoundaryCurve, base: Base, cfg: &SolverConfig) -> Result<f64> {
    let map = match base {
        Base::Point(alpha) => map_bounded(curve, alpha, Normalization::Unit, cfg)?,
        Base::Infinity { beta } => {
            map_unbounded(curve, beta.unwrap_or_else(|| default_beta(curve)), cfg)?
        }
    };
    Ok(map.h())
}

/// `R(G, α) = e^h` or `R(G, ∞) = e^h`.
pub fn conformal_radius(curve: &BoundaryCurve, base: Base, cfg: &SolverConfig) -> Result<f64> {
    solved_h(curve, base, cfg).map(f64::exp)
}

/// `m = h/2π` at a finite point, `m = -h/2π` at infinity.
pub fn reduced_modulus(curve: &BoundaryCurve, base: Base, cfg: &SolverConfig) -> Result<f64> {
    let h = solved_h(curve, base, cfg)?;
    Ok(match base {
        Base::Point(_) => h / (2.0 * PI),
        Base::Infinity { .. } => -h / (2.0 * PI),
    })
}

/// Reduced modulus of a slit disk at its base point, computed on the
/// opened domain. The opening map has unit derivative at the base point so
/// the modulus carries over unchanged.
pub fn reduced_modulus_slit_disk(case: SlitCase, n_s: usize, p: f64, cfg: &SolverConfig) -> Result<f64> {
    let curve = make_opened_slit_disk(case, n_s, p)?;
    reduced_modulus(&curve, Base::Point(case.opened_base_point()), cfg)
}

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::curves::{make_rectangle, BoundaryCurve, DEFAULT_GRADING};
use crate::disk_maps::{map_bounded, mobius_three_points, Normalization};
use crate::error::{Error, Result};
use crate::gnk::SolverConfig;

/// Settings for the rectangle iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Nodes per rectangle side.
    pub n_s: usize,
    pub grading_p: f64,
    /// Stop once `|r_k - r_{k-1}| < eps`.
    pub eps: f64,
    pub max_iter: usize,
    pub solver: SolverConfig,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            n_s: 512,
            grading_p: DEFAULT_GRADING,
            eps: 0.5e-13,
            max_iter: 50,
            solver: SolverConfig::default(),
        }
    }
}

/// History of the iteration. `z4_images[k]` is the image of `i r_k`,
/// `deltas[k]` and `factors[k]` are the correction and acceleration factor
/// that produced `r_{k+1}` (the factor after any clamp halving).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadModulusTrace {
    pub r_iterates: Vec<f64>,
    pub z4_images: Vec<Complex64>,
    pub deltas: Vec<f64>,
    pub factors: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
    pub r: f64,
}

impl QuadModulusTrace {
    /// `|r_k - r_{k-1}|` for `k = 1, 2, ...`.
    pub fn successive_errors(&self) -> Vec<f64> {
        self.r_iterates.windows(2).map(|w| (w[1] - w[0]).abs()).collect()
    }
}

fn validate_points(z: &[Complex64; 4]) -> Result<()> {
    for (k, p) in z.iter().enumerate() {
        if !p.re.is_finite() || !p.im.is_finite() || (p.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::param("points", format!("point {} is not on the unit circle", k + 1)));
        }
    }
    // Counterclockwise order: the arcs z_k -> z_{k+1} sum to one turn.
    let mut total = 0.0;
    for k in 0..4 {
        let mut arc = (z[(k + 1) % 4] / z[k]).arg();
        if arc < 0.0 {
            arc += 2.0 * PI;
        }
        if arc < 1e-14 || 2.0 * PI - arc < 1e-14 {
            return Err(Error::Degenerate(format!(
                "points {} and {} coincide",
                k + 1,
                (k + 1) % 4 + 1
            )));
        }
        total += arc;
    }
    if (total - 2.0 * PI).abs() > 1e-9 {
        return Err(Error::param("points", "marked points must be in counterclockwise order"));
    }
    Ok(())
}

/// Image of `i r` under the map of the rectangle `R_r` onto the disk that
/// sends `0, 1, 1 + ir` to `z1, z2, z3`.
fn fourth_image(r: f64, z: &[Complex64; 4], cfg: &QuadConfig) -> Result<Complex64> {
    let rect = make_rectangle(r, cfg.n_s, cfg.grading_p)?;
    let alpha = Complex64::new(0.5, 0.5 * r);
    let map = map_bounded(&rect, alpha, Normalization::Unit, &cfg.solver)?;
    let phi = map.phi_boundary();
    let corner = |k: usize| {
        let w = phi[k * cfg.n_s];
        w / w.norm()
    };
    let psi2 = mobius_three_points([corner(0), corner(1), corner(2)], [z[0], z[1], z[2]])?;
    let w = psi2.eval(corner(3));
    Ok(w / w.norm())
}

/// Conformal modulus `M(D; z1, z2, z3, z4)` of the unit disk with four
/// counterclockwise marked points: the `r` for which the rectangle with
/// vertices `0, 1, 1 + ir, ir` is conformally equivalent.
pub fn quad_modulus(z: [Complex64; 4], cfg: &QuadConfig) -> Result<QuadModulusTrace> {
    validate_points(&z)?;
    if cfg.max_iter == 0 || !(cfg.eps > 0.0) {
        return Err(Error::param("quad", "need max_iter >= 1 and eps > 0"));
    }
    let mut trace = QuadModulusTrace {
        r_iterates: vec![1.0],
        z4_images: Vec::new(),
        deltas: Vec::new(),
        factors: Vec::new(),
        converged: false,
        iterations: 0,
        r: 1.0,
    };
    let mut angles: Vec<f64> = Vec::new();
    let mut delta = 1.0;
    for k in 1..=cfg.max_iter {
        let r_prev = *trace.r_iterates.last().unwrap();
        let z4k = fourth_image(r_prev, &z, cfg)?;
        let angle = (z4k / z[3]).arg();
        trace.z4_images.push(z4k);
        angles.push(angle);
        let correction = angle / (2.0 * PI);

        // δ_0 = δ_1 = 1; afterwards steer by the three latest images.
        if k >= 3 {
            let (a, b, c) = (angles[k - 3], angles[k - 2], angles[k - 1]);
            if a * b > 0.0 && b * c > 0.0 {
                delta *= 2.0;
            } else if a * b < 0.0 && b * c < 0.0 {
                delta *= 0.5;
            }
        } else {
            delta = 1.0;
        }
        let limit = 0.2 * r_prev;
        let mut step = delta * correction;
        if step.abs() > limit {
            step = limit.copysign(step);
            delta *= 0.5;
        }
        let r_next = r_prev + step;
        trace.deltas.push(correction);
        trace.factors.push(delta);
        trace.r_iterates.push(r_next);
        trace.iterations = k;
        trace.r = r_next;
        if (r_next - r_prev).abs() < cfg.eps {
            trace.converged = true;
            break;
        }
    }
    Ok(trace)
}

/// Modulus of a general bounded domain with four marked boundary points,
/// given by strictly increasing curve parameters in `[0, 2π)`. The domain
/// is first mapped onto the unit disk with `Φ(α) = 0`.
pub fn quad_modulus_general(
    curve: &BoundaryCurve,
    alpha: Complex64,
    params: [f64; 4],
    cfg: &QuadConfig,
) -> Result<QuadModulusTrace> {
    let increasing = params.windows(2).all(|w| w[0] < w[1]);
    if !increasing || params[0] < 0.0 || params[3] >= 2.0 * PI {
        return Err(Error::param("params", "need 0 <= t1 < t2 < t3 < t4 < 2π"));
    }
    let map = map_bounded(curve, alpha, Normalization::Unit, &cfg.solver)?;
    let mut z = [Complex64::new(0.0, 0.0); 4];
    for (zk, &t) in z.iter_mut().zip(&params) {
        *zk = map.boundary_point(t)?;
    }
    quad_modulus(z, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_circle(fractions: [f64; 4]) -> [Complex64; 4] {
        fractions.map(|f| Complex64::cis(f * PI))
    }

    fn small() -> QuadConfig {
        QuadConfig {
            n_s: 128,
            ..QuadConfig::default()
        }
    }

    #[test]
    fn symmetric_quad_is_square() {
        let trace = quad_modulus(on_circle([-1.0, -0.5, 0.0, 0.5]), &small()).unwrap();
        assert!(trace.converged);
        assert_eq!(trace.iterations, 1);
        assert!((trace.r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn q2_close_to_sqrt2() {
        let trace = quad_modulus(on_circle([-0.5, -0.25, 0.25, 0.5]), &small()).unwrap();
        assert!(trace.converged, "{:?}", trace.r_iterates);
        assert!((trace.r - 2f64.sqrt()).abs() < 1e-8, "{}", trace.r);
        for (w, r) in trace.r_iterates.windows(2).zip(&trace.r_iterates) {
            assert!((w[1] - w[0]).abs() <= 0.2 * r * (1.0 + 1e-15));
            assert!(w[1] > 0.0);
        }
        assert_eq!(trace.successive_errors().len(), trace.iterations);
    }

    #[test]
    fn rejects_bad_points() {
        let cfg = small();
        assert!(quad_modulus(on_circle([0.0, 0.5, 0.25, 1.0]), &cfg).is_err());
        let mut z = on_circle([0.0, 0.5, 1.0, 1.5]);
        z[1] = z[0];
        assert!(matches!(quad_modulus(z, &cfg), Err(Error::Degenerate(_))));
        z = on_circle([0.0, 0.5, 1.0, 1.5]);
        z[2] *= 1.1;
        assert!(quad_modulus(z, &cfg).is_err());
    }
}

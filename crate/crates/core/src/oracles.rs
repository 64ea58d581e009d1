//! Closed-form ground truth: complete elliptic integrals through the AGM,
//! the Grötzsch modulus `μ(s) = (π/2) K(s')/K(s)` and its inverse, the
//! reduced moduli of ellipses and slit disks, the modulus of a quadrilateral
//! in the unit disk, and the crowding relations between `r` and `θ₂`.
//!
//! Many functions here take a modulus together with its complement
//! `s' = √(1 - s²)`; near `s = 1` the complement cannot be recovered from a
//! rounded `s`, so callers that know both pass both.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use crate::curves::SlitCase;
use crate::error::{Error, Result};

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::param("agm", format!("arguments must be positive, got {a}, {b}")));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a.max(b) {
            break;
        }
        let next = (0.5 * (a + b), (a * b).sqrt());
        a = next.0;
        b = next.1;
    }
    Ok(0.5 * (a + b))
}

fn check_modulus(s: f64) -> Result<()> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::param("s", format!("modulus must lie in [0, 1), got {s}")));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind,
/// `K(s) = ∫₀¹ dx / √((1-x²)(1-s²x²)) = π / (2 agm(1, s'))`.
pub fn ellip_k(s: f64) -> Result<f64> {
    check_modulus(s)?;
    Ok(FRAC_PI_2 / agm(1.0, (1.0 - s * s).sqrt())?)
}

/// `K(s)` and `K(s')` for a modulus in `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair {
    pub s: f64,
    pub k: f64,
    pub kprime: f64,
}

impl EllipticPair {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::param("s", format!("modulus must lie in (0, 1), got {s}")));
        }
        let sp = (1.0 - s * s).sqrt();
        Ok(Self {
            s,
            k: FRAC_PI_2 / agm(1.0, sp)?,
            kprime: FRAC_PI_2 / agm(1.0, s)?,
        })
    }
}

/// `μ` from a modulus and its complement, both in `(0, 1)`.
pub fn mu_pair(s: f64, sp: f64) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0 && sp > 0.0 && sp <= 1.0) {
        return Err(Error::param("s", format!("modulus pair must lie in (0, 1], got {s}, {sp}")));
    }
    Ok(FRAC_PI_2 * agm(1.0, sp)? / agm(1.0, s)?)
}

/// Grötzsch ring modulus `μ(s)`, strictly decreasing from `∞` to `0` on `(0, 1)`.
pub fn mu(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::param("s", format!("modulus must lie in (0, 1), got {s}")));
    }
    mu_pair(s, ((1.0 - s) * (1.0 + s)).sqrt())
}

/// Solve `μ(s) = y` for `y ≥ π/2`, i.e. `s ≤ 1/√2`, in the variable
/// `x = ln s` by bracketed Newton. `dμ/dx = -agm(1, s')² / s'²`.
fn mu_inv_small(y: f64) -> Result<f64> {
    let value = |x: f64| -> Result<f64> {
        let s = x.exp();
        mu_pair(s, (1.0 - s * s).sqrt())
    };
    let tol = 1e-14 * y.max(1.0);
    // μ(s) < ln(4/s), so the root lies below ln 4 - y.
    let mut hi = (4f64.ln() - y).min(FRAC_1_SQRT_2.ln());
    let mut lo = hi - 1.0;
    while value(lo)? <= y {
        hi = lo;
        lo -= 1.0;
    }
    let mut x = hi;
    for _ in 0..200 {
        let s = x.exp();
        let sp = (1.0 - s * s).sqrt();
        let f = mu_pair(s, sp)? - y;
        if f.abs() <= tol {
            return Ok(s);
        }
        if f > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let slope = -agm(1.0, sp)?.powi(2) / (sp * sp);
        let mut next = x - f / slope;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == x || hi - lo <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
            return Ok(next.exp());
        }
        x = next;
    }
    Err(Error::NotConverged {
        iterations: 200,
        residual: (value(x)? - y).abs(),
    })
}

/// `μ⁻¹(y)` as the pair `(s, s')`, each computed without cancellation.
pub fn mu_inv_pair(y: f64) -> Result<(f64, f64)> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::param("y", format!("argument must be positive and finite, got {y}")));
    }
    if y >= FRAC_PI_2 {
        let s = mu_inv_small(y)?;
        Ok((s, (1.0 - s * s).sqrt()))
    } else {
        // μ(s)μ(s') = π²/4
        let sp = mu_inv_small(PI * PI / (4.0 * y))?;
        Ok(((1.0 - sp * sp).sqrt(), sp))
    }
}

/// Inverse Grötzsch modulus.
pub fn mu_inv(y: f64) -> Result<f64> {
    mu_inv_pair(y).map(|(s, _)| s)
}

/// Domains with a closed-form reduced modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleCase {
    /// Exterior of `cos t - i r sin t`, `0 < r ≤ 1`, with respect to `∞`.
    ExteriorEllipse { r: f64 },
    /// Interior of `cosh r cos t + i sinh r sin t`, `r > 0`, with respect to 0.
    InteriorEllipse { r: f64 },
    /// Slit disk with respect to its base point.
    Slit(SlitCase),
}

/// Exact reduced modulus for the given case.
pub fn oracle_reduced_modulus(case: OracleCase) -> Result<f64> {
    let scale = 1.0 / (2.0 * PI);
    match case {
        OracleCase::ExteriorEllipse { r } => {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::param("r", format!("exterior ellipse needs 0 < r <= 1, got {r}")));
            }
            Ok(scale * (2.0 / (1.0 + r)).ln())
        }
        OracleCase::InteriorEllipse { r } => {
            if !(r > 0.0) || !r.is_finite() {
                return Err(Error::param("r", format!("interior ellipse needs r > 0, got {r}")));
            }
            let (s, sp) = mu_inv_pair(2.0 * r)?;
            let k = FRAC_PI_2 / agm(1.0, sp)?;
            Ok(scale * (PI / (2.0 * s.sqrt() * k)).ln())
        }
        OracleCase::Slit(slit) => {
            slit.validate()?;
            let value = match slit {
                SlitCase::G1 { r } => 4.0 * r * (1.0 - r) / (1.0 + r),
                SlitCase::G2 { r } => 4.0 * r / ((1.0 + r) * (1.0 + r)),
                SlitCase::G3 { r, a } => {
                    4.0 * (r - a) * (1.0 - r * a) * (1.0 - r) / ((1.0 + r) * (1.0 - a) * (1.0 - a))
                }
            };
            Ok(scale * value.ln())
        }
    }
}

/// Modulus of the quadrilateral `(D; 1, e^{iθ₁}, e^{iθ₂}, e^{iθ₃})`.
///
/// The absolute cross ratio gives
/// `1 + s = [sin(θ₂/2)/sin(θ₁/2)]·[sin((θ₃-θ₁)/2)/sin((θ₃-θ₂)/2)]` and then
/// `r = 2μ(1/√(1+s))/π`. `s` itself is evaluated in the cancellation-free
/// form `sin(θ₃/2) sin((θ₂-θ₁)/2) / (sin(θ₁/2) sin((θ₃-θ₂)/2))`.
pub fn oracle_quad_r(theta1: f64, theta2: f64, theta3: f64) -> Result<f64> {
    if !(0.0 < theta1 && theta1 < theta2 && theta2 < theta3 && theta3 < 2.0 * PI) {
        return Err(Error::param(
            "theta",
            format!("need 0 < θ1 < θ2 < θ3 < 2π, got {theta1}, {theta2}, {theta3}"),
        ));
    }
    let s = (theta3 / 2.0).sin() * ((theta2 - theta1) / 2.0).sin()
        / ((theta1 / 2.0).sin() * ((theta3 - theta2) / 2.0).sin());
    let t = 1.0 / (1.0 + s).sqrt();
    let tp = (s / (1.0 + s)).sqrt();
    Ok(2.0 * mu_pair(t, tp)? / PI)
}

/// Modulus of the rectangle whose crowded prevertices sit at
/// `(1, i, e^{iθ₂}, -i)`: `r = (2/π) μ(√((1 + cot(θ₂/2))/2))`.
pub fn crowding_r_of_theta2(theta2: f64) -> Result<f64> {
    if !(theta2 > FRAC_PI_2 && theta2 < 1.5 * PI) {
        return Err(Error::param("theta2", format!("need π/2 < θ2 < 3π/2, got {theta2}")));
    }
    let c = 1.0 / (theta2 / 2.0).tan();
    let s = ((1.0 + c) / 2.0).sqrt();
    let sp = ((1.0 - c) / 2.0).sqrt();
    Ok(2.0 * mu_pair(s, sp)? / PI)
}

/// Inverse of [`crowding_r_of_theta2`]: `θ₂ = 2 cot⁻¹(2s² - 1)` with
/// `s = μ⁻¹(rπ/2)` and `cot⁻¹` valued in `(0, π)`.
pub fn crowding_theta2_of_r(r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::param("r", format!("modulus must be positive, got {r}")));
    }
    let (s, sp) = mu_inv_pair(r * FRAC_PI_2)?;
    // 2s² - 1 = s² - s'², formed from whichever of the pair is small
    let c = if s < sp { -(1.0 - 2.0 * s * s) } else { 1.0 - 2.0 * sp * sp };
    Ok(2.0 * 1f64.atan2(c))
}

/// Log-linear fit of `θ₂(r)` from a double-precision crowding study.
pub fn crowding_estimate(r: f64) -> f64 {
    if r > 1.0 {
        1.5 * PI - 32.3663566817311 * 10f64.powf(-1.36452159123521 * r)
    } else if r < 1.0 {
        FRAC_PI_2 + 32.3665310118084 * 10f64.powf(-1.36452172896714 / r)
    } else {
        PI
    }
}

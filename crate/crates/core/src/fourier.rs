//! FFT helpers for 2π-periodic samples on a uniform grid.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Signed wavenumber of FFT bin `j` for an `n`-point transform.
fn wavenumber(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

fn check_even(n: usize) -> Result<()> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::OddLength(n));
    }
    Ok(())
}

/// Apply a Fourier multiplier to periodic complex samples. The Nyquist mode
/// is always discarded.
fn apply_multiplier<F>(values: &[Complex64], multiplier: F) -> Result<Vec<Complex64>>
where
    F: Fn(i64) -> Complex64,
{
    let n = values.len();
    check_even(n)?;
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);

    let mut buf = values.to_vec();
    forward.process(&mut buf);
    for (j, c) in buf.iter_mut().enumerate() {
        if j == n / 2 {
            *c = Complex64::new(0.0, 0.0);
        } else {
            *c *= multiplier(wavenumber(j, n));
        }
    }
    inverse.process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    Ok(buf)
}

/// Derivative of a smooth 2π-periodic function from its samples at
/// `t_j = 2πj/n`, via trigonometric interpolation (multiplier `ik`).
pub fn spectral_derivative(values: &[Complex64]) -> Result<Vec<Complex64>> {
    apply_multiplier(values, |k| Complex64::new(0.0, k as f64))
}

/// Conjugate function of real periodic samples: `cos kt ↦ sin kt`,
/// `sin kt ↦ -cos kt`, constants and the Nyquist mode map to zero.
pub fn conjugate_periodic(values: &[f64]) -> Result<Vec<f64>> {
    let complex: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let out = apply_multiplier(&complex, |k| Complex64::new(0.0, -(k.signum() as f64)))?;
    Ok(out.into_iter().map(|c| c.re).collect())
}

/// Fourier coefficients `c_k` (k = -n/2+1 .. n/2-1) of the trigonometric
/// interpolant of real periodic samples, Nyquist dropped.
#[derive(Debug, Clone)]
pub(crate) struct TrigInterpolant {
    coeffs: Vec<(i64, Complex64)>,
}

impl TrigInterpolant {
    pub(crate) fn new(values: &[f64]) -> Result<Self> {
        let n = values.len();
        check_even(n)?;
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        FftPlanner::<f64>::new()
            .plan_fft_forward(n)
            .process(&mut buf);
        let scale = 1.0 / n as f64;
        let coeffs = buf
            .into_iter()
            .enumerate()
            .filter(|&(j, _)| j != n / 2)
            .map(|(j, c)| (wavenumber(j, n), c * scale))
            .collect();
        Ok(Self { coeffs })
    }

    pub(crate) fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|&(k, c)| (c * Complex64::from_polar(1.0, k as f64 * t)).re)
            .sum()
    }
}

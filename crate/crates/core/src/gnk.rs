//! Nyström discretization of the integral equation with the generalized
//! Neumann kernel,
//!
//! ```text
//! (I - N) ρ = -M γ,        h = [M ρ - (I - N) γ] / 2,
//! N(s,t) = (1/π) Im( A(s)/A(t) · η'(t)/(η(t) - η(s)) ),
//! M(s,t) = (1/π) Re( A(s)/A(t) · η'(t)/(η(t) - η(s)) ),
//! ```
//!
//! with `A = η - α` for bounded domains and `A = 1` for unbounded ones.
//!
//! `N` is continuous and discretized with the trapezoidal rule. `M` is split
//! as `-(1/2π) cot((s-t)/2) + M1(s,t)`: the cotangent part is applied
//! spectrally as minus the conjugate function, the continuous remainder `M1`
//! by the trapezoidal rule. Diagonal entries use the limits
//! `(1/π) Im/Re[η''/(2η') - A'/A]`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::curves::{BoundaryCurve, Orientation};
use crate::error::{Error, Result};
use crate::gmres::gmres;

pub use crate::fourier::conjugate_periodic;

/// Which of the two conformal-map problems the kernel belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Bounded domain, `A(t) = η(t) - α`.
    Bounded { alpha: Complex64 },
    /// Unbounded domain, `A(t) = 1`.
    Unbounded,
}

/// Per-node quantities shared by all kernel evaluations on one curve.
#[derive(Debug, Clone)]
pub struct KernelContext<'a> {
    curve: &'a BoundaryCurve,
    mode: Mode,
    a: Vec<Complex64>,
    da: Vec<Complex64>,
    /// η'(t_j) / A(t_j)
    q: Vec<Complex64>,
    /// η''/(2η') - A'/A at smooth nodes, zero at corners
    diag: Vec<Complex64>,
    /// cot(π d / n) for d = 0..n (entry 0 unused)
    cot: Vec<f64>,
    /// Quadrature diagonals of N and M1, chosen so each discrete row
    /// integrates constants exactly: `∫N dt = -1` and `∫M1 dt = 0`.
    n_quad_diag: Vec<f64>,
    m1_quad_diag: Vec<f64>,
}

impl<'a> KernelContext<'a> {
    /// Kernel for the bounded domain inside a counterclockwise curve.
    pub fn bounded(curve: &'a BoundaryCurve, alpha: Complex64) -> Result<Self> {
        if curve.orientation() != Orientation::CounterClockwise {
            return Err(Error::param(
                "curve",
                "bounded mode needs a counterclockwise curve",
            ));
        }
        if !curve.contains(alpha) {
            return Err(Error::PointOutside {
                re: alpha.re,
                im: alpha.im,
            });
        }
        let a: Vec<Complex64> = curve.eta().iter().map(|&e| e - alpha).collect();
        if a.iter().any(|v| v.norm() == 0.0) {
            return Err(Error::param("alpha", "base point lies on a boundary node"));
        }
        let da = curve.deta().to_vec();
        Ok(Self::assemble(curve, Mode::Bounded { alpha }, a, da))
    }

    /// Kernel for the unbounded domain outside a clockwise curve.
    pub fn unbounded(curve: &'a BoundaryCurve) -> Result<Self> {
        if curve.orientation() != Orientation::Clockwise {
            return Err(Error::param(
                "curve",
                "unbounded mode needs a clockwise curve",
            ));
        }
        let n = curve.n();
        let one = Complex64::new(1.0, 0.0);
        Ok(Self::assemble(
            curve,
            Mode::Unbounded,
            vec![one; n],
            vec![Complex64::new(0.0, 0.0); n],
        ))
    }

    fn assemble(
        curve: &'a BoundaryCurve,
        mode: Mode,
        a: Vec<Complex64>,
        da: Vec<Complex64>,
    ) -> Self {
        let n = curve.n();
        let q = curve.deta().iter().zip(&a).map(|(d, a)| d / a).collect();
        let diag = (0..n)
            .map(|j| {
                if curve.is_corner(j) {
                    Complex64::new(0.0, 0.0)
                } else {
                    curve.ddeta()[j] / (2.0 * curve.deta()[j]) - da[j] / a[j]
                }
            })
            .collect();
        let cot = (0..n)
            .map(|d| {
                if d == 0 {
                    0.0
                } else {
                    1.0 / (PI * d as f64 / n as f64).tan()
                }
            })
            .collect();
        let mut ctx = Self {
            curve,
            mode,
            a,
            da,
            q,
            diag,
            cot,
            n_quad_diag: Vec::new(),
            m1_quad_diag: Vec::new(),
        };
        let w = curve.weight();
        let (mut nd, mut md) = (vec![0.0; n], vec![0.0; n]);
        for i in 0..n {
            let (mut sn, mut sm) = (0.0, 0.0);
            for j in (0..n).filter(|&j| j != i) {
                let k = ctx.complex_kernel(i, j);
                sn += k.im / PI;
                sm += k.re / PI + ctx.cot_term(i, j) / (2.0 * PI);
            }
            nd[i] = -1.0 / w - sn;
            md[i] = -sm;
        }
        ctx.n_quad_diag = nd;
        ctx.m1_quad_diag = md;
        ctx
    }

    /// Diagonal of N used by the Nyström operators. Agrees with the
    /// analytic limit to quadrature accuracy on smooth curves; near corners
    /// it absorbs the error of the trapezoidal rule on constants.
    pub fn n_quadrature_diagonal(&self) -> &[f64] {
        &self.n_quad_diag
    }

    /// Diagonal of M1 used by the Nyström operators.
    pub fn m1_quadrature_diagonal(&self) -> &[f64] {
        &self.m1_quad_diag
    }

    pub fn curve(&self) -> &BoundaryCurve {
        self.curve
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.curve.n()
    }

    /// Samples of `A(t)`.
    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    /// Samples of `A'(t)`.
    pub fn da(&self) -> &[Complex64] {
        &self.da
    }

    /// `A(s_i)/A(t_j) · η'(t_j)/(η(t_j) - η(s_i))` for `i ≠ j`, or its
    /// regular part at `i = j`.
    #[inline]
    fn complex_kernel(&self, i: usize, j: usize) -> Complex64 {
        if i == j {
            self.diag[i]
        } else {
            let eta = self.curve.eta();
            self.a[i] * self.q[j] / (eta[j] - eta[i])
        }
    }

    #[inline]
    fn cot_term(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else {
            let n = self.n();
            self.cot[(i + n - j) % n]
        }
    }
}

/// `N(s_i, t_j)`. Columns at corner nodes vanish because `η' = 0` there.
pub fn kernel_n(ctx: &KernelContext<'_>, i: usize, j: usize) -> f64 {
    ctx.complex_kernel(i, j).im / PI
}

/// `M1(s_i, t_j) = M(s_i, t_j) + (1/2π) cot((s_i - t_j)/2)`; zero on the
/// diagonal at corner nodes.
pub fn kernel_m1(ctx: &KernelContext<'_>, i: usize, j: usize) -> f64 {
    ctx.complex_kernel(i, j).re / PI + ctx.cot_term(i, j) / (2.0 * PI)
}

/// Trapezoidal `N ρ` with the quadrature diagonal.
pub fn apply_n(ctx: &KernelContext<'_>, rho: &[f64]) -> Vec<f64> {
    let n = ctx.n();
    let w = ctx.curve.weight();
    (0..n)
        .map(|i| {
            w * (0..n)
                .map(|j| if i == j { ctx.n_quad_diag[i] } else { kernel_n(ctx, i, j) } * rho[j])
                .sum::<f64>()
        })
        .collect()
}

/// `M ρ = -conj(ρ) + trapezoidal M1 ρ`, again with the quadrature diagonal.
pub fn apply_m(ctx: &KernelContext<'_>, rho: &[f64]) -> Result<Vec<f64>> {
    let n = ctx.n();
    let w = ctx.curve.weight();
    let conj = conjugate_periodic(rho)?;
    Ok((0..n)
        .map(|i| {
            let smooth: f64 = (0..n)
                .map(|j| if i == j { ctx.m1_quad_diag[i] } else { kernel_m1(ctx, i, j) } * rho[j])
                .sum();
            w * smooth - conj[i]
        })
        .collect())
}

/// Dense `w·N` with `w = 2π/n`, row-major.
fn weighted_n_matrix(ctx: &KernelContext<'_>) -> Vec<f64> {
    let n = ctx.n();
    let w = ctx.curve.weight() / PI;
    let eta = ctx.curve.eta();
    let mut mat = vec![0.0; n * n];
    for (i, row) in mat.chunks_exact_mut(n).enumerate() {
        let ai = ctx.a[i];
        let ei = eta[i];
        for (j, entry) in row.iter_mut().enumerate() {
            if j != i {
                *entry = w * (ai * ctx.q[j] / (eta[j] - ei)).im;
            }
        }
        row[i] = ctx.curve.weight() * ctx.n_quad_diag[i];
    }
    mat
}

fn matvec(mat: &[f64], x: &[f64], y: &mut [f64]) {
    let n = x.len();
    for (yi, row) in y.iter_mut().zip(mat.chunks_exact(n)) {
        *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub gmres_tol: f64,
    pub max_iters: usize,
    /// Dense LU instead of GMRES (cross-check; O(n³)).
    pub dense_direct: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            gmres_tol: 0.5e-14,
            max_iters: 100,
            dense_direct: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GnkSolution {
    pub rho: Vec<f64>,
    pub h_pointwise: Vec<f64>,
    /// Mean of `h_pointwise`.
    pub h: f64,
    /// `max |h_pointwise - h|`; the exact `h` is constant.
    pub h_spread: f64,
    pub gmres_iters: usize,
    /// True relative residual `‖(I - N)ρ + Mγ‖ / ‖Mγ‖`.
    pub residual: f64,
}

/// Solve `(I - N) ρ = -M γ` and recover `h`.
pub fn solve_neumann_system(
    ctx: &KernelContext<'_>,
    gamma: &[f64],
    cfg: &SolverConfig,
) -> Result<GnkSolution> {
    let n = ctx.n();
    if gamma.len() != n {
        return Err(Error::param(
            "gamma",
            format!("expected {n} samples, got {}", gamma.len()),
        ));
    }
    let rhs: Vec<f64> = apply_m(ctx, gamma)?.into_iter().map(|v| -v).collect();
    let wn = weighted_n_matrix(ctx);
    let operator = |x: &[f64], y: &mut [f64]| {
        matvec(&wn, x, y);
        y.iter_mut().zip(x).for_each(|(yi, xi)| *yi = xi - *yi);
    };

    let (rho, iterations) = if cfg.dense_direct {
        let mat = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - wn[i * n + j]);
        let sol = mat
            .lu()
            .solve(&DVector::from_column_slice(&rhs))
            .ok_or(Error::SingularSystem)?;
        (sol.as_slice().to_vec(), 0)
    } else {
        let out = gmres(operator, &rhs, cfg.gmres_tol, cfg.max_iters)?;
        (out.x, out.iterations)
    };

    let mut check = vec![0.0; n];
    operator(&rho, &mut check);
    let rhs_norm = rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
    let res_norm = check
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let residual = if rhs_norm > 0.0 {
        res_norm / rhs_norm
    } else {
        res_norm
    };

    let m_rho = apply_m(ctx, &rho)?;
    let mut i_minus_n_gamma = vec![0.0; n];
    operator(gamma, &mut i_minus_n_gamma);
    let h_pointwise: Vec<f64> = m_rho
        .iter()
        .zip(&i_minus_n_gamma)
        .map(|(m, g)| (m - g) / 2.0)
        .collect();
    let h = h_pointwise.iter().sum::<f64>() / n as f64;
    let h_spread = h_pointwise
        .iter()
        .map(|v| (v - h).abs())
        .fold(0.0, f64::max);

    Ok(GnkSolution {
        rho,
        h_pointwise,
        h,
        h_spread,
        gmres_iters: iterations,
        residual,
    })
}

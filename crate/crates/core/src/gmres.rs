//! Unrestarted GMRES for real systems given as a matrix-free operator.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct GmresOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Relative residual estimate from the Arnoldi recurrence.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solve `A x = b` from `x0 = 0`, stopping when `‖b - Ax‖ ≤ tol·‖b‖` or after
/// `max_iters` Arnoldi steps. `apply(x, y)` must write `A x` into `y`.
pub fn gmres<F>(apply: F, b: &[f64], tol: f64, max_iters: usize) -> Result<GmresOutcome>
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = b.len();
    let beta = norm(b);
    if beta == 0.0 {
        return Ok(GmresOutcome {
            x: vec![0.0; n],
            iterations: 0,
            residual: 0.0,
        });
    }
    let m = max_iters.min(n).max(1);

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    basis.push(b.iter().map(|v| v / beta).collect());
    // Hessenberg columns after rotation, i.e. the triangular factor R.
    let mut r: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut cs: Vec<f64> = Vec::with_capacity(m);
    let mut sn: Vec<f64> = Vec::with_capacity(m);
    let mut g = vec![0.0; m + 1];
    g[0] = beta;

    let mut residual = 1.0;
    let mut k = 0;
    let mut w = vec![0.0; n];
    while k < m {
        apply(&basis[k], &mut w);
        let mut h = vec![0.0; k + 2];
        // modified Gram-Schmidt, twice for stability
        for _ in 0..2 {
            for (i, v) in basis.iter().enumerate() {
                let c = dot(&w, v);
                h[i] += c;
                w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= c * vi);
            }
        }
        let hnext = norm(&w);
        h[k + 1] = hnext;

        for i in 0..k {
            let tmp = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = tmp;
        }
        let denom = h[k].hypot(h[k + 1]);
        if denom == 0.0 {
            return Err(Error::SingularSystem);
        }
        let (c, s) = (h[k] / denom, h[k + 1] / denom);
        h[k] = denom;
        h[k + 1] = 0.0;
        g[k + 1] = -s * g[k];
        g[k] *= c;
        cs.push(c);
        sn.push(s);
        h.truncate(k + 1);
        r.push(h);
        k += 1;

        residual = g[k].abs() / beta;
        if residual <= tol || hnext <= f64::EPSILON * beta {
            break;
        }
        basis.push(w.iter().map(|v| v / hnext).collect());
    }

    // back substitution on the k×k triangle
    let mut y = vec![0.0; k];
    for i in (0..k).rev() {
        let mut s = g[i];
        for j in i + 1..k {
            s -= r[j][i] * y[j];
        }
        y[i] = s / r[i][i];
    }
    let mut x = vec![0.0; n];
    for (j, yj) in y.iter().enumerate() {
        x.iter_mut()
            .zip(&basis[j])
            .for_each(|(xi, vi)| *xi += yj * vi);
    }

    if residual > tol {
        return Err(Error::NotConverged {
            iterations: k,
            residual,
        });
    }
    Ok(GmresOutcome {
        x,
        iterations: k,
        residual,
    })
}

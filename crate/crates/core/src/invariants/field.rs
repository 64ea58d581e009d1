use num_complex::Complex64;

use crate::curves::{winding_inside, BoundaryCurve};
use crate::error::{Error, Result};

/// Rectangular evaluation grid `[xmin, xmax] × [ymin, ymax]` with `nx × ny`
/// nodes, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.xmin, self.xmax, self.ymin, self.ymax].iter().all(|v| v.is_finite());
        if !finite || !(self.xmin < self.xmax) || !(self.ymin < self.ymax) {
            return Err(Error::param("grid", "bounds must be finite with min < max"));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::param("grid", "need at least 2 nodes per axis"));
        }
        Ok(())
    }

    fn axis(lo: f64, hi: f64, count: usize) -> Vec<f64> {
        let step = (hi - lo) / (count - 1) as f64;
        (0..count)
            .map(|k| if k + 1 == count { hi } else { lo + step * k as f64 })
            .collect()
    }

    pub fn x_axis(&self) -> Vec<f64> {
        Self::axis(self.xmin, self.xmax, self.nx)
    }

    pub fn y_axis(&self) -> Vec<f64> {
        Self::axis(self.ymin, self.ymax, self.ny)
    }
}

/// Values of an invariant on a grid. Node `(i, j)` (x index `i`, y index
/// `j`) is stored at `j * nx + i`; `values` is NaN where `mask` is false.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid_x: Vec<f64>,
    pub grid_y: Vec<f64>,
    pub mask: Vec<bool>,
    pub values: Vec<f64>,
}

impl ScalarField {
    /// Evaluate `eval` on every grid node that lies safely inside the
    /// domain of `curve`. Nodes near the boundary or with non-finite values
    /// are masked out.
    pub(crate) fn sample<F>(curve: &BoundaryCurve, grid: &GridSpec, eval: F) -> Result<Self>
    where
        F: Fn(&[Complex64]) -> Vec<Option<f64>>,
    {
        grid.validate()?;
        let (grid_x, grid_y) = (grid.x_axis(), grid.y_axis());
        let mut mask = Vec::with_capacity(grid.nx * grid.ny);
        let mut inside = Vec::new();
        for &y in &grid_y {
            for &x in &grid_x {
                let z = Complex64::new(x, y);
                let ok = winding_inside(curve, z).unwrap_or(false);
                mask.push(ok);
                if ok {
                    inside.push(z);
                }
            }
        }
        let computed = eval(&inside);
        let mut values = vec![f64::NAN; mask.len()];
        let mut it = computed.into_iter();
        for (m, v) in mask.iter_mut().zip(values.iter_mut()) {
            if *m {
                match it.next().flatten() {
                    Some(value) if value.is_finite() => *v = value,
                    _ => *m = false,
                }
            }
        }
        Ok(Self {
            grid_x,
            grid_y,
            mask,
            values,
        })
    }

    pub fn nx(&self) -> usize {
        self.grid_x.len()
    }

    pub fn ny(&self) -> usize {
        self.grid_y.len()
    }

    /// `(x, y, inside, value)` in storage order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, bool, f64)> + '_ {
        let nx = self.nx();
        self.mask
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(move |(k, (&m, &v))| (self.grid_x[k % nx], self.grid_y[k / nx], m, v))
    }

    /// Value at the node nearest to `z`, if that node is unmasked.
    pub fn nearest(&self, z: Complex64) -> Option<f64> {
        let pick = |axis: &[f64], v: f64| {
            axis.iter()
                .enumerate()
                .min_by(|a, b| (a.1 - v).abs().total_cmp(&(b.1 - v).abs()))
                .map(|(k, _)| k)
        };
        let (i, j) = (pick(&self.grid_x, z.re)?, pick(&self.grid_y, z.im)?);
        let k = j * self.nx() + i;
        self.mask[k].then_some(self.values[k])
    }
}

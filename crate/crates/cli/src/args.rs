use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confinv_core::{Complex64, GridSpec};

#[derive(Debug, Parser)]
#[command(name = "confinv", version, about = "Conformal invariants of planar domains")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Nodes on a smooth curve (overrides the domain file's `n`).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Nodes per side or arc of a piecewise curve (overrides `ns`).
    #[arg(long, global = true)]
    pub ns: Option<usize>,
    /// Corner grading exponent (overrides `grading_p`).
    #[arg(long = "grading-p", global = true)]
    pub grading_p: Option<f64>,
    #[arg(long = "gmres-tol", global = true, default_value_t = 0.5e-14)]
    pub gmres_tol: f64,
    #[arg(long = "max-gmres", global = true, default_value_t = 100)]
    pub max_gmres: usize,
    /// Stopping tolerance of the quadrilateral iteration.
    #[arg(long = "quad-eps", global = true, default_value_t = 0.5e-13)]
    pub quad_eps: f64,
    #[arg(long = "quad-max", global = true, default_value_t = 50)]
    pub quad_max: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Evaluation grid "xmin,xmax,ymin,ymax,nx,ny".
    #[arg(long, global = true, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hyperbolic distance between two points, or from one point over --grid.
    Hypdist {
        /// Domain spec (JSON file).
        spec: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z1: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z2: Option<Complex64>,
        /// Auxiliary interior point for the map (any choice gives the same distance).
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Option<Complex64>,
    },
    /// Reduced modulus at a point or at infinity.
    Redmod {
        spec: PathBuf,
        #[command(flatten)]
        base: BaseOpts,
        /// Sweep the domain's family parameter and compare with closed forms.
        #[arg(long)]
        sweep: bool,
        /// Sweep range "start,stop,step".
        #[arg(long, value_parser = parse_range, requires = "sweep")]
        range: Option<Range>,
    },
    /// Conformal radius at a point or at infinity.
    Confrad {
        spec: PathBuf,
        #[command(flatten)]
        base: BaseOpts,
    },
    /// Harmonic measure of a polygon side.
    Harm {
        spec: PathBuf,
        /// Side number, 1-based; side k runs from vertex k to vertex k+1.
        #[arg(long, required_unless_present = "sum")]
        side: Option<usize>,
        /// Sum over all sides instead of a single side.
        #[arg(long, conflicts_with = "side")]
        sum: bool,
        #[arg(long = "point", value_parser = parse_complex, allow_hyphen_values = true)]
        points: Vec<Complex64>,
        /// Evaluate at this many random interior points.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Option<Complex64>,
    },
    /// Modulus of a quadrilateral.
    Quadmod {
        /// Domain spec; omit to mark points on the unit circle with --angles.
        spec: Option<PathBuf>,
        /// Four increasing angles on the unit circle.
        #[arg(long, value_parser = parse_list::<4>, allow_hyphen_values = true, conflicts_with_all = ["spec", "params"])]
        angles: Option<[f64; 4]>,
        /// Four increasing boundary parameters in [0, 2π) of the domain curve.
        #[arg(long, value_parser = parse_list::<4>, allow_hyphen_values = true, requires = "spec")]
        params: Option<[f64; 4]>,
        /// Angles and parameters are in units of π.
        #[arg(long)]
        pi: bool,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Option<Complex64>,
        /// Compare with the closed form (angle mode).
        #[arg(long, requires = "angles")]
        oracle: bool,
        /// Write the iteration history as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct BaseOpts {
    /// Base point (bounded domains; default the origin, or the slit base point).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, conflicts_with = "infinity")]
    pub alpha: Option<Complex64>,
    /// Take the invariant at infinity (unbounded domains).
    #[arg(long)]
    pub infinity: bool,
    /// Interior point of the complement (unbounded domains; default the node centroid).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub beta: Option<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

/// `"x,y"` or anything `Complex64::from_str` accepts (`1+2i`, `-0.5i`).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let z = if let Some((re, im)) = s.split_once(',') {
        let re: f64 = re.trim().parse().map_err(|e| format!("bad real part `{re}`: {e}"))?;
        let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part `{im}`: {e}"))?;
        Complex64::new(re, im)
    } else {
        s.trim().parse().map_err(|_| format!("cannot parse `{s}` as a complex number"))?
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn parse_list<const K: usize>(s: &str) -> Result<[f64; K], String> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("bad number `{v}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let values: [f64; K] = values
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected {K} comma-separated numbers, got {}", v.len()))?;
    if values.iter().all(|v| v.is_finite()) {
        Ok(values)
    } else {
        Err("values must be finite".into())
    }
}

pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err("expected xmin,xmax,ymin,ymax,nx,ny".into());
    }
    let f = |v: &str| v.parse::<f64>().map_err(|e| format!("bad number `{v}`: {e}"));
    let u = |v: &str| v.parse::<usize>().map_err(|e| format!("bad count `{v}`: {e}"));
    let grid = GridSpec {
        xmin: f(parts[0])?,
        xmax: f(parts[1])?,
        ymin: f(parts[2])?,
        ymax: f(parts[3])?,
        nx: u(parts[4])?,
        ny: u(parts[5])?,
    };
    grid.validate().map_err(|e| e.to_string())?;
    Ok(grid)
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let [start, stop, step] = parse_list::<3>(s)?;
    if !(step > 0.0 && stop >= start) {
        return Err("need stop >= start and step > 0".into());
    }
    if (stop - start) / step > 1e5 {
        return Err("too many sweep values".into());
    }
    Ok(Range { start, stop, step })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1,-2").unwrap(), Complex64::new(1.0, -2.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("0.5+1.5i").unwrap(), Complex64::new(0.5, 1.5));
        assert_eq!(parse_complex("-3").unwrap(), Complex64::new(-3.0, 0.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("1,nan").is_err());
    }

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list::<4>("0, 0.5,1,1.5").unwrap(), [0.0, 0.5, 1.0, 1.5]);
        assert!(parse_list::<4>("0,1,2").is_err());
        assert_eq!(parse_range("0.1,0.3,0.1").unwrap().values().len(), 3);
        assert_eq!(parse_range("3,8,1").unwrap().values(), vec![3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert!(parse_range("1,0,0.1").is_err());
        let g = parse_grid("-1,6,-1,4,8,6").unwrap();
        assert_eq!((g.nx, g.ny), (8, 6));
        assert!(parse_grid("0,1,0,1,5").is_err());
    }
}

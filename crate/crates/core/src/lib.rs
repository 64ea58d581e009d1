//! Conformal invariants of simply connected planar domains.
//!
//! The domain is mapped onto the unit disk (or its exterior) by solving a
//! boundary integral equation with the generalized Neumann kernel. The
//! invariants follow from the map: hyperbolic distance, conformal radius
//! and reduced modulus, harmonic measure of polygon sides, and the modulus
//! of a quadrilateral.
//!
//! ```
//! use confinv_core::{make_ellipse, reduced_modulus, Base, EllipseKind, SolverConfig};
//!
//! let ellipse = make_ellipse(1.0, 0.5, 512, EllipseKind::Exterior).unwrap();
//! let m = reduced_modulus(&ellipse, Base::Infinity { beta: None }, &SolverConfig::default()).unwrap();
//! let exact = (2.0f64 / 1.5).ln() / (2.0 * std::f64::consts::PI);
//! assert!((m - exact).abs() < 1e-12);
//! ```

pub mod curves;
pub mod disk_maps;
pub mod error;
pub mod fourier;
pub mod gmres;
pub mod gnk;
pub mod invariants;
pub mod oracles;

pub use num_complex::Complex64;

pub use curves::{
    make_amoeba, make_circular_arc_polygon, make_ellipse, make_opened_slit_disk, make_polygon,
    make_rectangle, regular_polygon_vertices, winding_inside, ArcSpec, BoundaryCurve, EllipseKind,
    Orientation, SlitCase, DEFAULT_GRADING,
};
pub use disk_maps::{
    absolute_ratio, cauchy_eval, default_beta, map_bounded, map_unbounded, mobius_three_points,
    DiskMap, MapMode, Mobius, Normalization,
};
pub use error::{Error, Result};
pub use gnk::{solve_neumann_system, GnkSolution, KernelContext, SolverConfig};
pub use invariants::{
    conformal_radius, disk_harmonic_measure, harmonic_measure, hyperbolic_distance,
    hyperbolic_distance_field, interior_point, quad_modulus, quad_modulus_general, reduced_modulus,
    reduced_modulus_slit_disk, Base, GridSpec, HyperbolicMetric, PolygonHarmonicMeasure,
    QuadConfig, QuadModulusTrace, ScalarField,
};
pub use oracles::{
    crowding_estimate, crowding_r_of_theta2, crowding_theta2_of_r, ellip_k, mu, mu_inv,
    oracle_quad_r, oracle_reduced_modulus, OracleCase,
};

//! Conformal invariants computed from the disk maps.

mod field;
mod harmonic;
mod hyperbolic;
mod quad;
mod radius;

pub use field::{GridSpec, ScalarField};
pub use harmonic::{disk_harmonic_measure, harmonic_measure, interior_point, PolygonHarmonicMeasure};
pub use hyperbolic::{disk_distance, hyperbolic_distance, hyperbolic_distance_field, HyperbolicMetric};
pub use quad::{quad_modulus, quad_modulus_general, QuadConfig, QuadModulusTrace};
pub use radius::{conformal_radius, reduced_modulus, reduced_modulus_slit_disk, Base};

use thiserror::Error;

/// Errors raised by curve construction, the integral-equation solver and the
/// invariant computations built on top of it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("polygon is not simple: sides {0} and {1} intersect")]
    SelfIntersecting(usize, usize),

    #[error("duplicate consecutive vertices at index {0}")]
    DuplicateVertex(usize),

    #[error("boundary chain is not closed: gap of {gap:e} after piece {piece}")]
    NotClosed { piece: usize, gap: f64 },

    #[error("expected an even number of samples, got {0}")]
    OddLength(usize),

    #[error("point {re}{im:+}i is not inside the domain")]
    PointOutside { re: f64, im: f64 },

    #[error("point {re}{im:+}i is within {distance:e} of the boundary")]
    NearBoundary { re: f64, im: f64, distance: f64 },

    #[error("GMRES did not converge in {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("the discretized system is singular")]
    SingularSystem,

    #[error("map quality check failed: {0}")]
    Quality(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::NotConverged { .. } | Error::SingularSystem | Error::Quality(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

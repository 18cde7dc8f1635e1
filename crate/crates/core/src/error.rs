use thiserror::Error;

/// Errors reported by the special functions, dielectric models and solvers.
///
/// Payloads are widened to `f64` so the type does not depend on the scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the domain: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error(
        "quadrature did not converge: error estimate {error:e} after {subdivisions} subdivisions"
    )]
    QuadratureNotConverged { error: f64, subdivisions: usize },

    #[error(
        "root solver did not converge after {iterations} iterations: last iterate {re} + {im}i, residual {residual:e}"
    )]
    NotConverged {
        re: f64,
        im: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("root {re} + {im}i lies on a nonphysical branch (Re omega <= 0)")]
    NonPhysicalBranch { re: f64, im: f64 },

    #[error("dispersion branch lost at q = {q}: {reason}")]
    BranchLost { q: f64, reason: String },

    #[error("model {model} does not support {what}")]
    Unsupported {
        model: &'static str,
        what: &'static str,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<V: crate::Real>(
    name: &'static str,
    value: V,
    requirement: &'static str,
) -> Error {
    Error::Domain {
        name,
        value: value.as_f64(),
        requirement,
    }
}

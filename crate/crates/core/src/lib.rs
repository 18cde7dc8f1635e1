#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod dielectric;
pub mod dispersion;
pub mod error;
pub mod oracle;
mod scalar;
pub mod special_functions;
pub mod units;

pub use dielectric::{Dielectric, MerminD0, ModelKind, PlasmaParams, QueryPoint};
pub use dispersion::{DispersionRoot, DispersionSolver, SolverConfig};
pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::{rel_diff, Real};
pub use special_functions::AccuracyPolicy;

pub type Complex64 = Complex<f64>;
pub type PlasmaParams64 = PlasmaParams<f64>;
pub type QueryPoint64 = QueryPoint<f64>;
pub type Dielectric64 = Dielectric<f64>;
pub type AccuracyPolicy64 = AccuracyPolicy<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type DispersionSolver64 = DispersionSolver<f64>;
pub type DispersionRoot64 = DispersionRoot<f64>;

pub type PlasmaParams32 = PlasmaParams<f32>;
pub type Dielectric32 = Dielectric<f32>;

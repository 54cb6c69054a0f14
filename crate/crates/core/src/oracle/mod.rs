//! Integration constants, the numeric quadrature oracle and deformation-limit probes.

pub mod constants;
pub mod polytope;
pub mod probe;
pub mod quadrature;

pub use constants::{
    block_betas, gamma_constant, numeric_constants, solve_constants, Constant, NumericConstants, SolutionBundle,
};
pub use probe::{deformation_limit_probe, ProbePoint, ProbeReport};
pub use quadrature::{
    continuation_terms, continued_quadrature, quadrature, ContinuationTerm, OracleResult, QuadratureMethod,
    QuadratureSpec,
};

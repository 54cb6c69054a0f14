//! GKZ (A-hypergeometric) treatment of Feynman integrals in the Lee-Pomeransky
//! representation: Symanzik polynomials, toric and initial ideals, standard
//! pairs, canonical series solutions, Gamma-function boundary constants and an
//! independent numeric integration oracle.

pub mod algebra;
pub mod error;
pub mod gkz;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod series;

pub use algebra::{Param, ParamAssignment, ParamLinear, PochhammerProduct, Rational};
pub use error::{Error, Result};
pub use gkz::{AMatrix, FakeExponent, LatticeBasis, MonomialIdeal, StandardPair, TieBreak, ToricIdeal};
pub use graph::{GraphSpec, Kin, KinematicPolynomial, LoopMatrices, Symanzik};
pub use oracle::{OracleResult, QuadratureSpec, SolutionBundle};
pub use pipeline::{fixture, fixtures, run, run_until, ProblemSpec, ResultReport, Stage};
pub use series::{CanonicalSeries, FormKind, HypergeometricForm};

//! Configuration matrix, kernel lattice, toric and initial ideals, standard
//! pairs and fake exponents.

pub mod groebner;
pub mod ideal;
pub mod lattice;
pub mod matrix;
pub mod pairs;
pub mod roots;

pub use ideal::{initial_ideal, toric_ideal, MonomialIdeal, TieBreak, ToricIdeal};
pub use lattice::{kernel_lattice, LatticeBasis};
pub use matrix::{deform, toric_matrix, AMatrix, DeformedPolynomial};
pub use pairs::{standard_pairs, StandardPair};
pub use roots::{default_kappa, fake_exponents, FakeExponent};

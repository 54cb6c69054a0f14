//! Exact rational parameters, rising factorials and the Gamma function.

pub mod gamma;
pub mod gamma_factor;
pub mod param;
pub mod pochhammer;

pub use gamma::{gamma, ln_gamma_signed, rgamma};
pub use param::{format_rational, parse_rational, rat, rat_int, rat_to_f64, Param, ParamAssignment, ParamLinear, Rational};
pub use pochhammer::{falling_factorial, poch_log, poch_shift_negative, pochhammer, PochFactor, PochhammerProduct};
pub use gamma_factor::GammaFactor;

//! Exact and numerical machinery around the even zeta values.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] holds rational arithmetic helpers and two independent Bernoulli
//!   number algorithms.
//! * [`laurent`] implements truncated Laurent series in the scaled variable
//!   `u = 2πz` with exact rational coefficients.
//! * [`zeta`] produces `ζ(2m) = q·π^{2m}` by the Bernoulli closed form and by
//!   the series-coefficient route, plus rigorous partial-sum brackets.
//! * [`identity`] evaluates both sides of the exponential partial-fraction
//!   identity in floating point with tail compensation and remainder bounds.
//! * [`hadamard`] evaluates the truncated genus-one product for `e^z - w`.
//! * [`cli`] turns all of the above into machine-readable command results.

pub mod cli;
pub mod complex;
pub mod ddouble;
mod error;
pub mod exact;
pub mod hadamard;
pub mod identity;
pub mod laurent;
pub mod summation;
pub mod zeta;

pub use crate::complex::ComplexValue;
pub use crate::error::{Error, Result};
pub use crate::exact::{
    bernoulli_recurrence, bernoulli_series_division, binomial, factorial, BernoulliMethod,
    BernoulliTable, Rational,
};
pub use crate::hadamard::{
    factorization_report, prefactor_constants, s1_partial, truncated_product, zeros,
    PrefactorConstants, ZeroSet,
};
pub use crate::identity::{
    lhs_corollary, lhs_theorem, rhs_corollary, rhs_theorem, verify, Identity, SeriesEvaluation,
    VerificationReport,
};
pub use crate::laurent::ScaledLaurentSeries;
pub use crate::zeta::{
    zeta_even_exact, zeta_even_partial_sum, zeta_via_derivative_route, NumericBracket,
    ZetaEvenValue,
};

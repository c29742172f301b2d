//! Floating-point verification of
//!
//! ```text
//! w/(1-w)^2 - 1/log^2(w) = 2 Σ_{n≥1} (log^2 w - 4π²n²) / (log^2 w + 4π²n²)^2
//! ```
//!
//! and of its `w = e^{2πx}` form
//!
//! ```text
//! e^{2πx}/(1-e^{2πx})^2 - 1/(4π²x²) = (1/2π²) Σ_{n≥1} (x² - n²) / (x² + n²)^2.
//! ```
//!
//! Both left-hand sides are `F(u) = e^u/(e^u-1)^2 - 1/u^2` at `u = log w` or
//! `u = 2πx`. `F` has a removable singularity at `u = 0`, so close to it the
//! closed form is replaced by the exact Taylor series from
//! [`ScaledLaurentSeries::f_series`]. Away from it the closed form is
//! evaluated in double-double arithmetic, which keeps the `1/u^2`
//! cancellation well below one `f64` ulp.
//!
//! Right-hand sides are summed with compensation. Every term behaves like
//! `-1/(4π²n²)` for large `n`, so the tail is compensated with
//! `-(1/2π²) Σ_{n>N} 1/n²`, and what is left,
//!
//! ```text
//! term_n + 1/(4π²n²) = (L^4 + 12π²n²L²) / (4π²n²(L² + 4π²n²)^2),
//! ```
//!
//! is majorised by an explicit `O(1/N^3)` expression.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::complex::{ensure_finite, on_branch_cut, ComplexValue};
use crate::ddouble::{DdComplex, DoubleDouble};
use crate::error::{Error, Result};
use crate::laurent::ScaledLaurentSeries;
use crate::summation::{ComplexSum, NeumaierSum};

/// `lhs_theorem` switches to the series path below this `|log w|`.
pub const LOG_SWITCH: f64 = 1e-3;
/// `lhs_corollary` switches to the series path below this `|x|`.
pub const X_SWITCH: f64 = 1e-4;
/// Relative round-off allowance applied to `max(1, |lhs|)` when deciding pass.
pub const EVALUATION_EPSILON: f64 = 1e-12;

/// Taylor order used on the series path. At `|u| <= 2π·10^-3` the first
/// omitted term is below `10^-70`.
const SERIES_ORDER: usize = 24;
/// Per-term relative round-off allowance for the right-hand side terms.
const TERM_ROUNDING: f64 = 32.0 * f64::EPSILON;

const FOUR_PI_SQ: f64 = 4.0 * PI * PI;
const INV_TWO_PI_SQ: f64 = 1.0 / (2.0 * PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// The identity in `w`.
    Theorem,
    /// The identity in `x` with `w = e^{2πx}`.
    Corollary,
}

/// Right-hand side truncated at `terms`, with its compensation and bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEvaluation {
    #[serde(with = "crate::complex::as_object")]
    pub partial: ComplexValue,
    #[serde(with = "crate::complex::as_object")]
    pub tail_estimate: ComplexValue,
    /// Bounds `|rhs - partial - tail_estimate|`, including round-off in the
    /// floating evaluation of `partial` and `tail_estimate`.
    pub remainder_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: Identity,
    #[serde(with = "crate::complex::as_object")]
    pub input: ComplexValue,
    pub terms: u64,
    #[serde(with = "crate::complex::as_object")]
    pub lhs: ComplexValue,
    #[serde(with = "crate::complex::as_object")]
    pub rhs_partial: ComplexValue,
    #[serde(with = "crate::complex::as_object")]
    pub tail_estimate: ComplexValue,
    pub remainder_bound: f64,
    /// `|lhs - rhs_partial - tail_estimate|`.
    pub discrepancy: f64,
    /// Absolute round-off allowance: `epsilon · max(1, |lhs|)`.
    pub evaluation_epsilon: f64,
    pub pass: bool,
}

fn f_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let series = ScaledLaurentSeries::f_series(SERIES_ORDER);
        (0..=SERIES_ORDER as i64)
            .map(|k| {
                series
                    .coeff(k)
                    .and_then(|c| c.to_f64())
                    .expect("coefficient within order")
            })
            .collect()
    })
}

/// `F(u)` from its Taylor series at the origin.
fn f_by_series(u: Complex64) -> Complex64 {
    f_coefficients()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * u + c)
}

fn check_theorem_domain(w: ComplexValue) -> Result<()> {
    ensure_finite(w)?;
    if on_branch_cut(w) {
        return Err(Error::BranchCut { re: w.re, im: w.im });
    }
    Ok(())
}

fn check_corollary_domain(x: ComplexValue) -> Result<()> {
    ensure_finite(x)?;
    if x.re == 0.0 && x.im != 0.0 && x.im.fract() == 0.0 {
        return Err(Error::Pole(x.im));
    }
    Ok(())
}

/// `w/(1-w)^2 - 1/log^2(w)` with the principal logarithm.
///
/// For `|log w| < 10^-3` (including `w = 1`) this evaluates
/// [`series_lhs_near_one`] instead.
pub fn lhs_theorem(w: ComplexValue) -> Result<ComplexValue> {
    check_theorem_domain(w)?;
    if w.ln().norm() < LOG_SWITCH {
        series_lhs_near_one(w)
    } else {
        closed_form_theorem(w)
    }
}

/// Series path for the theorem's left-hand side: `F(log w)` by Taylor series.
pub fn series_lhs_near_one(w: ComplexValue) -> Result<ComplexValue> {
    check_theorem_domain(w)?;
    Ok(f_by_series(w.ln()))
}

/// Literal closed form `w/(1-w)^2 - 1/log^2(w)` in double-double arithmetic.
pub fn closed_form_theorem(w: ComplexValue) -> Result<ComplexValue> {
    check_theorem_domain(w)?;
    if w == Complex64::new(1.0, 0.0) {
        return Err(Error::UnitExcluded);
    }
    let wd = DdComplex::from(w);
    // w/(1-w)^2 is invariant under w -> 1/w; use that form when w would
    // overflow the square.
    let rational_part = if w.norm() > 1e100 {
        let v = wd.recip();
        v / (DdComplex::ONE - v).square()
    } else {
        wd / (DdComplex::ONE - wd).square()
    };
    let log_part = wd.ln().square().recip();
    Ok((rational_part - log_part).to_complex64())
}

/// `e^{2πx}/(1-e^{2πx})^2 - 1/(4π²x²)`, switching to the Taylor series for
/// `|x| < 10^-4`.
pub fn lhs_corollary(x: ComplexValue) -> Result<ComplexValue> {
    check_corollary_domain(x)?;
    if x.norm() < X_SWITCH {
        series_corollary(x)
    } else {
        closed_form_corollary(x)
    }
}

/// Series path for the corollary's left-hand side.
pub fn series_corollary(x: ComplexValue) -> Result<ComplexValue> {
    check_corollary_domain(x)?;
    Ok(f_by_series(x * (2.0 * PI)))
}

/// Literal closed form of the corollary's left-hand side in double-double.
pub fn closed_form_corollary(x: ComplexValue) -> Result<ComplexValue> {
    check_corollary_domain(x)?;
    if x == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument(
            "the closed form is singular at x = 0; use the series path".into(),
        ));
    }
    let mut u = DdComplex::from(x).scale(DoubleDouble::TAU);
    // The closed form is even in u; flip only where e^{2u} would overflow.
    if u.re.hi() > 300.0 {
        u = -u;
    }
    let e = u.exp();
    let d = e - DdComplex::ONE;
    Ok((e / d.square() - u.square().recip()).to_complex64())
}

/// Euler–Maclaurin enclosure of `Σ_{n>N} 1/n²`: the sum lies in
/// `[s - 1/(30N^5), s]` with `s = 1/N - 1/(2N²) + 1/(6N³)`. Returns the
/// midpoint and half-width.
fn inverse_square_tail(terms: u64) -> (f64, f64) {
    let n = terms as f64;
    let upper = 1.0 / n - 0.5 / (n * n) + 1.0 / (6.0 * n * n * n);
    let half_width = 1.0 / (60.0 * n.powi(5));
    (upper - half_width, half_width)
}

fn check_terms(terms: u64) -> Result<()> {
    if terms == 0 {
        return Err(Error::InvalidArgument("terms must be at least 1".into()));
    }
    Ok(())
}

/// `2 Σ_{n=1}^{terms} (L² - 4π²n²)/(L² + 4π²n²)^2` with `L = log w`.
pub fn rhs_theorem(w: ComplexValue, terms: u64) -> Result<SeriesEvaluation> {
    check_theorem_domain(w)?;
    check_terms(terms)?;
    let log_w = w.ln();
    let l2 = log_w * log_w;

    let mut sum = ComplexSum::new();
    let mut magnitude = NeumaierSum::new();
    for n in 1..=terms {
        let nf = n as f64;
        let a = FOUR_PI_SQ * nf * nf;
        let den = l2 + a;
        let term = (l2 - a) / (den * den);
        sum.add(term);
        magnitude.add(term.norm());
    }
    let partial = sum.value() * 2.0;
    let (tail, tail_half_width) = inverse_square_tail(terms);

    // |L² + 4π²n²| >= 4π²n² - (Im L)² >= 4π²n² κ for n > N.
    let nf = terms as f64;
    let kappa = 1.0 - log_w.im.powi(2) / (FOUR_PI_SQ * (nf + 1.0).powi(2));
    let abs_l = log_w.norm();
    let truncation = abs_l.powi(4) / (160.0 * PI.powi(6) * kappa * kappa * nf.powi(5))
        + abs_l.powi(2) / (8.0 * PI.powi(4) * kappa * kappa * nf.powi(3))
        + INV_TWO_PI_SQ * tail_half_width;
    let rounding = TERM_ROUNDING * 2.0 * magnitude.value() + 4.0 * f64::EPSILON * partial.norm();

    Ok(SeriesEvaluation {
        partial,
        tail_estimate: Complex64::new(-INV_TWO_PI_SQ * tail, 0.0),
        remainder_bound: truncation + rounding,
    })
}

/// `(1/2π²) Σ_{n=1}^{terms} (x² - n²)/(x² + n²)^2`.
///
/// The tail bound needs `|x² + n²|` bounded away from zero past the
/// truncation, which holds once `terms + 1 > √2·|Im x|`; fewer terms are
/// rejected.
pub fn rhs_corollary(x: ComplexValue, terms: u64) -> Result<SeriesEvaluation> {
    check_corollary_domain(x)?;
    check_terms(terms)?;
    let nf = terms as f64;
    let kappa = 1.0 - x.im.powi(2) / (nf + 1.0).powi(2);
    if kappa < 0.5 {
        let needed = (std::f64::consts::SQRT_2 * x.im.abs()).ceil() as u64;
        return Err(Error::InsufficientTerms { terms, needed });
    }
    let x2 = x * x;

    let mut sum = ComplexSum::new();
    let mut magnitude = NeumaierSum::new();
    for n in 1..=terms {
        let n2 = (n as f64) * (n as f64);
        let den = x2 + n2;
        let term = (x2 - n2) / (den * den);
        sum.add(term);
        magnitude.add(term.norm());
    }
    let partial = sum.value() * INV_TWO_PI_SQ;
    let (tail, tail_half_width) = inverse_square_tail(terms);

    let abs_x = x.norm();
    let truncation = INV_TWO_PI_SQ
        * (abs_x.powi(4) / (5.0 * kappa * kappa * nf.powi(5))
            + abs_x.powi(2) / (kappa * kappa * nf.powi(3))
            + tail_half_width);
    let rounding =
        TERM_ROUNDING * INV_TWO_PI_SQ * magnitude.value() + 4.0 * f64::EPSILON * partial.norm();

    Ok(SeriesEvaluation {
        partial,
        tail_estimate: Complex64::new(-INV_TWO_PI_SQ * tail, 0.0),
        remainder_bound: truncation + rounding,
    })
}

pub fn verify(identity: Identity, input: ComplexValue, terms: u64) -> Result<VerificationReport> {
    verify_with_epsilon(identity, input, terms, EVALUATION_EPSILON)
}

/// Like [`verify`] with a caller-chosen relative round-off allowance.
pub fn verify_with_epsilon(
    identity: Identity,
    input: ComplexValue,
    terms: u64,
    epsilon: f64,
) -> Result<VerificationReport> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be finite and non-negative, got {epsilon}"
        )));
    }
    let (lhs, rhs) = match identity {
        Identity::Theorem => (lhs_theorem(input)?, rhs_theorem(input, terms)?),
        Identity::Corollary => (lhs_corollary(input)?, rhs_corollary(input, terms)?),
    };
    let discrepancy = ((lhs - rhs.partial) - rhs.tail_estimate).norm();
    let allowance = epsilon * lhs.norm().max(1.0);
    let pass = rhs.remainder_bound.is_finite() && discrepancy <= rhs.remainder_bound + allowance;
    Ok(VerificationReport {
        identity,
        input,
        terms,
        lhs,
        rhs_partial: rhs.partial,
        tail_estimate: rhs.tail_estimate,
        remainder_bound: rhs.remainder_bound,
        discrepancy,
        evaluation_epsilon: allowance,
        pass,
    })
}

//! `ζ(2m) = q·π^{2m}` with `q` an exact rational.
//!
//! Two exact routes produce `q`:
//!
//! * the Bernoulli closed form `q = (-1)^{m+1} B_{2m} 2^{2m} / (2 (2m)!)`;
//! * the derivative-limit route, which equates the `2m`-th derivative at zero
//!   of `f(z) = e^{2πz}/(e^{2πz}-1)^2 - 1/(2πz)^2` taken from its Taylor series
//!   with the same derivative of `(1/2π²) Σ h(z², n²)`,
//!   `h(x, c) = (x - c)/(x + c)^2`.
//!
//! A numerical cross-check brackets `Σ 1/n^{2m}` between integral-test tail
//! bounds.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{bernoulli_recurrence, factorial, rational_from_int, Rational};
use crate::laurent::ScaledLaurentSeries;
use crate::summation::NeumaierSum;

/// Asserts `ζ(2m) = q·π^{2m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaEvenValue {
    pub m: u32,
    #[serde(with = "rational_string")]
    pub q: Rational,
}

impl ZetaEvenValue {
    /// `q·π^{2m}` rounded once to the nearest `f64`.
    ///
    /// The product is formed exactly against a 60-digit rational
    /// approximation of π, so the only error that matters is the final
    /// rounding.
    pub fn value(&self) -> f64 {
        let pi_power = num_traits::pow(pi_rational().clone(), 2 * self.m as usize);
        (&self.q * pi_power).to_f64().unwrap_or(f64::NAN)
    }

    /// `q·π^{2m} - 1`, formed before rounding so that it stays accurate when
    /// the value itself rounds to `1.0`.
    pub fn excess_over_one(&self) -> f64 {
        let pi_power = num_traits::pow(pi_rational().clone(), 2 * self.m as usize);
        (&self.q * pi_power - Rational::one())
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

mod rational_string {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

fn pi_rational() -> &'static Rational {
    static PI: OnceLock<Rational> = OnceLock::new();
    PI.get_or_init(|| {
        let digits: BigInt = "3141592653589793238462643383279502884197169399375105820974944"
            .parse()
            .expect("digits");
        Rational::new(digits, BigInt::from(10u32).pow(60))
    })
}

/// Closed interval of floating values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericBracket {
    pub lower: f64,
    pub upper: f64,
}

impl NumericBracket {
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn strictly_contains(&self, value: f64) -> bool {
        self.lower < value && value < self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn overlaps(&self, other: &NumericBracket) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }
}

fn check_m(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "m must be at least 1; zeta(0) is outside the even-value formula".into(),
        ));
    }
    Ok(())
}

fn signed_one(negative: bool) -> Rational {
    if negative {
        -Rational::one()
    } else {
        Rational::one()
    }
}

pub fn zeta_even_exact(m: u32) -> Result<ZetaEvenValue> {
    check_m(m)?;
    let two_m = 2 * m;
    let bernoulli = bernoulli_recurrence(two_m as usize);
    let b = &bernoulli.values()[two_m as usize];
    let q = signed_one(m.is_multiple_of(2)) * b * rational_from_int(BigInt::one() << two_m)
        / rational_from_int(BigInt::from(factorial(two_m)) * 2);
    debug_assert!(q.is_positive());
    Ok(ZetaEvenValue { m, q })
}

/// `lim_{x→0} d^{2m}/dx^{2m} h(x², 1)` read off the Taylor series of
/// `(v - 1)/(v + 1)^2` in `v = x²`.
///
/// For general `c` the limit scales as `c^{-(m+1)}`, so summing over
/// `c = n²` produces `ζ(2m + 2)`.
pub fn h_derivative_limit(m: u32) -> Rational {
    let order = m as i64;
    let numerator = ScaledLaurentSeries::polynomial(0, vec![-Rational::one(), Rational::one()]);
    let one_plus_v = ScaledLaurentSeries::polynomial(0, vec![Rational::one(), Rational::one()])
        .truncate(order);
    let quotient = numerator
        .div(&one_plus_v.mul(&one_plus_v))
        .expect("nonzero divisor");
    let coefficient = quotient.coeff(order).expect("within order");
    coefficient * rational_from_int(BigInt::from(factorial(2 * m)))
}

/// Returns the value for `ζ(2(m + 1))` by equating the two derivative limits.
///
/// With `c = [u^{2m}] F(u)` for `F(u) = e^u/(e^u-1)^2 - 1/u^2`, the left limit
/// is `(2m)!·c·(2π)^{2m}` and the right one is `H·ζ(2m+2)/(2π²)` with `H` from
/// [`h_derivative_limit`]. Solving, `q = 2^{2m+1}·(2m)!·c / H`.
pub fn zeta_via_derivative_route(m: u32) -> ZetaEvenValue {
    let two_m = 2 * m;
    let f = ScaledLaurentSeries::f_series(two_m as usize);
    let c = f.coeff(two_m as i64).expect("within order");
    let f_limit = c * rational_from_int(BigInt::from(factorial(two_m)));
    let h_limit = h_derivative_limit(m);
    let q = f_limit * rational_from_int(BigInt::one() << (two_m + 1)) / h_limit;
    ZetaEvenValue { m: m + 1, q }
}

/// Brackets `ζ(2m)` from the first `terms` terms of `Σ 1/n^{2m}`.
///
/// The tail lies between `∫_{N+1}^∞ t^{-2m} dt` and `∫_N^∞ t^{-2m} dt`. Both
/// ends are widened by a round-off allowance covering the computed powers,
/// the compensated sum and the final additions.
pub fn zeta_even_partial_sum(m: u32, terms: u64) -> Result<NumericBracket> {
    check_m(m)?;
    if terms == 0 {
        return Err(Error::InvalidArgument("terms must be at least 1".into()));
    }
    let exponent = 2 * m as i32;
    let partial = (1..=terms)
        .map(|n| (n as f64).powi(-exponent))
        .collect::<NeumaierSum>()
        .value();
    let n = terms as f64;
    let scale = 1.0 / f64::from(exponent - 1);
    let tail_low = scale * (n + 1.0).powi(1 - exponent);
    let tail_high = scale * n.powi(1 - exponent);
    let allowance = f64::from(exponent + 8) * f64::EPSILON * (partial + tail_high);
    Ok(NumericBracket {
        lower: partial + tail_low - allowance,
        upper: partial + tail_high + allowance,
    })
}

//! Truncated Laurent series with exact rational coefficients.
//!
//! All series live in the scaled variable `u = 2πz`, which keeps every
//! coefficient of the expansions around `e^u/(e^u - 1)^2` rational. Powers of
//! `2π` are reattached only when a series is evaluated numerically.
//!
//! A series is known modulo `u^{order + 1}`. Exact (polynomial) series carry
//! [`EXACT_ORDER`]. Every operation propagates the validity order
//! conservatively, so chained results never claim more precision than their
//! inputs support.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rational_from_int, Rational};

/// Validity order of series that are exact polynomials.
pub const EXACT_ORDER: i64 = i64::MAX;

fn add_order(order: i64, shift: i64) -> i64 {
    if order == EXACT_ORDER {
        EXACT_ORDER
    } else {
        order.saturating_add(shift)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledLaurentSeries {
    lowest_exponent: i64,
    coefficients: Vec<Rational>,
    order: i64,
}

impl ScaledLaurentSeries {
    /// Builds a series whose `i`-th coefficient multiplies
    /// `u^{lowest_exponent + i}`, known modulo `u^{order + 1}`.
    ///
    /// Terms above `order` are discarded and zero coefficients at both ends
    /// are stripped.
    pub fn new(lowest_exponent: i64, coefficients: Vec<Rational>, order: i64) -> Self {
        let mut series = ScaledLaurentSeries {
            lowest_exponent,
            coefficients,
            order,
        };
        series.normalize();
        series
    }

    pub fn polynomial(lowest_exponent: i64, coefficients: Vec<Rational>) -> Self {
        Self::new(lowest_exponent, coefficients, EXACT_ORDER)
    }

    pub fn monomial(exponent: i64, coefficient: Rational) -> Self {
        Self::polynomial(exponent, vec![coefficient])
    }

    pub fn constant(value: Rational) -> Self {
        Self::monomial(0, value)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::polynomial(0, Vec::new())
    }

    /// `e^u - 1 = Σ_{k=1}^{order} u^k / k!`.
    pub fn exp_minus_one_series(order: i64) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidArgument(format!(
                "exp_minus_one_series needs order >= 1, got {order}"
            )));
        }
        let mut coefficients = Vec::with_capacity(order as usize);
        let mut factorial = BigInt::one();
        for k in 1..=order {
            factorial *= k;
            coefficients.push(Rational::new(BigInt::one(), factorial.clone()));
        }
        Ok(Self::new(1, coefficients, order))
    }

    /// Taylor series of `e^u/(e^u - 1)^2 - 1/u^2` through `u^order`.
    ///
    /// Built as `-d/du[(u/(e^u - 1))/u] - 1/u^2`; the two double poles cancel
    /// exactly and the result has no negative powers.
    pub fn f_series(order: usize) -> Self {
        let order = order as i64;
        let generating = Self::monomial(1, Rational::one())
            .div(&Self::exp_minus_one_series(order + 3).expect("positive order"))
            .expect("nonzero divisor");
        let inverse_square = Self::monomial(-2, Rational::one());
        let result = generating
            .div(&Self::monomial(1, Rational::one()))
            .expect("monomial divisor")
            .derive()
            .neg()
            .sub(&inverse_square);
        debug_assert!(result.order() >= order);
        debug_assert!(result.is_zero() || result.lowest_exponent() >= 0);
        result.truncate(order)
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.lowest_exponent
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT_ORDER
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Highest exponent carrying a stored (nonzero) coefficient.
    fn highest_exponent(&self) -> i64 {
        self.lowest_exponent + self.coefficients.len() as i64 - 1
    }

    /// Coefficient of `u^exponent`, or `None` above the validity order.
    pub fn coeff(&self, exponent: i64) -> Option<Rational> {
        if exponent > self.order {
            return None;
        }
        let index = exponent - self.lowest_exponent;
        if index < 0 || index >= self.coefficients.len() as i64 {
            Some(Rational::zero())
        } else {
            Some(self.coefficients[index as usize].clone())
        }
    }

    /// Drops terms above `order` and lowers the validity order to match.
    pub fn truncate(&self, order: i64) -> Self {
        Self::new(
            self.lowest_exponent,
            self.coefficients.clone(),
            self.order.min(order),
        )
    }

    pub fn neg(&self) -> Self {
        ScaledLaurentSeries {
            lowest_exponent: self.lowest_exponent,
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(
            self.lowest_exponent,
            self.coefficients.iter().map(|c| c * factor).collect(),
            self.order,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() {
            return other.truncate(order);
        }
        if other.is_zero() {
            return self.truncate(order);
        }
        let low = self.lowest_exponent.min(other.lowest_exponent);
        let high = self.highest_exponent().max(other.highest_exponent()).min(order);
        if high < low {
            return Self::new(0, Vec::new(), order);
        }
        let coefficients = (low..=high)
            .map(|e| self.stored(e) + other.stored(e))
            .collect();
        Self::new(low, coefficients, order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product, truncated at the propagated validity order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = add_order(self.order, other.lowest_exponent)
            .min(add_order(other.order, self.lowest_exponent));
        if self.is_zero() || other.is_zero() {
            return Self::new(0, Vec::new(), order);
        }
        let low = self.lowest_exponent + other.lowest_exponent;
        let full_len = self.coefficients.len() + other.coefficients.len() - 1;
        let len = if order == EXACT_ORDER {
            full_len
        } else if order < low {
            0
        } else {
            full_len.min((order - low + 1) as usize)
        };
        let mut coefficients = vec![Rational::zero(); len];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coefficients[i + j] += a * b;
                }
            }
        }
        Self::new(low, coefficients, order)
    }

    /// Long division after factoring `u^{lowest_exponent}` out of `divisor`.
    ///
    /// Dividing an exact series by an exact series that is not a monomial has
    /// no finite exact representation and is rejected.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZeroSeries);
        }
        let shift = divisor.lowest_exponent;
        let lead = &divisor.coefficients[0];

        if divisor.coefficients.len() == 1 && divisor.is_exact() {
            let coefficients = self.coefficients.iter().map(|c| c / lead).collect();
            return Ok(Self::new(
                self.lowest_exponent - shift,
                coefficients,
                add_order(self.order, -shift),
            ));
        }

        // Quotient of self by the unit part u^{-shift}·divisor, then shifted.
        let unit_order = add_order(divisor.order, -shift);
        let order = if self.is_zero() {
            self.order
        } else {
            self.order.min(add_order(unit_order, self.lowest_exponent))
        };
        if order == EXACT_ORDER {
            return Err(Error::UnboundedQuotient);
        }
        if self.is_zero() {
            return Ok(Self::new(0, Vec::new(), add_order(order, -shift)));
        }
        let low = self.lowest_exponent;
        if order < low {
            return Ok(Self::new(0, Vec::new(), add_order(order, -shift)));
        }
        let len = (order - low + 1) as usize;
        let mut quotient: Vec<Rational> = Vec::with_capacity(len);
        for i in 0..len {
            let mut acc = self
                .coefficients
                .get(i)
                .cloned()
                .unwrap_or_else(Rational::zero);
            for j in 1..=i.min(divisor.coefficients.len() - 1) {
                let q = &quotient[i - j];
                if !q.is_zero() {
                    acc -= &divisor.coefficients[j] * q;
                }
            }
            quotient.push(acc / lead);
        }
        Ok(Self::new(low - shift, quotient, add_order(order, -shift)))
    }

    /// Term-wise derivative in `u`; the validity order drops by one.
    pub fn derive(&self) -> Self {
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c * rational_from_int(self.lowest_exponent + i as i64))
            .collect();
        Self::new(
            self.lowest_exponent - 1,
            coefficients,
            add_order(self.order, -1),
        )
    }

    /// Evaluates the stored terms at a complex point in floating point.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coefficients.iter().rev() {
            acc = acc * u + c.to_f64().unwrap_or(f64::NAN);
        }
        acc * u.powi(self.lowest_exponent as i32)
    }

    fn stored(&self, exponent: i64) -> Rational {
        let index = exponent - self.lowest_exponent;
        if index < 0 || index >= self.coefficients.len() as i64 {
            Rational::zero()
        } else {
            self.coefficients[index as usize].clone()
        }
    }

    fn normalize(&mut self) {
        if self.order != EXACT_ORDER {
            let keep = self.order - self.lowest_exponent + 1;
            if keep <= 0 {
                self.coefficients.clear();
            } else if (keep as usize) < self.coefficients.len() {
                self.coefficients.truncate(keep as usize);
            }
        }
        while self.coefficients.last().is_some_and(Zero::is_zero) {
            self.coefficients.pop();
        }
        let leading = self
            .coefficients
            .iter()
            .take_while(|c| c.is_zero())
            .count();
        if leading == self.coefficients.len() {
            self.coefficients.clear();
            self.lowest_exponent = 0;
        } else if leading > 0 {
            self.coefficients.drain(..leading);
            self.lowest_exponent += leading as i64;
        }
    }
}

impl fmt::Display for ScaledLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let e = self.lowest_exponent + i as i64;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})u")?,
                _ => write!(f, "({c})u^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(u^{})", self.order + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{bernoulli_recurrence, factorial, rational};
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        rational(p, q)
    }

    fn u() -> ScaledLaurentSeries {
        ScaledLaurentSeries::monomial(1, Rational::one())
    }

    #[test]
    fn exp_minus_one_terms() {
        let s = ScaledLaurentSeries::exp_minus_one_series(1).unwrap();
        assert_eq!(s, ScaledLaurentSeries::new(1, vec![Rational::one()], 1));
        let s = ScaledLaurentSeries::exp_minus_one_series(3).unwrap();
        assert_eq!(s.coefficients(), &[r(1, 1), r(1, 2), r(1, 6)]);
        assert_eq!(s.lowest_exponent(), 1);
        let s = ScaledLaurentSeries::exp_minus_one_series(5).unwrap();
        assert_eq!(s.coeff(5), Some(r(1, 120)));
        assert_eq!(s.coeff(6), None);
    }

    #[test]
    fn exp_minus_one_rejects_low_order() {
        assert!(ScaledLaurentSeries::exp_minus_one_series(0).is_err());
        assert!(ScaledLaurentSeries::exp_minus_one_series(-3).is_err());
    }

    #[test]
    fn addition_cases() {
        let a = ScaledLaurentSeries::new(-1, vec![r(3, 2), r(0, 1), r(-7, 5)], 4);
        assert_eq!(a.add(&ScaledLaurentSeries::zero()), a);

        let cancelled = u().add(&u().neg());
        assert!(cancelled.is_zero());
        assert_eq!(cancelled.lowest_exponent(), 0);

        let mixed = ScaledLaurentSeries::monomial(-1, Rational::one()).add(&u());
        assert_eq!(mixed.lowest_exponent(), -1);
        assert_eq!(mixed.coefficients(), &[r(1, 1), r(0, 1), r(1, 1)]);
    }

    #[test]
    fn addition_takes_min_order() {
        let a = ScaledLaurentSeries::new(0, vec![r(1, 1); 6], 5);
        let b = ScaledLaurentSeries::new(0, vec![r(1, 1); 3], 2);
        let sum = a.add(&b);
        assert_eq!(sum.order(), 2);
        assert_eq!(sum.coefficients(), &[r(2, 1), r(2, 1), r(2, 1)]);
    }

    #[test]
    fn multiplication_cases() {
        let a = ScaledLaurentSeries::new(-2, vec![r(1, 3), r(2, 1), r(0, 1), r(5, 7)], 3);
        assert_eq!(a.mul(&ScaledLaurentSeries::one()), a);
        assert_eq!(u().mul(&u()), ScaledLaurentSeries::monomial(2, Rational::one()));
        let one_plus = ScaledLaurentSeries::polynomial(0, vec![r(1, 1), r(1, 1)]);
        let one_minus = ScaledLaurentSeries::polynomial(0, vec![r(1, 1), r(-1, 1)]);
        assert_eq!(
            one_plus.mul(&one_minus),
            ScaledLaurentSeries::polynomial(0, vec![r(1, 1), r(0, 1), r(-1, 1)])
        );
    }

    #[test]
    fn multiplication_propagates_order() {
        // (u + O(u^4)) * (u^-1 + 2 + O(u^2)): known through u^2.
        let a = ScaledLaurentSeries::new(1, vec![r(1, 1)], 3);
        let b = ScaledLaurentSeries::new(-1, vec![r(1, 1), r(2, 1)], 1);
        let p = a.mul(&b);
        assert_eq!(p.order(), 2);
        assert_eq!(p.coefficients(), &[r(1, 1), r(2, 1)]);
    }

    #[test]
    fn division_cases() {
        let e = ScaledLaurentSeries::exp_minus_one_series(3).unwrap();
        let q = u().div(&e).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.coefficients(), &[r(1, 1), r(-1, 2), r(1, 12)]);

        let a = ScaledLaurentSeries::new(0, vec![r(2, 1), r(-1, 3)], 6);
        assert_eq!(a.div(&ScaledLaurentSeries::one()).unwrap(), a);

        let u2 = ScaledLaurentSeries::monomial(2, Rational::one());
        assert_eq!(u2.div(&u()).unwrap(), u());
    }

    #[test]
    fn division_errors() {
        assert_eq!(
            u().div(&ScaledLaurentSeries::zero()),
            Err(Error::DivisionByZeroSeries)
        );
        let one_plus = ScaledLaurentSeries::polynomial(0, vec![r(1, 1), r(1, 1)]);
        assert_eq!(u().div(&one_plus), Err(Error::UnboundedQuotient));
    }

    #[test]
    fn derivative_cases() {
        assert!(ScaledLaurentSeries::constant(r(7, 3)).derive().is_zero());
        let u2 = ScaledLaurentSeries::monomial(2, Rational::one());
        assert_eq!(u2.derive(), ScaledLaurentSeries::monomial(1, r(2, 1)));
        let inv = ScaledLaurentSeries::monomial(-1, Rational::one());
        assert_eq!(inv.derive(), ScaledLaurentSeries::monomial(-2, r(-1, 1)));
        let e = ScaledLaurentSeries::exp_minus_one_series(4).unwrap();
        assert_eq!(e.derive().order(), 3);
    }

    #[test]
    fn f_series_leading_coefficients() {
        let f = ScaledLaurentSeries::f_series(6);
        assert_eq!(f.lowest_exponent(), 0);
        assert_eq!(f.order(), 6);
        assert_eq!(f.coeff(0), Some(r(-1, 12)));
        assert_eq!(f.coeff(1), Some(Rational::zero()));
        assert_eq!(f.coeff(2), Some(r(1, 240)));
    }

    #[test]
    fn f_series_matches_bernoulli_closed_form() {
        let bernoulli = bernoulli_recurrence(42);
        let f = ScaledLaurentSeries::f_series(40);
        for k in 0..=40usize {
            let expected = -bernoulli.values()[k + 2].clone()
                / (rational_from_int(BigInt::from(factorial(k as u32)))
                    * rational_from_int(k as i64 + 2));
            assert_eq!(f.coeff(k as i64), Some(expected), "k = {k}");
        }
    }

    #[test]
    fn display_renders_terms() {
        let s = ScaledLaurentSeries::new(-1, vec![r(1, 1), r(0, 1), r(-1, 2)], 2);
        assert_eq!(s.to_string(), "(1)u^-1 + (-1/2)u + O(u^3)");
        assert_eq!(ScaledLaurentSeries::zero().to_string(), "0");
    }

    fn arb_series() -> impl Strategy<Value = ScaledLaurentSeries> {
        (
            -3i64..3,
            prop::collection::vec((-20i64..20, 1i64..9), 1..6),
            0i64..8,
        )
            .prop_map(|(low, raw, span)| {
                let coefficients = raw.into_iter().map(|(p, q)| rational(p, q)).collect();
                ScaledLaurentSeries::new(low, coefficients, low + span)
            })
    }

    fn arb_unit_series() -> impl Strategy<Value = ScaledLaurentSeries> {
        (arb_series(), 1i64..9, -2i64..2).prop_map(|(s, lead, shift)| {
            let mut coefficients = vec![rational(lead, 1)];
            coefficients.extend(s.coefficients().iter().cloned());
            ScaledLaurentSeries::new(shift, coefficients, shift + 6)
        })
    }

    fn agree_to_order(a: &ScaledLaurentSeries, b: &ScaledLaurentSeries) -> bool {
        let order = a.order().min(b.order());
        a.truncate(order) == b.truncate(order)
    }

    proptest! {
        #[test]
        fn mul_commutes(a in arb_series(), b in arb_series()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
        }

        #[test]
        fn mul_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert!(agree_to_order(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        }

        #[test]
        fn mul_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            prop_assert!(agree_to_order(&lhs, &rhs));
        }

        #[test]
        fn div_then_mul_recovers(a in arb_series(), b in arb_unit_series()) {
            let q = a.div(&b).unwrap();
            let back = q.mul(&b);
            prop_assert!(back.order() <= a.order());
            prop_assert!(agree_to_order(&back, &a));
        }
    }
}

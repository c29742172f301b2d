//! Exact integer and rational helpers, and Bernoulli numbers.
//!
//! Bernoulli numbers follow the `z/(e^z - 1)` convention, so `B_1 = -1/2`.
//! Two algorithms are provided and each serves as the other's oracle:
//! the triangular recurrence `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, and literal
//! division of `u` by the series of `e^u - 1`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::ScaledLaurentSeries;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rational_from_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "binomial({n}, {k}) needs k <= n"
        )));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // Each prefix product acc * (n - i) / (i + 1) is itself a binomial, so the
    // division is exact.
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BernoulliMethod {
    Recurrence,
    SeriesDivision,
}

impl fmt::Display for BernoulliMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BernoulliMethod::Recurrence => f.write_str("recurrence"),
            BernoulliMethod::SeriesDivision => f.write_str("series_division"),
        }
    }
}

/// Exact `B_0..=B_n` together with the algorithm that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
    method: BernoulliMethod,
}

impl BernoulliTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn method(&self) -> BernoulliMethod {
        self.method
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    /// Highest index held, i.e. `n` for a table `B_0..=B_n`.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// Exact equality of the values, ignoring which method produced them.
    pub fn agrees_with(&self, other: &BernoulliTable) -> bool {
        self.values == other.values
    }
}

/// `B_0..=B_n` from `B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j`.
pub fn bernoulli_recurrence(n: usize) -> BernoulliTable {
    let mut values: Vec<Rational> = Vec::with_capacity(n + 1);
    values.push(Rational::one());
    for m in 1..=n {
        // Walk row m+1 of Pascal's triangle alongside the sum.
        let row = BigInt::from(m + 1);
        let mut coeff = BigInt::one();
        let mut acc = Rational::zero();
        for (j, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += b * &coeff;
            }
            coeff = coeff * (&row - j) / (j + 1);
        }
        values.push(-acc / rational_from_int(m + 1));
    }
    BernoulliTable {
        values,
        method: BernoulliMethod::Recurrence,
    }
}

/// `B_0..=B_n` as `k!` times the coefficients of `u / (e^u - 1)`.
pub fn bernoulli_series_division(n: usize) -> BernoulliTable {
    let order = n as i64 + 1;
    let denominator = ScaledLaurentSeries::exp_minus_one_series(order)
        .expect("order is at least one");
    let quotient = ScaledLaurentSeries::monomial(1, Rational::one())
        .div(&denominator)
        .expect("e^u - 1 is not the zero series");
    debug_assert!(quotient.order() >= n as i64);

    let mut factorial = BigInt::one();
    let values = (0..=n)
        .map(|k| {
            if k > 1 {
                factorial *= k;
            }
            let c = quotient.coeff(k as i64).expect("within validity order");
            c * &factorial
        })
        .collect();
    BernoulliTable {
        values,
        method: BernoulliMethod::SeriesDivision,
    }
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(value: &Rational) -> i8 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iterative_factorial(n: u32) -> BigUint {
        let mut acc = BigUint::one();
        let mut k = 1u32;
        while k <= n {
            acc *= BigUint::from(k);
            k += 1;
        }
        acc
    }

    fn pascal_row(n: usize) -> Vec<BigUint> {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    /// Akiyama–Tanigawa: produces B_n with the B_1 = +1/2 convention.
    fn akiyama_tanigawa(n: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut a: Vec<Rational> = Vec::new();
        for m in 0..=n {
            a.push(rational(1, m as i64 + 1));
            for j in (1..=m).rev() {
                let diff = &a[j - 1] - &a[j];
                a[j - 1] = diff * rational_from_int(j as i64);
            }
            out.push(a[0].clone());
        }
        out
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(1), BigUint::one());
        assert_eq!(factorial(10), iterative_factorial(10));
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(factorial(60), iterative_factorial(60));
    }

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial(5, 0).unwrap(), BigUint::one());
        assert_eq!(binomial(5, 5).unwrap(), BigUint::one());
        assert_eq!(binomial(10, 4).unwrap(), BigUint::from(210u32));
        let row = pascal_row(40);
        for (k, expected) in row.iter().enumerate() {
            assert_eq!(&binomial(40, k as u32).unwrap(), expected);
        }
    }

    #[test]
    fn binomial_rejects_k_above_n() {
        assert!(matches!(binomial(3, 4), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn recurrence_small_tables() {
        assert_eq!(bernoulli_recurrence(0).values(), &[Rational::one()]);
        assert_eq!(
            bernoulli_recurrence(2).values(),
            &[Rational::one(), rational(-1, 2), rational(1, 6)]
        );
        let table = bernoulli_recurrence(12);
        assert_eq!(table.get(12), Some(&rational(-691, 2730)));
        assert_eq!(table.method(), BernoulliMethod::Recurrence);
    }

    #[test]
    fn recurrence_matches_akiyama_tanigawa() {
        let oracle = akiyama_tanigawa(60);
        let table = bernoulli_recurrence(60);
        for (k, expected) in oracle.iter().enumerate() {
            let expected = if k == 1 { -expected } else { expected.clone() };
            assert_eq!(table.values()[k], expected, "B_{k}");
        }
    }

    #[test]
    fn series_division_small_tables() {
        assert_eq!(
            bernoulli_series_division(1).values(),
            &[Rational::one(), rational(-1, 2)]
        );
        let table = bernoulli_series_division(3);
        assert_eq!(table.get(3), Some(&Rational::zero()));
        assert_eq!(table.get(2), Some(&rational(1, 6)));
        assert_eq!(table.method(), BernoulliMethod::SeriesDivision);
        assert_eq!(bernoulli_series_division(0).values(), &[Rational::one()]);
    }

    #[test]
    fn algorithms_agree_to_eighty() {
        let a = bernoulli_recurrence(80);
        let b = bernoulli_series_division(80);
        assert!(a.agrees_with(&b));
        assert_ne!(a, b, "method tags differ");
    }

    #[test]
    fn table_invariants() {
        let table = bernoulli_recurrence(50);
        assert_eq!(table.values()[0], Rational::one());
        assert_eq!(table.values()[1], rational(-1, 2));
        for k in (3..=50).step_by(2) {
            assert!(table.values()[k].is_zero());
        }
        for m in 1..=25usize {
            let expected = if m % 2 == 1 { 1 } else { -1 };
            assert_eq!(sign(&table.values()[2 * m]), expected, "B_{}", 2 * m);
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rational(1, 6)), "1/6");
        assert_eq!(format_rational(&rational(-691, 2730)), "-691/2730");
        assert_eq!(format_rational(&rational(0, 5)), "0");
        assert_eq!(format_rational(&rational(4, 2)), "2");
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1..i64::MAX).prop_map(|(p, q)| rational(p, q))
    }

    proptest! {
        #[test]
        fn rational_arithmetic_is_exact(a in arb_rational(), b in arb_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
        }

        #[test]
        fn rationals_are_normalised(p in any::<i64>(), q in 1..i64::MAX, s in 1..1000i64) {
            let r = Rational::new(BigInt::from(p) * s, BigInt::from(q) * s);
            prop_assert!(r.denom().is_positive());
            let g = num_integer::Integer::gcd(r.numer(), r.denom());
            prop_assert!(g.is_one());
            prop_assert_eq!(r, rational(p, q));
        }
    }
}

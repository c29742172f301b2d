//! Truncated genus-one factorisation of `e^z - w`.
//!
//! The zeros of `e^z - w` are `z_n = log w + 2πin`, `n ∈ ℤ`, and
//!
//! ```text
//! e^z - w = e^{a0 + a1 z} Π_n (1 - z/z_n) e^{z/z_n},   e^{a0} = 1 - w,  a1 = 1/(1 - w).
//! ```
//!
//! The product is truncated symmetrically at `|n| <= N`. Each factor is taken
//! in logarithmic form, `log(1 - t) + t` with `t = z/z_n`, which is `O(t²)`
//! and is evaluated without cancellation; the factors for `n` and `-n` are
//! combined first, the pairs are accumulated with compensated summation in
//! increasing `n`, and a single exponential closes the product.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{ensure_finite, on_branch_cut, ComplexValue};
use crate::error::{Error, Result};
use crate::summation::ComplexSum;

/// Zeros `z_n = log_w + 2πin` for `|n| <= half_count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    #[serde(with = "crate::complex::as_object")]
    pub log_w: ComplexValue,
    pub half_count: u64,
}

impl ZeroSet {
    pub fn zero(&self, n: i64) -> ComplexValue {
        self.log_w + Complex64::new(0.0, 2.0 * PI * n as f64)
    }

    /// `(n, z_n)` in the order `0, 1, -1, 2, -2, ...`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, ComplexValue)> + '_ {
        let n = self.half_count as i64;
        std::iter::once(0)
            .chain((1..=n).flat_map(|k| [k, -k]))
            .map(move |k| (k, self.zero(k)))
    }

    pub fn len(&self) -> usize {
        2 * self.half_count as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrefactorConstants {
    /// Principal `log(1 - w)`.
    #[serde(with = "crate::complex::as_object")]
    pub a0: ComplexValue,
    /// `1/(1 - w)`.
    #[serde(with = "crate::complex::as_object")]
    pub a1: ComplexValue,
}

/// Order in which the truncated product is accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProductOrdering {
    /// `n` and `-n` combined first, pairs in increasing `n`.
    #[default]
    PairFirst,
    /// Every factor on its own, `n = -N, ..., N`.
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorizationError {
    pub half_count: u64,
    pub error: f64,
}

fn check_domain(w: ComplexValue) -> Result<()> {
    ensure_finite(w)?;
    if on_branch_cut(w) {
        return Err(Error::BranchCut { re: w.re, im: w.im });
    }
    if w == Complex64::new(1.0, 0.0) {
        return Err(Error::UnitExcluded);
    }
    Ok(())
}

fn check_half_count(half_count: u64) -> Result<()> {
    if half_count == 0 {
        return Err(Error::InvalidArgument("half_count must be at least 1".into()));
    }
    Ok(())
}

pub fn zeros(w: ComplexValue, half_count: u64) -> Result<ZeroSet> {
    check_domain(w)?;
    check_half_count(half_count)?;
    Ok(ZeroSet {
        log_w: w.ln(),
        half_count,
    })
}

pub fn prefactor_constants(w: ComplexValue) -> Result<PrefactorConstants> {
    check_domain(w)?;
    let one_minus = Complex64::new(1.0, 0.0) - w;
    Ok(PrefactorConstants {
        a0: one_minus.ln(),
        a1: one_minus.inv(),
    })
}

/// `S_1` truncated: `1/L + Σ_{n=1}^{N} 2L/(L² + 4π²n²)` with `L = log w`.
pub fn s1_partial(w: ComplexValue, half_count: u64) -> Result<ComplexValue> {
    let set = zeros(w, half_count)?;
    let l = set.log_w;
    let l2 = l * l;
    let mut sum = ComplexSum::new();
    sum.add(l.inv());
    for n in 1..=half_count {
        let nf = n as f64;
        sum.add(2.0 * l / (l2 + 4.0 * PI * PI * nf * nf));
    }
    Ok(sum.value())
}

/// `log(1 - t) + t`, accurate relative to `t²` for small `t`.
fn log_factor(t: Complex64) -> Complex64 {
    if t.norm() < 0.5 {
        // -Σ_{k≥2} t^k / k
        let mut power = t * t;
        let mut acc = ComplexSum::new();
        let mut k = 2.0;
        loop {
            let term = power / k;
            acc.add(-term);
            if term.norm() <= 1e-18 * acc.value().norm() {
                break;
            }
            power *= t;
            k += 1.0;
        }
        acc.value()
    } else {
        (Complex64::new(1.0, 0.0) - t).ln() + t
    }
}

/// `P_N(z) = e^{a0 + a1 z} Π_{|n| <= N} (1 - z/z_n) e^{z/z_n}`.
///
/// Returns exactly zero when `z` coincides with one of the enumerated zeros.
pub fn truncated_product(w: ComplexValue, z: ComplexValue, half_count: u64) -> Result<ComplexValue> {
    truncated_product_ordered(w, z, half_count, ProductOrdering::PairFirst)
}

pub fn truncated_product_ordered(
    w: ComplexValue,
    z: ComplexValue,
    half_count: u64,
    ordering: ProductOrdering,
) -> Result<ComplexValue> {
    let set = zeros(w, half_count)?;
    ensure_finite(z)?;
    let constants = prefactor_constants(w)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    let mut log_sum = ComplexSum::new();
    log_sum.add(constants.a0 + constants.a1 * z);
    let factor = |n: i64| -> Option<Complex64> {
        let t = z / set.zero(n);
        if one - t == zero {
            None
        } else {
            Some(log_factor(t))
        }
    };
    let n = half_count as i64;
    match ordering {
        ProductOrdering::PairFirst => {
            let Some(centre) = factor(0) else {
                return Ok(zero);
            };
            log_sum.add(centre);
            for k in 1..=n {
                let (Some(plus), Some(minus)) = (factor(k), factor(-k)) else {
                    return Ok(zero);
                };
                log_sum.add(plus + minus);
            }
        }
        ProductOrdering::Flat => {
            for k in -n..=n {
                let Some(term) = factor(k) else {
                    return Ok(zero);
                };
                log_sum.add(term);
            }
        }
    }
    Ok(log_sum.value().exp())
}

/// `|P_N(z) - (e^z - w)|` for each requested truncation level.
pub fn factorization_report(
    w: ComplexValue,
    z: ComplexValue,
    levels: &[u64],
) -> Result<Vec<FactorizationError>> {
    check_domain(w)?;
    ensure_finite(z)?;
    if levels.is_empty() {
        return Err(Error::InvalidArgument("at least one level is required".into()));
    }
    let target = z.exp() - w;
    levels
        .iter()
        .map(|&half_count| {
            let p = truncated_product(w, z, half_count)?;
            Ok(FactorizationError {
                half_count,
                error: (p - target).norm(),
            })
        })
        .collect()
}

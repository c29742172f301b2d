//! Double-double arithmetic (about 106 significant bits) for evaluating closed
//! forms that cancel catastrophically in plain `f64`.
//!
//! Only what the closed forms need is here: the four operations, `exp`, `ln`,
//! `sin`/`cos`, and a complex wrapper with `exp` and the principal `ln`.
//! Values are kept normalised so that `hi == hi + lo` in `f64`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };
    pub const PI: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::PI,
        lo: 1.224_646_799_147_353_2e-16,
    };
    pub const TAU: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::TAU,
        lo: 2.449_293_598_294_706_4e-16,
    };
    pub const FRAC_PI_2: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::FRAC_PI_2,
        lo: 6.123_233_995_736_766e-17,
    };
    pub const LN_2: DoubleDouble = DoubleDouble {
        hi: std::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// Exact scaling by a power of two.
    pub fn ldexp(self, exp: i32) -> Self {
        let half = exp / 2;
        let a = 2f64.powi(half);
        let b = 2f64.powi(exp - half);
        DoubleDouble {
            hi: self.hi * a * b,
            lo: self.lo * a * b,
        }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.8 {
            return DoubleDouble::new(f64::INFINITY, 0.0);
        }
        if self.hi < -745.2 {
            return DoubleDouble::ZERO;
        }
        if self.hi == 0.0 {
            return DoubleDouble::ONE;
        }
        const SQUARINGS: i32 = 10;
        let k = (self.hi / Self::LN_2.hi).round();
        let r = (self - Self::LN_2.mul_f64(k)).ldexp(-SQUARINGS);

        // expm1(r) by Taylor, |r| < 3.4e-4.
        let mut sum = r;
        let mut term = r;
        for i in 2..40 {
            term = term * r / DoubleDouble::from(i as f64);
            sum = sum + term;
            if term.hi.abs() <= 1e-36 * sum.hi.abs() {
                break;
            }
        }
        // expm1(2r) = 2 expm1(r) + expm1(r)^2
        for _ in 0..SQUARINGS {
            sum = sum.ldexp(1) + sum.square();
        }
        (sum + Self::ONE).ldexp(k as i32)
    }

    /// Natural logarithm of a positive value, by Newton steps on `exp`.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::new(f64::NAN, 0.0);
        }
        let mut y = DoubleDouble::from(self.hi.ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::ONE;
        }
        y
    }

    pub fn sin_cos(self) -> (Self, Self) {
        let k = (self.hi / Self::FRAC_PI_2.hi).round();
        let r = self - Self::FRAC_PI_2.mul_f64(k);
        let r2 = r.square();

        let mut sin = r;
        let mut term = r;
        let mut cos = Self::ONE;
        let mut cterm = Self::ONE;
        let mut n = 1.0;
        loop {
            cterm = -(cterm * r2) / DoubleDouble::from(n * (n + 1.0));
            term = -(term * r2) / DoubleDouble::from((n + 1.0) * (n + 2.0));
            cos = cos + cterm;
            sin = sin + term;
            n += 2.0;
            if (term.hi.abs() <= 1e-36 * sin.hi.abs() || sin.hi == 0.0)
                && cterm.hi.abs() <= 1e-36
            {
                break;
            }
        }
        match (k as i64).rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(value: f64) -> Self {
        DoubleDouble { hi: value, lo: 0.0 }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from(q3)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DdComplex {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl DdComplex {
    pub const ONE: DdComplex = DdComplex {
        re: DoubleDouble::ONE,
        im: DoubleDouble::ZERO,
    };

    pub fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        DdComplex { re, im }
    }

    pub fn to_complex64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: DoubleDouble) -> Self {
        DdComplex::new(self.re * k, self.im * k)
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn exp(self) -> Self {
        let modulus = self.re.exp();
        let (s, c) = self.im.sin_cos();
        DdComplex::new(modulus * c, modulus * s)
    }

    /// Principal logarithm: an `f64` estimate refined by Newton steps
    /// `L <- L + w e^{-L} - 1`.
    pub fn ln(self) -> Self {
        let mut y = DdComplex::from(self.to_complex64().ln());
        for _ in 0..2 {
            y = y + self * (-y).exp() - Self::ONE;
        }
        y
    }
}

impl From<Complex64> for DdComplex {
    fn from(z: Complex64) -> Self {
        DdComplex::new(z.re.into(), z.im.into())
    }
}

impl Neg for DdComplex {
    type Output = Self;
    fn neg(self) -> Self {
        DdComplex::new(-self.re, -self.im)
    }
}

impl Add for DdComplex {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        DdComplex::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for DdComplex {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        DdComplex::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for DdComplex {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        DdComplex::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for DdComplex {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let norm = b.re.square() + b.im.square();
        DdComplex::new(
            (self.re * b.re + self.im * b.im) / norm,
            (self.im * b.re - self.re * b.im) / norm,
        )
    }
}

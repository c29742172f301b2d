//! Complex inputs: validation and the `a+bi` literal syntax.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex input or output value. Both components are finite.
pub type ComplexValue = Complex64;

pub fn ensure_finite(z: ComplexValue) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite { re: z.re, im: z.im })
    }
}

/// True when `w` lies on the cut `(-inf, 0]` of the principal logarithm.
pub fn on_branch_cut(w: ComplexValue) -> bool {
    w.im == 0.0 && w.re <= 0.0
}

/// Parses `a+bi`, `a-bi` or a bare real `a`, with decimal components.
pub fn parse_complex(text: &str) -> Result<ComplexValue> {
    let invalid = || Error::InvalidArgument(format!("cannot parse complex literal {text:?}"));
    let s = text.trim();
    if s.is_empty() {
        return Err(invalid());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re: f64 = s.parse().map_err(|_| invalid())?;
        return ensure_finite(Complex64::new(re, 0.0)).map_err(|_| invalid());
    };
    // The imaginary part starts at the last sign that is not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| {
            (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E')
        })
        .ok_or_else(invalid)?;
    let re: f64 = body[..split].parse().map_err(|_| invalid())?;
    let im_text = &body[split..];
    let im: f64 = match im_text {
        "+" => 1.0,
        "-" => -1.0,
        _ => im_text.parse().map_err(|_| invalid())?,
    };
    ensure_finite(Complex64::new(re, im)).map_err(|_| invalid())
}

/// Full-precision `a+bi` rendering that [`parse_complex`] reads back exactly.
pub struct ComplexLiteral(pub ComplexValue);

impl fmt::Display for ComplexLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.0;
        if z.im.is_sign_negative() {
            write!(f, "{:?}-{:?}i", z.re, -z.im)
        } else {
            write!(f, "{:?}+{:?}i", z.re, z.im)
        }
    }
}

/// Serde adapter writing a complex value as `{"re": .., "im": ..}`.
pub mod as_object {
    use super::ComplexValue;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Parts {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &ComplexValue, s: S) -> Result<S::Ok, S::Error> {
        Parts { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ComplexValue, D::Error> {
        let parts = Parts::deserialize(d)?;
        Ok(ComplexValue::new(parts.re, parts.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_complex("2+0i").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-1+0i").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(parse_complex("2-3i").unwrap(), Complex64::new(2.0, -3.0));
        assert_eq!(parse_complex("1e-3+2.5E+2i").unwrap(), Complex64::new(1e-3, 250.0));
        assert_eq!(parse_complex("-1.5e-4-1e-4i").unwrap(), Complex64::new(-1.5e-4, -1e-4));
        assert_eq!(parse_complex(" 0.5 ").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("1+i").unwrap(), Complex64::new(1.0, 1.0));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "i", "2+", "two", "1+2j", "1+2i+3i", "3i", "inf+0i", "nan"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn branch_cut() {
        assert!(on_branch_cut(Complex64::new(-1.0, 0.0)));
        assert!(on_branch_cut(Complex64::new(0.0, 0.0)));
        assert!(!on_branch_cut(Complex64::new(-1.0, 1e-300)));
        assert!(!on_branch_cut(Complex64::new(2.0, 0.0)));
    }

    proptest! {
        #[test]
        fn literal_round_trips(re in -1e6f64..1e6, im in -1e6f64..1e6) {
            let z = Complex64::new(re, im);
            let text = ComplexLiteral(z).to_string();
            prop_assert_eq!(parse_complex(&text).unwrap(), z);
        }
    }
}

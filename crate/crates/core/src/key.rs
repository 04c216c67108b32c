//! Exact decimal keys.
//!
//! Order systems need a genuine total order on their key values, so keys are
//! stored as exact decimals rather than floats. Integers, decimal strings and
//! JSON number literals all compare numerically without rounding; a finite
//! `f64` converts through its shortest round-trip representation, which
//! preserves the float ordering.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{Serialize, Serializer};

use crate::error::Error;

/// An exact decimal number.
///
/// Canonical form: `digits` carries no leading or trailing zeros and the
/// value is `0.d1d2...dn * 10^exponent`. Zero has no digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Key {
    negative: bool,
    digits: Vec<u8>,
    exponent: i64,
}

impl Key {
    pub fn zero() -> Self {
        Key { negative: false, digits: Vec::new(), exponent: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Nearest `f64`; used only for display and plotting, never for comparison.
    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().unwrap_or(f64::NAN)
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        self.exponent
            .cmp(&other.exponent)
            .then_with(|| self.digits.cmp(&other.digits))
    }
}

impl FromStr for Key {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let bad = || Error::Key(text.to_string());
        let s = text.trim();
        let (negative, rest) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (mantissa, exp_part) = match rest.find(['e', 'E']) {
            Some(pos) => (&rest[..pos], Some(&rest[pos + 1..])),
            None => (rest, None),
        };
        let explicit_exp: i64 = match exp_part {
            Some(e) => e.parse().map_err(|_| bad())?,
            None => 0,
        };
        let (int_part, frac_part) = match mantissa.find('.') {
            Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
            None => (mantissa, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }

        let mut digits: Vec<u8> = int_part
            .bytes()
            .chain(frac_part.bytes())
            .map(|b| b - b'0')
            .collect();
        let mut exponent = int_part.len() as i64 + explicit_exp;
        let leading = digits.iter().take_while(|&&d| d == 0).count();
        digits.drain(..leading);
        exponent -= leading as i64;
        while digits.last() == Some(&0) {
            digits.pop();
        }
        if digits.is_empty() {
            return Ok(Key::zero());
        }
        Ok(Key { negative, digits, exponent })
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        let sign = |k: &Key| match (k.is_zero(), k.negative) {
            (true, _) => 0i8,
            (false, true) => -1,
            (false, false) => 1,
        };
        match sign(self).cmp(&sign(other)) {
            Ordering::Equal => match sign(self) {
                0 => Ordering::Equal,
                1 => self.cmp_magnitude(other),
                _ => other.cmp_magnitude(self),
            },
            ord => ord,
        }
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.negative {
            f.write_str("-")?;
        }
        let ds: String = self.digits.iter().map(|d| char::from(b'0' + d)).collect();
        let n = ds.len() as i64;
        let e = self.exponent;
        if (-6..=21).contains(&e) {
            if e >= n {
                write!(f, "{}{}", ds, "0".repeat((e - n) as usize))
            } else if e > 0 {
                write!(f, "{}.{}", &ds[..e as usize], &ds[e as usize..])
            } else {
                write!(f, "0.{}{}", "0".repeat((-e) as usize), ds)
            }
        } else if n == 1 {
            write!(f, "{}e{}", ds, e - 1)
        } else {
            write!(f, "{}.{}e{}", &ds[..1], &ds[1..], e - 1)
        }
    }
}

impl From<i64> for Key {
    fn from(v: i64) -> Self {
        v.to_string().parse().expect("integer literal is a valid key")
    }
}

impl From<u64> for Key {
    fn from(v: u64) -> Self {
        v.to_string().parse().expect("integer literal is a valid key")
    }
}

impl TryFrom<f64> for Key {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self, Error> {
        if !v.is_finite() {
            return Err(Error::Key(v.to_string()));
        }
        format!("{v:e}").parse()
    }
}

impl Serialize for Key {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let number = serde_json::Number::from_str(&self.to_string())
            .map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Key {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(deserializer)? {
            serde_json::Value::Number(n) => n.to_string().parse().map_err(de::Error::custom),
            serde_json::Value::String(s) => s.parse().map_err(de::Error::custom),
            other => Err(de::Error::custom(format!(
                "expected a number or decimal string, found {other}"
            ))),
        }
    }
}

//! Exact rational scalars and their textual form.
//!
//! All arithmetic in this crate goes through [`Rational`], an arbitrary
//! precision fraction kept in lowest terms with a positive denominator.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`; the result is normalised.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_owned(),
        reason,
    };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^{-k}` exactly.
pub fn inv_pow2(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

/// Serde wrapper that writes a [`Rational`] as its canonical string and reads
/// strings or JSON integer literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(pub Rational);

impl From<Rational> for ExactRational {
    fn from(r: Rational) -> Self {
        Self(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
            Big(serde_json::Number),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => parse_rational(&s)
                .map(ExactRational)
                .map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(ExactRational(int(i))),
            Raw::Big(n) => {
                let text = n.to_string();
                if text.contains(['.', 'e', 'E']) {
                    Err(serde::de::Error::custom(format!(
                        "floating-point literal {text} is not an exact rational"
                    )))
                } else {
                    parse_rational(&text)
                        .map(ExactRational)
                        .map_err(serde::de::Error::custom)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 1 / -2 ").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(format_rational(&ratio(2, -6)), "-1/3");
        assert_eq!(format_rational(&inv_pow2(3)), "1/8");
    }

    #[test]
    fn serde_accepts_integer_literals_and_rejects_floats() {
        let v: Vec<ExactRational> = serde_json::from_str(r#"["1/2", 7, "-3"]"#).unwrap();
        assert_eq!(v[0].0, ratio(1, 2));
        assert_eq!(v[1].0, int(7));
        assert_eq!(v[2].0, int(-3));
        assert!(serde_json::from_str::<ExactRational>("0.5").is_err());
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","7","-3"]"#);
    }
}

//! Exact numbers in reports: JSON integers when they fit in `i64`,
//! otherwise `"num/den"` (or big-integer) strings.

use std::fmt;

use qcalg_core::exactlin::Scalar;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Exact(String);

impl Exact {
    pub fn parse(text: &str) -> Option<Exact> {
        let valid_int = |s: &str| {
            let digits = s.strip_prefix('-').unwrap_or(s);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        let ok = match text.split_once('/') {
            Some((n, d)) => valid_int(n) && valid_int(d) && !d.starts_with('-') && d.bytes().any(|b| b != b'0'),
            None => valid_int(text),
        };
        ok.then(|| Exact(text.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&Scalar> for Exact {
    fn from(s: &Scalar) -> Self {
        Exact(s.to_string())
    }
}

impl From<usize> for Exact {
    fn from(v: usize) -> Self {
        Exact(v.to_string())
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.parse::<i64>() {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0),
        }
    }
}

struct ExactVisitor;

impl Visitor<'_> for ExactVisitor {
    type Value = Exact;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"num/den\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
        Ok(Exact(v.to_string()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
        Ok(Exact(v.to_string()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
        Exact::parse(v).ok_or_else(|| E::custom(format!("`{v}` is not an exact number")))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Exact, D::Error> {
        d.deserialize_any(ExactVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_become_json_numbers() {
        assert_eq!(serde_json::to_string(&Exact::from(7usize)).unwrap(), "7");
        assert_eq!(serde_json::to_string(&Exact::parse("-3").unwrap()).unwrap(), "-3");
    }

    #[test]
    fn fractions_and_big_integers_stay_strings() {
        let half = Exact::parse("-1/2").unwrap();
        assert_eq!(serde_json::to_string(&half).unwrap(), "\"-1/2\"");
        let big = Exact::parse("123456789012345678901234567890").unwrap();
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, "\"123456789012345678901234567890\"");
        assert_eq!(serde_json::from_str::<Exact>(&text).unwrap(), big);
    }

    #[test]
    fn rejects_decimals() {
        assert!(Exact::parse("0.5").is_none());
        assert!(Exact::parse("1/0").is_none());
        assert!(serde_json::from_str::<Exact>("0.5").is_err());
        assert!(serde_json::from_str::<Exact>("\"x\"").is_err());
    }
}

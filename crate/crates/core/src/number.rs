use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Reidemeister number: either a finite count or infinity.
///
/// Serialises as a decimal string, or the string `"infinite"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReidemeisterNumber {
    Finite(BigUint),
    Infinite,
}

impl ReidemeisterNumber {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            ReidemeisterNumber::Finite(n) => Some(n),
            ReidemeisterNumber::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ReidemeisterNumber::Infinite)
    }
}

impl From<u64> for ReidemeisterNumber {
    fn from(n: u64) -> Self {
        ReidemeisterNumber::Finite(BigUint::from(n))
    }
}

impl From<BigUint> for ReidemeisterNumber {
    fn from(n: BigUint) -> Self {
        ReidemeisterNumber::Finite(n)
    }
}

impl fmt::Display for ReidemeisterNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReidemeisterNumber::Finite(n) => write!(f, "{n}"),
            ReidemeisterNumber::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("expected a non-negative decimal integer or \"infinite\", got {0:?}")]
pub struct ParseReidemeisterError(String);

impl FromStr for ReidemeisterNumber {
    type Err = ParseReidemeisterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("infinite") || t.eq_ignore_ascii_case("inf") {
            return Ok(ReidemeisterNumber::Infinite);
        }
        t.parse::<BigUint>()
            .map(ReidemeisterNumber::Finite)
            .map_err(|_| ParseReidemeisterError(s.to_string()))
    }
}

impl Serialize for ReidemeisterNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ReidemeisterNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(n) => Ok(n.into()),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    G,
}

/// A Cartan type such as `A2`, `B3`, `C3` or `G2`.
///
/// Generator numbering: `A_n` has `s_i = (i, i+1)`; for `B_n` and `C_n` the
/// generators `s_1 .. s_{n-1}` permute coordinates and `s_n` changes the sign
/// of the last coordinate, so `s_n` is the short simple reflection in type B
/// and the long one in type C. In `G2`, `s_2` is long.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

impl TypeLabel {
    pub const fn new(family: Family, rank: usize) -> Self {
        Self { family, rank }
    }

    pub fn is_signed(&self) -> bool {
        matches!(self.family, Family::B | Family::C)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::G => 'G',
        };
        write!(f, "{c}{}", self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('G') => Family::G,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnsupportedType(s.to_string()))?;
        let ok = match family {
            Family::A => (1..=7).contains(&rank),
            Family::B | Family::C => (2..=4).contains(&rank),
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::UnsupportedType(s.to_string()));
        }
        Ok(Self { family, rank })
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

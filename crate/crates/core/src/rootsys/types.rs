use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Largest total rank accepted by [`crate::rootsys::build_root_datum`].
pub const MAX_RANK: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Lie type such as `B3` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType(format!("{}{}", family.letter(), rank)));
        }
        Ok(SimpleType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        // Saturates for absurd ranks; datum construction rejects those anyway.
        let n = self.rank.min(200) as u128;
        let fact = |k: u128| (1..=k).fold(1u128, |acc, x| acc.saturating_mul(x));
        let pow2 = |k: u128| 1u128.checked_shl(k as u32).unwrap_or(u128::MAX);
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => pow2(n).saturating_mul(fact(n)),
            Family::D => pow2(n - 1).saturating_mul(fact(n)),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank.min(1 << 20);
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidType(s.to_string()));
        }
        let rank: usize = digits.parse().map_err(|_| Error::InvalidType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl TryFrom<String> for SimpleType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SimpleType> for String {
    fn from(t: SimpleType) -> String {
        t.to_string()
    }
}

/// A finite product of simple types, written `A2xA1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SemisimpleType {
    factors: Vec<SimpleType>,
}

impl SemisimpleType {
    pub fn new(factors: Vec<SimpleType>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidType("empty product".into()));
        }
        Ok(SemisimpleType { factors })
    }

    pub fn simple(t: SimpleType) -> Self {
        SemisimpleType { factors: vec![t] }
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(|f| f.weyl_order()).product()
    }

    pub fn positive_root_count(&self) -> usize {
        self.factors.iter().map(|f| f.positive_root_count()).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }
}

impl fmt::Display for SemisimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for SemisimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s.trim().split(['x', 'X']).map(str::parse).collect::<Result<Vec<SimpleType>>>()?;
        SemisimpleType::new(factors)
    }
}

impl TryFrom<String> for SemisimpleType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SemisimpleType> for String {
    fn from(t: SemisimpleType) -> String {
        t.to_string()
    }
}

impl From<SimpleType> for SemisimpleType {
    fn from(t: SimpleType) -> Self {
        SemisimpleType::simple(t)
    }
}

/// Parse comma-separated integer coordinates, e.g. `"2,0,1"`.
pub fn parse_coords(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::WeightParse(s.to_string(), "empty".into()));
    }
    s.split(',')
        .map(|tok| tok.trim().parse::<i64>().map_err(|e| Error::WeightParse(s.to_string(), e.to_string())))
        .collect()
}

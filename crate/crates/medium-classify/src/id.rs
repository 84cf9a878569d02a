use std::fmt;
use std::str::FromStr;

use medium_canonical::SegreType;
use serde::{Deserialize, Serialize};

const NAMES: [&str; 23] = [
    "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV", "XV", "XVI", "XVII",
    "XVIII", "XIX", "XX", "XXI", "XXII", "XXIII",
];

/// One of the 23 metaclasses, numbered I to XXIII.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetaclassId(u8);

impl MetaclassId {
    /// `n` is the 1-based class number.
    pub fn new(n: u8) -> Option<Self> {
        (1..=23).contains(&n).then_some(Self(n))
    }

    pub fn all() -> impl Iterator<Item = MetaclassId> {
        (1..=23).map(Self)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }

    /// Classes I to VII admit a pure coordinate normal form.
    pub fn is_reducible(self) -> bool {
        self.0 <= 7
    }

    pub fn segre(self) -> SegreType {
        SegreType::all().swap_remove(self.index())
    }

    pub fn from_segre(s: &SegreType) -> Option<Self> {
        s.index().map(|i| Self(i as u8 + 1))
    }
}

impl fmt::Display for MetaclassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown metaclass `{0}`")]
pub struct UnknownMetaclass(pub String);

impl FromStr for MetaclassId {
    type Err = UnknownMetaclass;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Some(i) = NAMES.iter().position(|n| n.eq_ignore_ascii_case(t)) {
            return Ok(Self(i as u8 + 1));
        }
        t.parse::<u8>().ok().and_then(Self::new).ok_or_else(|| UnknownMetaclass(s.to_string()))
    }
}

impl Serialize for MetaclassId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for MetaclassId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

//! Serde adapter writing naturals as decimal strings.

use serde::{Deserialize, Deserializer, Serializer};

use crate::eval::Nat;

pub fn serialize<S: Serializer>(v: &Nat, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(|_| serde::de::Error::custom(format!("invalid natural {s:?}")))
}

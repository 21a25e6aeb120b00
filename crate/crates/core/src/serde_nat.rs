//! Serde adapter writing naturals as decimal strings.

use serde::{de, Deserialize, Deserializer, Serializer};

use crate::radix;
use crate::Nat;

pub fn serialize<S: Serializer>(n: &Nat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&radix::to_decimal_string(n))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Nat, D::Error> {
    let text = String::deserialize(d)?;
    radix::from_decimal_str(&text).ok_or_else(|| de::Error::custom(format!("not a natural: {text}")))
}

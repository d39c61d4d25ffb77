//! Serde helpers that carry unbounded integers as decimal strings, so JSON
//! consumers with 53-bit numbers never see a truncated value.

use num_bigint::BigInt;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let raw = String::deserialize(d)?;
    raw.parse::<BigInt>()
        .map_err(|e| D::Error::custom(format!("invalid integer {raw:?}: {e}")))
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        match Option::<String>::deserialize(d)? {
            Some(raw) => raw
                .parse::<BigInt>()
                .map(Some)
                .map_err(|e| D::Error::custom(format!("invalid integer {raw:?}: {e}"))),
            None => Ok(None),
        }
    }
}

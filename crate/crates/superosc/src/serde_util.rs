//! Serde helpers for the JSON wire formats.
//!
//! Complex coefficient lists are serialized as arrays of `[re, im]` pairs.

use num_complex::Complex64;
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::Deserialize;

pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&[c.re, c.im])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

//! JSON text form: `{"n": 2, "coeffs": {"": 1.0, "1": 0.5, "12": -0.25}}`.
//!
//! Keys are blade keys (see [`BladeIndex::key`]). Coefficients equal to `+0.0`
//! are omitted; everything else, including `-0.0`, is written so a round trip
//! reproduces the coefficient bits.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{self, SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::{BladeIndex, Multivector};

struct Coeffs<'a>(&'a Multivector);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let x = self.0;
        let nonzero = |c: &f64| c.to_bits() != 0;
        let mut map =
            serializer.serialize_map(Some(x.coeffs().iter().filter(|c| nonzero(c)).count()))?;
        for (mask, c) in x.coeffs().iter().enumerate() {
            if !nonzero(c) {
                continue;
            }
            if !c.is_finite() {
                return Err(ser::Error::custom(format!("non-finite coefficient {c}")));
            }
            map.serialize_entry(&BladeIndex::from_mask(mask as u32).key(x.n()), c)?;
        }
        map.end()
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Multivector", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("coeffs", &Coeffs(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    n: usize,
    coeffs: RawCoeffs,
}

/// Keeps keys in input order so duplicate blades can be reported.
struct RawCoeffs(Vec<(String, f64)>);

impl<'de> Deserialize<'de> for RawCoeffs {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RawCoeffs;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from blade keys to coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawCoeffs, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, f64>()? {
                    out.push((k, v));
                }
                Ok(RawCoeffs(out))
            }
        }
        deserializer.deserialize_map(V)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(deserializer)?;
        let mut x = Multivector::zero(raw.n).map_err(de::Error::custom)?;
        let mut seen = BTreeMap::new();
        for (key, value) in raw.coeffs.0 {
            let blade = BladeIndex::parse_key(&key, raw.n).map_err(de::Error::custom)?;
            if let Some(prev) = seen.insert(blade, key.clone()) {
                return Err(de::Error::custom(format!(
                    "blade keys {prev:?} and {key:?} name the same blade"
                )));
            }
            x.set_coeff(blade, value).map_err(de::Error::custom)?;
        }
        Ok(x)
    }
}

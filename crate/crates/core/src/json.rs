//! String-based serde forms for exact values.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::qpoly::{parse_poly, Poly};

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::qpoly::{parse_poly, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        let p = parse_poly(&s).map_err(serde::de::Error::custom)?;
        if !p.is_constant() {
            return Err(serde::de::Error::custom(format!("not a rational: {s}")));
        }
        Ok(p.leading_coeff())
    }
}

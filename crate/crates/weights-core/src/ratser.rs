//! Serde adapters writing rationals as `{"num": "p", "den": "q"}`.

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct Repr {
    num: String,
    den: String,
}

pub fn serialize<S: Serializer>(q: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    Repr { num: q.numer().to_string(), den: q.denom().to_string() }.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
    let r = Repr::deserialize(d)?;
    let num: i64 = r.num.parse().map_err(serde::de::Error::custom)?;
    let den: i64 = r.den.parse().map_err(serde::de::Error::custom)?;
    if den == 0 {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(Rational64::new(num, den))
}

/// The same encoding for optional values.
pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => Some(Repr { num: q.numer().to_string(), den: q.denom().to_string() }).serialize(s),
            None => None::<Repr>.serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational64>, D::Error> {
        let r = Option::<Repr>::deserialize(d)?;
        r.map(|r| {
            let num: i64 = r.num.parse().map_err(serde::de::Error::custom)?;
            let den: i64 = r.den.parse().map_err(serde::de::Error::custom)?;
            if den == 0 {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            Ok(Rational64::new(num, den))
        })
        .transpose()
    }
}

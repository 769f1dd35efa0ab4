//! `--ring` headers such as `{"ring":"PolyRing","p":2}`.

use serde::{Deserialize, Serialize};

use crate::cartier::PointSet;
use crate::error::{Error, Result};
use crate::fields::{FieldSpec, FiniteField, PolyRing, RatFunc};

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "ring", deny_unknown_fields, rename_all_fields = "camelCase")]
pub enum RingSpec {
    /// `F_{p^r}` with Frobenius `a ↦ a^{p^baseExp}`.
    GF {
        p: u32,
        #[serde(default = "one")]
        r: u32,
        #[serde(default = "one")]
        base_exp: u32,
        /// Ascending coefficients of a monic irreducible modulus.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u32>>,
    },
    /// `F_{p^r}[x]`.
    PolyRing {
        p: u32,
        #[serde(default = "one")]
        r: u32,
        #[serde(default = "one")]
        base_exp: u32,
    },
    /// `F_{p^r}(t)`.
    RatFunc {
        p: u32,
        #[serde(default = "one")]
        r: u32,
        #[serde(default = "one")]
        base_exp: u32,
    },
    /// A finite set of closed points over `F_{p^baseExp}`.
    Points {
        p: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
        #[serde(default = "one")]
        base_exp: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degrees: Option<Vec<u32>>,
    },
}

impl Default for RingSpec {
    fn default() -> Self {
        RingSpec::GF {
            p: 2,
            r: 1,
            base_exp: 1,
            modulus: None,
        }
    }
}

/// A validated ring.
#[derive(Debug, Clone)]
pub enum AnyRing {
    Gf(FiniteField),
    Poly(PolyRing),
    Rat(RatFunc),
    Points(PointSet),
}

fn field(p: u32, r: u32, base_exp: u32, modulus: Option<&Vec<u32>>) -> Result<FiniteField> {
    let spec = match modulus {
        Some(m) => FieldSpec::with_modulus(p, r, m.clone())?,
        None => FieldSpec::new(p, r)?,
    };
    Ok(FiniteField::new(spec.with_base_exp(base_exp)?))
}

impl RingSpec {
    pub fn build(&self) -> Result<AnyRing> {
        Ok(match self {
            RingSpec::GF {
                p,
                r,
                base_exp,
                modulus,
            } => AnyRing::Gf(field(*p, *r, *base_exp, modulus.as_ref())?),
            RingSpec::PolyRing { p, r, base_exp } => AnyRing::Poly(PolyRing::new(field(*p, *r, *base_exp, None)?)),
            RingSpec::RatFunc { p, r, base_exp } => AnyRing::Rat(RatFunc::new(field(*p, *r, *base_exp, None)?)),
            RingSpec::Points {
                p,
                count,
                base_exp,
                degrees,
            } => {
                let degrees = match (count, degrees) {
                    (Some(n), Some(d)) if *n != d.len() => {
                        return Err(Error::InvalidParams(format!(
                            "count {n} disagrees with {} degrees",
                            d.len()
                        )))
                    }
                    (_, Some(d)) => d.clone(),
                    (Some(n), None) => vec![1; *n],
                    (None, None) => return Err(Error::InvalidParams("Points needs count or degrees".into())),
                };
                if degrees.contains(&0) {
                    return Err(Error::InvalidParams("point degrees must be positive".into()));
                }
                let points = PointSet {
                    p: *p,
                    base_exp: *base_exp,
                    degrees,
                };
                points.base_field()?;
                for x in 0..points.len() {
                    points.field_at(x)?;
                }
                AnyRing::Points(points)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> std::result::Result<RingSpec, serde_json::Error> {
        serde_json::from_str(s)
    }

    #[test]
    fn variants() {
        assert!(matches!(parse(r#"{"ring":"GF","p":2,"r":2}"#).unwrap().build(), Ok(AnyRing::Gf(k)) if k.degree() == 2));
        assert!(matches!(parse(r#"{"ring":"PolyRing","p":2}"#).unwrap().build(), Ok(AnyRing::Poly(_))));
        assert!(matches!(parse(r#"{"ring":"RatFunc","p":3}"#).unwrap().build(), Ok(AnyRing::Rat(_))));
        match parse(r#"{"ring":"Points","p":2,"count":3}"#).unwrap().build() {
            Ok(AnyRing::Points(p)) => assert_eq!(p.degrees, vec![1, 1, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects() {
        assert!(parse(r#"{"ring":"Quaternions","p":2}"#).is_err());
        assert!(parse(r#"{"ring":"GF","p":2,"bogus":1}"#).is_err());
        assert!(matches!(parse(r#"{"ring":"GF","p":4}"#).unwrap().build(), Err(Error::InvalidField(_))));
        assert!(matches!(
            parse(r#"{"ring":"GF","p":2,"r":2,"modulus":[1,0,1]}"#).unwrap().build(),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            parse(r#"{"ring":"Points","p":2,"count":2,"degrees":[1]}"#).unwrap().build(),
            Err(Error::InvalidParams(_))
        ));
    }
}

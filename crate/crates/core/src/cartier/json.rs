//! JSON form `{"p":2,"baseExp":1,"blocks":[{"scalarDegree":1,"dim":2,"C":[[0,1],[0,0]]}]}`.
//!
//! `dim` is the `F_p`-dimension of the block and row `i` of `C` is the image
//! of the `i`-th standard basis vector.

use serde::{Deserialize, Serialize};

use super::{Block, CartierModule, PointSet};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

fn one() -> u32 {
    1
}

fn is_one(n: &u32) -> bool {
    *n == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BlockJson {
    #[serde(default = "one")]
    pub scalar_degree: u32,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub nil_exponent: u32,
    pub dim: usize,
    #[serde(rename = "C")]
    pub c: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CartierJson {
    pub p: u32,
    #[serde(default = "one")]
    pub base_exp: u32,
    pub blocks: Vec<BlockJson>,
}

impl CartierJson {
    pub fn to_module(&self) -> Result<CartierModule> {
        let points = PointSet {
            p: self.p,
            base_exp: self.base_exp,
            degrees: self.blocks.iter().map(|b| b.scalar_degree).collect(),
        };
        if points.degrees.contains(&0) {
            return Err(Error::InvalidParams("scalarDegree must be positive".into()));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (x, b) in self.blocks.iter().enumerate() {
            if b.c.len() != b.dim || b.c.iter().any(|r| r.len() != b.dim) {
                return Err(Error::InvalidModule(format!("block {x}: C must be {0}×{0}", b.dim)));
            }
            if b.c.iter().flatten().any(|&v| v >= self.p) {
                return Err(Error::InvalidModule(format!("block {x}: entries must lie in 0..p")));
            }
            let field = points.field_at(x)?;
            let c = FpMatrix::from_rows(self.p, b.dim, &b.c);
            blocks.push(Block::standard(field, b.nil_exponent as usize, c)?);
        }
        CartierModule::new(self.p, self.base_exp, blocks)
    }

    /// Inverse of [`to_module`](Self::to_module) for modules in standard form.
    pub fn from_module(m: &CartierModule) -> Result<CartierJson> {
        let blocks = m
            .blocks
            .iter()
            .map(|b| {
                let std = Block::standard(b.field().clone(), b.nil_exp(), b.c().clone())?;
                if std.act_w() != b.act_w() || std.act_x() != b.act_x() {
                    return Err(Error::InvalidModule("scalars are not in standard form".into()));
                }
                Ok(BlockJson {
                    scalar_degree: b.scalar_degree() as u32,
                    nil_exponent: b.nil_exp() as u32,
                    dim: b.dim(),
                    c: b.c().to_rows(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(CartierJson {
            p: m.p,
            base_exp: m.base_exp,
            blocks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"p":2,"baseExp":1,"blocks":[{"scalarDegree":1,"dim":2,"C":[[0,1],[0,0]]}]}"#;
        let j: CartierJson = serde_json::from_str(text).unwrap();
        let m = j.to_module().unwrap();
        assert_eq!(CartierJson::from_module(&m).unwrap(), j);
        assert_eq!(serde_json::to_string(&j).unwrap(), text);

        let bad = r#"{"p":2,"blocks":[{"dim":2,"C":[[0,2],[0,0]]}]}"#;
        let j: CartierJson = serde_json::from_str(bad).unwrap();
        assert!(matches!(j.to_module(), Err(Error::InvalidModule(_))));
    }
}

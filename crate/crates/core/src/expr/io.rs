//! JSON expression files.
//!
//! ```json
//! {"lfunctions": [{"id": "zeta", "kind": "zeta"}],
//!  "monomials": [{"coeff": [1.0, 0.0], "factors": [{"lfunc": "zeta", "deriv": 1, "exp": 1}]}]}
//! ```

use super::descriptor::{LFunctionDescriptor, Source};
use super::poly::{Factor, Monomial, PolyExpression};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LFunctionEntry {
    pub id: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(rename = "characterIndex", default, skip_serializing_if = "Option::is_none")]
    pub character_index: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    pub lfunc: String,
    pub deriv: u32,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialEntry {
    pub coeff: [f64; 2],
    #[serde(default)]
    pub factors: Vec<FactorEntry>,
}

/// On-disk form of an expression; round-trips bit-exactly through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpressionFile {
    pub lfunctions: Vec<LFunctionEntry>,
    pub monomials: Vec<MonomialEntry>,
}

impl ExpressionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// The raw (not yet canonical) expression.
    pub fn to_expression(&self) -> Result<PolyExpression> {
        let mut lfuncs = Vec::with_capacity(self.lfunctions.len());
        for e in &self.lfunctions {
            let d = match e.kind.as_str() {
                "zeta" => {
                    if e.modulus.is_some_and(|q| q != 1) {
                        return Err(Error::InvalidInput(format!("`{}`: zeta takes no modulus", e.id)));
                    }
                    LFunctionDescriptor::zeta(e.id.clone())
                }
                "dirichlet" => {
                    let q = e.modulus.ok_or_else(|| Error::InvalidInput(format!("`{}`: missing modulus", e.id)))?;
                    let m = e
                        .character_index
                        .ok_or_else(|| Error::InvalidInput(format!("`{}`: missing characterIndex", e.id)))?;
                    LFunctionDescriptor::dirichlet(e.id.clone(), q, m)?
                }
                other => return Err(Error::InvalidInput(format!("`{}`: unknown kind `{other}`", e.id))),
            };
            lfuncs.push(d);
        }
        let index = |id: &str| {
            lfuncs
                .iter()
                .position(|d: &LFunctionDescriptor| d.id == id)
                .ok_or_else(|| Error::UnknownLFunction(id.into()))
        };
        let mut monomials = Vec::with_capacity(self.monomials.len());
        for m in &self.monomials {
            let factors = m
                .factors
                .iter()
                .map(|x| Ok(Factor { lfunc: index(&x.lfunc)?, deriv: x.deriv, exp: x.exp }))
                .collect::<Result<Vec<_>>>()?;
            monomials.push(Monomial { coeff: Complex64::new(m.coeff[0], m.coeff[1]), factors });
        }
        PolyExpression::new(lfuncs, monomials)
    }

    pub fn from_expression(f: &PolyExpression) -> Result<Self> {
        let lfunctions = f
            .lfuncs()
            .iter()
            .map(|d| match &d.source {
                Source::Zeta => {
                    Ok(LFunctionEntry { id: d.id.clone(), kind: "zeta".into(), modulus: None, character_index: None })
                }
                Source::Dirichlet(chi) => Ok(LFunctionEntry {
                    id: d.id.clone(),
                    kind: "dirichlet".into(),
                    modulus: Some(chi.modulus()),
                    character_index: Some(chi.label()),
                }),
                Source::Series(_) => {
                    Err(Error::InvalidInput(format!("`{}`: series descriptors have no file form", d.id)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let monomials = f
            .monomials()
            .iter()
            .map(|m| MonomialEntry {
                coeff: [m.coeff.re, m.coeff.im],
                factors: m
                    .factors
                    .iter()
                    .map(|x| FactorEntry { lfunc: f.lfuncs()[x.lfunc].id.clone(), deriv: x.deriv, exp: x.exp })
                    .collect(),
            })
            .collect();
        Ok(ExpressionFile { lfunctions, monomials })
    }
}

/// Parses and canonicalizes an expression file.
pub fn parse_expression(text: &str) -> Result<PolyExpression> {
    ExpressionFile::from_json(text)?.to_expression()?.canonicalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
      "lfunctions": [{"id": "zeta", "kind": "zeta"}, {"id": "L3", "kind": "dirichlet", "modulus": 3, "characterIndex": 2}],
      "monomials": [
        {"coeff": [0.1, -3e-300], "factors": [{"lfunc": "zeta", "deriv": 1, "exp": 1}, {"lfunc": "L3", "deriv": 0, "exp": 1}]},
        {"coeff": [0.30000000000000004, 0.0], "factors": []}
      ]
    }"#;

    #[test]
    fn round_trip_is_bit_exact() {
        let file = ExpressionFile::from_json(SAMPLE).unwrap();
        let again = ExpressionFile::from_json(&file.to_json()).unwrap();
        assert_eq!(file, again);
        for (a, b) in file.monomials.iter().zip(&again.monomials) {
            assert_eq!(a.coeff[0].to_bits(), b.coeff[0].to_bits());
            assert_eq!(a.coeff[1].to_bits(), b.coeff[1].to_bits());
        }
        let f = file.to_expression().unwrap();
        assert_eq!(ExpressionFile::from_expression(&f).unwrap(), file);
    }

    #[test]
    fn errors_carry_position() {
        let err = ExpressionFile::from_json("{\n  \"lfunctions\": [],\n  \"bogus\": 1\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let unknown = r#"{"lfunctions": [], "monomials": [{"coeff": [1, 0], "factors": [{"lfunc": "x", "deriv": 0, "exp": 1}]}]}"#;
        assert!(matches!(parse_expression(unknown), Err(Error::UnknownLFunction(_))));
    }
}

//! JSON forms of module and ideal certificates.
//!
//! ```json
//! {"schema": 1, "kind": "module", "target": [1, 0, 2],
//!  "terms": [{"word": [0, 0, 0], "cofactor": "z1 + z2 + z3"}, ...]}
//! {"schema": 1, "kind": "ideal", "target": [0, 1], "A": "...", "B": "..."}
//! {"schema": 1, "kind": "ideal", "target": "z1^2 + z2^2", "arity": 2, "A": "...", "B": "..."}
//! ```
//!
//! Polynomials are written in canonical form and read back with the
//! expression parser. Module terms are sorted by word.

use ishuffle_core::{GeneratorWord, IdealCertificate, IdealTarget, ModuleCertificate, ShuffleElement};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse_poly, ExprError};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CertError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("certificate field `{field}`: {source}")]
    Field { field: String, source: ExprError },
    #[error("ideal certificate with a polynomial target needs `arity`")]
    MissingArity,
    #[error(transparent)]
    Kernel(#[from] ishuffle_core::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Vec<i32>,
    pub cofactor: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetJson {
    Word(Vec<i32>),
    Poly(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertJson {
    Module {
        target: Vec<i32>,
        terms: Vec<TermJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verified: Option<bool>,
    },
    Ideal {
        target: TargetJson,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arity: Option<usize>,
        #[serde(rename = "A")]
        a: String,
        #[serde(rename = "B")]
        b: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        verified: Option<bool>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: u32,
    #[serde(flatten)]
    pub cert: CertJson,
}

/// A certificate read from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Module(ModuleCertificate),
    Ideal(IdealCertificate),
}

pub fn module_json(c: &ModuleCertificate, verified: Option<bool>) -> Envelope {
    let mut terms: Vec<TermJson> = c
        .combination
        .iter()
        .map(|(p, w)| TermJson { word: w.exponents().to_vec(), cofactor: p.to_string() })
        .collect();
    terms.sort_by(|x, y| x.word.cmp(&y.word));
    Envelope {
        schema: SCHEMA,
        cert: CertJson::Module { target: c.target.exponents().to_vec(), terms, verified },
    }
}

pub fn ideal_json(c: &IdealCertificate, verified: Option<bool>) -> Envelope {
    let (target, arity) = match &c.target {
        IdealTarget::Word(w) => (TargetJson::Word(w.exponents().to_vec()), None),
        IdealTarget::Element(e) => (TargetJson::Poly(e.poly().to_string()), Some(e.arity())),
    };
    Envelope {
        schema: SCHEMA,
        cert: CertJson::Ideal { target, arity, a: c.a.to_string(), b: c.b.to_string(), verified },
    }
}

fn field(name: &str, text: &str) -> Result<ishuffle_core::LaurentPoly, CertError> {
    parse_poly(text).map_err(|source| CertError::Field { field: name.to_string(), source })
}

pub fn from_json(text: &str) -> Result<Certificate, CertError> {
    let env: Envelope = serde_json::from_str(text)?;
    if env.schema != SCHEMA {
        return Err(CertError::Schema(env.schema));
    }
    Ok(match env.cert {
        CertJson::Module { target, terms, .. } => {
            let mut combination = Vec::with_capacity(terms.len());
            for (i, t) in terms.iter().enumerate() {
                let p = field(&format!("terms[{}].cofactor", i), &t.cofactor)?;
                combination.push((p, GeneratorWord::new(t.word.clone())));
            }
            Certificate::Module(ModuleCertificate { target: GeneratorWord::new(target), combination })
        }
        CertJson::Ideal { target, arity, a, b, .. } => {
            let target = match target {
                TargetJson::Word(w) => IdealTarget::Word(GeneratorWord::new(w)),
                TargetJson::Poly(p) => {
                    let k = arity.ok_or(CertError::MissingArity)?;
                    IdealTarget::Element(ShuffleElement::new(k, field("target", &p)?)?)
                }
            };
            Certificate::Ideal(IdealCertificate { target, a: field("A", &a)?, b: field("B", &b)? })
        }
    })
}

pub fn to_string(env: &Envelope) -> String {
    serde_json::to_string_pretty(env).expect("certificate serializes")
}

//! Proof files.
//!
//! ```text
//! {"sigma": [formula], "lines": [{"formula": text, "by": {"rule": name, "args": [..]}}]}
//! ```
//!
//! Rules and their arguments: `hypothesis [i]`, `tautology []`,
//! `validity [schema, {bindings}]`, `mp [j, k]`, `gamma [j]`,
//! `exists [j, k]`. Bindings carry `phi`/`theta` as formula text, `p` as a
//! label, and `k`, `l`, `m`, `rel`, `j`, `fresh` as plain values.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use super::{Justification, Line, Proof};
use crate::demorgan::DeMorganAlgebra;
use crate::semantics::validities::Bindings;
use crate::syntax::{parse, parse_infer, Formula, ParseError, Signature};

#[derive(Debug, Error)]
pub enum ProofJsonError {
    #[error("malformed proof JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{at}: {error}")]
    Formula { at: String, error: ParseError },
    #[error("line {line}: {msg}")]
    Rule { line: usize, msg: String },
}

#[derive(Serialize, Deserialize)]
struct ProofFile {
    #[serde(default)]
    sigma: Vec<String>,
    lines: Vec<LineFile>,
}

#[derive(Serialize, Deserialize)]
struct LineFile {
    formula: String,
    by: ByFile,
}

#[derive(Serialize, Deserialize)]
struct ByFile {
    rule: String,
    #[serde(default)]
    args: Vec<Value>,
}

pub fn to_json(m: &DeMorganAlgebra, p: &Proof) -> Value {
    let lines: Vec<Value> = p
        .lines
        .iter()
        .map(|l| {
            let args = match &l.by {
                Justification::Hypothesis(i) => json!([i]),
                Justification::Tautology => json!([]),
                Justification::Validity { schema, bindings } => {
                    json!([schema, bindings.to_json(m)])
                }
                Justification::ModusPonens { imp, ant } => json!([imp, ant]),
                Justification::Gamma(j) => json!([j]),
                Justification::Exists { from, var } => json!([from, var]),
            };
            json!({"formula": l.formula.print(m), "by": {"rule": l.by.rule(), "args": args}})
        })
        .collect();
    json!({"sigma": p.sigma.iter().map(|f| f.print(m)).collect::<Vec<_>>(), "lines": lines})
}

struct Reader<'a> {
    m: &'a DeMorganAlgebra,
    sig: &'a mut Signature,
    infer: bool,
}

impl Reader<'_> {
    fn formula(
        &mut self,
        text: &str,
        at: impl FnOnce() -> String,
    ) -> Result<Formula, ProofJsonError> {
        let r = if self.infer {
            parse_infer(text, self.sig, self.m)
        } else {
            parse(text, self.sig, self.m)
        };
        r.map_err(|error| ProofJsonError::Formula { at: at(), error })
    }

    fn bindings(&mut self, line: usize, v: &Value) -> Result<Bindings, ProofJsonError> {
        let err = |msg: String| ProofJsonError::Rule { line, msg };
        let o = v
            .as_object()
            .ok_or_else(|| err("validity bindings must be an object".into()))?;
        let mut b = Bindings::default();
        for (key, val) in o {
            let index = || {
                val.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| err(format!("binding `{key}` must be an index")))
            };
            let list = || -> Result<Vec<usize>, ProofJsonError> {
                val.as_array()
                    .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as usize)).collect())
                    .ok_or_else(|| err(format!("binding `{key}` must be a list of indices")))
            };
            let text = || {
                val.as_str()
                    .ok_or_else(|| err(format!("binding `{key}` must be a string")))
            };
            match key.as_str() {
                "phi" => {
                    b.phi = Some(self.formula(text()?, || format!("line {line} binding phi"))?)
                }
                "theta" => {
                    b.theta = Some(self.formula(text()?, || format!("line {line} binding theta"))?)
                }
                "k" => b.k = Some(index()?),
                "l" => b.l = Some(index()?),
                "m" => b.m = Some(index()?),
                "p" => b.p = Some(self.m.id_of(text()?).map_err(|e| err(e.to_string()))?),
                "rel" => b.rel = Some(text()?.to_string()),
                "j" => b.j = list()?,
                "fresh" => b.fresh = list()?,
                other => return Err(err(format!("unknown binding `{other}`"))),
            }
        }
        Ok(b)
    }

    fn justification(&mut self, line: usize, by: &ByFile) -> Result<Justification, ProofJsonError> {
        let err = |msg: String| ProofJsonError::Rule { line, msg };
        let want = |n: usize| {
            if by.args.len() == n {
                Ok(())
            } else {
                Err(err(format!(
                    "rule `{}` takes {n} arguments, found {}",
                    by.rule,
                    by.args.len()
                )))
            }
        };
        let index = |i: usize| {
            by.args[i]
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| err(format!("argument {i} must be an index")))
        };
        Ok(match by.rule.as_str() {
            "hypothesis" => {
                want(1)?;
                Justification::Hypothesis(index(0)?)
            }
            "tautology" => {
                want(0)?;
                Justification::Tautology
            }
            "validity" => {
                want(2)?;
                let schema = index(0)?;
                let schema = u8::try_from(schema)
                    .map_err(|_| err(format!("no validity schema {schema}")))?;
                Justification::Validity {
                    schema,
                    bindings: self.bindings(line, &by.args[1])?,
                }
            }
            "mp" => {
                want(2)?;
                Justification::ModusPonens {
                    imp: index(0)?,
                    ant: index(1)?,
                }
            }
            "gamma" => {
                want(1)?;
                Justification::Gamma(index(0)?)
            }
            "exists" => {
                want(2)?;
                Justification::Exists {
                    from: index(0)?,
                    var: index(1)?,
                }
            }
            other => return Err(err(format!("unknown rule `{other}`"))),
        })
    }
}

/// Reads a proof. With `infer`, relation symbols not in `sig` are added at
/// their first use; otherwise they are errors.
pub fn from_json(
    m: &DeMorganAlgebra,
    v: Value,
    sig: &mut Signature,
    infer: bool,
) -> Result<Proof, ProofJsonError> {
    let file: ProofFile = serde_json::from_value(v)?;
    let mut r = Reader { m, sig, infer };
    let sigma = file
        .sigma
        .iter()
        .enumerate()
        .map(|(i, s)| r.formula(s, || format!("sigma {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut lines = Vec::with_capacity(file.lines.len());
    for (i, l) in file.lines.iter().enumerate() {
        let formula = r.formula(&l.formula, || format!("line {i}"))?;
        lines.push(Line {
            formula,
            by: r.justification(i, &l.by)?,
        });
    }
    Ok(Proof { sigma, lines })
}

pub fn from_json_str(
    m: &DeMorganAlgebra,
    text: &str,
    sig: &mut Signature,
    infer: bool,
) -> Result<Proof, ProofJsonError> {
    from_json(m, serde_json::from_str(text)?, sig, infer)
}

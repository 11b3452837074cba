use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::models::{Element, Model};
use crate::terms::{InverseSymbol, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("model over {signature} has no `{}` operation", symbol.token())]
    MissingInverse {
        symbol: InverseSymbol,
        signature: Signature,
    },
}

/// An assignment of carrier elements to variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Valuation(BTreeMap<String, Element>);

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, var: impl Into<String>, value: Element) {
        self.0.insert(var.into(), value);
    }

    pub fn get(&self, var: &str) -> Option<&Element> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Element)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(String, Element)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, Element)>>(iter: I) -> Self {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Evaluates `t` in `m` under `v`. Inverses are total, so this only fails on
/// unbound variables or inverse symbols the model lacks.
pub fn eval(m: &Model, t: &Term, v: &Valuation) -> Result<Element, EvalError> {
    Ok(match t {
        Term::Zero => m.zero().clone(),
        Term::One => m.one().clone(),
        Term::Var(x) => v
            .get(x)
            .cloned()
            .ok_or_else(|| EvalError::UnboundVariable(x.to_string()))?,
        Term::Add(a, b) => m.add(&eval(m, a, v)?, &eval(m, b, v)?),
        Term::Mul(a, b) => m.mul(&eval(m, a, v)?, &eval(m, b, v)?),
        Term::Neg(a) => m.neg(&eval(m, a, v)?),
        Term::InvMd(a) => invert(m, InverseSymbol::Md, &eval(m, a, v)?)?,
        Term::InvNimd(a) => invert(m, InverseSymbol::Nimd, &eval(m, a, v)?)?,
    })
}

fn invert(m: &Model, sym: InverseSymbol, e: &Element) -> Result<Element, EvalError> {
    m.invert(sym, e).ok_or(EvalError::MissingInverse {
        symbol: sym,
        signature: m.signature(),
    })
}

//! Catalogued axiom suites.
//!
//! The formulas live in `axioms/*.eqn` in the concrete syntax and are parsed
//! when a suite is requested. Labels follow the conventional numbering
//! (`CR1`..`CR8`, `(2.1)`, `(3.3)`, `(5.1)`, `(4.x)`, ...).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::syntax::parse_formula_file;
use crate::terms::{ConditionalFormula, Equation, Signature, Term};

const CR: &str = include_str!("../axioms/cr.eqn");
const MD: &str = include_str!("../axioms/md.eqn");
const NIMD1: &str = include_str!("../axioms/nimd1.eqn");
const NIMD: &str = include_str!("../axioms/nimd.eqn");
const NIMD_N: &str = include_str!("../axioms/nimd_n.eqn");
const DERIVED_MD: &str = include_str!("../axioms/derived_md.eqn");
const DERIVED_NIMD1: &str = include_str!("../axioms/derived_nimd1.eqn");
const DERIVED_NIMD_N: &str = include_str!("../axioms/derived_nimd_n.eqn");
const GUARDED: &str = include_str!("../axioms/guarded.eqn");
const INITIALITY: &str = include_str!("../axioms/initiality.eqn");

/// Name of the schema variable standing for the numeral of `n`.
const NUMERAL_PARAM: &str = "n";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown suite `{0}` (try cr, md, nimd1, nimd, nimd:N, derived-md, derived-nimd1, derived-nimd:N, guarded, initiality-md, initiality-nimd)")]
    UnknownSuite(String),
    #[error("the base of an n-based suite must be positive")]
    ZeroBase,
    #[error("no initiality axiom for signature {0}")]
    NoInitialityAxiom(Signature),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub label: String,
    pub formula: ConditionalFormula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSuite {
    pub id: String,
    pub signature: Signature,
    pub formulas: Vec<Axiom>,
}

impl AxiomSuite {
    fn load(id: &str, signature: Signature, sources: &[&str]) -> AxiomSuite {
        let mut formulas = Vec::new();
        for src in sources {
            let entries = parse_formula_file(src, signature)
                .unwrap_or_else(|e| panic!("shipped axiom file for `{id}` is malformed: {e}"));
            formulas.extend(entries.into_iter().map(|e| Axiom {
                label: e.label.expect("shipped axioms are labelled"),
                formula: e.formula,
            }));
        }
        AxiomSuite {
            id: id.to_string(),
            signature,
            formulas,
        }
    }

    /// Replaces the schema parameter `n` by the numeral for `n`.
    fn instantiate(mut self, n: u64) -> AxiomSuite {
        let binding = BTreeMap::from([(NUMERAL_PARAM.to_string(), Term::numeral(n))]);
        for ax in &mut self.formulas {
            ax.formula = ax.formula.subst(&binding);
        }
        self
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&ConditionalFormula> {
        self.formulas
            .iter()
            .find(|a| a.label == label)
            .map(|a| &a.formula)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.formulas.iter().map(|a| a.label.as_str())
    }

    /// The plain equations of the suite. Conditional entries are skipped.
    pub fn equations(&self) -> Vec<(String, Equation)> {
        self.formulas
            .iter()
            .filter_map(|a| a.formula.as_equation().map(|eq| (a.label.clone(), eq)))
            .collect()
    }
}

/// Commutative ring axioms `CR1`..`CR8`.
pub fn suite_cr() -> AxiomSuite {
    AxiomSuite::load("cr", Signature::Cr, &[CR])
}

/// Ring axioms plus Ref `(2.1)` and Ril `(2.2)`.
pub fn suite_md() -> AxiomSuite {
    AxiomSuite::load("md", Signature::Md, &[CR, MD])
}

/// Ring axioms plus `(3.1)`..`(3.4)`.
pub fn suite_nimd1() -> AxiomSuite {
    AxiomSuite::load("nimd1", Signature::Nimd, &[CR, NIMD1])
}

/// Ring axioms plus `(5.1)`..`(5.4)`.
pub fn suite_nimd() -> AxiomSuite {
    AxiomSuite::load("nimd", Signature::Nimd, &[CR, NIMD])
}

/// [`suite_nimd`] plus `0^~ = n` for the numeral `n`.
pub fn suite_nimd_n(n: u64) -> Result<AxiomSuite, AxiomError> {
    if n == 0 {
        return Err(AxiomError::ZeroBase);
    }
    let suite = AxiomSuite::load(&format!("nimd:{n}"), Signature::Nimd, &[CR, NIMD, NIMD_N]);
    Ok(suite.instantiate(n))
}

/// `0^-1 = 0`, `1^-1 = 1`, and the laws for `(-x)^-1` and `(x*y)^-1`.
pub fn derived_md() -> AxiomSuite {
    AxiomSuite::load("derived-md", Signature::Md, &[DERIVED_MD])
}

pub fn derived_nimd1() -> AxiomSuite {
    AxiomSuite::load("derived-nimd1", Signature::Nimd, &[DERIVED_NIMD1])
}

pub fn derived_nimd_n(n: u64) -> Result<AxiomSuite, AxiomError> {
    if n == 0 {
        return Err(AxiomError::ZeroBase);
    }
    let suite = AxiomSuite::load(&format!("derived-nimd:{n}"), Signature::Nimd, &[DERIVED_NIMD_N]);
    Ok(suite.instantiate(n))
}

/// The six conditionals `(4.1)`..`(4.6)` over both inverses, separation
/// (`Sep`), cancellation (`Can`), the general inverse law (`Gil`) and its
/// one-based variant (`Gil'`).
pub fn guarded_formulas() -> AxiomSuite {
    AxiomSuite::load("guarded", Signature::Mixed, &[GUARDED])
}

/// `(1 + x^2 + y^2) * (1 + x^2 + y^2)^-1 = 1`, written with the inverse
/// symbol of `sig`.
pub fn extra_initiality_axiom(sig: Signature) -> Result<Equation, AxiomError> {
    let suite = AxiomSuite::load("initiality", Signature::Mixed, &[INITIALITY]);
    let label = match sig {
        Signature::Md => "T4",
        Signature::Nimd => "T9",
        other => return Err(AxiomError::NoInitialityAxiom(other)),
    };
    Ok(suite
        .get(label)
        .and_then(ConditionalFormula::as_equation)
        .expect("initiality axioms are equations"))
}

fn initiality_suite(id: &str, sig: Signature) -> Result<AxiomSuite, AxiomError> {
    let eq = extra_initiality_axiom(sig)?;
    let label = if sig == Signature::Md { "T4" } else { "T9" };
    Ok(AxiomSuite {
        id: id.to_string(),
        signature: sig,
        formulas: vec![Axiom {
            label: label.to_string(),
            formula: eq.into(),
        }],
    })
}

/// Looks a suite up by the identifiers used on the command line.
pub fn suite_by_id(id: &str) -> Result<AxiomSuite, AxiomError> {
    let unknown = || AxiomError::UnknownSuite(id.to_string());
    let parse_n = |s: &str| s.parse::<u64>().map_err(|_| unknown());
    match id {
        "cr" => Ok(suite_cr()),
        "md" => Ok(suite_md()),
        "nimd1" => Ok(suite_nimd1()),
        "nimd" => Ok(suite_nimd()),
        "derived-md" => Ok(derived_md()),
        "derived-nimd1" => Ok(derived_nimd1()),
        "guarded" => Ok(guarded_formulas()),
        "initiality-md" => initiality_suite(id, Signature::Md),
        "initiality-nimd" => initiality_suite(id, Signature::Nimd),
        _ => {
            if let Some(n) = id.strip_prefix("nimd:") {
                suite_nimd_n(parse_n(n)?)
            } else if let Some(n) = id.strip_prefix("derived-nimd:") {
                derived_nimd_n(parse_n(n)?)
            } else {
                Err(unknown())
            }
        }
    }
}

//! Translations between the two inverse symbols, induced by the equations
//! defining each inverse in terms of the other:
//!
//! ```text
//! x^~  = x^-1 + n * (1 - x * x^-1)
//! x^-1 = x * (x^~ * x^~)
//! ```
//!
//! Both maps are homomorphic tree rewrites with no simplification.

use std::fmt;

use thiserror::Error;

use crate::terms::{ConditionalFormula, Equation, Signature, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("the base of an n-based inverse must be positive")]
    ZeroBase,
    #[error(transparent)]
    Signature(#[from] TermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    NimdToMd,
    MdToNimd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TranslationSpec {
    direction: Direction,
    n: u64,
}

impl TranslationSpec {
    pub fn to_md(n: u64) -> Result<Self, TranslateError> {
        if n == 0 {
            return Err(TranslateError::ZeroBase);
        }
        Ok(TranslationSpec {
            direction: Direction::NimdToMd,
            n,
        })
    }

    pub fn to_nimd(n: u64) -> Result<Self, TranslateError> {
        if n == 0 {
            return Err(TranslateError::ZeroBase);
        }
        Ok(TranslationSpec {
            direction: Direction::MdToNimd,
            n,
        })
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn source(&self) -> Signature {
        match self.direction {
            Direction::NimdToMd => Signature::Nimd,
            Direction::MdToNimd => Signature::Md,
        }
    }

    pub fn target(&self) -> Signature {
        match self.direction {
            Direction::NimdToMd => Signature::Md,
            Direction::MdToNimd => Signature::Nimd,
        }
    }

    pub fn term(&self, t: &Term) -> Result<Term, TranslateError> {
        t.check_legal(self.source())?;
        Ok(match self.direction {
            Direction::NimdToMd => rewrite_nimd(t, self.n),
            Direction::MdToNimd => rewrite_md(t),
        })
    }

    pub fn equation(&self, e: &Equation) -> Result<Equation, TranslateError> {
        Ok(Equation::new(self.term(&e.lhs)?, self.term(&e.rhs)?))
    }

    pub fn formula(&self, f: &ConditionalFormula) -> Result<ConditionalFormula, TranslateError> {
        f.map_terms(|t| self.term(t))
    }
}

impl fmt::Display for TranslationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::NimdToMd => write!(f, "NIMD->MD (n = {})", self.n),
            Direction::MdToNimd => f.write_str("MD->NIMD"),
        }
    }
}

/// `u^-1 + n * (1 - u * u^-1)`, with the factor omitted when `n = 1`.
fn nimd_via_md(u: Term, n: u64) -> Term {
    let inv = Term::inv_md(u.clone());
    let defect = Term::sub(Term::One, Term::mul(u, inv.clone()));
    let scaled = if n == 1 {
        defect
    } else {
        Term::mul(Term::numeral(n), defect)
    };
    Term::add(inv, scaled)
}

/// `u * (u^~ * u^~)`.
fn md_via_nimd(u: Term) -> Term {
    let inv = Term::inv_nimd(u.clone());
    Term::mul(u, Term::mul(inv.clone(), inv))
}

fn rewrite_nimd(t: &Term, n: u64) -> Term {
    t.map_bottom_up(&mut |node| match node {
        Term::InvNimd(u) => Some(nimd_via_md(u.as_ref().clone(), n)),
        _ => None,
    })
}

fn rewrite_md(t: &Term) -> Term {
    t.map_bottom_up(&mut |node| match node {
        Term::InvMd(u) => Some(md_via_nimd(u.as_ref().clone())),
        _ => None,
    })
}

/// Replaces every `u^~` by its definition over `^-1` with base `n`.
pub fn to_md(t: &Term, n: u64) -> Result<Term, TranslateError> {
    TranslationSpec::to_md(n)?.term(t)
}

/// Replaces every `u^-1` by its definition over `^~`.
pub fn to_nimd(t: &Term) -> Result<Term, TranslateError> {
    TranslationSpec::to_nimd(1)?.term(t)
}

pub fn equation_to_md(e: &Equation, n: u64) -> Result<Equation, TranslateError> {
    TranslationSpec::to_md(n)?.equation(e)
}

pub fn equation_to_nimd(e: &Equation) -> Result<Equation, TranslateError> {
    TranslationSpec::to_nimd(1)?.equation(e)
}

pub fn formula_to_md(f: &ConditionalFormula, n: u64) -> Result<ConditionalFormula, TranslateError> {
    TranslationSpec::to_md(n)?.formula(f)
}

pub fn formula_to_nimd(f: &ConditionalFormula) -> Result<ConditionalFormula, TranslateError> {
    TranslationSpec::to_nimd(1)?.formula(f)
}

/// The right-hand side of the defining equation of `x^~` over `^-1`.
pub fn nimd_defining_term(n: u64) -> Term {
    nimd_via_md(Term::var(crate::models::DEF_VAR), n)
}

/// The right-hand side of the defining equation of `x^-1` over `^~`.
pub fn md_defining_term() -> Term {
    md_via_nimd(Term::var(crate::models::DEF_VAR))
}

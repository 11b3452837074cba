//! Meadows and non-involutive meadows as executable algebra.
//!
//! A meadow is a commutative ring with a total inverse `x^-1` satisfying
//! `(x^-1)^-1 = x` and `x * (x * x^-1) = x`; fields with `0^-1 = 0` are the
//! prime examples. An `n`-based non-involutive meadow instead carries an
//! inverse `x^~` with `0^~ = n`. This crate provides:
//!
//! - [`terms`]: signatures, terms, equations and conditional formulas;
//! - [`syntax`]: an ASCII parser and printer;
//! - [`axioms`]: the axiom suites and derived equations as data;
//! - [`models`]: totalized rational and prime fields, products and the
//!   transformations between the two kinds of inverse;
//! - [`checker`]: evaluation, exhaustive and sampled satisfaction checks and
//!   counterexample search;
//! - [`translate`]: the term translations between the two inverses.

pub mod axioms;
pub mod checker;
pub mod models;
pub mod syntax;
pub mod terms;
pub mod translate;

pub use axioms::{Axiom, AxiomError, AxiomSuite};
pub use checker::{CheckError, CheckMode, CheckReport, Valuation, Verdict};
pub use models::{parse_descriptor, Element, Model, ModelError};
pub use syntax::{parse_equation, parse_formula, parse_term, SyntaxError};
pub use terms::{ConditionalFormula, Equation, InverseSymbol, Literal, Relation, Signature, Term};
pub use translate::{to_md, to_nimd, TranslateError};

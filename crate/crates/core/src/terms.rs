//! Terms, equations and conditional formulas over the ring signature extended
//! with one or both postfix inverse operators.
//!
//! A single [`Term`] type serves every signature. Which inverse symbols a term
//! may use is a property checked against a [`Signature`], not encoded in the
//! type, so translations can mix both inverses while rewriting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The signatures terms can be drawn from.
///
/// `Cr` is the commutative-ring signature `0, 1, +, *, -`. `Md` adds the
/// zero-totalized inverse `^-1`, `Nimd` adds the totalized (non-involutive)
/// inverse `^~`, and `Mixed` adds both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Signature {
    Cr,
    Md,
    Nimd,
    Mixed,
}

/// The two inverse operator symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InverseSymbol {
    /// `^-1`, the zero-totalized inverse.
    Md,
    /// `^~`, the totalized non-involutive inverse.
    Nimd,
}

impl InverseSymbol {
    pub fn token(self) -> &'static str {
        match self {
            InverseSymbol::Md => "^-1",
            InverseSymbol::Nimd => "^~",
        }
    }
}

impl Signature {
    pub fn admits_symbol(self, sym: InverseSymbol) -> bool {
        matches!(
            (self, sym),
            (Signature::Md, InverseSymbol::Md)
                | (Signature::Nimd, InverseSymbol::Nimd)
                | (Signature::Mixed, _)
        )
    }

    /// Whether every term legal under `other` is legal under `self`.
    pub fn admits(self, other: Signature) -> bool {
        self.join(other) == self
    }

    /// Least signature admitting both.
    pub fn join(self, other: Signature) -> Signature {
        use Signature::*;
        match (self, other) {
            (Cr, s) | (s, Cr) => s,
            (Md, Md) => Md,
            (Nimd, Nimd) => Nimd,
            _ => Mixed,
        }
    }

    /// The inverse symbol `/` expands to. `Mixed` picks the zero-totalized one.
    pub fn division_symbol(self) -> Option<InverseSymbol> {
        match self {
            Signature::Cr => None,
            Signature::Md | Signature::Mixed => Some(InverseSymbol::Md),
            Signature::Nimd => Some(InverseSymbol::Nimd),
        }
    }

    /// The signature containing exactly one inverse symbol.
    pub fn of_symbol(sym: InverseSymbol) -> Signature {
        match sym {
            InverseSymbol::Md => Signature::Md,
            InverseSymbol::Nimd => Signature::Nimd,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Cr => "CR",
            Signature::Md => "MD",
            Signature::Nimd => "NIMD",
            Signature::Mixed => "MIXED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("term `{term}` uses symbols outside signature {signature}")]
    SignatureViolation { term: String, signature: Signature },
}

/// An immutable term. Children are reference counted, so cloning is cheap and
/// shared subterms are never copied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    One,
    Var(Arc<str>),
    Add(Arc<Term>, Arc<Term>),
    Mul(Arc<Term>, Arc<Term>),
    Neg(Arc<Term>),
    InvMd(Arc<Term>),
    InvNimd(Arc<Term>),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Arc::new(a), Arc::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Arc::new(a))
    }

    /// `a - b`, i.e. `a + (-b)`.
    pub fn sub(a: Term, b: Term) -> Term {
        Term::add(a, Term::neg(b))
    }

    pub fn inv(sym: InverseSymbol, a: Term) -> Term {
        match sym {
            InverseSymbol::Md => Term::InvMd(Arc::new(a)),
            InverseSymbol::Nimd => Term::InvNimd(Arc::new(a)),
        }
    }

    pub fn inv_md(a: Term) -> Term {
        Term::inv(InverseSymbol::Md, a)
    }

    pub fn inv_nimd(a: Term) -> Term {
        Term::inv(InverseSymbol::Nimd, a)
    }

    /// The numeral for `n`: `0` for zero, otherwise the numeral for `n - 1`
    /// plus `1`. The result is a left-leaning sum.
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::add(t, Term::One);
        }
        t
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(v) => {
                out.insert(v.to_string());
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Neg(a) | Term::InvMd(a) | Term::InvNimd(a) => a.collect_vars(out),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Simultaneous substitution. Unbound variables are left in place.
    pub fn subst(&self, binding: &BTreeMap<String, Term>) -> Term {
        if binding.is_empty() {
            return self.clone();
        }
        self.map_bottom_up(&mut |t| match t {
            Term::Var(v) => binding.get(v.as_ref()).cloned(),
            _ => None,
        })
    }

    /// Substitution that also checks the result stays legal under `sig`.
    pub fn subst_checked(
        &self,
        binding: &BTreeMap<String, Term>,
        sig: Signature,
    ) -> Result<Term, TermError> {
        let out = self.subst(binding);
        out.check_legal(sig)?;
        Ok(out)
    }

    /// Rebuilds the tree bottom-up. `f` sees each node after its children
    /// were rebuilt and may return a replacement.
    pub fn map_bottom_up(&self, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
        let rebuilt = match self {
            Term::Zero | Term::One | Term::Var(_) => self.clone(),
            Term::Add(a, b) => Term::add(a.map_bottom_up(f), b.map_bottom_up(f)),
            Term::Mul(a, b) => Term::mul(a.map_bottom_up(f), b.map_bottom_up(f)),
            Term::Neg(a) => Term::neg(a.map_bottom_up(f)),
            Term::InvMd(a) => Term::inv_md(a.map_bottom_up(f)),
            Term::InvNimd(a) => Term::inv_nimd(a.map_bottom_up(f)),
        };
        f(&rebuilt).unwrap_or(rebuilt)
    }

    /// The least signature under which this term is legal.
    pub fn signature(&self) -> Signature {
        match self {
            Term::Zero | Term::One | Term::Var(_) => Signature::Cr,
            Term::Add(a, b) | Term::Mul(a, b) => a.signature().join(b.signature()),
            Term::Neg(a) => a.signature(),
            Term::InvMd(a) => a.signature().join(Signature::Md),
            Term::InvNimd(a) => a.signature().join(Signature::Nimd),
        }
    }

    pub fn is_legal(&self, sig: Signature) -> bool {
        sig.admits(self.signature())
    }

    pub fn check_legal(&self, sig: Signature) -> Result<(), TermError> {
        if self.is_legal(sig) {
            Ok(())
        } else {
            Err(TermError::SignatureViolation {
                term: self.to_string(),
                signature: sig,
            })
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Var(_) => 1,
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
            Term::Neg(a) | Term::InvMd(a) | Term::InvNimd(a) => 1 + a.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Var(_) => 0,
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.depth().max(b.depth()),
            Term::Neg(a) | Term::InvMd(a) | Term::InvNimd(a) => 1 + a.depth(),
        }
    }

    pub fn count_ones(&self) -> usize {
        match self {
            Term::One => 1,
            Term::Zero | Term::Var(_) => 0,
            Term::Add(a, b) | Term::Mul(a, b) => a.count_ones() + b.count_ones(),
            Term::Neg(a) | Term::InvMd(a) | Term::InvNimd(a) => a.count_ones(),
        }
    }
}

/// `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = self.lhs.free_vars();
        self.rhs.collect_vars(&mut out);
        out
    }

    pub fn signature(&self) -> Signature {
        self.lhs.signature().join(self.rhs.signature())
    }

    pub fn subst(&self, binding: &BTreeMap<String, Term>) -> Equation {
        Equation::new(self.lhs.subst(binding), self.rhs.subst(binding))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Eq,
    Ne,
}

impl Relation {
    pub fn token(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
        }
    }
}

/// `lhs = rhs` or `lhs != rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
}

impl Literal {
    pub fn new(lhs: Term, relation: Relation, rhs: Term) -> Self {
        Literal { lhs, rhs, relation }
    }

    pub fn signature(&self) -> Signature {
        self.lhs.signature().join(self.rhs.signature())
    }
}

impl From<Equation> for Literal {
    fn from(eq: Equation) -> Self {
        Literal::new(eq.lhs, Relation::Eq, eq.rhs)
    }
}

/// `a1, ..., ak ==> conclusion`. With no antecedents this is a plain
/// (in)equation. The conclusion may be an inequation so that `0 != 1` is
/// expressible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConditionalFormula {
    pub antecedents: Vec<Literal>,
    pub conclusion: Literal,
}

impl ConditionalFormula {
    pub fn new(antecedents: Vec<Literal>, conclusion: Literal) -> Self {
        ConditionalFormula {
            antecedents,
            conclusion,
        }
    }

    /// The underlying equation, if this formula is a plain equation.
    pub fn as_equation(&self) -> Option<Equation> {
        (self.antecedents.is_empty() && self.conclusion.relation == Relation::Eq).then(|| {
            Equation::new(self.conclusion.lhs.clone(), self.conclusion.rhs.clone())
        })
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.antecedents.iter().chain(std::iter::once(&self.conclusion))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for lit in self.literals() {
            lit.lhs.collect_vars(&mut out);
            lit.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn signature(&self) -> Signature {
        self.literals()
            .map(Literal::signature)
            .fold(Signature::Cr, Signature::join)
    }

    /// Applies `f` to every term in the formula.
    pub fn map_terms<E>(
        &self,
        mut f: impl FnMut(&Term) -> Result<Term, E>,
    ) -> Result<ConditionalFormula, E> {
        let mut lit = |l: &Literal| -> Result<Literal, E> {
            Ok(Literal::new(f(&l.lhs)?, l.relation, f(&l.rhs)?))
        };
        let antecedents = self.antecedents.iter().map(&mut lit).collect::<Result<_, _>>()?;
        let conclusion = lit(&self.conclusion)?;
        Ok(ConditionalFormula::new(antecedents, conclusion))
    }

    pub fn subst(&self, binding: &BTreeMap<String, Term>) -> ConditionalFormula {
        self.map_terms::<std::convert::Infallible>(|t| Ok(t.subst(binding)))
            .unwrap_or_else(|e| match e {})
    }
}

impl From<Equation> for ConditionalFormula {
    fn from(eq: Equation) -> Self {
        ConditionalFormula::new(Vec::new(), eq.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s, Signature::Mixed).unwrap()
    }

    fn vars(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn numerals_unfold_the_induction() {
        assert_eq!(Term::numeral(0), Term::Zero);
        assert_eq!(Term::numeral(1), Term::add(Term::Zero, Term::One));
        assert_eq!(
            Term::numeral(3),
            Term::add(
                Term::add(Term::add(Term::Zero, Term::One), Term::One),
                Term::One
            )
        );
        for n in 0..20 {
            assert_eq!(Term::numeral(n).count_ones(), n as usize);
        }
    }

    #[test]
    fn free_vars_examples() {
        assert_eq!(t("x * x^-1").free_vars(), vars(&["x"]));
        assert!(t("0 + 1").free_vars().is_empty());
        assert_eq!(t("(x^-1)^-1").free_vars(), vars(&["x"]));
        assert_eq!(t("x * y + z^~").free_vars(), vars(&["x", "y", "z"]));
    }

    #[test]
    fn subst_examples() {
        let one: BTreeMap<_, _> = [("x".to_string(), Term::One)].into();
        assert_eq!(t("x + y").subst(&one), t("1 + y"));
        let zero: BTreeMap<_, _> = [("x".to_string(), Term::Zero)].into();
        assert_eq!(t("x^-1").subst(&zero), t("0^-1"));
        assert_eq!(t("x").subst(&BTreeMap::new()), t("x"));
    }

    #[test]
    fn subst_is_simultaneous() {
        let swap: BTreeMap<_, _> = [
            ("x".to_string(), Term::var("y")),
            ("y".to_string(), Term::var("x")),
        ]
        .into();
        assert_eq!(t("x + y * x").subst(&swap), t("y + x * y"));
    }

    #[test]
    fn subst_checked_rejects_illegal_results() {
        let b: BTreeMap<_, _> = [("x".to_string(), t("y^~"))].into();
        let err = t("x^-1").subst_checked(&b, Signature::Md).unwrap_err();
        assert!(matches!(err, TermError::SignatureViolation { signature: Signature::Md, .. }));
        assert!(t("x^-1").subst_checked(&b, Signature::Mixed).is_ok());
    }

    #[test]
    fn signatures_form_a_lattice() {
        use Signature::*;
        assert_eq!(t("x + 1").signature(), Cr);
        assert_eq!(t("x^-1").signature(), Md);
        assert_eq!(t("x^~").signature(), Nimd);
        assert_eq!(t("x^~ * x^-1").signature(), Mixed);
        assert!(Md.admits(Cr));
        assert!(!Md.admits(Nimd));
        assert!(Mixed.admits(Nimd));
        assert!(!t("x^~").is_legal(Md));
    }

    #[test]
    fn conditional_formula_vars_span_antecedents() {
        let f = ConditionalFormula::new(
            vec![Literal::new(Term::var("x"), Relation::Ne, Term::Zero)],
            Literal::new(Term::var("y"), Relation::Eq, Term::var("z")),
        );
        assert_eq!(f.free_vars(), vars(&["x", "y", "z"]));
        assert!(f.as_equation().is_none());
    }
}

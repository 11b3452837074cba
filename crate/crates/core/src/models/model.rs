use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::element::{is_prime, Element};
use super::ModelError;
use crate::axioms::{suite_md, suite_nimd, AxiomSuite};
use crate::checker::{check_suite, eval, CheckMode, Valuation};
use crate::terms::{InverseSymbol, Signature, Term};
use crate::translate;

/// Largest modulus accepted by [`gf_totalized`]. Carriers are materialized.
pub const MAX_PRIME: u64 = 1 << 16;

/// Default bound for sampled rational numerators and denominators.
pub const DEFAULT_SAMPLE_BOUND: i64 = 100;

/// Variable name used by the defining terms of retotalized inverses.
pub const DEF_VAR: &str = "x";

/// How an inverse operation is computed.
#[derive(Clone)]
pub enum Inverse {
    /// Field inverse away from zero, fixed image at zero.
    Field { zero_image: Element },
    /// Componentwise on pairs.
    Product(Arc<Inverse>, Arc<Inverse>),
    /// Materialized table over a finite carrier.
    Table(Arc<HashMap<Element, Element>>),
    /// `x ↦ term[x]` evaluated in `base`.
    Defined { base: Arc<Model>, term: Term },
}

impl fmt::Debug for Inverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inverse::Field { zero_image } => write!(f, "Field(0 -> {zero_image})"),
            Inverse::Product(a, b) => write!(f, "Product({a:?}, {b:?})"),
            Inverse::Table(t) => write!(f, "Table({} entries)", t.len()),
            Inverse::Defined { base, term } => write!(f, "Defined({term} in {})", base.descriptor),
        }
    }
}

impl Inverse {
    pub fn apply(&self, x: &Element) -> Element {
        match self {
            Inverse::Field { zero_image } => {
                if x.is_zero() {
                    zero_image.clone()
                } else {
                    x.field_inverse().expect("nonzero field element is invertible")
                }
            }
            Inverse::Product(a, b) => match x {
                Element::Pair(x1, x2) => Element::pair(a.apply(x1), b.apply(x2)),
                _ => panic!("product inverse applied to non-pair {x}"),
            },
            Inverse::Table(t) => t
                .get(x)
                .cloned()
                .unwrap_or_else(|| panic!("{x} is not in the carrier")),
            Inverse::Defined { base, term } => {
                let v = Valuation::from_iter([(DEF_VAR.to_string(), x.clone())]);
                eval(base, term, &v).expect("defining term evaluates in its base model")
            }
        }
    }
}

/// Draws random elements of an infinite carrier.
#[derive(Debug, Clone)]
pub enum Sampler {
    /// `p/q` with `p` uniform in `[-bound, bound]` and `q` in `[1, bound]`.
    Rational { bound: i64 },
    Uniform(Arc<[Element]>),
    Pair(Box<Sampler>, Box<Sampler>),
}

impl Sampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        match self {
            Sampler::Rational { bound } => {
                let num = rng.random_range(-bound..=*bound);
                let den = rng.random_range(1..=*bound);
                Element::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            Sampler::Uniform(elems) => elems[rng.random_range(0..elems.len())].clone(),
            Sampler::Pair(a, b) => Element::pair(a.sample(rng), b.sample(rng)),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Carrier {
    /// Each element listed exactly once.
    Finite(Arc<[Element]>),
    Sampleable(Sampler),
}

/// A total algebra: carrier, ring operations and whichever inverses its
/// signature calls for.
#[derive(Debug, Clone)]
pub struct Model {
    signature: Signature,
    descriptor: String,
    carrier: Carrier,
    zero: Element,
    one: Element,
    inv_md: Option<Inverse>,
    inv_nimd: Option<Inverse>,
    forced: Vec<Element>,
}

/// Whether constructors that require a meadow should verify it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    Check,
    Trust,
}

const PRECONDITION_TRIALS: u64 = 200;

impl Model {
    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.carrier, Carrier::Finite(_))
    }

    pub fn elements(&self) -> Option<&[Element]> {
        match &self.carrier {
            Carrier::Finite(e) => Some(e),
            Carrier::Sampleable(_) => None,
        }
    }

    pub fn size(&self) -> Option<usize> {
        self.elements().map(<[Element]>::len)
    }

    pub fn zero(&self) -> &Element {
        &self.zero
    }

    pub fn one(&self) -> &Element {
        &self.one
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        a.add(b)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        a.mul(b)
    }

    pub fn neg(&self, a: &Element) -> Element {
        a.neg()
    }

    pub fn inverse(&self, sym: InverseSymbol) -> Option<&Inverse> {
        match sym {
            InverseSymbol::Md => self.inv_md.as_ref(),
            InverseSymbol::Nimd => self.inv_nimd.as_ref(),
        }
    }

    pub fn invert(&self, sym: InverseSymbol, a: &Element) -> Option<Element> {
        self.inverse(sym).map(|inv| inv.apply(a))
    }

    /// Values every sampled batch starts from: `0`, `1`, `-1` and the
    /// distinguished image of zero, deduplicated.
    pub fn forced_elements(&self) -> &[Element] {
        &self.forced
    }

    /// A uniformly drawn element; finite carriers are sampled uniformly too.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        match &self.carrier {
            Carrier::Finite(e) => e[rng.random_range(0..e.len())].clone(),
            Carrier::Sampleable(s) => s.sample(rng),
        }
    }

    fn sampler(&self) -> Sampler {
        match &self.carrier {
            Carrier::Finite(e) => Sampler::Uniform(e.clone()),
            Carrier::Sampleable(s) => s.clone(),
        }
    }

    /// The value of the numeral for `n`.
    pub fn numeral(&self, n: u64) -> Element {
        (0..n).fold(self.zero.clone(), |acc, _| acc.add(&self.one))
    }

    /// Whether `numeral(n)` has a multiplicative inverse, i.e. whether
    /// `n * n^-1 = 1` under the zero-totalized inverse.
    pub fn numeral_invertible(&self, n: u64) -> bool {
        let k = self.numeral(n);
        match self.inverse(InverseSymbol::Md).or(self.inverse(InverseSymbol::Nimd)) {
            Some(inv) => k.mul(&inv.apply(&k)) == self.one,
            None => false,
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<Element, ModelError> {
        let e = self.zero.parse_like(text).map_err(|message| ModelError::Element {
            text: text.to_string(),
            message,
        })?;
        if let Some(elems) = self.elements() {
            if !elems.contains(&e) {
                return Err(ModelError::Element {
                    text: text.to_string(),
                    message: format!("not in the carrier of {}", self.descriptor),
                });
            }
        }
        Ok(e)
    }

    /// The same algebra read over `sig`.
    ///
    /// A model with a single inverse may be read over either single-inverse
    /// signature, with its operation naming the requested symbol. A mixed
    /// model may be restricted to either inverse. Any model can be read over
    /// the ring signature.
    pub fn read_as(&self, sig: Signature) -> Result<Model, ModelError> {
        use Signature::*;
        let mut m = self.clone();
        match (self.signature, sig) {
            (s, t) if s == t => {}
            (_, Cr) => {
                m.inv_md = None;
                m.inv_nimd = None;
            }
            (Md, Nimd) | (Nimd, Md) => std::mem::swap(&mut m.inv_md, &mut m.inv_nimd),
            (Mixed, Md) => m.inv_nimd = None,
            (Mixed, Nimd) => m.inv_md = None,
            (from, to) => {
                return Err(ModelError::SignatureMismatch {
                    model: from,
                    requested: to,
                })
            }
        }
        m.signature = sig;
        Ok(m)
    }

    /// Operation-table equality of two finite models.
    pub fn tables_equal(&self, other: &Model) -> bool {
        let (Some(a), Some(b)) = (self.elements(), other.elements()) else {
            return false;
        };
        if self.signature != other.signature || self.zero != other.zero || self.one != other.one {
            return false;
        }
        let set: HashSet<&Element> = a.iter().collect();
        if a.len() != b.len() || !b.iter().all(|e| set.contains(e)) {
            return false;
        }
        for sym in [InverseSymbol::Md, InverseSymbol::Nimd] {
            match (self.inverse(sym), other.inverse(sym)) {
                (None, None) => {}
                (Some(f), Some(g)) => {
                    if a.iter().any(|e| f.apply(e) != g.apply(e)) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        a.iter().all(|x| {
            self.neg(x) == other.neg(x)
                && a.iter().all(|y| {
                    self.add(x, y) == other.add(x, y) && self.mul(x, y) == other.mul(x, y)
                })
        })
    }

    /// Fails with the label of the first axiom of `suite` that does not hold.
    pub fn ensure_satisfies(&self, suite: &AxiomSuite) -> Result<(), ModelError> {
        let mode = CheckMode::Auto {
            trials: PRECONDITION_TRIALS,
            seed: 0,
        };
        let report = check_suite(self, suite, mode).map_err(|e| ModelError::Check(Box::new(e)))?;
        match report.first_failure() {
            None => Ok(()),
            Some((label, _)) => Err(ModelError::Precondition {
                descriptor: self.descriptor.clone(),
                suite: suite.id.clone(),
                label: label.to_string(),
            }),
        }
    }

    fn with_descriptor(mut self, descriptor: String) -> Model {
        self.descriptor = descriptor;
        self
    }
}

fn dedup(elems: impl IntoIterator<Item = Element>) -> Vec<Element> {
    let mut out: Vec<Element> = Vec::new();
    for e in elems {
        if !out.contains(&e) {
            out.push(e);
        }
    }
    out
}

/// Assigns field inverses according to `sig`: a single inverse sends zero to
/// `zero_image`; in the mixed case the zero-totalized inverse sends it to
/// zero and the other to `zero_image`.
fn field_inverses(sig: Signature, zero: &Element, zero_image: Element) -> (Option<Inverse>, Option<Inverse>) {
    let field = |z: Element| Some(Inverse::Field { zero_image: z });
    match sig {
        Signature::Cr => (None, None),
        Signature::Md => (field(zero_image), None),
        Signature::Nimd => (None, field(zero_image)),
        Signature::Mixed => (field(zero.clone()), field(zero_image)),
    }
}

/// The field of rationals with the inverse of zero set to `n`.
///
/// Over `Mixed`, `^-1` is zero-totalized and `^~` sends zero to `n`.
pub fn rational_totalized(sig: Signature, n: u64) -> Model {
    rational_totalized_with_bound(sig, n, DEFAULT_SAMPLE_BOUND)
}

pub fn rational_totalized_with_bound(sig: Signature, n: u64, bound: i64) -> Model {
    let zero = Element::integer(0);
    let one = Element::integer(1);
    let image = Element::Rational(BigRational::from_integer(BigInt::from(n)));
    let (inv_md, inv_nimd) = field_inverses(sig, &zero, image.clone());
    Model {
        signature: sig,
        descriptor: format!("rat:{n}"),
        carrier: Carrier::Sampleable(Sampler::Rational { bound: bound.max(1) }),
        forced: dedup([zero.clone(), one.clone(), one.neg(), image]),
        zero,
        one,
        inv_md,
        inv_nimd,
    }
}

/// `Z/pZ` with the inverse of zero set to `k`.
pub fn gf_totalized(p: u64, k: u64, sig: Signature) -> Result<Model, ModelError> {
    if !is_prime(p) {
        return Err(ModelError::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(ModelError::PrimeTooLarge(p));
    }
    if k >= p {
        return Err(ModelError::BaseOutOfRange { k, p });
    }
    let elems: Arc<[Element]> = (0..p).map(|v| Element::Residue { value: v, modulus: p }).collect();
    let zero = elems[0].clone();
    let one = elems[1].clone();
    let image = elems[k as usize].clone();
    let (inv_md, inv_nimd) = field_inverses(sig, &zero, image.clone());
    Ok(Model {
        signature: sig,
        descriptor: format!("gf:{p}:{k}"),
        carrier: Carrier::Finite(elems),
        forced: dedup([zero.clone(), one.clone(), one.neg(), image]),
        zero,
        one,
        inv_md,
        inv_nimd,
    })
}

/// Direct product with componentwise operations.
pub fn product(a: &Model, b: &Model) -> Result<Model, ModelError> {
    if a.signature != b.signature {
        return Err(ModelError::SignatureMismatch {
            model: b.signature,
            requested: a.signature,
        });
    }
    let carrier = match (&a.carrier, &b.carrier) {
        (Carrier::Finite(xs), Carrier::Finite(ys)) => Carrier::Finite(
            xs.iter()
                .flat_map(|x| ys.iter().map(move |y| Element::pair(x.clone(), y.clone())))
                .collect(),
        ),
        _ => Carrier::Sampleable(Sampler::Pair(Box::new(a.sampler()), Box::new(b.sampler()))),
    };
    let pair_inv = |f: Option<&Inverse>, g: Option<&Inverse>| match (f, g) {
        (Some(f), Some(g)) => Some(Inverse::Product(Arc::new(f.clone()), Arc::new(g.clone()))),
        _ => None,
    };
    let forced = dedup(
        a.forced
            .iter()
            .flat_map(|x| b.forced.iter().map(move |y| Element::pair(x.clone(), y.clone()))),
    );
    Ok(Model {
        signature: a.signature,
        descriptor: format!("prod({},{})", a.descriptor, b.descriptor),
        carrier,
        zero: Element::pair(a.zero.clone(), b.zero.clone()),
        one: Element::pair(a.one.clone(), b.one.clone()),
        inv_md: pair_inv(a.inv_md.as_ref(), b.inv_md.as_ref()),
        inv_nimd: pair_inv(a.inv_nimd.as_ref(), b.inv_nimd.as_ref()),
        forced,
    })
}

/// Builds an inverse from a defining term over `base`: a table for finite
/// carriers, otherwise a closure over `base`.
fn defined_inverse(base: &Model, term: Term) -> Inverse {
    let inv = Inverse::Defined {
        base: Arc::new(base.clone()),
        term,
    };
    match base.elements() {
        Some(elems) => Inverse::Table(Arc::new(
            elems.iter().map(|e| (e.clone(), inv.apply(e))).collect(),
        )),
        None => inv,
    }
}

/// Expands a meadow with the `n`-totalized inverse given by
/// `x^~ = x^-1 + n * (1 - x * x^-1)`. The result carries both inverses.
pub fn expand_with_nimd(a: &Model, n: u64, pre: Precondition) -> Result<Model, ModelError> {
    if n == 0 {
        return Err(ModelError::ZeroBase);
    }
    let md = a.read_as(Signature::Md)?;
    if pre == Precondition::Check {
        md.ensure_satisfies(&suite_md())?;
    }
    let term = translate::nimd_defining_term(n);
    let inv_nimd = defined_inverse(&md, term);
    let mut forced = md.forced.clone();
    forced.push(md.numeral(n));
    Ok(Model {
        signature: Signature::Mixed,
        descriptor: format!("mix({},{n})", a.descriptor),
        inv_nimd: Some(inv_nimd),
        forced: dedup(forced),
        ..md
    })
}

/// Expands a non-involutive meadow with the inverse given by
/// `x^-1 = x * (x^~ * x^~)`. The result carries both inverses.
pub fn expand_with_md(a: &Model, pre: Precondition) -> Result<Model, ModelError> {
    let nimd = a.read_as(Signature::Nimd)?;
    if pre == Precondition::Check {
        nimd.ensure_satisfies(&suite_nimd())?;
    }
    let term = translate::md_defining_term();
    let inv_md = defined_inverse(&nimd, term);
    Ok(Model {
        signature: Signature::Mixed,
        descriptor: format!("mixmd({})", a.descriptor),
        inv_md: Some(inv_md),
        ..nimd
    })
}

/// The `n`-based non-involutive meadow on the carrier of the meadow `a`.
pub fn retotalize(a: &Model, n: u64, pre: Precondition) -> Result<Model, ModelError> {
    let m = expand_with_nimd(a, n, pre)?.read_as(Signature::Nimd)?;
    Ok(m.with_descriptor(format!("reto({},{n})", a.descriptor)))
}

/// The meadow on the carrier of the non-involutive meadow `a`.
pub fn involutize(a: &Model, pre: Precondition) -> Result<Model, ModelError> {
    let m = expand_with_md(a, pre)?.read_as(Signature::Md)?;
    Ok(m.with_descriptor(format!("invo({})", a.descriptor)))
}

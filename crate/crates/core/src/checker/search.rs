use serde::Serialize;

use super::check::{holds_exhaustive_with, CheckError, CheckOptions};
use super::eval::Valuation;
use crate::axioms::{suite_md, suite_nimd};
use crate::models::{gf_totalized, involutize, is_prime, product, retotalize, Model, Precondition};
use crate::terms::{ConditionalFormula, Signature};

/// A finite family of models, enumerated in a fixed order:
///
/// 1. `gf:p:k` for primes `p <= pmax` ascending, then `k` ascending (or only
///    the fixed `k`, when given and below `p`);
/// 2. with `products`, `prod(a,b)` for every pair `a <= b` of the models
///    from step 1 in that order;
/// 3. with `reto = Some(n)`, `reto(m,n)` for each earlier model that is a
///    meadow;
/// 4. with `invo`, `invo(m)` for each model of steps 1 and 2 that is a
///    non-involutive meadow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub pmax: u64,
    pub k: Option<u64>,
    pub products: bool,
    pub reto: Option<u64>,
    pub invo: bool,
}

impl FamilySpec {
    pub fn gf(pmax: u64) -> Self {
        FamilySpec {
            pmax,
            k: None,
            products: false,
            reto: None,
            invo: false,
        }
    }

    /// The models of the family in enumeration order.
    pub fn models(&self) -> impl Iterator<Item = Model> + '_ {
        let bases: Vec<Model> = (2..=self.pmax)
            .filter(|&p| is_prime(p))
            .flat_map(|p| {
                let ks: Vec<u64> = match self.k {
                    Some(k) if k < p => vec![k],
                    Some(_) => vec![],
                    None => (0..p).collect(),
                };
                ks.into_iter().map(move |k| {
                    let sig = if k == 0 { Signature::Md } else { Signature::Nimd };
                    gf_totalized(p, k, sig).expect("prime below pmax")
                })
            })
            .collect();
        let pairs = if self.products { bases.len() } else { 0 };
        let prods = (0..pairs).flat_map(move |i| (i..pairs).map(move |j| (i, j)));
        let b2 = bases.clone();
        let products = prods.filter_map(move |(i, j)| {
            let a = &b2[i];
            let b = b2[j].read_as(a.signature()).ok()?;
            product(a, &b).ok()
        });
        let plain: Vec<Model> = bases.into_iter().chain(products).collect();
        let reto = self.reto;
        let retos = plain
            .clone()
            .into_iter()
            .filter_map(move |m| retotalize(&m, reto?, Precondition::Check).ok());
        let invos = plain
            .clone()
            .into_iter()
            .filter(move |_| self.invo)
            .filter(|m| {
                m.read_as(Signature::Nimd)
                    .is_ok_and(|m| m.ensure_satisfies(&suite_nimd()).is_ok())
            })
            .filter_map(|m| involutize(&m, Precondition::Trust).ok());
        plain.into_iter().chain(retos).chain(invos)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub model: String,
    pub witness: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub counterexample: Option<Counterexample>,
    pub models_checked: u64,
    /// Models skipped because they cannot interpret the formula or exceed
    /// the enumeration cap.
    pub models_skipped: u64,
}

/// Checks `f` exhaustively in every model of `family`, stopping at the
/// first violation.
pub fn search(
    f: &ConditionalFormula,
    family: &FamilySpec,
    opts: &CheckOptions,
) -> Result<SearchReport, CheckError> {
    let sig = f.signature();
    let mut report = SearchReport {
        counterexample: None,
        models_checked: 0,
        models_skipped: 0,
    };
    for m in family.models() {
        let Ok(m) = m.read_as(sig) else {
            report.models_skipped += 1;
            continue;
        };
        let r = match holds_exhaustive_with(&m, f, opts) {
            Ok(r) => r,
            Err(CheckError::TooManyAssignments { .. }) => {
                report.models_skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        report.models_checked += 1;
        if let Some(witness) = r.witness {
            report.counterexample = Some(Counterexample {
                model: m.descriptor().to_string(),
                witness,
            });
            break;
        }
    }
    Ok(report)
}

pub fn find_counterexample(f: &ConditionalFormula, family: &FamilySpec) -> Option<Counterexample> {
    search(f, family, &CheckOptions::default())
        .ok()
        .and_then(|r| r.counterexample)
}

/// Whether `m` read over the meadow signature satisfies the meadow axioms.
pub fn is_meadow(m: &Model) -> bool {
    m.read_as(Signature::Md)
        .is_ok_and(|m| m.ensure_satisfies(&suite_md()).is_ok())
}

use serde::Serialize;

use super::check::{holds_exhaustive, CheckError};
use crate::models::{retotalize, Model, ModelError, Precondition};
use crate::terms::{Equation, Signature};
use crate::translate::{equation_to_md, TranslateError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferEntry {
    pub equation: String,
    pub translated: String,
    /// Whether the equation holds in the retotalized model.
    pub holds_retotalized: bool,
    /// Whether its translation holds in the original meadow.
    pub holds_translated: bool,
}

impl TransferEntry {
    pub fn agrees(&self) -> bool {
        self.holds_retotalized == self.holds_translated
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub model: String,
    pub n: u64,
    pub entries: Vec<TransferEntry>,
}

impl TransferReport {
    pub fn discrepancies(&self) -> impl Iterator<Item = &TransferEntry> {
        self.entries.iter().filter(|e| !e.agrees())
    }

    pub fn discrepancy_count(&self) -> usize {
        self.discrepancies().count()
    }
}

/// For each equation `e` over the non-involutive signature, compares
/// whether `e` holds in `retotalize(a, n)` with whether its translation to
/// the meadow signature holds in `a`. Both sides are checked exhaustively.
pub fn transfer_check(a: &Model, n: u64, corpus: &[Equation]) -> Result<TransferReport, TransferError> {
    let md = a.read_as(Signature::Md)?;
    let nimd = retotalize(&md, n, Precondition::Check)?;
    let entries = corpus
        .iter()
        .map(|e| {
            let translated = equation_to_md(e, n)?;
            Ok(TransferEntry {
                equation: e.to_string(),
                translated: translated.to_string(),
                holds_retotalized: holds_exhaustive(&nimd, &e.clone().into())?.holds(),
                holds_translated: holds_exhaustive(&md, &translated.into())?.holds(),
            })
        })
        .collect::<Result<_, TransferError>>()?;
    Ok(TransferReport {
        model: a.descriptor().to_string(),
        n,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::suite_nimd1;
    use crate::checker::random::random_corpus;
    use crate::models::gf_totalized;
    use crate::syntax::parse_equation;

    fn gf(p: u64) -> Model {
        gf_totalized(p, 0, Signature::Md).unwrap()
    }

    #[test]
    fn transfer_examples() {
        let e32 = suite_nimd1().get("(3.2)").unwrap().as_equation().unwrap();
        let bad = parse_equation("x^~ = 0", Signature::Nimd).unwrap();
        let r = transfer_check(&gf(3), 1, &[e32, bad]).unwrap();
        assert!(r.entries[0].holds_retotalized && r.entries[0].holds_translated);
        assert!(!r.entries[1].holds_retotalized && !r.entries[1].holds_translated);
        assert_eq!(r.discrepancy_count(), 0);
    }

    #[test]
    fn random_corpus_transfers() {
        let corpus = random_corpus(1, 60, 4, 2, Signature::Nimd);
        for p in [3, 5] {
            for n in [1, 2] {
                assert_eq!(transfer_check(&gf(p), n, &corpus).unwrap().discrepancy_count(), 0);
            }
        }
    }

    #[test]
    fn non_meadows_are_rejected() {
        let a = gf_totalized(3, 1, Signature::Md).unwrap();
        assert!(matches!(transfer_check(&a, 1, &[]), Err(TransferError::Model(_))));
    }
}

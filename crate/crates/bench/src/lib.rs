//! Fixtures shared by the benchmarks.

use meadow::axioms::suite_md;
use meadow::models::{gf_totalized, product};
use meadow::{AxiomSuite, Model, Signature};

/// `gf:p:0` read over the meadow signature.
pub fn zero_totalized(p: u64) -> Model {
    gf_totalized(p, 0, Signature::Md).expect("p is prime")
}

/// `prod(gf:p:0, gf:q:0)`.
pub fn product_of(p: u64, q: u64) -> Model {
    product(&zero_totalized(p), &zero_totalized(q)).expect("same signature")
}

pub fn meadow_axioms() -> AxiomSuite {
    suite_md()
}

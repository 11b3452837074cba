//! Concrete total algebras: totalized rational and prime fields, their
//! products, and the transformations between meadows and non-involutive
//! meadows.

mod descriptor;
mod element;
mod model;

use thiserror::Error;

use crate::checker::CheckError;
use crate::terms::Signature;

pub use descriptor::parse_descriptor;
pub use element::{is_prime, pow_mod, residue_inverse, Element};
pub use model::{
    expand_with_md, expand_with_nimd, gf_totalized, involutize, product, rational_totalized,
    rational_totalized_with_bound, retotalize, Carrier, Inverse, Model, Precondition, Sampler, DEF_VAR,
    DEFAULT_SAMPLE_BOUND, MAX_PRIME,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported maximum")]
    PrimeTooLarge(u64),
    #[error("inverse of zero {k} is not below the modulus {p}")]
    BaseOutOfRange { k: u64, p: u64 },
    #[error("the base of an n-based inverse must be positive")]
    ZeroBase,
    #[error("model over {model} cannot be read over {requested}")]
    SignatureMismatch {
        model: Signature,
        requested: Signature,
    },
    #[error("{descriptor} does not satisfy {suite}: axiom {label} fails")]
    Precondition {
        descriptor: String,
        suite: String,
        label: String,
    },
    #[error("bad model descriptor `{text}` at {pos}: {message}")]
    Descriptor {
        text: String,
        pos: usize,
        message: String,
    },
    #[error("bad element `{text}`: {message}")]
    Element { text: String, message: String },
    #[error("precondition check failed: {0}")]
    Check(Box<CheckError>),
}

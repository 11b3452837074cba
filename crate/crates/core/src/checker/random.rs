//! Seeded generation of small random terms and equations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::terms::{Equation, Signature, Term};

/// Variable names used by the generator, in order.
pub const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

/// A random term of depth at most `depth` over the first `nvars` of
/// [`VAR_NAMES`], using only operations of `sig`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, depth: usize, nvars: usize, sig: Signature) -> Term {
    let nvars = nvars.min(VAR_NAMES.len());
    if depth == 0 || rng.random_bool(0.25) {
        let pick = rng.random_range(0..2 + nvars);
        return match pick {
            0 => Term::Zero,
            1 => Term::One,
            i => Term::var(VAR_NAMES[i - 2]),
        };
    }
    let mut ops = vec![0, 1, 2];
    if sig.admits_symbol(crate::terms::InverseSymbol::Md) {
        ops.push(3);
    }
    if sig.admits_symbol(crate::terms::InverseSymbol::Nimd) {
        ops.push(4);
    }
    let sub = |rng: &mut R| random_term(rng, depth - 1, nvars, sig);
    match ops[rng.random_range(0..ops.len())] {
        0 => Term::add(sub(rng), sub(rng)),
        1 => Term::mul(sub(rng), sub(rng)),
        2 => Term::neg(sub(rng)),
        3 => Term::inv_md(sub(rng)),
        _ => Term::inv_nimd(sub(rng)),
    }
}

pub fn random_equation<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    nvars: usize,
    sig: Signature,
) -> Equation {
    Equation::new(
        random_term(rng, depth, nvars, sig),
        random_term(rng, depth, nvars, sig),
    )
}

/// `count` random equations from a generator seeded with `seed`.
pub fn random_corpus(seed: u64, count: usize, depth: usize, nvars: usize, sig: Signature) -> Vec<Equation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_equation(&mut rng, depth, nvars, sig))
        .collect()
}

//! Semantic invariants over the shipped finite model families.

use meadow::axioms::{
    derived_md, derived_nimd1, derived_nimd_n, guarded_formulas, suite_md, suite_nimd, suite_nimd1,
    suite_nimd_n,
};
use meadow::checker::{check_suite, holds_exhaustive, holds_sampled, is_meadow, CheckMode, FamilySpec};
use meadow::models::{
    expand_with_md, expand_with_nimd, gf_totalized, involutize, parse_descriptor, product,
    rational_totalized, retotalize, Precondition,
};
use meadow::{parse_formula, AxiomSuite, Model, Signature};

fn passes(m: &Model, suite: &AxiomSuite) -> bool {
    match m.read_as(suite.signature) {
        Ok(m) => check_suite(&m, suite, CheckMode::Exhaustive).unwrap().passed(),
        Err(_) => false,
    }
}

/// Every `gf:p:k` with `p <= 7`, read over both single-inverse signatures,
/// plus products of zero-totalized fields with `p <= 5`.
fn shipped_models() -> Vec<Model> {
    let spec = FamilySpec {
        products: false,
        ..FamilySpec::gf(7)
    };
    let mut out: Vec<Model> = spec.models().collect();
    for p in [2, 3, 5] {
        for q in [2, 3, 5] {
            if p <= q {
                let a = gf_totalized(p, 0, Signature::Md).unwrap();
                let b = gf_totalized(q, 0, Signature::Md).unwrap();
                out.push(product(&a, &b).unwrap());
            }
        }
    }
    out
}

#[test]
fn derived_suites_hold_where_base_suites_hold() {
    let mut seen = [0; 3];
    for m in shipped_models() {
        if passes(&m, &suite_md()) {
            assert!(passes(&m, &derived_md()), "{}", m.descriptor());
            seen[0] += 1;
        }
        if passes(&m, &suite_nimd1()) {
            assert!(passes(&m, &derived_nimd1()), "{}", m.descriptor());
            seen[1] += 1;
        }
        for n in 1..=4 {
            if passes(&m, &suite_nimd_n(n).unwrap()) {
                assert!(passes(&m, &derived_nimd_n(n).unwrap()), "{} n={n}", m.descriptor());
                seen[2] += 1;
            }
        }
    }
    assert!(seen.iter().all(|&c| c > 0), "{seen:?}");
}

#[test]
fn one_based_axiomatizations_agree() {
    for m in shipped_models() {
        assert_eq!(
            passes(&m, &suite_nimd1()),
            passes(&m, &suite_nimd_n(1).unwrap()),
            "{}",
            m.descriptor()
        );
    }
}

#[test]
fn zero_totalized_fields_are_exactly_the_meadows_among_prime_fields() {
    for m in FamilySpec::gf(7).models() {
        let k0 = m.descriptor().ends_with(":0");
        assert_eq!(is_meadow(&m), k0, "{}", m.descriptor());
    }
}

#[test]
fn nimd_suite_picks_out_the_inverse_of_zero() {
    // gf:p:k satisfies suite_nimd_n(n) exactly when k = n mod p and p does
    // not divide n.
    for p in [2u64, 3, 5, 7] {
        for k in 0..p {
            let m = gf_totalized(p, k, Signature::Nimd).unwrap();
            for n in 1..=7 {
                let expected = k == n % p && n % p != 0;
                assert_eq!(passes(&m, &suite_nimd_n(n).unwrap()), expected, "gf:{p}:{k} n={n}");
            }
            assert_eq!(passes(&m, &suite_nimd()), k != 0, "gf:{p}:{k}");
        }
    }
}

#[test]
fn inverses_agree_on_multiples_in_mixed_models() {
    let eq = parse_formula("x * x^~ = x * x^-1", Signature::Mixed).unwrap();
    let mut bases: Vec<Model> = [2, 3, 5, 7]
        .iter()
        .map(|&p| gf_totalized(p, 0, Signature::Md).unwrap())
        .collect();
    bases.push(parse_descriptor("prod(gf:2:0,gf:5:0)").unwrap());
    for a in &bases {
        let m = expand_with_nimd(a, 1, Precondition::Check).unwrap();
        assert!(holds_exhaustive(&m, &eq).unwrap().holds(), "{}", m.descriptor());
    }
    let rat = expand_with_nimd(&rational_totalized(Signature::Md, 0), 1, Precondition::Trust).unwrap();
    assert!(holds_sampled(&rat, &eq, 2000, 0).unwrap().holds());
}

#[test]
fn guarded_formulas_in_mixed_models() {
    let guarded = guarded_formulas();
    for p in [2, 3, 5, 7] {
        let a = gf_totalized(p, 0, Signature::Md).unwrap();
        let m = expand_with_nimd(&a, 1, Precondition::Check).unwrap();
        let report = check_suite(&m, &guarded, CheckMode::Exhaustive).unwrap();
        assert!(report.passed(), "{}", m.descriptor());
    }
    // a product of fields has non-zero zero divisors such as (0, 1), so the
    // formulas guarded by `x != 0` that mention only one inverse fail
    let a = parse_descriptor("prod(gf:2:0,gf:3:0)").unwrap();
    let m = expand_with_nimd(&a, 1, Precondition::Check).unwrap();
    let report = check_suite(&m, &guarded, CheckMode::Exhaustive).unwrap();
    for label in ["(4.3)", "(4.5)", "(4.6)", "Sep"] {
        assert!(report.get(label).unwrap().holds(), "{label}");
    }
    for label in ["(4.1)", "(4.2)", "(4.4)", "Gil", "Gil'"] {
        let r = report.get(label).unwrap();
        assert_eq!(r.witness.as_ref().unwrap().to_string(), "x=(0, 1)", "{label}");
    }
    let can = report.get("Can").unwrap().witness.as_ref().unwrap();
    assert_eq!(can.to_string(), "x=(1, 0), y=(0, 1), z=(0, 0)");
}

#[test]
fn both_expansions_of_a_prime_field_coincide() {
    for p in [2, 3, 5, 7] {
        let from_md = expand_with_nimd(&gf_totalized(p, 0, Signature::Md).unwrap(), 1, Precondition::Check).unwrap();
        let from_nimd = expand_with_md(&gf_totalized(p, 1, Signature::Nimd).unwrap(), Precondition::Check).unwrap();
        assert!(from_md.tables_equal(&from_nimd), "p={p}");
    }
}

#[test]
fn retotalize_after_involutize_is_identity() {
    for p in [3u64, 5, 7] {
        for k in 1..p {
            let a = gf_totalized(p, k, Signature::Nimd).unwrap();
            let back = retotalize(&involutize(&a, Precondition::Check).unwrap(), k, Precondition::Check).unwrap();
            assert!(back.tables_equal(&a), "gf:{p}:{k}");
        }
    }
}

#[test]
fn retotalized_models_satisfy_their_suite() {
    for p in [2u64, 3, 5, 7] {
        let a = gf_totalized(p, 0, Signature::Md).unwrap();
        for n in 1..=4 {
            let m = retotalize(&a, n, Precondition::Check).unwrap();
            assert_eq!(passes(&m, &suite_nimd_n(n).unwrap()), n % p != 0, "p={p} n={n}");
        }
    }
    let prod = parse_descriptor("prod(gf:2:0,gf:3:0)").unwrap();
    assert!(passes(&retotalize(&prod, 1, Precondition::Check).unwrap(), &suite_nimd_n(1).unwrap()));
    assert!(!passes(&retotalize(&prod, 2, Precondition::Check).unwrap(), &suite_nimd()));
    assert!(passes(&prod, &suite_md()));
}

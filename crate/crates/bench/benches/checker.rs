use criterion::{criterion_group, criterion_main, Criterion};
use meadow::checker::{check_suite, find_counterexample, holds_exhaustive, random, transfer_check, CheckMode, FamilySpec};
use meadow::{parse_formula, Signature};
use meadow_bench::{meadow_axioms, product_of, zero_totalized};

fn exhaustive(c: &mut Criterion) {
    let gf7 = zero_totalized(7);
    let prod = product_of(5, 7);
    let suite = meadow_axioms();
    let distrib = parse_formula("x * (y + z) = x * y + x * z", Signature::Md).unwrap();
    c.bench_function("suite_md gf:7:0", |b| {
        b.iter(|| check_suite(&gf7, &suite, CheckMode::Exhaustive).unwrap())
    });
    c.bench_function("distributivity prod(gf:5:0,gf:7:0)", |b| {
        b.iter(|| holds_exhaustive(&prod, &distrib).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let reflexivity = parse_formula("(x^-1)^-1 = x", Signature::Md).unwrap();
    let unit = parse_formula("x * 1 = x", Signature::Md).unwrap();
    c.bench_function("search first counterexample", |b| {
        b.iter(|| find_counterexample(&reflexivity, &FamilySpec::gf(7)).unwrap())
    });
    c.bench_function("search exhausted family", |b| {
        b.iter(|| find_counterexample(&unit, &FamilySpec::gf(13)))
    });
}

fn transfer(c: &mut Criterion) {
    let corpus = random::random_corpus(0, 50, 4, 2, Signature::Nimd);
    let gf5 = zero_totalized(5);
    c.bench_function("transfer 50 equations gf:5:0", |b| {
        b.iter(|| transfer_check(&gf5, 1, &corpus).unwrap())
    });
}

criterion_group!(benches, exhaustive, search, transfer);
criterion_main!(benches);

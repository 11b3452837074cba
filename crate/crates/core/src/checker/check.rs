use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::eval::{eval, EvalError, Valuation};
use crate::axioms::AxiomSuite;
use crate::models::{Element, Model};
use crate::terms::{ConditionalFormula, Literal, Relation, Signature};

/// Default cap on the number of assignments an exhaustive check enumerates.
pub const DEFAULT_MAX_EVALS: u64 = 10_000_000;

/// Default cap on the number of forced combinations in a sampled check.
pub const DEFAULT_FORCED_CAP: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("exhaustive check requested on the infinite model {0}")]
    InfiniteCarrier(String),
    #[error("exhaustive check needs {required} assignments, above the cap of {cap}")]
    TooManyAssignments { required: String, cap: u64 },
    #[error("formula over {formula} cannot be checked in a model over {model}")]
    SignatureMismatch {
        formula: Signature,
        model: Signature,
    },
    #[error("sampled check needs at least one trial")]
    NoTrials,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    HoldsExhaustive,
    HoldsSampled,
    Fails,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HoldsExhaustive => "HOLDS_EXHAUSTIVE",
            Verdict::HoldsSampled => "HOLDS_SAMPLED",
            Verdict::Fails => "FAILS",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of checking one formula in one model. `witness` is present
/// exactly when the verdict is [`Verdict::Fails`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub witness: Option<Valuation>,
    pub assignments_tested: u64,
    pub seed: Option<u64>,
}

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Fails
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
    /// Exhaustive on finite models, sampled otherwise.
    Auto { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub max_evals: u64,
    pub forced_cap: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            max_evals: DEFAULT_MAX_EVALS,
            forced_cap: DEFAULT_FORCED_CAP,
        }
    }
}

fn literal_holds(m: &Model, lit: &Literal, v: &Valuation) -> Result<bool, EvalError> {
    let same = eval(m, &lit.lhs, v)? == eval(m, &lit.rhs, v)?;
    Ok(match lit.relation {
        Relation::Eq => same,
        Relation::Ne => !same,
    })
}

/// Whether `f` is true under `v`: some antecedent fails, or the conclusion
/// holds.
pub fn satisfies(m: &Model, f: &ConditionalFormula, v: &Valuation) -> Result<bool, EvalError> {
    for a in &f.antecedents {
        if !literal_holds(m, a, v)? {
            return Ok(true);
        }
    }
    literal_holds(m, &f.conclusion, v)
}

fn ensure_signature(m: &Model, f: &ConditionalFormula) -> Result<(), CheckError> {
    let sig = f.signature();
    if m.signature().admits(sig) {
        Ok(())
    } else {
        Err(CheckError::SignatureMismatch {
            formula: sig,
            model: m.signature(),
        })
    }
}

/// Decodes `index` in mixed radix over `choices`; the first variable varies
/// fastest.
fn valuation_at(vars: &[String], choices: &[Element], mut index: u64) -> Valuation {
    let base = choices.len() as u64;
    vars.iter()
        .map(|x| {
            let digit = (index % base) as usize;
            index /= base;
            (x.clone(), choices[digit].clone())
        })
        .collect()
}

pub fn holds_exhaustive(m: &Model, f: &ConditionalFormula) -> Result<CheckReport, CheckError> {
    holds_exhaustive_with(m, f, &CheckOptions::default())
}

/// Checks `f` under every assignment of carrier elements to its variables.
/// Assignments are enumerated in a canonical order (variables sorted by name,
/// first variable varying fastest) and the witness is the first violation in
/// that order, independent of how the work is scheduled.
pub fn holds_exhaustive_with(
    m: &Model,
    f: &ConditionalFormula,
    opts: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    ensure_signature(m, f)?;
    let elems = m
        .elements()
        .ok_or_else(|| CheckError::InfiniteCarrier(m.descriptor().to_string()))?;
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    let total = (elems.len() as u64)
        .checked_pow(vars.len() as u32)
        .filter(|&t| t <= opts.max_evals)
        .ok_or_else(|| CheckError::TooManyAssignments {
            required: format!("{}^{}", elems.len(), vars.len()),
            cap: opts.max_evals,
        })?;
    let first_bad = (0..total)
        .into_par_iter()
        .map(|i| (i, satisfies(m, f, &valuation_at(&vars, elems, i))))
        .find_first(|(_, r)| !matches!(r, Ok(true)));
    match first_bad {
        None => Ok(CheckReport {
            verdict: Verdict::HoldsExhaustive,
            witness: None,
            assignments_tested: total,
            seed: None,
        }),
        Some((_, Err(e))) => Err(e.into()),
        Some((i, Ok(_))) => Ok(CheckReport {
            verdict: Verdict::Fails,
            witness: Some(valuation_at(&vars, elems, i)),
            assignments_tested: i + 1,
            seed: None,
        }),
    }
}

pub fn holds_sampled(
    m: &Model,
    f: &ConditionalFormula,
    trials: u64,
    seed: u64,
) -> Result<CheckReport, CheckError> {
    holds_sampled_with(m, f, trials, seed, &CheckOptions::default())
}

/// Checks `f` on every combination of the model's forced elements (up to
/// `opts.forced_cap` combinations) followed by `trials` random valuations
/// drawn from a generator seeded with `seed`.
pub fn holds_sampled_with(
    m: &Model,
    f: &ConditionalFormula,
    trials: u64,
    seed: u64,
    opts: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    ensure_signature(m, f)?;
    if trials == 0 {
        return Err(CheckError::NoTrials);
    }
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    let forced = m.forced_elements();
    let forced_total = (forced.len() as u64)
        .checked_pow(vars.len() as u32)
        .unwrap_or(u64::MAX)
        .min(opts.forced_cap);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0u64;
    let forced_vals = (0..forced_total).map(|i| valuation_at(&vars, forced, i));
    let random_vals = (0..trials).map(|_| {
        vars.iter()
            .map(|x| (x.clone(), m.sample(&mut rng)))
            .collect::<Valuation>()
    });
    for v in forced_vals.chain(random_vals) {
        tested += 1;
        if !satisfies(m, f, &v)? {
            return Ok(CheckReport {
                verdict: Verdict::Fails,
                witness: Some(v),
                assignments_tested: tested,
                seed: Some(seed),
            });
        }
    }
    Ok(CheckReport {
        verdict: Verdict::HoldsSampled,
        witness: None,
        assignments_tested: tested,
        seed: Some(seed),
    })
}

pub fn check(m: &Model, f: &ConditionalFormula, mode: CheckMode) -> Result<CheckReport, CheckError> {
    check_with(m, f, mode, &CheckOptions::default())
}

pub fn check_with(
    m: &Model,
    f: &ConditionalFormula,
    mode: CheckMode,
    opts: &CheckOptions,
) -> Result<CheckReport, CheckError> {
    match mode {
        CheckMode::Exhaustive => holds_exhaustive_with(m, f, opts),
        CheckMode::Sampled { trials, seed } => holds_sampled_with(m, f, trials, seed, opts),
        CheckMode::Auto { trials, seed } => {
            if m.is_finite() {
                holds_exhaustive_with(m, f, opts)
            } else {
                holds_sampled_with(m, f, trials, seed, opts)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledReport {
    pub label: String,
    #[serde(flatten)]
    pub report: CheckReport,
}

/// Per-axiom results of [`check_suite`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub model: String,
    pub results: Vec<LabeledReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.report.holds())
    }

    pub fn first_failure(&self) -> Option<(&str, &CheckReport)> {
        self.results
            .iter()
            .find(|r| !r.report.holds())
            .map(|r| (r.label.as_str(), &r.report))
    }

    pub fn get(&self, label: &str) -> Option<&CheckReport> {
        self.results.iter().find(|r| r.label == label).map(|r| &r.report)
    }
}

pub fn check_suite(m: &Model, s: &AxiomSuite, mode: CheckMode) -> Result<SuiteReport, CheckError> {
    check_suite_with(m, s, mode, &CheckOptions::default())
}

pub fn check_suite_with(
    m: &Model,
    s: &AxiomSuite,
    mode: CheckMode,
    opts: &CheckOptions,
) -> Result<SuiteReport, CheckError> {
    let results = s
        .formulas
        .iter()
        .map(|ax| {
            Ok(LabeledReport {
                label: ax.label.clone(),
                report: check_with(m, &ax.formula, mode, opts)?,
            })
        })
        .collect::<Result<_, CheckError>>()?;
    Ok(SuiteReport {
        suite: s.id.clone(),
        model: m.descriptor().to_string(),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{extra_initiality_axiom, guarded_formulas, suite_md, suite_nimd1, suite_nimd_n};
    use crate::models::{gf_totalized, product, rational_totalized};
    use crate::syntax::parse_formula;

    fn f(text: &str) -> ConditionalFormula {
        parse_formula(text, Signature::Mixed).unwrap()
    }

    fn gf(p: u64, k: u64, sig: Signature) -> Model {
        gf_totalized(p, k, sig).unwrap()
    }

    fn witness(r: &CheckReport) -> String {
        r.witness.as_ref().unwrap().to_string()
    }

    /// Independent oracle: plain nested loops over the carrier.
    fn brute_force_count(m: &Model, f: &ConditionalFormula) -> (u64, bool) {
        let elems = m.elements().unwrap();
        let vars: Vec<_> = f.free_vars().into_iter().collect();
        let mut count = 0;
        let mut ok = true;
        let mut idx = vec![0usize; vars.len()];
        loop {
            let v: Valuation = vars.iter().zip(&idx).map(|(x, &i)| (x.clone(), elems[i].clone())).collect();
            count += 1;
            ok &= satisfies(m, f, &v).unwrap();
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return (count, ok);
                }
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn ref_in_gf3() {
        let r = holds_exhaustive(&gf(3, 0, Signature::Md), &f("(x^-1)^-1 = x")).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsExhaustive);
        assert_eq!(r.assignments_tested, 3);
        assert_eq!(r.witness, None);
        let r = holds_exhaustive(&gf(3, 1, Signature::Md), &f("(x^-1)^-1 = x")).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(witness(&r), "x=0");
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        let m = product(&gf(2, 0, Signature::Md), &gf(3, 0, Signature::Md)).unwrap();
        for text in ["x * 1 = x", "x * (y + z) = x*y + x*z", "x != 0 ==> x * x^-1 = 1"] {
            let formula = f(text);
            let (count, ok) = brute_force_count(&m, &formula);
            let r = holds_exhaustive(&m, &formula).unwrap();
            assert_eq!(r.holds(), ok, "{text}");
            if ok {
                assert_eq!(r.assignments_tested, count);
            }
        }
    }

    #[test]
    fn ring_identity_holds_everywhere() {
        for m in [gf(2, 0, Signature::Md), gf(7, 3, Signature::Nimd)] {
            assert!(holds_exhaustive(&m, &f("x*1 = x")).unwrap().holds());
        }
        let r = holds_sampled(&rational_totalized(Signature::Md, 0), &f("x*1 = x"), 50, 1).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsSampled);
    }

    #[test]
    fn double_inverse_product_fails_at_zero_in_rat0() {
        let r = holds_sampled(&rational_totalized(Signature::Md, 0), &f("x^-1 * (x^-1)^-1 = 1"), 100, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(witness(&r), "x=0");
        assert_eq!(r.seed, Some(0));
    }

    #[test]
    fn sampled_examples_hold() {
        let rat1 = rational_totalized(Signature::Nimd, 1);
        let r = holds_sampled(&rat1, &f("x^~ * (x^~)^~ = 1"), 1000, 3).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsSampled);
        let rat2 = rational_totalized(Signature::Nimd, 2);
        let init = extra_initiality_axiom(Signature::Nimd).unwrap().into();
        assert!(holds_sampled(&rat2, &init, 500, 9).unwrap().holds());
    }

    #[test]
    fn sampled_checks_are_deterministic() {
        let rat0 = rational_totalized(Signature::Md, 0);
        let formula = f("x + y * x^-1 = y");
        let a = holds_sampled(&rat0, &formula, 200, 42).unwrap();
        let b = holds_sampled(&rat0, &formula, 200, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.verdict, Verdict::Fails);
    }

    #[test]
    fn forced_batch_counts() {
        let rat0 = rational_totalized(Signature::Md, 0);
        // forced elements 0, 1, -1: 3^2 combinations before random trials
        let r = holds_sampled(&rat0, &f("x + y = y + x"), 10, 0).unwrap();
        assert_eq!(r.assignments_tested, 9 + 10);
        let opts = CheckOptions { forced_cap: 4, ..Default::default() };
        let r = holds_sampled_with(&rat0, &f("x + y = y + x"), 10, 0, &opts).unwrap();
        assert_eq!(r.assignments_tested, 4 + 10);
    }

    #[test]
    fn check_suites() {
        assert!(check_suite(&gf(7, 0, Signature::Md), &suite_md(), CheckMode::Exhaustive).unwrap().passed());
        let prod = product(&gf(2, 0, Signature::Md), &gf(3, 0, Signature::Md)).unwrap();
        assert!(check_suite(&prod, &suite_md(), CheckMode::Exhaustive).unwrap().passed());
        let gf52 = gf(5, 2, Signature::Nimd);
        assert!(check_suite(&gf52, &suite_nimd_n(2).unwrap(), CheckMode::Exhaustive).unwrap().passed());
        let bad = check_suite(&gf(3, 1, Signature::Nimd), &suite_nimd_n(2).unwrap(), CheckMode::Exhaustive).unwrap();
        assert_eq!(bad.first_failure().unwrap().0, "N");
        assert!(bad.get("(5.3)").unwrap().holds());
    }

    #[test]
    fn gil_fails_in_a_product() {
        let prod = product(&gf(2, 0, Signature::Md), &gf(3, 0, Signature::Md)).unwrap();
        let gil = guarded_formulas().get("Gil").unwrap().clone();
        let r = holds_exhaustive(&prod, &gil).unwrap();
        assert_eq!(r.verdict, Verdict::Fails);
        assert_eq!(witness(&r), "x=(0, 1)");
    }

    #[test]
    fn errors() {
        let rat0 = rational_totalized(Signature::Md, 0);
        assert!(matches!(
            holds_exhaustive(&rat0, &f("x = x")),
            Err(CheckError::InfiniteCarrier(_))
        ));
        let m = gf(7, 0, Signature::Md);
        let opts = CheckOptions { max_evals: 48, ..Default::default() };
        assert!(matches!(
            holds_exhaustive_with(&m, &f("x + y = y + x"), &opts),
            Err(CheckError::TooManyAssignments { .. })
        ));
        assert!(matches!(
            holds_exhaustive(&m, &f("x^~ = x")),
            Err(CheckError::SignatureMismatch { .. })
        ));
        assert_eq!(holds_sampled(&rat0, &f("x = x"), 0, 0), Err(CheckError::NoTrials));
        assert!(suite_nimd1().formulas.iter().all(|a| a.formula.signature() != Signature::Mixed));
    }

    #[test]
    fn antecedents_are_vacuous_when_false() {
        let m = gf(3, 0, Signature::Md);
        // no element equals both 0 and 1
        assert!(holds_exhaustive(&m, &f("x = 0, x = 1 ==> 0 = 1")).unwrap().holds());
        assert!(holds_exhaustive(&m, &f("0 != 1")).unwrap().holds());
        let r = holds_exhaustive(&m, &f("x != 0 ==> x = 1")).unwrap();
        assert_eq!(witness(&r), "x=2");
    }

    #[test]
    fn report_json_schema() {
        let r = holds_exhaustive(&gf(2, 0, Signature::Md), &f("(1 + x^2 + y^2) * (1 + x^2 + y^2)^-1 = 1")).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "verdict": "FAILS",
                "witness": {"x": "1", "y": "0"},
                "assignments_tested": 2,
                "seed": null
            })
        );
    }
}

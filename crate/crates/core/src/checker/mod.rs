//! Evaluation of terms in models, satisfaction checks (exhaustive over
//! finite carriers, sampled otherwise), counterexample search over finite
//! model families and satisfaction transfer along the translations.

mod check;
mod eval;
pub mod random;
mod search;
mod transfer;

pub use check::{
    check, check_suite, check_suite_with, check_with, holds_exhaustive, holds_exhaustive_with,
    holds_sampled, holds_sampled_with, satisfies, CheckError, CheckMode, CheckOptions, CheckReport,
    LabeledReport, SuiteReport, Verdict, DEFAULT_FORCED_CAP, DEFAULT_MAX_EVALS,
};
pub use eval::{eval, EvalError, Valuation};
pub use search::{find_counterexample, is_meadow, search, Counterexample, FamilySpec, SearchReport};
pub use transfer::{transfer_check, TransferEntry, TransferError, TransferReport};

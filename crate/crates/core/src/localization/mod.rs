//! Localization of an n-exangulated category at a class of morphisms `F`
//! described by its image `F̄` in an ideal quotient.

pub mod fbar;
pub mod kfun;
pub mod mr;
pub mod quotient;
pub mod report;
pub mod roof;
pub mod weakkc;

pub use fbar::{universe, FbarMode, MorphismClass, UniverseBounds};
pub use kfun::{k_subfunctor, k_subgroup, KSubfunctor};
pub use mr::{check_m0, check_mr, check_mr1, check_mr2, check_mr3};
pub use quotient::IdealQuotient;
pub use report::{check, evaluate_sequences, localize, to_json, CheckReport, LocalizationReport, LocalizeOptions, Outcome, SequenceRecord, SequenceSpec};
pub use roof::{CommonDenominator, EtildeGroup, Fractions, QuotientRealizer, Roof};
pub use weakkc::{check_weak_kc, exangle_failures, fraction_failures, WeakKcOutcome};

#[cfg(test)]
mod tests;

//! ACM, quasi-Buchsbaum and Buchsbaum properties, the skew form A_Φ and
//! the classification of (1,1)-type quasi-Buchsbaum bundles on P³.

pub mod classify;
pub mod predicates;
pub mod skew;

pub use classify::{classify, fingerprint, ClassificationResult, Fingerprint, Verdict};
pub use predicates::{
    check_saturated, is_acm, is_buchsbaum, is_quasi_buchsbaum, is_standard_sop, is_standard_system,
    koszul_surjective, random_linear_sop, BuchsbaumMode, BuchsbaumVerdict, DEFAULT_KOSZUL_CAP,
};
pub use skew::{
    is_normalized, pfaffian4, pfaffian4_signed, phi_value, phi_value_forms, phi_zero_test, rank2_witnesses,
    skew_form, Rank2Witnesses, SkewForm,
};

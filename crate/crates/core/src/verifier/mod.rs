//! Hopf-axiom verification for the presented families: coproduct compatibility with the
//! relations, antipodes, degeneration to the graded algebras, and the forced-vanishing identities.

pub mod antipode;
pub mod coproducts;
pub mod degeneration;
pub mod vanishing;

pub use antipode::{compute_antipode, solve_antipode, verify_antipode, Antipode};
pub use coproducts::{verify_relation_coproducts, CoproductEngine, GeneratorCoproducts, TensorAlg};
pub use degeneration::verify_degeneration;
pub use vanishing::{forced_vanishing_suite, Trial};

use crate::presentations::{HopfFamilyDescriptor, RewriteSystem};
use crate::report::VerificationReport;

/// Relation compatibility of `Δ` and `ε` followed by the antipode checks up to `degree_bound`.
pub fn verify_hopf(desc: &HopfFamilyDescriptor, degree_bound: u64) -> VerificationReport {
    let rs = RewriteSystem::presentation(desc);
    let gens = GeneratorCoproducts::new(desc);
    let mut report = coproducts::verify_relation_coproducts_with(desc, &rs, &gens);
    report.extend(antipode::verify_antipode_with(desc, &rs, &gens, degree_bound));
    report.params.insert("degree".into(), degree_bound.to_string());
    report
}

//! Presentations by generators and relations, oriented as rewriting systems,
//! with normal forms, confluence checks, the PBW basis change and the isomorphism classifier.

pub mod basis;
pub mod classify;
pub mod confluence;
pub mod descriptor;
pub mod rewrite;

pub use basis::{check_basis_change, path_to_pbw, pbw_to_path, pbw_to_path_literal};
pub use classify::{classify_iso, simple_pointed_catalog};
pub use confluence::{ambiguities, check_confluence, pbw_monomials, Ambiguity};
pub use descriptor::{ChainCommutator, Family, HalfCoefficient, HopfFamilyDescriptor};
pub use rewrite::{AlgElement, Gen, Monomial, Multiplier, RewriteSystem, Rule, Word};

/// The rewriting system of a family.
pub fn presentation_of(desc: &HopfFamilyDescriptor) -> RewriteSystem {
    RewriteSystem::presentation(desc)
}

/// Normal form of `coeff · word`, where `word` is written like `"a p a h^3"`.
pub fn normal_form(
    desc: &HopfFamilyDescriptor,
    word: &str,
    coeff: &crate::scalars::Scalar,
) -> crate::Result<AlgElement> {
    let rs = RewriteSystem::presentation(desc);
    let gens = rs.parse_word(word)?;
    rs.normal_form(&rs.word_element(gens, coeff))
}

/// Product of two normal forms.
pub fn multiply_alg(desc: &HopfFamilyDescriptor, x: &AlgElement, y: &AlgElement) -> AlgElement {
    RewriteSystem::presentation(desc).multiply(x, y)
}

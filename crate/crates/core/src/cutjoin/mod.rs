//! The symmetrized cut-join identity: symmetrization lemmas, assembly and
//! exact verification of both sides, leading-degree extraction and relation
//! extraction.

mod identity;
mod leading;
mod lemmas;
mod relations;

pub use identity::{
    closed_form_cut_03, closed_form_join_11, expected_degree, lhs_from, lhs_theorem3,
    residual_theorem3, residual_theorem3_with, rhs_theorem3, stable_split_pairs, IdentityOptions,
    Mode, RhsTerms, Status, VerificationReport,
};
pub use leading::{
    dvv_extract, dvv_leading_check, dvv_leading_check_with, leading_displays, leading_part,
    LeadingDisplays,
};
pub use lemmas::{
    check_lemma_derivative, check_lemma_derivative_with, check_lemma_product,
    check_lemma_product_with, check_lemma_second_derivative, check_lemma_second_derivative_with,
    partitions_up_to, symmetrize_on, symmetrize_power_sum, LemmaControl, Partition, PhasePoly,
};
pub use relations::{extract_relations, relations_from_residual, solve_relations, LinearRelation};

//! Brown-Halmos type statements checked on truncated operator matrices and
//! exact symbol identities.

mod builtin;
mod scenario;
mod verify;

pub use builtin::{
    ahern_check, bounded_symbol_series_check, builtin_suites, remark_identity_check, remark_symbol, zero_product_check,
};
pub use scenario::{
    bipoly_terms, construct_bh_example, random_bh_scenario, split_pluriharmonic, terms_bipoly, BHScenario,
    PluriharmonicPair, ScenarioPair,
};
pub use verify::{
    bh_facts, classify_pair, commutator_analysis, commutator_matrix, finite_rank_defect, hankel_equivalences,
    product_sum, scenario_rhs, verify_bh_scenario, BhFacts, CommutingClass,
};

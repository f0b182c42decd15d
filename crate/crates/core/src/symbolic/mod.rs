//! Polynomials in `z` and `zbar` and the differential operators acting on them.

mod bipoly;
mod ops;
mod parse;
mod univariate;
mod verify;

pub(crate) use bipoly::{join_terms, monomial_factors};
pub use bipoly::{BiPolynomial, Monomial};
pub use ops::{
    apply_chain, apply_d, apply_first_order, apply_inv_laplacian, apply_pm, apply_shifted_pair, ChainOrder, DMode,
    FirstOrder,
};
pub use parse::{parse_bipoly, parse_terms, resolve_dim, ParsedTerm};
pub use univariate::{pm_polynomial, UnivariatePoly};
pub use verify::{
    characterization_pluri, do_identity_check, first_difference, h_recursion_check, is_pluriharmonic,
    verify_do_identity, verify_h_recursion, Characterization,
};

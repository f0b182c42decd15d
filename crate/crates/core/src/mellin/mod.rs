//! Symbols with prescribed Berezin transform, built by inverting Mellin
//! transforms exactly.

mod construct;
mod rational;

pub use construct::{
    base_symbol, derivative_formula_polynomial, derivative_formula_terms, phi_hat, preimage_monomial, product_symbol,
    range_decision, PreimageCache, RangeDecision, WeightedMonomial,
};
pub use rational::{invert_mellin, partial_fractions, PartialFractionForm, PoleTerm, RationalFunctionQ};

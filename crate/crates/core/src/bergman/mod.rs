//! Truncated operator matrices, Berezin coefficient series and their analysis
//! for quasi-homogeneous symbols on the ball.

mod linalg;
mod matrix;
mod radial;
mod series;
mod symbol;

pub use linalg::rank;
pub use matrix::{hankel_product, operator_equal, rank_one_matrix, toeplitz_matrix, toeplitz_product, OperatorMatrix};
pub use radial::{radial_mellin, RadialProfile};
pub use series::{berezin_series, series_analyze, series_equal, CoeffSeries, SeriesAnalysis};
pub use symbol::{terms_to_symbol, QuasiHomSymbol, SymbolJson, SymbolKey, TermJson};

use crate::symbolic::BiPolynomial;

/// Each term `z^alpha zbar^beta` becomes a symbol term with constant profile.
pub fn bipoly_to_symbol(p: &BiPolynomial) -> QuasiHomSymbol {
    QuasiHomSymbol::from_bipoly(p)
}

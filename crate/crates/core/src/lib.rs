//! Exact verification toolkit for Toeplitz operators on the Bergman space of
//! the unit ball in `C^N`.
//!
//! Everything is computed over `Q(i)`; nothing here uses floating point.

pub mod arith;
pub mod bergman;
pub mod bhsuite;
pub mod cli;
pub mod error;
pub mod mellin;
pub mod report;
pub mod symbolic;
pub mod wirtinger;

pub use error::{Error, Result};

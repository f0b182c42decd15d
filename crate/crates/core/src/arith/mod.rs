//! Exact scalars, multi-indices and the moment constants of the ball.

mod gaussian;
mod moments;
mod multi_index;

pub use gaussian::{int, parse_rational, rat, rational_sqrt, rational_to_text, GaussianRational, Rational};
pub use moments::{kernel_coefficient, monomial_norm_sq, sphere_moment};
pub use multi_index::{binomial, factorial, multinomial, MultiIndex};

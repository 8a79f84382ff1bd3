//! Exact arithmetic: multivariate Laurent polynomials in lattice characters
//! with half powers of q (K-theory) or polynomials in simple-root variables
//! with ħ (cohomology), their fraction field, Weyl actions, the bar
//! involution, Newton polytopes, and the canonical textual form.

pub mod poly;
pub mod ratfunc;
pub mod polytope;
pub mod parse;

pub use poly::{ExpKey, LaurentPoly};
pub use ratfunc::RatFunc;
pub use polytope::Polytope;
pub use parse::{parse_poly, parse_ratfunc, render_poly, render_ratfunc, VarMode};

//! Exact stable-basis calculus for the Springer resolution T*(G/B).
//!
//! Everything is computed symbolically over arbitrary-precision rationals:
//! fixed-point restrictions of K-theoretic and cohomological stable bases,
//! the degenerate-affine and finite Hecke operators that generate them, root
//! polynomials, characteristic classes of Schubert cells, and the Casselman
//! transition matrices of principal-series representations of the Langlands
//! dual p-adic group.

pub mod error;
pub mod weyl;
pub mod exactalg;
pub mod heckealg;
pub mod stablecalc;
pub mod rootpoly;
pub mod cohstable;
pub mod motivic;
pub mod padic;
pub mod matio;
pub mod verify;

pub use error::Error;
pub use weyl::{AlcoveSpec, Rat, RootSystem, WIdx};

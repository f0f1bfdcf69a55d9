//! Exact decision procedures for maximal tori in the automorphism group G2 of
//! an octonion algebra over Q, R and a family of Laurent series fields.
//!
//! Layers, bottom up: square classes and Hilbert symbols ([`arith`]), quadratic
//! forms ([`quadform`]), étale algebras ([`etale`]), Cayley–Dickson algebras
//! ([`composition`]), rank-3 hermitian forms ([`hermitian`]), the Weyl group and
//! lattice cohomology ([`weyl`]), and the decision engine ([`engine`]).

pub mod arith;
pub mod composition;
pub mod engine;
pub mod error;
pub mod etale;
pub mod hermitian;
pub mod intlin;
pub mod quadform;
pub mod weyl;
pub mod wire;

pub use error::{Error, Result};

//! Exact LP decoding for compressed sensing and channel coding.
//!
//! Measurement matrices are binary parity-check matrices. Everything that
//! decides a property (LP optimality, cone membership, nullspace-property
//! certificates, pseudo-weights) is computed in exact rational arithmetic.

pub mod channels;
pub mod cone;
pub mod corpus;
pub mod decoders;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod lp;
pub mod matrices;
pub mod nsp;
pub mod pseudoweight;
pub mod rational;

pub use error::{Error, Result};
pub use lp::{solve_lp, solve_lp_unique, Constraint, LinearProgram, LpSolution, LpStatus, Relation, Uniqueness};
pub use matrices::{BinaryMatrix, BitVector, RealVector, SupportSet};
pub use rational::Rational;

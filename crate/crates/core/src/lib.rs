//! Exact computation of Kostant's partition function, Weyl alternation sets
//! and weight multiplicities for the simple Lie algebras.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod kostant;
pub mod lattice;
pub mod multiplicity;
pub mod rootsystem;
pub mod weyl;

pub use error::{Error, Result};
pub use kostant::{PartitionFunction, QPolynomial, SignedQPolynomial};
pub use lattice::{Rational, RationalMatrix, RationalVector};
pub use rootsystem::{LieType, RootSystem};
pub use weyl::{WeylElement, WeylGroup};

//! Exact arithmetic for the modular-method argument on `x^4 + y^4 = z^p`.
//!
//! The crate recomputes every finite quantity the argument depends on: traces
//! of Frobenius of the two Frey Q-curves over `Q(i)`, Hecke eigenvalues of the
//! CM newforms of levels 32 and 256, the congruence obstructions that rule
//! those newforms out, and the sum-of-two-squares bookkeeping behind the First
//! Case. Facts that cannot be computed (modularity, level lowering, Cartan
//! classification) are carried as labelled axioms in [`obstruction::VerdictReport`].
//!
//! The ring types are generic over an integer scalar (`i64`, `i128`,
//! [`num_bigint::BigInt`], ...). The aliases below fix the scalar to `BigInt`,
//! which is what the pipeline uses.

pub mod arith;
pub mod elliptic;
pub mod error;
pub mod finite_field;
pub mod frey;
pub mod newforms;
pub mod obstruction;
pub mod search;
pub mod two_squares;

pub use error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;
/// `re + im*i` in `Z[i]` over [`Int`].
pub type GaussianInt = arith::Gaussian<Int>;
/// `rat + irr*sqrt(2)` in `Z[sqrt 2]` over [`Int`].
pub type Rt2Int = arith::Rt2<Int>;
/// A sum-of-two-squares representation over [`Int`].
pub type TwoSquaresRep = two_squares::TwoSquares<Int>;

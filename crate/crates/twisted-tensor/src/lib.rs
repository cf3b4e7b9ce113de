//! Exact-arithmetic twisted tensor products of univariate polynomial
//! algebras, and their dual coalgebras on finite-dimensional quotients.
//!
//! The library builds algebras of the form `k[x] ⊗_τ k[y]` for a twisting
//! map `τ: k[y] ⊗ k[x] → k[x] ⊗ k[y]` (tensor swap, quantum plane,
//! quantized Weyl, Jordan plane, Weyl algebra, and general Ore twists),
//! checks the axioms a twisting map must satisfy, cuts out
//! finite-dimensional quotients by leg-wise ideals `(P(x), Q(y))`, and
//! verifies exactly that the dual coalgebra of such a quotient factors as a
//! cotwisted tensor product of the duals of `k[x]/(P)` and `k[y]/(Q)`.
//!
//! All arithmetic is exact, over `Q`, a cyclotomic field `Q(ζ_ℓ)`, or a
//! prime field `F_p`.
//!
//! Start with the runnable programs under `examples/`, or the
//! `twisted-tensor` binary for the command-line interface.

pub mod axioms;
pub mod cli;
pub mod cotwist;
pub mod elements;
pub mod findim;
pub mod scalars;
pub mod twists;

pub use elements::{Element, TensorMonomial, UniPoly, Var};
pub use scalars::{FieldSpec, IntPoly, Scalar};
pub use twists::{TwistFamily, TwistTable};

/// Errors surfaced by the library.
///
/// Configuration and parse problems are distinguished from mathematical
/// failures (a twist that does not descend to a requested quotient), since
/// the command-line front end maps them to different exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("twist not continuous at this ideal: {0}")]
    TwistNotContinuous(Box<axioms::Counterexample>),

    #[error("relation recursion depth exceeded: inconsistent generator relation")]
    RecursionDepth,
}

pub type Result<T> = std::result::Result<T, Error>;

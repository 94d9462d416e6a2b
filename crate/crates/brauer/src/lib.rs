//! Exact computational engine for Brauer diagram algebras of types A and C.
//!
//! The algebra of type A lives on diagrams: perfect matchings on two rows of
//! `N` dots, multiplied by concatenation with every closed loop replaced by a
//! factor of the invertible scalar `δ`. The type C algebra is presented by
//! generators `r_0..r_{n-1}`, `e_0..e_{n-1}` and is realized faithfully inside
//! the 2n-strand diagram algebra as the span of mirror-symmetric diagrams.
//!
//! Everything here is exact: coefficients are Laurent polynomials in `δ` over
//! arbitrary-precision integers, and all structural claims (relation suites,
//! normal forms, counting formulas, cellular filtration) are verified by
//! exhaustive enumeration at small rank.

pub mod diagram;
pub mod laurent;
pub mod roots;
pub mod structure;
pub mod typec;

pub use diagram::{AlgebraElement, Diagram, Monomial, TokenA, WordA};
pub use laurent::LaurentPoly;
pub use roots::{AdmissibleSetA, Norm, RootA, RootC};
pub use structure::{CellDatum, KGroup, UvwDecomposition};
pub use typec::{NormalForm, NormalFormBasis, TokenC, WeylElement, WeylGroup, WordC};

/// Errors produced by diagram and word-level operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generator index {index} out of range for {context}")]
    IndexOutOfRange { index: usize, context: String },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("enumeration bound exceeded: {requested} > {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("set is not sigma-invariant")]
    NotSigmaInvariant,
    #[error("roots are not mutually orthogonal")]
    NotOrthogonal,
    #[error("parity or range violation: {0}")]
    Parity(String),
    #[error("height is not zero")]
    NonzeroHeight,
    #[error("basis lookup failed for a product diagram")]
    BasisLookup,
}

pub type Result<T> = std::result::Result<T, Error>;

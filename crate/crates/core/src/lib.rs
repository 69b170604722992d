//! Exact computational toolkit for degree-inverting involutions.
//!
//! The crate constructs and classifies involutions `psi` with
//! `psi(A_g) <= A_{g^{-1}}` on three families of graded algebras:
//! twisted group algebras `F^sigma T`, matrix algebras `M_k(D)` over a
//! graded division algebra, and upper triangular matrices `UT_n` with an
//! elementary grading.  All scalar arithmetic is exact (rationals and
//! cyclotomic numbers), so every identity is checked with equality rather
//! than a tolerance.  Independent brute-force verifiers live in [`oracle`].

// Group-table and exponent-table manipulation is index arithmetic through
// and through; iterator rewrites of those loops read worse.
#![allow(clippy::needless_range_loop)]

pub mod cocycles;
pub mod cyclotomic;
pub mod degree;
pub mod groups;
pub mod linalg;
pub mod matinv;
pub mod oracle;
pub mod realization;
pub mod text;
pub mod twisted;
pub mod utn;
pub mod zn;

use thiserror::Error;

/// Crate-wide error type.
///
/// Mathematical negatives that a caller may want to branch on
/// (`NoInvolution`, `NotCentral`, ...) get their own variants; everything
/// else is a `Domain` or `Parse` error.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(
        "no degree-inverting involution: the cocycle class does not square to the trivial class"
    )]
    NoInvolution,
    #[error("the bicharacter is degenerate, so the algebra is not central")]
    NotCentral,
    #[error("division by zero in the scalar field")]
    DivisionByZero,
    #[error("the map is not induced by a sesquilinear form over the given data")]
    NotOfForm,
    #[error("neither symmetry sign fits the form, so the map is not involutive")]
    NotInvolutive,
    #[error(
        "resource guard exceeded: task needs {needed} candidate evaluations, guard is {guard}"
    )]
    Resource { needed: u128, guard: u64 },
    #[error("parse error at line {line}: expected {expected}")]
    Parse { line: usize, expected: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, expected: impl Into<String>) -> Self {
        Error::Parse {
            line,
            expected: expected.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

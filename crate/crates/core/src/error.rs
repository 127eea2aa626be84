//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("residue {residue} is not a unit modulo {modulus}")]
    NonUnitResidue { residue: u64, modulus: u64 },

    #[error("{what} cap exceeded: {got} > {cap}")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        got: u64,
    },

    #[error("enumeration budget exceeded: {candidates} candidate sequences > {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("too many Galois orbits for stable-subset enumeration: {orbits} > {cap}")]
    TooManyOrbits { orbits: usize, cap: usize },

    #[error("sequence is not product-one")]
    NotProductOne,

    #[error("point is not in the torus: coordinate of nontrivial character {index} is zero")]
    NotInTorus { index: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("value out of representable range: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::padic::PadicError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("bracket table is not antisymmetric at ({i}, {j})")]
    Antisymmetry { i: usize, j: usize },
    #[error("basis index {index} out of range for rank {rank}")]
    BasisIndex { index: usize, rank: usize },
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("subspace is not invariant under ad y: image of basis vector {0} leaves the span")]
    NotInvariant(usize),
    #[error("family parameter k = {0} must be at least 3")]
    FamilyRank(usize),
    #[error("family parameter d must be a p-adic unit (valuation {0})")]
    NotUnit(i32),
    #[error("algebra does not match the family L_{k}: {reason}")]
    FamilyMismatch { k: usize, reason: String },
    #[error("derived subalgebra has corank {0}, expected 1")]
    Corank(usize),
    #[error("derived subalgebra is not saturated (not a direct summand over Z_p)")]
    NotSaturated,
    #[error("complement vector does not span a complement of the derived subalgebra")]
    NotComplement,
    #[error("trace of A(y) is not a unit (valuation {0}); the normalised invariant is undefined")]
    NonUnitTrace(i32),
    #[error("algebra is not powerful")]
    NotPowerful,
    #[error("element valuation floor {v0} is too small for the Campbell-Hausdorff series to converge at p = {p}")]
    NoConvergence { p: u64, v0: u32 },
    #[error("Campbell-Hausdorff term of degree {degree} left Z_p (valuation {valuation})")]
    Certificate { degree: usize, valuation: i32 },
    #[error("group-law backends disagree: {0}")]
    BackendDisagreement(String),
    #[error("group has no split structure: {0}")]
    NoSplit(String),
    #[error("element is not a p^{0}-th power")]
    NotAPower(u32),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("iteration did not converge: {0}")]
    NoConvergenceIter(String),
    #[error("quotient of order {p}^{exponent} exceeds the enumeration budget {budget}")]
    Budget { p: u64, exponent: u32, budget: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

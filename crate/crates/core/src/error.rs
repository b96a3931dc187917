use thiserror::Error;

use crate::exactpoly::Var;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("variable `{0}` already occurs in an operand and would be captured")]
    VariableClash(Var),

    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiFails { i: usize, j: usize, k: usize },

    #[error("structure constant table is not {0}-dimensional in every index")]
    MalformedConstants(usize),

    #[error("invalid bracket table: {0}")]
    InvalidTable(String),

    #[error("algebra is not a current algebra")]
    NotCurrentAlgebra,

    #[error("generalized triple derivation check requires the related map tau")]
    MissingTau,

    #[error("center is nonzero (verified up to degree {bound}); the construction is not unique")]
    CenterNonzero { bound: usize },

    #[error("no solution within the degree bounds ({0})")]
    NoSolution(String),

    #[error("map is not a triple homomorphism")]
    NotTripleHom,

    #[error("split verification failed: {0}")]
    SplitVerificationFailed(String),
}

impl Error {
    /// Stable upper-case identifier used in machine-readable output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RankMismatch { .. } => "RANK_MISMATCH",
            Error::VariableClash(_) => "VARIABLE_CLASH",
            Error::NotAntisymmetric { .. } => "NOT_ANTISYMMETRIC",
            Error::JacobiFails { .. } => "JACOBI_FAILS",
            Error::MalformedConstants(_) => "MALFORMED_CONSTANTS",
            Error::InvalidTable(_) => "INVALID_TABLE",
            Error::NotCurrentAlgebra => "NOT_CURRENT_ALGEBRA",
            Error::MissingTau => "MISSING_TAU",
            Error::CenterNonzero { .. } => "CENTER_NONZERO",
            Error::NoSolution(_) => "NO_SOLUTION",
            Error::NotTripleHom => "NOT_TRIPLEHOM",
            Error::SplitVerificationFailed(_) => "SPLIT_VERIFICATION_FAILED",
        }
    }
}

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("grading mismatch")]
    GradingMismatch,
    #[error("row length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("sublattice is not contained in the lattice")]
    NotContained,
    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },
    #[error("signed permutation does not preserve the relation ideal")]
    InvalidAutomorphism,
    #[error("involution does not preserve the subring in codimension {codim}")]
    SubringNotStable { codim: usize },
    #[error("invalid flag type: {0}")]
    InvalidFlagType(String),
    #[error("correspondence is not a projector")]
    NotProjector,
    #[error("pairing is not unimodular: {0}")]
    NotCellular(String),
    #[error("no sample found after {0} attempts")]
    SamplingFailed(usize),
    #[error("class is not divisible by 2: {0}")]
    NotDivisible(String),
}

pub type Result<T> = core::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parts are not nonincreasing")]
    NotNonincreasing,
    #[error("negative part {0}")]
    NegativePart(i64),
    #[error("node ({0},{1}) is outside the diagram")]
    NodeOutsideDiagram(i64, i64),
    #[error("node ({0},{1}) is not removable")]
    NotRemovable(i64, i64),
    #[error("node ({0},{1}) is not addable")]
    NotAddable(i64, i64),
    #[error("position {0} is not an initial bead")]
    NotInitialBead(i64),
    #[error("position {0} is not an initial space")]
    NotInitialSpace(i64),
    #[error("abacus has fewer than {0} proper beads")]
    NotEnoughProperBeads(usize),
    #[error("window residue set is empty")]
    EmptyS,
    #[error("hook handle does not belong to this partition")]
    InvalidHandle,
    #[error("partition {0} is not {1}-regular")]
    NotPRegular(String, u32),
    #[error("symbol is not realizable: {0}")]
    UnrealizableSymbol(String),
    #[error("bead moves collide; H_eps is not applicable")]
    NotApplicable,
    #[error("partition {0} is not big")]
    NotBig(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("pi({0},{1},{2}) does not hold")]
    PiNotSatisfied(i64, i64, i64),
    #[error("pair is outside the recursion domain: {0}")]
    NotInX(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("H={0} outside [(p+3)/2, p)")]
    BadH(i64),
    #[error("term {0} is not p-regular")]
    TermNotPRegular(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: syntax error: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("line {line}: entry D({label}) does not dominate the row label")]
    UnitriangularityViolation { line: usize, label: String },
    #[error("line {line}: diagonal entry is not 1")]
    DiagonalNotOne { line: usize },
    #[error("matrix is missing rows: {0}")]
    IncompleteMatrix(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("matrix data inconsistent: {0}")]
    MatrixInconsistent(String),
    #[error("no decomposition matrix for n={0}")]
    MissingMatrix(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

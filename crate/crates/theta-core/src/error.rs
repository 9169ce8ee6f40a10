use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "sizes {wanted:?} too small for bipartition with row lengths ({lambda_len}, {mu_len})"
    )]
    SizesTooSmall {
        wanted: (usize, usize),
        lambda_len: usize,
        mu_len: usize,
    },

    #[error("symbol {0} is not special")]
    NotSpecial(String),

    #[error("symbol {0} is not reduced")]
    NotReduced(String),

    #[error("symbol {symbol} is not a member of the family of {special}")]
    NotInFamily { symbol: String, special: String },

    #[error("subset of odd size is not admissible in a defect-1 family")]
    OddSubset,

    #[error("defect {defect} of {symbol} is outside the class required here")]
    DefectClass { symbol: String, defect: i64 },

    #[error("basis mismatch: expected {expected:?}, got {got:?}")]
    BasisMismatch { expected: String, got: String },

    #[error("family mismatch: {left} vs {right}")]
    FamilyMismatch { left: String, right: String },

    #[error("matrix for degree-{0} family is too large to materialize; use entrywise application")]
    MatrixTooLarge(u32),

    #[error("occurrence scan exceeded the cap at companion rank {0}")]
    ScanCapExceeded(u32),

    #[error("reduction step did not shrink the symbol pair: {0}")]
    NonTermination(String),

    #[error("the relation for this family pair is empty")]
    EmptyRelation,

    #[error("{0}")]
    Internal(String),
}

use thiserror::Error;

/// Errors raised by the algebra, matrix and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field order {0}; expected 2, 3, 4 or 5")]
    UnsupportedField(u32),
    #[error("operands live in different fields (GF({left}) and GF({right}))")]
    FieldMismatch { left: u8, right: u8 },
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("coset {coset} is not closed under multiplication by q")]
    CosetNotClosed { coset: usize },
    #[error("polynomial does not divide x^{length} - 1")]
    NotADivisor { length: usize },
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rows: usize, rank: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("dimension {dim} exceeds the enumeration budget {budget} for GF({q})")]
    BudgetExceeded { q: u8, dim: usize, budget: usize },
    #[error("the smaller code is not contained in the larger one")]
    NotASubcode,
    #[error("QC generator tuple violates {0}")]
    InvalidSpec(&'static str),
    #[error("position {position} is out of range for length {length}")]
    PositionOutOfRange { position: usize, length: usize },
    #[error("code is already even-weight; expurgation leaves it unchanged")]
    AlreadyEven,
    #[error("invalid character {ch:?} at offset {offset} for GF({q})")]
    Parse { q: u8, offset: usize, ch: char },
    #[error("packed walk diverged from recomputation after {step} steps")]
    KernelMismatch { step: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;

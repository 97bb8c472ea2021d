use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension {0} is outside 1..=24")]
    DimensionOutOfRange(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("bit pattern {bits:#b} does not fit in dimension {dim}")]
    BitsOutOfRange { dim: usize, bits: u32 },

    #[error("basis index {index} is outside 1..={dim}")]
    BasisIndex { dim: usize, index: usize },

    #[error("a Pfister element needs at least one generator")]
    EmptyPfister,

    #[error("element is not in the fundamental ideal (support size is odd)")]
    NotInFundamentalIdeal,

    #[error("element is not in I^2: {0}")]
    NotInI2(&'static str),

    #[error("element is zero")]
    ZeroElement,

    #[error("parameter {name} = {value} is below the minimum {min}")]
    TooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },

    #[error("ambient dimension {0} is outside the supported range {1}")]
    UnsupportedRange(usize, &'static str),

    #[error("form is isotropic (repeated square class {0})")]
    Isotropic(String),

    #[error("expected a form of dimension {expected}, found {found}")]
    FormDimension { expected: usize, found: usize },

    #[error("node budget exhausted: {lower} <= Pf2 <= {upper}")]
    BudgetExhausted { lower: u32, upper: u32 },

    #[error("node budget must be positive")]
    ZeroBudget,

    #[error("parse error: {0}")]
    Parse(String),
}

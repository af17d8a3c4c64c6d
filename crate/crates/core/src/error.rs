use thiserror::Error;

use crate::algebra::{Algebra, Generator, ModuleTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator {generator} is not an element of the {algebra} algebra")]
    InvalidGenerator { algebra: Algebra, generator: Generator },

    #[error("module element does not belong to the {module} module")]
    ModuleMismatch { module: ModuleTag },

    #[error("module {module} is not defined over the {algebra} algebra")]
    UnsupportedModule { algebra: Algebra, module: ModuleTag },

    #[error("expected {expected} arguments, got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("cochains of arity {0} are not supported (maximum 4)")]
    ArityTooLarge(usize),

    #[error("cochain shapes differ: {0}")]
    ShapeMismatch(String),

    #[error("key {key} violates the degree-{degree} support law")]
    SupportViolation { key: String, degree: i64 },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coboundary generator {generator} fails condition row {row}: B is not contained in Z")]
    InclusionViolation { generator: usize, row: usize },

    #[error("input is not a cocycle: {0}")]
    NotACocycle(String),

    #[error("recursion needs a coefficient outside the window: {0}")]
    RecursionGap(String),

    #[error("central coefficients violate the cubic profile at k = {k}")]
    ProfileViolation { k: i64 },

    #[error("decomposition left a non-zero residual: {0}")]
    ResidualNonZero(String),

    #[error("recursions require window N >= {required}, got {got}")]
    WindowTooSmall { required: u32, got: u32 },

    #[error("numeric overflow: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

/// Errors produced by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KgoError {
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("M(a, c, y) has a pole at non-positive integer c = {c}")]
    PoleAtC { c: f64 },

    #[error("Kummer series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("floating-point overflow while computing {what}")]
    Overflow { what: &'static str },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("sampled wavefunctions live on different grids")]
    GridMismatch,

    #[error("grid extent {extent} does not reach beyond x* = {required}")]
    GridTooSmall { required: f64, extent: f64 },

    #[error("bisection for eigenvalue {index} exceeded {iterations} iterations")]
    BudgetExceeded { index: usize, iterations: usize },

    #[error("invalid eigenvalue count {count} for a matrix of dimension {dimension}")]
    InvalidCount { count: usize, dimension: usize },
}

pub type Result<T> = std::result::Result<T, KgoError>;

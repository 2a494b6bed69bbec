use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("q-Pochhammer requires |q| < 1, got |q| = {0}")]
    NotContracting(f64),

    #[error("infinite product did not reach tolerance {tol:e} within {max_terms} factors")]
    TruncationBudget { tol: f64, max_terms: usize },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("partitions must be weakly decreasing: {0:?}")]
    NotWeaklyDecreasing(Vec<i64>),

    #[error("dominance comparison needs equal sizes, got {left} and {right}")]
    SizeMismatch { left: u32, right: u32 },

    #[error("expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("{what} exceeds the cap of {cap} (got {got})")]
    CapExceeded { what: &'static str, cap: usize, got: usize },

    #[error("singular Gram matrix while orthogonalizing below {0}")]
    SingularGram(String),

    #[error("eigenvalue collision between {lam} and {mu}")]
    Degenerate { lam: String, mu: String },

    #[error("polynomial not divisible by (z{0} - z{1})")]
    NotDivisible(usize, usize),

    #[error("coincident points at indices {0} and {1}")]
    Coincident(usize, usize),

    #[error("zero coordinate at index {0}")]
    ZeroCoordinate(usize),

    #[error("pole of a q-Pochhammer denominator at indices ({0}, {1})")]
    PochhammerPole(usize, usize),

    #[error("Gamma pole at {0}")]
    GammaPole(String),

    #[error("quadrature did not converge: value {value}, error estimate {error:e} after {evals} evaluations")]
    Quadrature { value: String, error: f64, evals: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("precision escalation failed at {0} bits")]
    Precision(u32),
}

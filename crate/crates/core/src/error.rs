use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in the motivic ring")]
    DivisionByZero,

    #[error("denominator vanishes at L = {root}")]
    VanishingDenominator { root: i64 },

    #[error("series shape mismatch: ({lhs_vars} vars, degree {lhs_bound}) vs ({rhs_vars} vars, degree {rhs_bound})")]
    SeriesMismatch {
        lhs_vars: usize,
        lhs_bound: u32,
        rhs_vars: usize,
        rhs_bound: u32,
    },

    #[error("series not invertible: constant term is not a unit")]
    SeriesNotInvertible,

    #[error("exponent {exponent:?} is outside the truncation bound {bound}")]
    ExponentOutOfBound { exponent: Vec<u32>, bound: u32 },

    #[error("dimension vector has length {got}, quiver has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("matrix shape mismatch in {context}")]
    ShapeMismatch { context: String },

    #[error("quiver spec: {0}")]
    Spec(String),

    #[error("enumeration needs {required} points, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("free-action divisibility violated: {count} points not divisible by |G_v| = {group_order}")]
    NotDivisible { count: u128, group_order: u128 },

    #[error("fiber quotient requires a nonzero moment level")]
    ZeroMomentLevel,

    #[error("outside oracle range: {0}")]
    OracleRange(String),

    #[error("polynomiality violated for v = {v:?}: {value}")]
    PolynomialityViolated { v: Vec<u32>, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or configuration constraint does not hold.
    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("i = 0 has no construction constants; use the rational-case builder")]
    RationalCase,

    #[error("Diophantine condition suspect: tau estimate {tau:e} at q = {q} is below the floor {floor:e}")]
    DiophantineConditionSuspect { tau: f64, q: u64, floor: f64 },

    #[error("x = {0} lies outside the curve domain")]
    Domain(String),

    #[error("degenerate star for line {0}: Type 2 selected with B = 0")]
    Degenerate(String),

    #[error("classification failure for line {line}: {reason}")]
    Classification { line: String, reason: String },

    #[error("enumeration box too large: {what} bound {bound:e} exceeds cap {cap:e}")]
    BudgetExceeded { what: String, bound: f64, cap: f64 },

    #[error("construction died: level {level} is empty{detail}")]
    EmptyLevel { level: usize, detail: String },

    #[error("dimension bound requested but the removal condition fails at n = {0}")]
    ConditionViolated(usize),

    /// An internal invariant failed; always a bug or a precision fault.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

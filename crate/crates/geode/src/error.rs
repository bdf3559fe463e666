//! Error types shared across the crate.

use thiserror::Error;

/// Errors from definitional computation (polynomials, oracle, tables).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GeodeError {
    /// An operation would materialize more terms than the configured budget.
    #[error("term budget exceeded: operation needs {needed} terms, cap is {cap}")]
    TermBudget { needed: usize, cap: usize },

    /// Exact division by the simplex left a nonzero remainder where theory
    /// guarantees divisibility. Indicates an arithmetic bug, never expected.
    #[error("internal inconsistency: simplex division left {remainder_terms} remainder terms for degree {degree}, k={num_vars}")]
    NotDivisible {
        degree: u32,
        num_vars: usize,
        remainder_terms: usize,
    },

    /// Argument outside an operation's domain (e.g. a step ratio at index 0,
    /// or the digit count of zero).
    #[error("domain error: {0}")]
    Domain(String),
}

/// Errors from recurrence evaluation.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    /// The system has not passed window verification; refuse to evaluate.
    #[error("recurrence system is unverified; run window verification first")]
    Unverified,

    /// A forward step produced a non-integral value. The recurrence is wrong.
    #[error("non-integral recurrence step at {point}")]
    NonIntegralStep { point: String },

    /// Every direction's denominator vanished and the definitional fallback
    /// is infeasible at this size.
    #[error("all denominators vanish at {point} and the oracle fallback needs {needed} terms (cap {cap})")]
    FallbackInfeasible {
        point: String,
        needed: usize,
        cap: usize,
    },

    /// A diagonal step hit a vanishing denominator and no full system was
    /// supplied to evaluate that step another way.
    #[error("denominator vanishes at diagonal index {index} and no fallback system was provided")]
    NoFallback { index: u32 },

    /// Budget error propagated from the oracle fallback.
    #[error(transparent)]
    Oracle(#[from] GeodeError),
}

//! Error type shared across the engine.
//!
//! Every fallible operation reports either a structural problem (malformed
//! input, incompatible objects), an arithmetic obstruction (pole at the
//! evaluation point, non-integral count where an integer is forced), or a
//! resource refusal: enumeration spaces are sized up front and an explicit
//! [`Error::Budget`] is returned instead of silently grinding through an
//! infeasible scan.

use thiserror::Error;

/// Engine-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration was refused because its size exceeds the configured budget.
    #[error("budget exceeded in {what}: would enumerate {needed} items, budget is {budget}")]
    Budget {
        /// Which enumeration was refused.
        what: &'static str,
        /// Number of items the enumeration would visit.
        needed: u128,
        /// Configured ceiling.
        budget: u128,
    },

    /// A text input (quiver file, scalar table, charge list) failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse {
        /// 1-based line number of the offending input line.
        line: usize,
        /// Description of the problem.
        msg: String,
    },

    /// A run configuration is inconsistent (bad prime, charge out of range, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Exact arithmetic could not proceed (pole at the evaluation point,
    /// division that was expected to be exact, logarithm of a non-power).
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// Two objects from incompatible contexts (different quiver, field size
    /// or grading shape) were combined.
    #[error("incompatible objects: {0}")]
    Incompatible(String),

    /// Underlying I/O failure (report output, input files).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

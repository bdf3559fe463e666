//! Exact arithmetic for hyper-Catalan and Geode numbers.
//!
//! Three independent routes to the same integers:
//!
//! - **Definition** ([`oracle`]): expand the hyper-Catalan generating
//!   polynomial, divide by `t1 + ... + tk`, read off coefficients. Exact and
//!   slow; the ground truth everything else is checked against.
//! - **Closed form** ([`closed2`]): the two-dimensional case has an explicit
//!   factorial formula and a pair of first-order step ratios.
//! - **Recurrences** ([`recurrence`]): pure second-order recurrences with
//!   polynomial coefficients in three dimensions, plus a second-order
//!   recurrence for the diagonal sequence. Evaluation is exact integer
//!   arithmetic throughout.
//!
//! The [`guesser`] module rediscovers such recurrences from tabulated data by
//! undetermined coefficients: a modular nullspace computation followed by
//! Chinese remaindering and rational reconstruction. The [`verifier`] module
//! checks guessed recurrences against the definitional oracle on finite
//! windows and validates the structural identities the table must satisfy.
//!
//! All values are arbitrary-precision integers or rationals; no floating
//! point is used anywhere.

pub mod closed2;
pub mod error;
pub mod guesser;
pub mod hyper;
pub mod index;
pub mod indexpoly;
pub mod modular;
pub mod oracle;
mod par;
pub mod poly;
pub mod recurrence;
pub mod verifier;

pub use error::{EvalError, GeodeError};
pub use index::MultiIndex;
pub use oracle::{geode_number_oracle, geode_table, GeodeTable};
pub use poly::HomogeneousPoly;
pub use recurrence::{digit_count, Direction, PureRecurrence, RecurrenceSystem};

/// Default budget on the number of polynomial/table terms an operation may
/// materialize before it refuses with [`GeodeError::TermBudget`].
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

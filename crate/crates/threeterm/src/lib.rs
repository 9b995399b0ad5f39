//! Reality of zeros for polynomial sequences satisfying a three-term
//! recurrence `P_i + Q1*P_{i-1} + Q2*P_{i-2} = 0` with `P_0 = 1`, `P_{-1} = 0`.
//!
//! The crate decides, with exact rational arithmetic, whether every `P_i` in
//! the sequence has only real zeros; computes the zeros themselves (either by
//! expanding the recurrence or through the level decomposition of `P_n`); and
//! traces the plane curves `Im(Q1^2/Q2) = 0` that organise where the zeros
//! live.
//!
//! Entry points:
//! - [`RecurrencePair::new`] validates a pair `(Q1, Q2)`.
//! - [`criterion::full_verdict`] runs the five reality conditions.
//! - [`levels::zeros_via_levels`] computes the zeros of `P_n` level by level.
//! - [`curve::trace_gamma_tilde`] extracts the real-preimage curve.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod algebraic;
pub mod criterion;
pub mod curve;
pub mod error;
pub mod levels;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod rat;
pub mod recurrence;
pub mod report;

pub use algebraic::{isolate_real_roots, sign_at, AlgebraicNumber};
pub use error::{Error, Result};
pub use poly::RatPoly;
pub use recurrence::{RecurrencePair, RecurrenceSpec};

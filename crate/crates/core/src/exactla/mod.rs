//! Exact linear algebra over ℚ and prime fields.

mod elim;
mod field;
mod matrix;

pub use field::{FieldSpec, Scalar, MAX_PRIME};
pub use matrix::{ExactMatrix, SpanBuilder};

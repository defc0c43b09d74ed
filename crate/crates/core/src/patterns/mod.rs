//! Signatures, truncated C-patterns and the enumerated basis.

mod basis;
mod pattern;
mod signature;

pub use basis::{Basis, BasisConfig, DEFAULT_CAP};
pub use pattern::{in_window, row_start, weight_row, CPattern, PatternViolation, Validity, WeightValue};
pub use signature::{Signature, SignatureViolation};

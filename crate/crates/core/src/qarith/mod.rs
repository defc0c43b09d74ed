//! Exact arithmetic for Laurent polynomials in `q`, q-brackets, and
//! canonical signed radicals built from them.

pub mod bracket;
pub mod coeff;
pub mod fraction;
pub mod laurent;
pub mod poly;
pub mod radical;

pub use bracket::{bracket_product, q_bracket, sqrt_bracket_ratio, CyclotomicMonomial};
pub use coeff::Coeff;
pub use fraction::Fraction;
pub use laurent::Laurent;
pub use radical::{RadSum, RadicalScalar};

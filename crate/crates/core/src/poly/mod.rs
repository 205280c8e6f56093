//! Exact sparse polynomials and truncated power series over `Q` and `F_p`.

mod field;
mod matrix;
mod monomial;
mod polynomial;
mod series;
mod text;

pub use field::{is_prime, CoefficientField, FieldElement};
pub use matrix::{determinant, minors, subsets, Minor, SeriesMatrix};
pub use monomial::{JetVariable, Monomial};
pub use polynomial::Polynomial;
pub use series::{series_mul, TruncatedSeries};

pub(crate) use field::mod_inverse;

//! Jet schemes of loci of matrices with bounded rank: generator construction, closed-form
//! dimension predictions, contact-locus codimensions, point counts over finite
//! fields, and a Groebner engine for small symbolic checks.

pub mod cli;
pub mod contact;
pub mod count;
pub mod error;
pub mod formulas;
pub mod groebner;
pub mod jetideal;
pub mod poly;

pub use error::{Error, Result};

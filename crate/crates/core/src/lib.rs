pub mod cone;
pub mod delta;
pub mod element;
pub mod error;
pub mod field;
pub mod format;
pub mod module;
pub mod mpoly;
pub mod pairing;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod ratfunc;
pub mod skew;

pub use error::{Error, Result};
pub use field::{Field, Rational};

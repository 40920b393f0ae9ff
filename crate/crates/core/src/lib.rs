pub mod arith;
pub mod characters;
pub mod cyclo;
pub mod error;
pub mod explicit;
pub mod field;
pub mod gl2;
pub mod lfunc;
pub mod poly;
pub mod report;
pub mod sieve;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use poly::Poly;

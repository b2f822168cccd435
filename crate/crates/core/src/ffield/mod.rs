//! Finite fields, polynomials over them and point enumeration.

mod fq;
mod mpoly;
mod variety;

pub use fq::{Fq, FqElem, MAX_FIELD};
pub use mpoly::MPoly;
pub use variety::{AffineVariety, ClosedPoint, DEFAULT_BUDGET};

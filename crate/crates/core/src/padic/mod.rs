//! Exact arithmetic in `Z/p^N`, its unramified extensions and `Z_p[π*]`.

pub mod arith;
pub mod series;
mod subring;
mod zq;

pub use subring::Subring;
pub use zq::{Zq, ZqElement};

pub mod dwork;
pub mod error;
pub mod ffield;
pub mod fmodule;
pub mod job;
pub mod linalg;
pub mod legendre;
pub mod lseries;
pub mod monsky;
pub mod newton;
pub mod padic;
pub mod teichmuller;

pub use error::{Error, Result};

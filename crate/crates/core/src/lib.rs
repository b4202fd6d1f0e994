//! Exact equivariant Stickelberger elements over finite group rings.

pub mod arith;
pub mod arithdata;
pub mod center;
pub mod engine;
pub mod error;
pub mod groups;
pub mod lvalues;
pub mod rednorm;
pub mod verify;

pub use error::{Error, Result};

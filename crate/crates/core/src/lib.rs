//! Exact computations in the Grassmann-algebra model of free commutative
//! Moufang loops of exponent 3.

pub mod cli;
pub mod error;
pub mod gf3;
pub mod grassmann;
pub mod identities;
pub mod linalg;
pub mod loops;
mod packed;
pub mod report;
pub mod rewrite;
pub mod twisted;
pub mod words;

pub use error::{Error, Result};
pub use gf3::Gf3;
pub use grassmann::{GElement, GenSym, Monomial};

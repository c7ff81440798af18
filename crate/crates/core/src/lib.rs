//! Invariants, L-functions and twist-family checks for elliptic curves over F_p(t).

pub mod algebra;
pub mod curves;
pub mod error;
pub mod families;
pub mod fibers;
pub mod lfunction;
pub mod orthogonal;
pub mod places;
pub mod reduction;

pub use error::{Error, Result};

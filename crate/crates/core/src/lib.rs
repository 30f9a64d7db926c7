//! Trigonometric and quantum braided r-matrices of four models, with
//! numerical verification of their algebraic identities.

pub mod classical;
pub mod cli;
pub mod error;
pub mod exchange;
pub mod models;
pub mod param;
pub mod quantum;
pub mod report;
pub mod sampling;
pub mod tensor;
pub mod triple;
pub mod verifier;

pub use error::{Error, Result};

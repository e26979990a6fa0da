//! Hypergeometric functions of Gauss, Appell and Lauricella type, together
//! with the machinery to check transformation formulas between them
//! numerically.

pub mod cli;
pub mod engine;
pub mod error;
pub mod formulas;
pub mod gamma;
pub mod period;
pub mod polyroots;
pub mod reduction;
pub mod report;
pub mod scalar;
pub mod series;
pub mod singular;

pub use error::{Error, Result};
pub use scalar::Scalar;

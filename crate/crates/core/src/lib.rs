//! Polynomials over prime fields and the statistics of their factorization
//! types along short intervals of one-parameter families.

pub mod chebotarev;
pub mod error;
pub mod factor;
pub mod ffpoly;
pub mod forge;
pub mod morse;
mod parallel;

pub use error::{Error, Result};
pub use ffpoly::{MulCounter, Poly, PrimeModulus};

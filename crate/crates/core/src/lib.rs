pub mod bounds;
pub mod cli;
pub mod corpus;
pub mod cycles;
pub mod error;
pub mod heights;
pub mod json;
pub mod modp;
pub mod poly;
pub mod primes;
pub mod resultant;

pub use error::{Error, Result};

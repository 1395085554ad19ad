pub mod arith;
pub mod cli;
pub mod error;
pub mod homeo;
pub mod maps;
pub mod progression;
pub mod special_sets;
pub mod topology;

pub use error::{Error, Result};

pub mod arith;
pub mod cli;
pub mod cubic;
pub mod dp4;
pub mod error;
pub mod exec;
pub mod obstructions;
pub mod ff;
pub mod quadform;
pub mod search;

pub use error::{Error, Result};

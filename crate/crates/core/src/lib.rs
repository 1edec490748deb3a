pub mod ant;
pub mod emergence;
pub mod engine;
pub mod error;
pub mod impact;
pub mod runner;
pub mod schelling;

pub use error::{Error, Result};

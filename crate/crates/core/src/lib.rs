pub mod chartable;
pub mod cli;
pub mod coinvariant;
pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod foulkes;
pub mod tensor;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};

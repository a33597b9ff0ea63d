pub mod actions;
pub mod classify;
pub mod error;
pub mod flag;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};

pub mod acceptance;
pub mod eliminant;
pub mod error;
pub mod fibercount;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod puiseux;

pub use error::{Error, Result};

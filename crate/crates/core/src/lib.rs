pub mod elements;
pub mod error;
pub mod linalg;
pub mod rec;
pub mod selftest;
pub mod special;
pub mod sweep;
pub mod three_detector;
pub mod two_detector;

pub use error::{Error, Result};

pub mod classify;
pub mod cosetenum;
pub mod error;
pub mod harness;
pub mod params;
pub mod spectral;
pub mod zpoly;

pub use error::{Error, Result};

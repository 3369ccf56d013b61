//! Turning k-plane topological drawings into simple ones by eliminating
//! lenses.

pub mod algo;
pub mod error;
pub mod gen;
pub mod io;
pub mod lens;
pub mod model;
pub mod ops;
pub mod report;

pub use error::{Error, Result};

//! Disjoint difference families, frequency hopping sequences and their
//! construction from linear recurrences and projective geometry.

pub mod algebra;
pub mod ddf;
pub mod fhs;
pub mod geometry;
pub mod golden;
pub mod lfsr;
pub mod error;

pub use error::{Error, Result};

//! Enumeration of labelled planar rooted trees avoiding excluded local
//! patterns, exact inversion of their alternating generating series, and the
//! chain-complex verification of the inversion theorem.

pub mod config;
pub mod error;
pub mod interpret;
pub mod koszul;
pub mod oeis;
pub mod patterns;
pub mod registry;
pub mod report;
pub mod series;
pub mod trees;

pub use error::{Error, Result};

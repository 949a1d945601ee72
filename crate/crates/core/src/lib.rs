//! Exact verification of contact pairs, contact pair structures and their
//! compatible and associated metrics on polynomial charts and Lie frames.

pub mod algebra;
pub mod error;
pub mod exterior;
pub mod pair;
pub mod structure;
pub mod metric;
pub mod connection;
pub mod fixture;
pub mod report;
pub mod verdict;

pub use error::{Error, Result};

//! Degree-based graph profiles, the realization gadgets that encode
//! 3-Partition and Basket Filling into them, and exact desk-scale solvers.

pub mod bench;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod graphicality;
pub mod reductions;
pub mod solvers;

pub use error::{Error, Result};

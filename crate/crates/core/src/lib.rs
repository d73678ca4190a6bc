//! Decentralized rank aggregation by randomized pairwise gossip.
//!
//! Items and ranks are one-based values; slices are indexed by `item - 1`.

pub mod consensus;
pub mod data;
pub mod error;
pub mod experiment;
pub mod gossip;
pub mod graph;
pub mod ranking;

pub use error::{Error, Result};

//! Dynamical Yang-Baxter maps on finite carriers.
//!
//! The crate models the categories of dynamical sets and quivers over a
//! finite vertex set, verifies candidate solutions exhaustively, builds
//! solutions from ternary operations, quasigroups, bands and composite
//! data, enumerates small solutions, and emits the two weak-bialgebra
//! presentations attached to a solution.

pub mod bialgebra;
pub mod composite;
pub mod dyb;
pub mod dynset;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod ph;
pub mod quiver;
pub mod report;
pub mod search;

pub use error::{Error, Result};

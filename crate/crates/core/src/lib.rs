//! Invariants and certificate checking for finite digital images.
//!
//! The crate is organised bottom-up: [`grid`] holds images, adjacency and
//! maps; [`homology`] builds clique complexes and computes (co)homology
//! with exact integer arithmetic; [`surface`] counts neighbours and
//! evaluates the genus of closed 6-surfaces; [`homotopy`] checks and
//! searches digital homotopies; [`motion`] checks and searches
//! motion-planning covers and sections. [`io`] reads and writes the text
//! formats and [`fixtures`] provides the named example images.

pub mod certificates;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod grid;
pub mod homology;
pub mod homotopy;
pub mod io;
pub mod motion;
pub mod reproduce;
pub mod surface;

pub use error::{Error, Result};
pub use exec::Exec;
pub use grid::{AdjacencyKind, DigitalImage, DigitalMap, Point};

//! Digital images on the integer lattice: points, `c_k` adjacency,
//! connectivity, continuity, products and wedges.

mod construct;
mod image;
mod map;
mod point;

pub use construct::{is_simple_closed_curve, power, product, wedge};
pub use image::{Adjacency, DigitalImage};
pub use map::DigitalMap;
pub use point::{adjacent, AdjacencyKind, Point};

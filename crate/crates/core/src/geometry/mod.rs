//! Nearest neighbour graphs, planar Delaunay triangulation and small greedy
//! routing sets built from the geometry around one point.

mod cover;
mod delaunay;
mod nng;
pub mod predicates;

pub use cover::{cone_cover_2d, peeling_cover};
pub use delaunay::{delaunay_2d, Triangulation2D};
pub use nng::{build_nng, nearest_neighbor_sets, NngGraph};

/// Kissing number `K(D)` for the dimensions where it is known exactly and
/// small enough to matter here. `K(4) = 24` is a literature value.
pub fn kissing_number(dimension: usize) -> Option<usize> {
    match dimension {
        1 => Some(2),
        2 => Some(6),
        3 => Some(12),
        4 => Some(24),
        _ => None,
    }
}

//! Homotopy moves, surgeries, bridges, shifts and bounded search.

pub mod bridge;
pub mod factor;
pub mod homotopy;
pub mod metamorphosis;
pub mod search;

pub use bridge::{apply_bridge, arches_of, enumerate_bridges, involutions, validate_bridge, Bridge};
pub use factor::{apply_surgery, delete_factor, enumerate_even_symmetric_factors, Factor};
pub use homotopy::{
    apply_h1, apply_h2, apply_h3, apply_inverse_h3, find_h1_sites, find_h2_sites, find_h3_sites,
    find_inverse_h3_sites,
};
pub use metamorphosis::{InsertKind, Metamorphosis, Move};
pub use search::{bounded_bfs, shortest_reached, BfsOutcome, Caps, Repertoire, Template};

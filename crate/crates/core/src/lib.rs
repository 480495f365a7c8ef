//! Nanowords over an alphabet with involution and their cobordism invariants.

pub mod algebra;
pub mod explorer;
pub mod error;
pub mod linalg;
pub mod moves;
pub mod pairings;
pub mod random;
pub mod surfaces;
pub mod words;

pub use error::{Error, Result};

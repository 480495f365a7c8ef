//! Nanowords and nanophrases.

mod nanoword;
mod phrase;

pub use nanoword::{
    canonical_form, circular_shift, concatenate, gamma, opposite, pull_back, push_forward, Nanoword,
};
pub use phrase::{epsilon, is_even, symmetry_witness, Nanophrase, SymmetryWitness};

#[cfg(test)]
mod tests;

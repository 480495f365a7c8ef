//! The groups π(α, τ) and Π attached to an involutive alphabet.

pub mod alphabet;
pub mod free_product;
pub mod phi;
pub mod pi;

pub use alphabet::{orbit_decomposition, Alphabet, Orbit, OrbitKind, Sym};
pub use free_product::{abelianize, pi_word_is_conjugate, pi_word_multiply, PiWord, Syllable};
pub use phi::{default_battery, phi_apply, FieldValue, PhiSpec, Target};
pub use pi::{pi_add, pi_negate, pi_of_letter, PiElement};

//! α-pairings, fillings and the invariants built from them.

pub mod filling;
pub mod pairing;
pub mod surgery;
pub mod upoly;
pub mod weak;

pub use filling::{
    are_cobordant, enumerate_fillings, genus, genus_of_filling, is_annihilating, is_hyperbolic, pair, Filling,
    Genus, SVector,
};
pub use pairing::{
    m_shift, opposite_pairing, pairing_of_nanoword, pairing_of_nanoword_alt, r_of, sum_pairings, AlphaPairing,
};
pub use surgery::{covering, verify_surgery_filling, Subgroup};
pub use upoly::{u_degree, u_polynomial, u_polynomial_of_nanoword, UPoly, UValue};
pub use weak::{
    enumerate_weak_fillings, is_hyperbolic_tuple, tuple_genus, weakly_cobordant, PairingTuple, WeakFilling,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::pairing::{pairing_of_nanoword, AlphaPairing};
use crate::algebra::{Alphabet, OrbitKind, PiElement, Sym};
use crate::error::{Error, Result};
use crate::words::Nanoword;

/// The value of `u` at an orbit representative.
///
/// `Free` lives in `I/J`: keys are sign-normalized monomials, and monomials with
/// `g = −g` carry coefficients mod 2. `Fixed` lives in `I/(J+2I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum UValue {
    Free(BTreeMap<PiElement, i64>),
    Fixed(BTreeSet<PiElement>),
}

impl UValue {
    fn zero(kind: OrbitKind) -> Self {
        match kind {
            OrbitKind::Free => UValue::Free(BTreeMap::new()),
            OrbitKind::Fixed => UValue::Fixed(BTreeSet::new()),
        }
    }

    /// Adds `c·δ_g`.
    fn add_delta(&mut self, g: &PiElement, c: i64) {
        if g.is_zero() || c == 0 {
            return;
        }
        let (rep, negated) = g.sign_normalized();
        match self {
            UValue::Free(m) => {
                let e = m.entry(rep.clone()).or_insert(0);
                if rep.is_self_negative() {
                    *e = (*e + c).rem_euclid(2);
                } else {
                    *e += if negated { -c } else { c };
                }
                if *e == 0 {
                    m.remove(&rep);
                }
            }
            UValue::Fixed(s) => {
                if c % 2 != 0 && !s.remove(&rep) {
                    s.insert(rep);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            UValue::Free(m) => m.is_empty(),
            UValue::Fixed(s) => s.is_empty(),
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            UValue::Free(m) => UValue::Free(
                m.iter().map(|(g, &c)| (g.clone(), if g.is_self_negative() { c } else { -c })).collect(),
            ),
            UValue::Fixed(s) => UValue::Fixed(s.clone()),
        }
    }

    fn terms(&self) -> Vec<(&PiElement, i64)> {
        match self {
            UValue::Free(m) => m.iter().map(|(g, &c)| (g, c)).collect(),
            UValue::Fixed(s) => s.iter().map(|g| (g, 1)).collect(),
        }
    }

    /// Maximal `Σ|m_i|` over monomials present; 0 for the zero element.
    pub fn degree(&self) -> u64 {
        self.terms().iter().map(|(g, _)| g.degree()).max().unwrap_or(0)
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (g, c)) in terms.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            let _ = write!(out, "{sign}{mag}δ[{}]", g.display(alphabet));
        }
        out
    }
}

/// `u^p`, stored once per orbit at the representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly {
    values: Vec<UValue>,
}

impl UPoly {
    pub fn zero(alphabet: &Alphabet) -> Self {
        Self { values: alphabet.orbits().iter().map(|o| UValue::zero(o.kind)).collect() }
    }

    pub fn values(&self) -> &[UValue] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(UValue::is_zero)
    }

    /// `u(a)`; for the non-representative of a free orbit this is `−u(τ(a))`.
    pub fn at(&self, alphabet: &Alphabet, a: Sym) -> UValue {
        let v = &self.values[alphabet.orbit_index(a)];
        if alphabet.sign(a) < 0 {
            v.negate()
        } else {
            v.clone()
        }
    }

    pub fn negate(&self) -> Self {
        Self { values: self.values.iter().map(UValue::negate).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, w) in out.values.iter_mut().zip(&other.values) {
            for (g, c) in w.terms() {
                v.add_delta(g, c);
            }
        }
        out
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        alphabet
            .orbits()
            .iter()
            .zip(&self.values)
            .map(|(o, v)| format!("u({})={}", alphabet.name(o.representative), v.display(alphabet)))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// First 16 hex digits of the SHA-256 of the pretty form.
    pub fn fingerprint(&self, alphabet: &Alphabet) -> String {
        let digest = Sha256::digest(self.display(alphabet).as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

pub fn u_polynomial(p: &AlphaPairing) -> UPoly {
    let al = p.alphabet();
    let mut u = UPoly::zero(al);
    for i in 1..=p.size() {
        let a = p.proj(i);
        u.values[al.orbit_index(a)].add_delta(p.e(i, 0), al.sign(a));
    }
    u
}

pub fn u_polynomial_of_nanoword(w: &Nanoword) -> UPoly {
    u_polynomial(&pairing_of_nanoword(w))
}

pub fn u_degree(u: &UPoly, alphabet: &Alphabet, a: Sym) -> Result<u64> {
    if !alphabet.is_fixed_point_free() {
        return Err(Error::FixedPoints("u_degree"));
    }
    Ok(u.values[alphabet.orbit_index(a)].degree())
}

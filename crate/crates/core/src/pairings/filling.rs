use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_integer::Integer;
use rayon::prelude::*;

use super::pairing::AlphaPairing;
use crate::algebra::{Alphabet, FieldValue, PhiSpec, PiElement, Target};
use crate::error::{Error, Result};
use crate::linalg;

/// An integer combination of the basis `S` (index 0 is `s`), sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SVector {
    pub terms: Vec<(usize, i64)>,
}

impl SVector {
    pub fn basis(i: usize) -> Self {
        Self { terms: vec![(i, 1)] }
    }

    pub fn s() -> Self {
        Self::basis(0)
    }

    pub fn from_terms(mut terms: Vec<(usize, i64)>) -> Self {
        terms.sort();
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (i, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self { terms: out }
    }

    pub fn plus(a: usize, b: usize) -> Self {
        Self::from_terms(vec![(a, 1), (b, 1)])
    }

    pub fn minus(a: usize, b: usize) -> Self {
        Self::from_terms(vec![(a, 1), (b, -1)])
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.terms.iter().find(|t| t.0 == i).map_or(0, |t| t.1)
    }

    /// Short: `A`, `A + B` with `|A| = |B|`, or `A − B` with `|A| = τ(|B|)`.
    pub fn is_short(&self, p: &AlphaPairing) -> bool {
        let al = p.alphabet();
        match self.terms.as_slice() {
            [(i, c)] => *i > 0 && c.abs() == 1,
            [(i, c), (j, d)] if *i > 0 && c.abs() == 1 && d.abs() == 1 => {
                if c == d {
                    p.proj(*i) == p.proj(*j)
                } else {
                    p.proj(*i) == al.tau(p.proj(*j))
                }
            }
            _ => false,
        }
    }

    pub fn display(&self, p: &AlphaPairing) -> String {
        let mut out = String::new();
        for (k, &(i, c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            out.push_str(&format!("{sign}{mag}{}", p.label(i)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// A filling: `s` together with short vectors using every element of `S°` once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filling {
    pub vectors: Vec<SVector>,
}

impl Filling {
    pub fn is_valid(&self, p: &AlphaPairing) -> bool {
        let mut seen = vec![0usize; p.size() + 1];
        let mut s_count = 0;
        for v in &self.vectors {
            if *v == SVector::s() {
                s_count += 1;
                continue;
            }
            if !v.is_short(p) {
                return false;
            }
            for &(i, _) in &v.terms {
                seen[i] += 1;
            }
        }
        s_count == 1 && seen[1..].iter().all(|&c| c == 1)
    }

    pub fn display(&self, p: &AlphaPairing) -> String {
        format!("{{{}}}", self.vectors.iter().map(|v| v.display(p)).collect::<Vec<_>>().join(", "))
    }
}

impl fmt::Display for SVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

/// The bilinear extension `ẽ(λ, μ)`.
pub fn pair(p: &AlphaPairing, x: &SVector, y: &SVector) -> PiElement {
    let mut acc = PiElement::zero();
    for &(i, c) in &x.terms {
        for &(j, d) in &y.terms {
            acc += &p.e(i, j).scale(c * d);
        }
    }
    acc
}

pub fn is_annihilating(p: &AlphaPairing, vectors: &[SVector]) -> bool {
    vectors.iter().all(|x| vectors.iter().all(|y| pair(p, x, y).is_zero()))
}

/// Short vectors that may join `lowest` in a filling, given the unassigned letters.
fn options(p: &AlphaPairing, lowest: usize, free: &[bool]) -> Vec<SVector> {
    let al = p.alphabet();
    let mut out = vec![SVector::basis(lowest)];
    for m in lowest + 1..=p.size() {
        if !free[m] {
            continue;
        }
        if p.proj(lowest) == p.proj(m) {
            out.push(SVector::plus(lowest, m));
        }
        if p.proj(lowest) == al.tau(p.proj(m)) {
            out.push(SVector::minus(lowest, m));
        }
    }
    out
}

/// Every filling, in deterministic order: letters by index, singleton first, then
/// pairs with later letters.
pub fn enumerate_fillings(p: &AlphaPairing) -> Vec<Filling> {
    fn rec(p: &AlphaPairing, free: &mut Vec<bool>, cur: &mut Vec<SVector>, out: &mut Vec<Filling>) {
        let Some(lowest) = (1..=p.size()).find(|&i| free[i]) else {
            out.push(Filling { vectors: cur.clone() });
            return;
        };
        for v in options(p, lowest, free) {
            for &(i, _) in &v.terms {
                free[i] = false;
            }
            cur.push(v.clone());
            rec(p, free, cur, out);
            cur.pop();
            for &(i, _) in &v.terms {
                free[i] = true;
            }
        }
    }
    let mut out = Vec::new();
    let mut free = vec![true; p.size() + 1];
    free[0] = false;
    rec(p, &mut free, &mut vec![SVector::s()], &mut out);
    out
}

/// The first annihilating filling in enumeration order, if any.
pub fn is_hyperbolic(p: &AlphaPairing) -> Option<Filling> {
    fn rec(p: &AlphaPairing, free: &mut Vec<bool>, cur: &mut Vec<SVector>) -> bool {
        let Some(lowest) = (1..=p.size()).find(|&i| free[i]) else {
            return true;
        };
        for v in options(p, lowest, free) {
            let ok = pair(p, &v, &v).is_zero()
                && cur.iter().all(|u| pair(p, &v, u).is_zero() && pair(p, u, &v).is_zero());
            if !ok {
                continue;
            }
            for &(i, _) in &v.terms {
                free[i] = false;
            }
            cur.push(v.clone());
            if rec(p, free, cur) {
                return true;
            }
            cur.pop();
            for &(i, _) in &v.terms {
                free[i] = true;
            }
        }
        false
    }
    if !p.e(0, 0).is_zero() {
        return None;
    }
    let mut free = vec![true; p.size() + 1];
    free[0] = false;
    let mut cur = vec![SVector::s()];
    rec(p, &mut free, &mut cur).then_some(Filling { vectors: cur })
}

pub fn are_cobordant(p1: &AlphaPairing, p2: &AlphaPairing) -> Result<bool> {
    Ok(is_hyperbolic(&p1.sum(&p2.opposite())?).is_some())
}

/// σ_φ stored as `2σ_φ`, i.e. the rank of the Gram matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genus {
    pub twice_value: usize,
}

impl Genus {
    pub fn is_integral(&self) -> bool {
        self.twice_value.is_multiple_of(2)
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_value.is_multiple_of(2) {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

/// `φ ∘ e` on basis pairs, scaled to integers or reduced mod p.
pub(crate) enum PhiMatrix {
    Int(Vec<Vec<i128>>),
    Mod(Vec<Vec<u64>>, u64),
}

impl PhiMatrix {
    pub(crate) fn new(p: &AlphaPairing, phi: &PhiSpec) -> Self {
        Self::build(p.alphabet(), p.size() + 1, |i, j| p.e(i, j), phi)
    }

    pub(crate) fn build<'a>(
        alphabet: &Alphabet,
        n: usize,
        e: impl Fn(usize, usize) -> &'a PiElement,
        phi: &PhiSpec,
    ) -> Self {
        match phi.target() {
            Target::Rationals => {
                // a common denominator of the values of φ does not change ranks
                let den = phi.values().iter().fold(1i64, |acc, v| acc.lcm(v.denom()));
                let scaled =
                    PhiSpec::new(alphabet, Target::Rationals, phi.values().iter().map(|v| v * den).collect())
                        .expect("scaled phi is valid");
                PhiMatrix::Int(
                    (0..n)
                        .map(|i| (0..n).map(|j| scaled.apply_integer(e(i, j)).expect("integral")).collect())
                        .collect(),
                )
            }
            Target::PrimeField(q) => PhiMatrix::Mod(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| match phi.apply(e(i, j)) {
                                FieldValue::Mod { value, .. } => value,
                                FieldValue::Rational(_) => unreachable!(),
                            })
                            .collect()
                    })
                    .collect(),
                q,
            ),
        }
    }

    pub(crate) fn rank(&self, vectors: &[SVector]) -> usize {
        match self {
            PhiMatrix::Int(m) => {
                let g: Vec<Vec<i128>> = vectors
                    .iter()
                    .map(|x| {
                        vectors
                            .iter()
                            .map(|y| {
                                let mut acc = 0i128;
                                for &(i, c) in &x.terms {
                                    for &(j, d) in &y.terms {
                                        acc += m[i][j] * (c * d) as i128;
                                    }
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                linalg::rank_integer(&g)
            }
            PhiMatrix::Mod(m, q) => {
                let q = *q;
                let g: Vec<Vec<u64>> = vectors
                    .iter()
                    .map(|x| {
                        vectors
                            .iter()
                            .map(|y| {
                                let mut acc = 0i128;
                                for &(i, c) in &x.terms {
                                    for &(j, d) in &y.terms {
                                        acc += m[i][j] as i128 * (c * d) as i128;
                                    }
                                }
                                acc.rem_euclid(q as i128) as u64
                            })
                            .collect()
                    })
                    .collect();
                linalg::rank_mod_p(&g, q)
            }
        }
    }
}

pub fn genus_of_filling(p: &AlphaPairing, phi: &PhiSpec, filling: &Filling) -> Result<Genus> {
    check_phi(p, phi)?;
    Ok(Genus { twice_value: PhiMatrix::new(p, phi).rank(&filling.vectors) })
}

pub(crate) fn check_phi(p: &AlphaPairing, phi: &PhiSpec) -> Result<()> {
    check_phi_alphabet(p.alphabet(), phi)
}

pub(crate) fn check_phi_alphabet(alphabet: &Alphabet, phi: &PhiSpec) -> Result<()> {
    if phi.values().len() != alphabet.orbits().len() {
        return Err(Error::InvalidPhi("phi was built for another alphabet".into()));
    }
    Ok(())
}

/// Minimum Gram rank over all fillings, by branch and bound on partial ranks.
pub fn genus(p: &AlphaPairing, phi: &PhiSpec) -> Result<Genus> {
    check_phi(p, phi)?;
    let m = PhiMatrix::new(p, phi);
    let best = AtomicUsize::new(usize::MAX);
    let mut free = vec![true; p.size() + 1];
    free[0] = false;
    let start = vec![SVector::s()];
    let Some(lowest) = (1..=p.size()).find(|&i| free[i]) else {
        return Ok(Genus { twice_value: m.rank(&start) });
    };
    options(p, lowest, &free).into_par_iter().for_each(|v| {
        let mut free = free.clone();
        for &(i, _) in &v.terms {
            free[i] = false;
        }
        let mut cur = start.clone();
        cur.push(v);
        genus_rec(p, &m, &mut free, &mut cur, &best);
    });
    Ok(Genus { twice_value: best.load(Ordering::Relaxed) })
}

fn genus_rec(p: &AlphaPairing, m: &PhiMatrix, free: &mut Vec<bool>, cur: &mut Vec<SVector>, best: &AtomicUsize) {
    let r = m.rank(cur);
    if r >= best.load(Ordering::Relaxed) {
        return;
    }
    let Some(lowest) = (1..=p.size()).find(|&i| free[i]) else {
        best.fetch_min(r, Ordering::Relaxed);
        return;
    };
    for v in options(p, lowest, free) {
        for &(i, _) in &v.terms {
            free[i] = false;
        }
        cur.push(v.clone());
        genus_rec(p, m, free, cur, best);
        cur.pop();
        for &(i, _) in &v.terms {
            free[i] = true;
        }
    }
}

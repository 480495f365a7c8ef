use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use super::filling::{check_phi_alphabet, genus, Genus, PhiMatrix, SVector};
use super::pairing::AlphaPairing;
use crate::algebra::{Alphabet, PhiSpec, PiElement, Sym};
use crate::error::{Error, Result};

/// The disjoint union of `r` pairings with the block form `e = ⊕ e_t`.
///
/// Basis indices `0..r` are `s_1, …, s_r`; the letters follow in block order.
#[derive(Clone, Debug)]
pub struct PairingTuple {
    alphabet: Arc<Alphabet>,
    r: usize,
    proj: Vec<Sym>,
    labels: Vec<String>,
    e: Vec<PiElement>,
}

impl PairingTuple {
    pub fn new(pairings: &[AlphaPairing]) -> Result<Self> {
        let Some(first) = pairings.first() else {
            return Err(Error::InvalidPairing("empty tuple".into()));
        };
        if pairings.iter().any(|p| p.alphabet() != first.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        let r = pairings.len();
        let n: usize = pairings.iter().map(AlphaPairing::size).sum();
        let dim = r + n;
        let mut e = vec![PiElement::zero(); dim * dim];
        let mut proj = Vec::with_capacity(n);
        let mut labels: Vec<String> = (1..=r).map(|t| format!("s{t}")).collect();
        let mut offset = r;
        for (t, p) in pairings.iter().enumerate() {
            let place = |i: usize| if i == 0 { t } else { offset + i - 1 };
            for i in 0..=p.size() {
                for j in 0..=p.size() {
                    e[place(i) * dim + place(j)] = p.e(i, j).clone();
                }
            }
            for i in 1..=p.size() {
                proj.push(p.proj(i));
                labels.push(format!("{}{}", p.label(i), "'".repeat(t)));
            }
            offset += p.size();
        }
        Ok(Self { alphabet: first.alphabet_arc().clone(), r, proj, labels, e })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.r + self.proj.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn e(&self, i: usize, j: usize) -> &PiElement {
        &self.e[i * self.dim() + j]
    }

    fn proj_of(&self, i: usize) -> Sym {
        self.proj[i - self.r]
    }

    pub fn pair(&self, x: &SVector, y: &SVector) -> PiElement {
        let mut acc = PiElement::zero();
        for &(i, c) in &x.terms {
            for &(j, d) in &y.terms {
                acc += &self.e(i, j).scale(c * d);
            }
        }
        acc
    }

    /// `s_1 + … + s_r`.
    pub fn distinguished(&self) -> SVector {
        SVector::from_terms((0..self.r).map(|t| (t, 1)).collect())
    }

    pub fn display(&self, v: &SVector) -> String {
        let mut out = String::new();
        for (k, &(i, c)) in v.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            out.push_str(&format!("{sign}{mag}{}", self.label(i)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Short parts that may cover `lowest`, given the uncovered letters.
    fn short_options(&self, lowest: usize, free: &[bool]) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![vec![(lowest, 1)]];
        for m in lowest + 1..self.dim() {
            if !free[m] {
                continue;
            }
            if self.proj_of(lowest) == self.proj_of(m) {
                out.push(vec![(lowest, 1), (m, 1)]);
            }
            if self.proj_of(lowest) == self.alphabet.tau(self.proj_of(m)) {
                out.push(vec![(lowest, 1), (m, -1)]);
            }
        }
        out
    }

    /// Coefficient vectors on `s_1, …, s_{r−1}` (with `s_r` at 0) equivalent, modulo the
    /// distinguished vector, to a vector with all coefficients in `[−bound, bound]`.
    fn s_offsets(&self, bound: i64) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in 1..self.r {
            out = out
                .into_iter()
                .flat_map(|c: Vec<i64>| {
                    (-2 * bound..=2 * bound).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        out.retain(|c| {
            let hi = c.iter().copied().chain([0]).max().unwrap_or(0);
            let lo = c.iter().copied().chain([0]).min().unwrap_or(0);
            hi - lo <= 2 * bound
        });
        out.sort_by_key(|c| (c.iter().map(|x| x.abs()).sum::<i64>(), c.clone()));
        out
    }

    fn options(&self, lowest: usize, free: &[bool], offsets: &[Vec<i64>]) -> Vec<SVector> {
        let mut out = Vec::new();
        for short in self.short_options(lowest, free) {
            for c in offsets {
                let mut terms = short.clone();
                terms.extend(c.iter().enumerate().map(|(t, &x)| (t, x)));
                out.push(SVector::from_terms(terms));
            }
        }
        out
    }

    fn first_free(&self, free: &[bool]) -> Option<usize> {
        (self.r..self.dim()).find(|&i| free[i])
    }

    fn start(&self) -> (Vec<bool>, Vec<SVector>) {
        let mut free = vec![true; self.dim()];
        free[..self.r].iter_mut().for_each(|f| *f = false);
        (free, vec![self.distinguished()])
    }
}

/// A weak filling: `s_1 + … + s_r` and weakly short vectors covering each letter once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakFilling {
    pub vectors: Vec<SVector>,
    pub s_bound: i64,
}

fn check_bound(s_bound: i64) -> Result<()> {
    if s_bound < 1 {
        Err(Error::BadBound)
    } else {
        Ok(())
    }
}

fn mark(free: &mut [bool], v: &SVector, r: usize, value: bool) {
    for &(i, _) in &v.terms {
        if i >= r {
            free[i] = value;
        }
    }
}

/// Every weak filling within the bound, up to adding multiples of the distinguished
/// vector (representatives have coefficient 0 on `s_r`).
pub fn enumerate_weak_fillings(pairings: &[AlphaPairing], s_bound: i64) -> Result<Vec<WeakFilling>> {
    check_bound(s_bound)?;
    let t = PairingTuple::new(pairings)?;
    let offsets = t.s_offsets(s_bound);
    let mut out = Vec::new();
    fn rec(t: &PairingTuple, off: &[Vec<i64>], free: &mut [bool], cur: &mut Vec<SVector>, b: i64, out: &mut Vec<WeakFilling>) {
        let Some(lowest) = t.first_free(free) else {
            out.push(WeakFilling { vectors: cur.clone(), s_bound: b });
            return;
        };
        for v in t.options(lowest, free, off) {
            mark(free, &v, t.r, false);
            cur.push(v);
            rec(t, off, free, cur, b, out);
            let v = cur.pop().expect("pushed");
            mark(free, &v, t.r, true);
        }
    }
    let (mut free, mut cur) = t.start();
    rec(&t, &offsets, &mut free, &mut cur, s_bound, &mut out);
    Ok(out)
}

/// An annihilating weak filling within the bound, if one is found.
pub fn is_hyperbolic_tuple(pairings: &[AlphaPairing], s_bound: i64) -> Result<Option<WeakFilling>> {
    check_bound(s_bound)?;
    let t = PairingTuple::new(pairings)?;
    let offsets = t.s_offsets(s_bound);
    fn rec(t: &PairingTuple, off: &[Vec<i64>], free: &mut [bool], cur: &mut Vec<SVector>) -> bool {
        let Some(lowest) = t.first_free(free) else {
            return true;
        };
        for v in t.options(lowest, free, off) {
            let ok = t.pair(&v, &v).is_zero() && cur.iter().all(|u| t.pair(&v, u).is_zero() && t.pair(u, &v).is_zero());
            if !ok {
                continue;
            }
            mark(free, &v, t.r, false);
            cur.push(v);
            if rec(t, off, free, cur) {
                return true;
            }
            let v = cur.pop().expect("pushed");
            mark(free, &v, t.r, true);
        }
        false
    }
    let (mut free, mut cur) = t.start();
    if !t.pair(&cur[0], &cur[0]).is_zero() {
        return Ok(None);
    }
    Ok(rec(&t, &offsets, &mut free, &mut cur).then_some(WeakFilling { vectors: cur, s_bound }))
}

pub fn weakly_cobordant(p: &AlphaPairing, q: &AlphaPairing, s_bound: i64) -> Result<bool> {
    Ok(is_hyperbolic_tuple(&[p.clone(), q.opposite()], s_bound)?.is_some())
}

/// Minimum Gram rank over weak fillings within the bound: an upper bound on the
/// tuple genus, exact when a minimizer lies within the bound.
pub fn tuple_genus(pairings: &[AlphaPairing], phi: &PhiSpec, s_bound: i64) -> Result<Genus> {
    check_bound(s_bound)?;
    let t = PairingTuple::new(pairings)?;
    check_phi_alphabet(t.alphabet(), phi)?;
    let m = PhiMatrix::build(t.alphabet(), t.dim(), |i, j| t.e(i, j), phi);
    let offsets = t.s_offsets(s_bound);
    // embedded fillings of the sum are weak fillings, so their minimum seeds the bound
    let mut sum = pairings[0].clone();
    for p in &pairings[1..] {
        sum = sum.sum(p)?;
    }
    let best = AtomicUsize::new(genus(&sum, phi)?.twice_value.saturating_add(1));
    let (free, start) = t.start();
    let Some(lowest) = t.first_free(&free) else {
        return Ok(Genus { twice_value: m.rank(&start) });
    };
    t.options(lowest, &free, &offsets).into_par_iter().for_each(|v| {
        let mut free = free.clone();
        mark(&mut free, &v, t.r, false);
        let mut cur = start.clone();
        cur.push(v);
        weak_rec(&t, &m, &offsets, &mut free, &mut cur, &best);
    });
    Ok(Genus { twice_value: best.load(Ordering::Relaxed) })
}

fn weak_rec(
    t: &PairingTuple,
    m: &PhiMatrix,
    off: &[Vec<i64>],
    free: &mut [bool],
    cur: &mut Vec<SVector>,
    best: &AtomicUsize,
) {
    let r = m.rank(cur);
    if r >= best.load(Ordering::Relaxed) {
        return;
    }
    let Some(lowest) = t.first_free(free) else {
        best.fetch_min(r, Ordering::Relaxed);
        return;
    };
    for v in t.options(lowest, free, off) {
        mark(free, &v, t.r, false);
        cur.push(v);
        weak_rec(t, m, off, free, cur, best);
        let v = cur.pop().expect("pushed");
        mark(free, &v, t.r, true);
    }
}

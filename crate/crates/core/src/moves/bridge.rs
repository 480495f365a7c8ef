use super::factor::{delete_factor, letter_subsets, segmentations, Factor};
use crate::error::{Error, Result};
use crate::words::Nanoword;

/// A factor with an involution κ on its segments satisfying the bridge conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bridge {
    pub factor: Factor,
    /// κ on `0..k`.
    pub kappa: Vec<usize>,
    /// ι on letters of the word; `u32::MAX` off the factor.
    pub iota: Vec<u32>,
    /// ε_{∇,κ} on letters of the word; 0 off the factor.
    pub epsilon: Vec<u8>,
}

impl Bridge {
    /// Number of free 2-orbits of κ.
    pub fn arches(&self) -> usize {
        arches_of(&self.kappa)
    }
}

pub fn arches_of(kappa: &[usize]) -> usize {
    kappa.iter().enumerate().filter(|&(r, &k)| r < k).count()
}

pub fn is_involution(kappa: &[usize]) -> bool {
    kappa.iter().enumerate().all(|(r, &c)| c < kappa.len() && kappa[c] == r)
}

/// Checks conditions (a), (b) and the projection condition for `(factor, κ)`.
pub fn validate_bridge(w: &Nanoword, factor: &Factor, kappa: &[usize]) -> Option<Bridge> {
    let segs = factor.segments();
    let k = segs.len();
    if kappa.len() != k || !is_involution(kappa) {
        return None;
    }
    let len = |r: usize| segs[r].1 - segs[r].0;
    for r in 0..k {
        if len(r) != len(kappa[r]) || (kappa[r] == r && len(r) % 2 == 1) {
            return None;
        }
    }
    // symmetric entry of each position inside the factor
    let mut sym = vec![usize::MAX; w.len()];
    for r in 0..k {
        let (s, _) = segs[r];
        let t = segs[kappa[r]].0;
        let n = len(r);
        for j in 0..n {
            sym[s + j] = t + n - 1 - j;
        }
    }
    let seq = w.seq();
    let mut iota = vec![u32::MAX; w.letter_count()];
    for r in 0..k {
        for p in segs[r].0..segs[r].1 {
            let (a, b) = (seq[p], seq[sym[p]]);
            match iota[a as usize] {
                u32::MAX => iota[a as usize] = b,
                x if x != b => return None,
                _ => {}
            }
        }
    }
    let mut epsilon = vec![0u8; w.letter_count()];
    let al = w.alphabet();
    for &b in factor.letters() {
        let bi = iota[b as usize];
        if iota[bi as usize] != b {
            return None;
        }
        let left = w.positions(b)[0];
        let e = u8::from(sym[left] == w.positions(bi)[0]);
        epsilon[b as usize] = e;
        if w.proj(bi) != al.tau_pow(w.proj(b), e) {
            return None;
        }
    }
    Some(Bridge { factor: factor.clone(), kappa: kappa.to_vec(), iota, epsilon })
}

pub fn apply_bridge(w: &Nanoword, bridge: &Bridge) -> Result<Nanoword> {
    if validate_bridge(w, &bridge.factor, &bridge.kappa).is_none() {
        return Err(Error::InvalidFactor(format!("{} is not a bridge", bridge.factor.segments_string())));
    }
    Ok(delete_factor(w, &bridge.factor))
}

/// All involutions of `0..k` in lexicographic order.
pub fn involutions(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(r) = cur.iter().position(|&x| x == usize::MAX) else {
            out.push(cur.clone());
            return;
        };
        cur[r] = r;
        rec(k, cur, out);
        for c in r + 1..k {
            if cur[c] == usize::MAX {
                cur[r] = c;
                cur[c] = r;
                rec(k, cur, out);
                cur[c] = usize::MAX;
            }
        }
        cur[r] = usize::MAX;
    }
    let mut out = Vec::new();
    rec(k, &mut vec![usize::MAX; k], &mut out);
    out
}

/// All bridges with at most `max_letters` letters and `max_k` segments.
pub fn enumerate_bridges(w: &Nanoword, max_letters: usize, max_k: usize) -> Vec<Bridge> {
    let mut out = Vec::new();
    if max_k == 0 {
        return out;
    }
    let invs: Vec<Vec<Vec<usize>>> = (0..=max_k).map(involutions).collect();
    for subset in letter_subsets(w.letter_count(), max_letters) {
        let mut mask = vec![false; w.letter_count()];
        for &l in &subset {
            mask[l as usize] = true;
        }
        for segs in segmentations(w, &mask, max_k, false) {
            let factor = Factor::new(w, segs).expect("segments cover the subset");
            for kappa in &invs[factor.k()] {
                if let Some(b) = validate_bridge(w, &factor, kappa) {
                    out.push(b);
                }
            }
        }
    }
    out
}

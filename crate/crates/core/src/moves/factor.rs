use crate::error::{Error, Result};
use crate::words::{Nanophrase, Nanoword};

/// A factor `(B, (v_1 | … | v_k))` of a nanoword, given by half-open 0-based
/// segments `[start, end)` that cover exactly the entries of the letters in `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    segments: Vec<(usize, usize)>,
    letters: Vec<u32>,
}

impl Factor {
    pub fn new(w: &Nanoword, segments: Vec<(usize, usize)>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidFactor("no segments".into()));
        }
        let mut prev_end = 0;
        for (i, &(s, e)) in segments.iter().enumerate() {
            if s >= e || e > w.len() || (i > 0 && s < prev_end) {
                return Err(Error::InvalidFactor(format!("segment {}..{} out of order or empty", s + 1, e)));
            }
            prev_end = e;
        }
        let mut inside = vec![0u8; w.letter_count()];
        for &(s, e) in &segments {
            for &l in &w.seq()[s..e] {
                inside[l as usize] += 1;
            }
        }
        if let Some(l) = inside.iter().position(|&c| c == 1) {
            return Err(Error::InvalidFactor(format!(
                "letter {} has only one entry inside the segments",
                w.letter_name(l as u32)
            )));
        }
        let letters = (0..w.letter_count() as u32).filter(|&l| inside[l as usize] == 2).collect();
        Ok(Self { segments, letters })
    }

    pub fn segments(&self) -> &[(usize, usize)] {
        &self.segments
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn k(&self) -> usize {
        self.segments.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.segments.iter().map(|(s, e)| e - s).collect()
    }

    /// The factor as a nanophrase, its letters renumbered in id order.
    pub fn phrase(&self, w: &Nanoword) -> Nanophrase {
        let mut map = vec![u32::MAX; w.letter_count()];
        for (i, &l) in self.letters.iter().enumerate() {
            map[l as usize] = i as u32;
        }
        let proj = self.letters.iter().map(|&l| w.proj(l)).collect();
        let words = self.segments.iter().map(|&(s, e)| w.seq()[s..e].iter().map(|&l| map[l as usize]).collect()).collect();
        Nanophrase::new(w.alphabet_arc().clone(), proj, words).expect("factor is a nanophrase")
    }

    /// Gaps in the word left after deletion at which the segments sat.
    pub fn gaps(&self) -> Vec<usize> {
        let mut removed = 0;
        self.segments
            .iter()
            .map(|&(s, e)| {
                let g = s - removed;
                removed += e - s;
                g
            })
            .collect()
    }

    /// `1..2,5..6` (1-based, inclusive).
    pub fn segments_string(&self) -> String {
        self.segments.iter().map(|(s, e)| format!("{}..{}", s + 1, e)).collect::<Vec<_>>().join(",")
    }

    pub fn is_even_symmetric(&self, w: &Nanoword) -> bool {
        let p = self.phrase(w);
        p.is_even() && p.is_symmetric()
    }
}

/// Deletes the letters of the factor.
pub fn delete_factor(w: &Nanoword, factor: &Factor) -> Nanoword {
    let mut keep = vec![true; w.letter_count()];
    for &l in factor.letters() {
        keep[l as usize] = false;
    }
    w.retain_letters(&keep)
}

pub fn apply_surgery(w: &Nanoword, factor: &Factor) -> Result<Nanoword> {
    if !factor.is_even_symmetric(w) {
        return Err(Error::InvalidFactor(format!("{} is not an even symmetric factor", factor.segments_string())));
    }
    Ok(delete_factor(w, factor))
}

/// Splits the positions of a letter subset into maximal runs and enumerates all
/// ways of cutting the runs into at most `max_k` nonempty segments.
pub(crate) fn segmentations(
    w: &Nanoword,
    subset: &[bool],
    max_k: usize,
    even_only: bool,
) -> Vec<Vec<(usize, usize)>> {
    let mut runs = Vec::new();
    let mut i = 0;
    let seq = w.seq();
    while i < seq.len() {
        if subset[seq[i] as usize] {
            let s = i;
            while i < seq.len() && subset[seq[i] as usize] {
                i += 1;
            }
            runs.push((s, i));
        } else {
            i += 1;
        }
    }
    if runs.is_empty() || runs.len() > max_k {
        return Vec::new();
    }
    if even_only && runs.iter().any(|(s, e)| (e - s) % 2 == 1) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    split_runs(&runs, 0, max_k, if even_only { 2 } else { 1 }, &mut current, &mut out);
    out
}

fn split_runs(
    runs: &[(usize, usize)],
    idx: usize,
    max_k: usize,
    step: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if idx == runs.len() {
        out.push(current.clone());
        return;
    }
    split_run(runs[idx].0, runs, idx, max_k, step, current, out);
}

/// Places the segment starting at `s` inside run `idx`, then recurses.
fn split_run(
    s: usize,
    runs: &[(usize, usize)],
    idx: usize,
    max_k: usize,
    step: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    let e = runs[idx].1;
    let later_runs = runs.len() - idx - 1;
    if current.len() + 1 + later_runs > max_k {
        return;
    }
    let mut t = s + step;
    while t <= e {
        current.push((s, t));
        if t == e {
            split_runs(runs, idx + 1, max_k, step, current, out);
        } else {
            split_run(t, runs, idx, max_k, step, current, out);
        }
        current.pop();
        t += step;
    }
}

/// Letter subsets of size `1..=max_letters`, by size then lexicographically.
pub(crate) fn letter_subsets(n: usize, max_letters: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, size: usize, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for l in start..n {
            cur.push(l);
            rec(n, size, l + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=max_letters.min(n) {
        rec(n as u32, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// All even symmetric factors with at most `max_letters` letters and `max_k` segments.
pub fn enumerate_even_symmetric_factors(w: &Nanoword, max_letters: usize, max_k: usize) -> Vec<Factor> {
    let mut out = Vec::new();
    if max_k == 0 {
        return out;
    }
    for subset in letter_subsets(w.letter_count(), max_letters) {
        let mut mask = vec![false; w.letter_count()];
        for &l in &subset {
            mask[l as usize] = true;
        }
        for segs in segmentations(w, &mask, max_k, true) {
            let f = Factor { segments: segs, letters: subset.clone() };
            if f.is_even_symmetric(w) {
                out.push(f);
            }
        }
    }
    out
}

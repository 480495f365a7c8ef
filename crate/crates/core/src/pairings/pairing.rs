use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{Alphabet, PiElement, Sym};
use crate::error::{Error, Result};
use crate::words::Nanoword;

/// An α-pairing `(S, s, e)` with values in π.
///
/// Index 0 of the matrix is the distinguished element `s`; index `i ≥ 1` is the
/// element of `S°` with projection `proj[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaPairing {
    alphabet: Arc<Alphabet>,
    proj: Vec<Sym>,
    e: Vec<PiElement>,
    labels: Vec<String>,
}

impl AlphaPairing {
    pub fn new(alphabet: Arc<Alphabet>, proj: Vec<Sym>, e: Vec<Vec<PiElement>>) -> Result<Self> {
        let n = proj.len() + 1;
        if e.len() != n || e.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPairing(format!("matrix must be {n}×{n}")));
        }
        let labels = (0..proj.len()).map(default_label).collect();
        Ok(Self { alphabet, proj, e: e.into_iter().flatten().collect(), labels })
    }

    /// The trivial pairing `S = {s}`, `e(s, s) = 0`.
    pub fn trivial(alphabet: Arc<Alphabet>) -> Self {
        Self::from_r(alphabet, PiElement::zero())
    }

    /// `i(r)`: `S = {s}` with `e(s, s) = r`.
    pub fn from_r(alphabet: Arc<Alphabet>, r: PiElement) -> Self {
        Self { alphabet, proj: Vec::new(), e: vec![r], labels: Vec::new() }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.proj.len() {
            self.labels = labels;
        }
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// `card(S°)`.
    pub fn size(&self) -> usize {
        self.proj.len()
    }

    /// Projection of the element with matrix index `i ≥ 1`.
    pub fn proj(&self, i: usize) -> Sym {
        self.proj[i - 1]
    }

    pub fn projections(&self) -> &[Sym] {
        &self.proj
    }

    pub fn e(&self, i: usize, j: usize) -> &PiElement {
        &self.e[i * (self.proj.len() + 1) + j]
    }

    fn e_mut(&mut self, i: usize, j: usize) -> &mut PiElement {
        let n = self.proj.len() + 1;
        &mut self.e[i * n + j]
    }

    pub fn label(&self, i: usize) -> &str {
        if i == 0 {
            "s"
        } else {
            &self.labels[i - 1]
        }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.proj.len() + 1;
        (0..n).all(|i| self.e(i, i).is_zero() && (0..i).all(|j| *self.e(i, j) == -self.e(j, i)))
    }

    pub fn is_normal(&self) -> bool {
        self.e(0, 0).is_zero()
    }

    /// `(S, s, −e)`.
    pub fn opposite(&self) -> Self {
        let mut p = self.clone();
        p.e.iter_mut().for_each(|x| *x = -&*x);
        p
    }

    /// Block sum with `e(s, s) = e₁(s₁, s₁) + e₂(s₂, s₂)`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let (n1, n2) = (self.size(), other.size());
        let n = n1 + n2 + 1;
        let mut e = vec![vec![PiElement::zero(); n]; n];
        e[0][0] = self.e(0, 0) + other.e(0, 0);
        let place = |i: usize, block: usize| if i == 0 { 0 } else { i + block };
        for i in 0..=n1 {
            for j in 0..=n1 {
                if i + j > 0 {
                    e[place(i, 0)][place(j, 0)] = self.e(i, j).clone();
                }
            }
        }
        for i in 0..=n2 {
            for j in 0..=n2 {
                if i + j > 0 {
                    e[place(i, n1)][place(j, n1)] = other.e(i, j).clone();
                }
            }
        }
        let mut proj = self.proj.clone();
        proj.extend_from_slice(&other.proj);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| {
            if self.labels.contains(l) {
                format!("{l}'")
            } else {
                l.clone()
            }
        }));
        Ok(Self { alphabet: self.alphabet.clone(), proj, e: e.into_iter().flatten().collect(), labels })
    }

    /// `r_p = e(s, s)`.
    pub fn r(&self) -> &PiElement {
        self.e(0, 0)
    }

    /// Isomorphism fixing `s` and preserving projections, by backtracking.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet || self.size() != other.size() || self.e(0, 0) != other.e(0, 0) {
            return false;
        }
        let n = self.size();
        let mut map = vec![usize::MAX; n + 1];
        map[0] = 0;
        let mut used = vec![false; n + 1];
        used[0] = true;
        self.extend_iso(other, 1, &mut map, &mut used)
    }

    fn extend_iso(&self, other: &Self, i: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if i > self.size() {
            return true;
        }
        for j in 1..=other.size() {
            if used[j] || self.proj(i) != other.proj(j) || self.e(i, i) != other.e(j, j) {
                continue;
            }
            let consistent = (0..i).all(|k| self.e(i, k) == other.e(j, map[k]) && self.e(k, i) == other.e(map[k], j));
            if consistent {
                map[i] = j;
                used[j] = true;
                if self.extend_iso(other, i + 1, map, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        map[i] = usize::MAX;
        false
    }

    /// The matrix with rows and columns labelled `s, A, B, …`.
    pub fn matrix_string(&self) -> String {
        let n = self.size() + 1;
        let cells: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| self.e(i, j).display(&self.alphabet)).collect())
            .collect();
        let label_w = (0..n).map(|i| self.label(i).len()).max().unwrap_or(1);
        let mut width = vec![0; n];
        for (j, w) in width.iter_mut().enumerate() {
            *w = cells.iter().map(|r| r[j].len()).max().unwrap_or(1).max(self.label(j).len());
        }
        let mut out = String::new();
        let _ = write!(out, "{:label_w$}", "");
        for (j, &w) in width.iter().enumerate() {
            let _ = write!(out, "  {:>w$}", self.label(j));
        }
        out.push('\n');
        for (i, row) in cells.iter().enumerate() {
            let _ = write!(out, "{:label_w$}", self.label(i));
            for (c, &w) in row.iter().zip(&width) {
                let _ = write!(out, "  {c:>w$}");
            }
            out.push('\n');
        }
        out
    }

    /// Replaces the element at index `i` by one with projection `τ(|A|)` and row
    /// `m·e(s, ·) − e(A, ·)`, keeping skew-symmetry.
    pub fn m_shift(&self, i: usize, m: i64) -> Result<Self> {
        if i == 0 || i > self.size() {
            return Err(Error::InvalidPairing(format!("no element {i} in S°")));
        }
        if !self.is_skew_symmetric() {
            return Err(Error::InvalidPairing("m-shift needs a skew-symmetric pairing".into()));
        }
        let mut p = self.clone();
        p.proj[i - 1] = self.alphabet.tau(self.proj[i - 1]);
        for j in 0..=self.size() {
            if j == i {
                continue;
            }
            let v = &self.e(0, j).scale(m) - self.e(i, j);
            *p.e_mut(j, i) = -&v;
            *p.e_mut(i, j) = v;
        }
        Ok(p)
    }
}

fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("L{}", i + 1)
    }
}

/// `n_w(A, B)` from the entry positions of `A` and `B`.
fn linking(a: [usize; 2], b: [usize; 2]) -> i64 {
    if a[0] < b[0] && b[0] < a[1] && a[1] < b[1] {
        1
    } else if b[0] < a[0] && a[0] < b[1] && b[1] < a[1] {
        -1
    } else {
        0
    }
}

fn letter_labels(w: &Nanoword) -> Vec<String> {
    (0..w.letter_count() as u32).map(|l| w.letter_name(l)).collect()
}

/// `p(w)` from `n_w`, `∘_w` and the defining formulas.
pub fn pairing_of_nanoword(w: &Nanoword) -> AlphaPairing {
    let al = w.alphabet();
    let n = w.letter_count();
    let pos: Vec<[usize; 2]> = (0..n as u32).map(|l| w.positions(l)).collect();
    let gen: Vec<PiElement> = (0..n as u32).map(|l| PiElement::of_letter(al, w.proj(l))).collect();
    let circ = |a: usize, b: usize| {
        let mut x = PiElement::zero();
        for d in 0..n {
            let (i, j) = (pos[d][0], pos[d][1]);
            if pos[a][0] < i && i < pos[a][1] && pos[b][0] < j && j < pos[b][1] {
                x += &gen[d];
            }
        }
        x
    };
    let mut e = vec![vec![PiElement::zero(); n + 1]; n + 1];
    for a in 0..n {
        for b in a + 1..n {
            let nab = linking(pos[a], pos[b]);
            let v = &(&circ(a, b) - &circ(b, a)).scale(2) + &(&gen[a] + &gen[b]).scale(nab);
            e[b + 1][a + 1] = -&v;
            e[a + 1][b + 1] = v;
        }
        let mut v = PiElement::zero();
        for d in 0..n {
            v += &gen[d].scale(linking(pos[a], pos[d]));
        }
        e[0][a + 1] = -&v;
        e[a + 1][0] = v;
    }
    AlphaPairing::new(w.alphabet_arc().clone(), w.projections().to_vec(), e)
        .expect("square matrix")
        .with_labels(letter_labels(w))
}

/// `p(w)` from the interleaving formulas in terms of `⟨x, y⟩`.
pub fn pairing_of_nanoword_alt(w: &Nanoword) -> AlphaPairing {
    let al = w.alphabet();
    let n = w.letter_count();
    let seq = w.seq();
    // ⟨x, y⟩ for the subwords seq[x0..x1] and seq[y0..y1]
    let bracket = |x: (usize, usize), y: (usize, usize)| {
        let mut cx = vec![0u8; n];
        let mut cy = vec![0u8; n];
        for &l in &seq[x.0..x.1] {
            cx[l as usize] += 1;
        }
        for &l in &seq[y.0..y.1] {
            cy[l as usize] += 1;
        }
        let mut v = PiElement::zero();
        for d in 0..n {
            if cx[d] == 1 && cy[d] == 1 {
                v += &PiElement::of_letter(al, w.proj(d as u32));
            }
        }
        v
    };
    let mut e = vec![vec![PiElement::zero(); n + 1]; n + 1];
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            let ([ia, ja], [ib, jb]) = (w.positions(a), w.positions(b));
            if a == b || ib < ia {
                continue;
            }
            let v = if ja < ib {
                // A x A y B z B
                bracket((ia + 1, ja), (ib + 1, jb)).scale(2)
            } else if jb < ja {
                // A x B y B z A
                &bracket((ia + 1, ib), (ib + 1, jb)).scale(2) - &bracket((ib + 1, jb), (jb + 1, ja)).scale(2)
            } else {
                // A x B y A z B
                let (x, y, z) = ((ia + 1, ib), (ib + 1, ja), (ja + 1, jb));
                let s = &(&bracket(x, y) + &bracket(x, z)) + &bracket(y, z);
                &s.scale(2) + &(&PiElement::of_letter(al, w.proj(a)) + &PiElement::of_letter(al, w.proj(b)))
            };
            e[b as usize + 1][a as usize + 1] = -&v;
            e[a as usize + 1][b as usize + 1] = v;
        }
        let [ia, ja] = w.positions(a);
        let v = &bracket((ia + 1, ja), (ja + 1, seq.len())) - &bracket((0, ia), (ia + 1, ja));
        e[0][a as usize + 1] = -&v;
        e[a as usize + 1][0] = v;
    }
    AlphaPairing::new(w.alphabet_arc().clone(), w.projections().to_vec(), e)
        .expect("square matrix")
        .with_labels(letter_labels(w))
}

pub fn opposite_pairing(p: &AlphaPairing) -> AlphaPairing {
    p.opposite()
}

pub fn sum_pairings(p1: &AlphaPairing, p2: &AlphaPairing) -> Result<AlphaPairing> {
    p1.sum(p2)
}

pub fn r_of(p: &AlphaPairing) -> PiElement {
    p.r().clone()
}

pub fn m_shift(p: &AlphaPairing, a: usize, m: i64) -> Result<AlphaPairing> {
    p.m_shift(a, m)
}

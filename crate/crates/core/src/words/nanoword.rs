use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::algebra::{Alphabet, PiWord, Sym};
use crate::error::{Error, Result};

/// A nanoword: a word in which every letter occurs exactly twice, with a projection
/// of its letters to an involutive alphabet.
///
/// Letters are the dense ids `0..letter_count()`. User-facing names live in an
/// optional side table and do not take part in equality or hashing.
#[derive(Clone, Debug)]
pub struct Nanoword {
    alphabet: Arc<Alphabet>,
    proj: Vec<Sym>,
    seq: Vec<u32>,
    pos: Vec<[usize; 2]>,
    names: Option<Vec<String>>,
}

impl PartialEq for Nanoword {
    fn eq(&self, other: &Self) -> bool {
        self.proj == other.proj && self.seq == other.seq && self.alphabet == other.alphabet
    }
}

impl Eq for Nanoword {}

impl Hash for Nanoword {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.proj.hash(state);
        self.seq.hash(state);
    }
}

pub(crate) fn occurrence_positions(seq: &[u32], letters: usize) -> Result<Vec<[usize; 2]>> {
    let mut pos = vec![[usize::MAX; 2]; letters];
    let mut count = vec![0usize; letters];
    for (i, &l) in seq.iter().enumerate() {
        let l = l as usize;
        if l >= letters {
            return Err(Error::UnknownLetter(l));
        }
        if count[l] < 2 {
            pos[l][count[l]] = i;
        }
        count[l] += 1;
    }
    if count.iter().any(|&c| c != 2) {
        let detail: Vec<String> =
            count.iter().enumerate().filter(|(_, &c)| c != 2).map(|(l, c)| format!("L{} occurs {c}", l + 1)).collect();
        return Err(Error::Occurrences(detail.join(", ")));
    }
    Ok(pos)
}

impl Nanoword {
    pub fn new(alphabet: Arc<Alphabet>, proj: Vec<Sym>, seq: Vec<u32>) -> Result<Self> {
        if let Some(s) = proj.iter().find(|s| s.index() >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("#{}", s.0)));
        }
        let pos = occurrence_positions(&seq, proj.len())?;
        Ok(Self { alphabet, proj, seq, pos, names: None })
    }

    pub(crate) fn from_parts_unchecked(alphabet: Arc<Alphabet>, proj: Vec<Sym>, seq: Vec<u32>) -> Self {
        let pos = occurrence_positions(&seq, proj.len()).expect("valid nanoword");
        Self { alphabet, proj, seq, pos, names: None }
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Self { alphabet, proj: Vec::new(), seq: Vec::new(), pos: Vec::new(), names: None }
    }

    /// Builds a nanoword from letter tokens and `(letter, symbol)` projections.
    ///
    /// The word may be written with spaces (`A B A B`) or, for one-character
    /// letters, without (`ABAB`).
    pub fn parse(alphabet: Arc<Alphabet>, word: &str, proj: &[(&str, &str)]) -> Result<Self> {
        let tokens = split_tokens(word);
        let mut names: Vec<String> = Vec::new();
        let mut seq = Vec::with_capacity(tokens.len());
        for t in &tokens {
            let id = match names.iter().position(|n| n == t) {
                Some(i) => i,
                None => {
                    names.push(t.clone());
                    names.len() - 1
                }
            };
            seq.push(id as u32);
        }
        let counts: Vec<usize> = (0..names.len()).map(|i| seq.iter().filter(|&&l| l as usize == i).count()).collect();
        if counts.iter().any(|&c| c != 2) {
            let detail: Vec<String> = names
                .iter()
                .zip(&counts)
                .map(|(n, &c)| format!("{n} occurs {c} {}", if c == 1 { "time" } else { "times" }))
                .collect();
            return Err(Error::Occurrences(format!("letter {}", detail.join(", "))));
        }
        let mut p = Vec::with_capacity(names.len());
        for n in &names {
            let (_, sym) = proj
                .iter()
                .find(|(l, _)| l == n)
                .ok_or_else(|| Error::UnknownSymbol(format!("no projection for letter {n}")))?;
            p.push(alphabet.sym(sym)?);
        }
        let mut w = Self::new(alphabet, p, seq)?;
        w.names = Some(names);
        Ok(w)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.proj.len() {
            self.names = Some(names);
        }
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Length of the word (twice the number of letters).
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn letter_count(&self) -> usize {
        self.proj.len()
    }

    pub fn seq(&self) -> &[u32] {
        &self.seq
    }

    pub fn projections(&self) -> &[Sym] {
        &self.proj
    }

    pub fn proj(&self, letter: u32) -> Sym {
        self.proj[letter as usize]
    }

    /// The two positions (0-based, increasing) of a letter.
    pub fn positions(&self, letter: u32) -> [usize; 2] {
        self.pos[letter as usize]
    }

    pub fn letter_name(&self, letter: u32) -> String {
        match &self.names {
            Some(n) => n[letter as usize].clone(),
            None => format!("L{}", letter + 1),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Letters renamed `L1, L2, …` in order of first occurrence.
    pub fn canonical_form(&self) -> Nanoword {
        let mut map = vec![u32::MAX; self.proj.len()];
        let mut next = 0u32;
        let mut seq = Vec::with_capacity(self.seq.len());
        let mut proj = Vec::with_capacity(self.proj.len());
        for &l in &self.seq {
            if map[l as usize] == u32::MAX {
                map[l as usize] = next;
                proj.push(self.proj[l as usize]);
                next += 1;
            }
            seq.push(map[l as usize]);
        }
        Self::from_parts_unchecked(self.alphabet.clone(), proj, seq)
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 0u32;
        for &l in &self.seq {
            if l == next {
                next += 1;
            } else if l > next {
                return false;
            }
        }
        self.names.is_none()
    }

    pub fn is_isomorphic(&self, other: &Nanoword) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn opposite(&self) -> Nanoword {
        let mut seq = self.seq.clone();
        seq.reverse();
        let mut w = Self::from_parts_unchecked(self.alphabet.clone(), self.proj.clone(), seq);
        w.names = self.names.clone();
        w
    }

    pub fn concatenate(&self, other: &Nanoword) -> Result<Nanoword> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let off = self.proj.len() as u32;
        let mut proj = self.proj.clone();
        proj.extend_from_slice(&other.proj);
        let mut seq = self.seq.clone();
        seq.extend(other.seq.iter().map(|&l| l + off));
        let mut w = Self::from_parts_unchecked(self.alphabet.clone(), proj, seq);
        if let (Some(a), Some(b)) = (&self.names, &other.names) {
            if a.iter().all(|n| !b.contains(n)) {
                w.names = Some(a.iter().chain(b).cloned().collect());
            }
        }
        Ok(w)
    }

    /// `AxAy ↦ x Ā y Ā` with `|Ā| = τ(|A|)`; `Ā` keeps the id of `A`.
    pub fn circular_shift(&self) -> Result<Nanoword> {
        let Some(&first) = self.seq.first() else {
            return Err(Error::EmptyWord);
        };
        let mut seq = self.seq[1..].to_vec();
        seq.push(first);
        let mut proj = self.proj.clone();
        proj[first as usize] = self.alphabet.tau(proj[first as usize]);
        let mut w = Self::from_parts_unchecked(self.alphabet.clone(), proj, seq);
        w.names = self.names.clone();
        Ok(w)
    }

    /// Composes the projection with an equivariant map `f` (indexed by source symbol).
    pub fn push_forward(&self, target: Arc<Alphabet>, f: &[Sym]) -> Result<Nanoword> {
        let src = &self.alphabet;
        if f.len() != src.len() {
            return Err(Error::NotEquivariant(format!("map has {} values for {} symbols", f.len(), src.len())));
        }
        for s in src.symbols() {
            if f[s.index()].index() >= target.len() {
                return Err(Error::UnknownSymbol(format!("#{}", f[s.index()].0)));
            }
            if f[src.tau(s).index()] != target.tau(f[s.index()]) {
                return Err(Error::NotEquivariant(src.name(s).to_string()));
            }
        }
        let proj = self.proj.iter().map(|s| f[s.index()]).collect();
        let mut w = Self::from_parts_unchecked(target, proj, self.seq.clone());
        w.names = self.names.clone();
        Ok(w)
    }

    /// Deletes letters projecting outside the τ-invariant subset `beta`; the result
    /// lives over `beta` with the restricted involution.
    pub fn pull_back(&self, beta: &[Sym]) -> Result<Nanoword> {
        let al = &self.alphabet;
        for &b in beta {
            if b.index() >= al.len() {
                return Err(Error::UnknownSymbol(format!("#{}", b.0)));
            }
            if !beta.contains(&al.tau(b)) {
                return Err(Error::NotInvariant(al.name(b).to_string()));
            }
        }
        let mut kept: Vec<Sym> = beta.to_vec();
        kept.sort();
        kept.dedup();
        let index_of = |s: Sym| kept.iter().position(|&k| k == s);
        let names = kept.iter().map(|&s| al.name(s).to_string()).collect();
        let tau = kept.iter().map(|&s| index_of(al.tau(s)).expect("invariant")).collect();
        let sub = Arc::new(Alphabet::new(names, tau)?);
        let keep: Vec<bool> = self.proj.iter().map(|&p| index_of(p).is_some()).collect();
        let mut w = self.retain_letters(&keep);
        w.proj = w.proj.iter().map(|&p| Sym(index_of(p).expect("kept") as u32)).collect();
        w.alphabet = sub;
        Ok(w)
    }

    /// Keeps the letters with `keep[l]`, renumbering survivors in id order.
    pub fn retain_letters(&self, keep: &[bool]) -> Nanoword {
        let mut map = vec![u32::MAX; self.proj.len()];
        let mut proj = Vec::new();
        let mut names = Vec::new();
        for l in 0..self.proj.len() {
            if keep[l] {
                map[l] = proj.len() as u32;
                proj.push(self.proj[l]);
                if let Some(n) = &self.names {
                    names.push(n[l].clone());
                }
            }
        }
        let seq = self.seq.iter().filter(|&&l| keep[l as usize]).map(|&l| map[l as usize]).collect();
        let mut w = Self::from_parts_unchecked(self.alphabet.clone(), proj, seq);
        if self.names.is_some() {
            w.names = Some(names);
        }
        w
    }

    /// Replaces the letter sequence, keeping letters and projections.
    pub fn with_seq(&self, seq: Vec<u32>) -> Result<Nanoword> {
        let mut w = Self::new(self.alphabet.clone(), self.proj.clone(), seq)?;
        w.names = self.names.clone();
        Ok(w)
    }

    /// γ(w) = ∏ γ_i with γ_i = z_{|w(i)|} at a first entry and its inverse at a second entry.
    pub fn gamma(&self) -> PiWord {
        let al = &*self.alphabet;
        let mut g = PiWord::identity(al);
        let mut seen = vec![false; self.proj.len()];
        for &l in &self.seq {
            let z = PiWord::generator(al, self.proj[l as usize]);
            let z = if seen[l as usize] { z.inverse() } else { z };
            seen[l as usize] = true;
            g = g.multiply(&z).expect("same alphabet");
        }
        g
    }

    /// `A B A B` with projections `A=a B=b`.
    pub fn word_string(&self) -> String {
        self.seq.iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join(" ")
    }

    pub fn proj_string(&self) -> String {
        let mut order = Vec::new();
        for &l in &self.seq {
            if !order.contains(&l) {
                order.push(l);
            }
        }
        order
            .iter()
            .map(|&l| format!("{}={}", self.letter_name(l), self.alphabet.name(self.proj[l as usize])))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Nanoword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{} [{}]", self.word_string(), self.proj_string())
    }
}

pub(crate) fn split_tokens(word: &str) -> Vec<String> {
    if word.split_whitespace().count() > 1 {
        word.split_whitespace().map(str::to_string).collect()
    } else {
        word.trim().chars().map(|c| c.to_string()).collect()
    }
}

pub fn canonical_form(w: &Nanoword) -> Nanoword {
    w.canonical_form()
}

pub fn opposite(w: &Nanoword) -> Nanoword {
    w.opposite()
}

pub fn concatenate(w1: &Nanoword, w2: &Nanoword) -> Result<Nanoword> {
    w1.concatenate(w2)
}

pub fn circular_shift(w: &Nanoword) -> Result<Nanoword> {
    w.circular_shift()
}

pub fn push_forward(w: &Nanoword, target: Arc<Alphabet>, f: &[Sym]) -> Result<Nanoword> {
    w.push_forward(target, f)
}

pub fn pull_back(w: &Nanoword, beta: &[Sym]) -> Result<Nanoword> {
    w.pull_back(beta)
}

pub fn gamma(w: &Nanoword) -> PiWord {
    w.gamma()
}

use std::sync::Arc;

use super::nanoword::{occurrence_positions, split_tokens, Nanoword};
use crate::algebra::{Alphabet, Sym};
use crate::error::{Error, Result};

/// A nanophrase `(w_1 | … | w_k)`: a sequence of words whose concatenation is a nanoword.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Nanophrase {
    alphabet: Arc<Alphabet>,
    proj: Vec<Sym>,
    words: Vec<Vec<u32>>,
}

/// The involution ι of a symmetric nanophrase together with ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryWitness {
    pub iota: Vec<u32>,
    pub epsilon: Vec<u8>,
}

impl Nanophrase {
    pub fn new(alphabet: Arc<Alphabet>, proj: Vec<Sym>, words: Vec<Vec<u32>>) -> Result<Self> {
        let flat: Vec<u32> = words.iter().flatten().copied().collect();
        occurrence_positions(&flat, proj.len())?;
        if let Some(s) = proj.iter().find(|s| s.index() >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("#{}", s.0)));
        }
        Ok(Self { alphabet, proj, words })
    }

    /// Parses `A B | B A` (or `AB|BA`) with `(letter, symbol)` projections.
    pub fn parse(alphabet: Arc<Alphabet>, phrase: &str, proj: &[(&str, &str)]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut words = Vec::new();
        for part in phrase.split('|') {
            let mut w = Vec::new();
            for t in split_tokens(part) {
                let id = match names.iter().position(|n| *n == t) {
                    Some(i) => i,
                    None => {
                        names.push(t);
                        names.len() - 1
                    }
                };
                w.push(id as u32);
            }
            words.push(w);
        }
        let mut p = Vec::new();
        for n in &names {
            let (_, s) = proj
                .iter()
                .find(|(l, _)| l == n)
                .ok_or_else(|| Error::UnknownSymbol(format!("no projection for letter {n}")))?;
            p.push(alphabet.sym(s)?);
        }
        Self::new(alphabet, p, words)
    }

    pub fn from_nanoword(w: &Nanoword) -> Self {
        Self { alphabet: w.alphabet_arc().clone(), proj: w.projections().to_vec(), words: vec![w.seq().to_vec()] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn projections(&self) -> &[Sym] {
        &self.proj
    }

    pub fn letter_count(&self) -> usize {
        self.proj.len()
    }

    /// The concatenation `w_1 ⋯ w_k` as a nanoword.
    pub fn concatenation(&self) -> Nanoword {
        Nanoword::from_parts_unchecked(self.alphabet.clone(), self.proj.clone(), self.words.concat())
    }

    pub fn is_even(&self) -> bool {
        self.words.iter().all(|w| w.len() % 2 == 0)
    }

    /// 0 if both entries of the letter lie in one word, 1 otherwise.
    pub fn epsilon(&self, letter: u32) -> Result<u8> {
        if letter as usize >= self.proj.len() {
            return Err(Error::UnknownLetter(letter as usize));
        }
        let hits: Vec<usize> =
            self.words.iter().enumerate().filter(|(_, w)| w.contains(&letter)).map(|(i, _)| i).collect();
        Ok(u8::from(hits.len() != 1))
    }

    /// The position-forced ι (entry `i` of `w_r` ↔ entry `n_r + 1 − i`), if it is a
    /// well-defined letter involution satisfying `|ι(A)| = τ^{ε(A)}(|A|)`.
    pub fn symmetry_witness(&self) -> Option<SymmetryWitness> {
        let n = self.proj.len();
        let mut iota = vec![u32::MAX; n];
        for w in &self.words {
            let m = w.len();
            for i in 0..m {
                let (a, b) = (w[i], w[m - 1 - i]);
                if iota[a as usize] == u32::MAX {
                    iota[a as usize] = b;
                } else if iota[a as usize] != b {
                    return None;
                }
            }
        }
        let epsilon: Vec<u8> = (0..n as u32).map(|l| self.epsilon(l).expect("letter")).collect();
        for a in 0..n {
            let b = iota[a] as usize;
            if iota[b] as usize != a {
                return None;
            }
            if self.proj[b] != self.alphabet.tau_pow(self.proj[a], epsilon[a]) {
                return None;
            }
        }
        Some(SymmetryWitness { iota, epsilon })
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_witness().is_some()
    }
}

pub fn symmetry_witness(v: &Nanophrase) -> Option<SymmetryWitness> {
    v.symmetry_witness()
}

pub fn is_even(v: &Nanophrase) -> bool {
    v.is_even()
}

pub fn epsilon(v: &Nanophrase, letter: u32) -> Result<u8> {
    v.epsilon(letter)
}

use std::fmt::Write as _;

use super::alphabet::{Alphabet, OrbitKind, Sym};
use super::pi::PiElement;

/// One syllable `z_r^exp` of a reduced word in Π, keyed by orbit index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub orbit: u32,
    pub exp: i64,
}

/// A reduced word in Π = *_{free orbits} ℤ * *_{fixed orbits} ℤ/2.
///
/// The generator of a free orbit is `z_r` for its representative `r`, with
/// `z_{τ(r)} = z_r^{-1}`. Fixed orbits carry exponent 1 only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiWord {
    syllables: Vec<Syllable>,
    torsion: Vec<bool>,
}

impl PiWord {
    pub fn identity(alphabet: &Alphabet) -> Self {
        Self {
            syllables: Vec::new(),
            torsion: alphabet.orbits().iter().map(|o| o.kind == OrbitKind::Fixed).collect(),
        }
    }

    /// `z_a` for a symbol `a`.
    pub fn generator(alphabet: &Alphabet, a: Sym) -> Self {
        let mut w = Self::identity(alphabet);
        w.push(Syllable { orbit: alphabet.orbit_index(a) as u32, exp: alphabet.sign(a) });
        w
    }

    /// Builds a reduced word from arbitrary syllables.
    pub fn from_syllables(alphabet: &Alphabet, syllables: impl IntoIterator<Item = Syllable>) -> Self {
        let mut w = Self::identity(alphabet);
        for s in syllables {
            w.push(s);
        }
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    fn same_group(&self, other: &Self) -> bool {
        self.torsion == other.torsion
    }

    fn normalize_exp(&self, orbit: u32, exp: i64) -> i64 {
        if self.torsion[orbit as usize] {
            exp.rem_euclid(2)
        } else {
            exp
        }
    }

    fn push(&mut self, s: Syllable) {
        let exp = self.normalize_exp(s.orbit, s.exp);
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.orbit == s.orbit {
                let e = self.torsion[s.orbit as usize];
                let sum = last.exp + exp;
                let sum = if e { sum.rem_euclid(2) } else { sum };
                if sum == 0 {
                    self.syllables.pop();
                } else {
                    last.exp = sum;
                }
                return;
            }
        }
        self.syllables.push(Syllable { orbit: s.orbit, exp });
    }

    pub fn multiply(&self, other: &Self) -> crate::Result<Self> {
        if !self.same_group(other) {
            return Err(crate::Error::AlphabetMismatch);
        }
        let mut w = self.clone();
        for &s in &other.syllables {
            w.push(s);
        }
        Ok(w)
    }

    pub fn inverse(&self) -> Self {
        let mut w = Self { syllables: Vec::new(), torsion: self.torsion.clone() };
        for s in self.syllables.iter().rev() {
            w.push(Syllable { orbit: s.orbit, exp: -s.exp });
        }
        w
    }

    /// Returns `(c, core)` with `self = c · core · c⁻¹` and `core` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (Self, Self) {
        let s = &self.syllables;
        let (mut i, mut j) = (0usize, s.len());
        let mut conj = Vec::new();
        let mut core: Vec<Syllable> = Vec::new();
        while j > i + 1 && s[i].orbit == s[j - 1].orbit {
            let o = s[i].orbit;
            let (a, b) = (s[i].exp, s[j - 1].exp);
            let total = self.normalize_exp(o, a + b);
            if total == 0 {
                conj.push(s[i]);
                i += 1;
                j -= 1;
                continue;
            }
            // z^a u z^b is conjugate to z^{a+b} u; peel z^a and merge into the tail.
            conj.push(s[i]);
            core.extend_from_slice(&s[i + 1..j - 1]);
            core.push(Syllable { orbit: o, exp: total });
            i = j;
            break;
        }
        if i < j {
            core.extend_from_slice(&s[i..j]);
        }
        let c = Self { syllables: conj, torsion: self.torsion.clone() };
        let core = Self { syllables: core, torsion: self.torsion.clone() };
        (c, core)
    }

    /// Conjugacy in a free product: cyclic reductions agree up to rotation of syllables.
    pub fn is_conjugate(&self, other: &Self) -> crate::Result<bool> {
        if !self.same_group(other) {
            return Err(crate::Error::AlphabetMismatch);
        }
        Ok(self.conjugacy_class() == other.conjugacy_class())
    }

    /// The lexicographically least syllable rotation of the cyclic reduction.
    pub fn conjugacy_class(&self) -> Vec<Syllable> {
        let (_, core) = self.cyclic_reduction();
        let s = core.syllables;
        if s.is_empty() {
            return s;
        }
        (0..s.len())
            .map(|k| {
                let mut r = s[k..].to_vec();
                r.extend_from_slice(&s[..k]);
                r
            })
            .min()
            .expect("nonempty")
    }

    pub fn abelianize(&self, alphabet: &Alphabet) -> PiElement {
        let mut x = PiElement::zero();
        for s in &self.syllables {
            let rep = alphabet.orbits()[s.orbit as usize].representative;
            x += &PiElement::of_letter(alphabet, rep).scale(s.exp);
        }
        x
    }

    /// Prints `z_a z_b z_a^-1`, or `1` for the identity.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        display_syllables(&self.syllables, alphabet)
    }
}

pub fn display_syllables(syllables: &[Syllable], alphabet: &Alphabet) -> String {
    if syllables.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    for (k, s) in syllables.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let name = alphabet.name(alphabet.orbits()[s.orbit as usize].representative);
        if s.exp == 1 {
            let _ = write!(out, "z_{name}");
        } else {
            let _ = write!(out, "z_{name}^{}", s.exp);
        }
    }
    out
}

pub fn pi_word_multiply(u: &PiWord, v: &PiWord) -> crate::Result<PiWord> {
    u.multiply(v)
}

pub fn pi_word_is_conjugate(u: &PiWord, v: &PiWord) -> crate::Result<bool> {
    u.is_conjugate(v)
}

pub fn abelianize(alphabet: &Alphabet, u: &PiWord) -> PiElement {
    u.abelianize(alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(al: &Alphabet, n: &str) -> PiWord {
        PiWord::generator(al, al.sym(n).unwrap())
    }

    fn prod(ws: &[PiWord]) -> PiWord {
        ws.iter().skip(1).fold(ws[0].clone(), |acc, w| acc.multiply(w).unwrap())
    }

    #[test]
    fn inverse_pair_cancels() {
        let al = Alphabet::free(1);
        assert!(prod(&[z(&al, "a"), z(&al, "A")]).is_identity());
        assert!(prod(&[z(&al, "a"), z(&al, "a").inverse()]).is_identity());
    }

    #[test]
    fn torsion_generator_has_order_two() {
        let al = Alphabet::from_pairs(&["a", "b", "c"], &[("a", "b"), ("c", "c")]).unwrap();
        assert!(prod(&[z(&al, "c"), z(&al, "c")]).is_identity());
        assert_eq!(z(&al, "c").inverse(), z(&al, "c"));
    }

    #[test]
    fn commutator_of_wab() {
        let al = Alphabet::free(2);
        let g = prod(&[z(&al, "a"), z(&al, "b"), z(&al, "A"), z(&al, "B")]);
        assert_eq!(g.len(), 4);
        assert_eq!(g.display(&al), "z_a z_b z_a^-1 z_b^-1");
        assert!(abelianize(&al, &g).is_zero());
        let shifted = prod(&[z(&al, "b"), z(&al, "A"), z(&al, "B"), z(&al, "a")]);
        assert!(pi_word_is_conjugate(&g, &shifted).unwrap());
        assert!(!pi_word_is_conjugate(&z(&al, "a"), &z(&al, "b")).unwrap());
    }

    #[test]
    fn abelianize_square() {
        let al = Alphabet::free(1);
        let g = prod(&[z(&al, "a"), z(&al, "a")]);
        assert_eq!(g.abelianize(&al), PiElement::of_letter(&al, Sym(0)).scale(2));
        assert!(PiWord::identity(&al).abelianize(&al).is_zero());
    }

    #[test]
    fn mismatched_groups_rejected() {
        let a = PiWord::identity(&Alphabet::free(1));
        let b = PiWord::identity(&Alphabet::fixed(1));
        assert!(a.multiply(&b).is_err());
    }

    /// All reduced words with at most `max_len` syllables and exponents in `{±1, ±2}` (1 on torsion).
    fn reduced_words(al: &Alphabet, max_len: usize) -> Vec<PiWord> {
        let mut gens: Vec<Syllable> = Vec::new();
        for (i, o) in al.orbits().iter().enumerate() {
            if o.kind == OrbitKind::Fixed {
                gens.push(Syllable { orbit: i as u32, exp: 1 });
            } else {
                for e in [-2, -1, 1, 2] {
                    gens.push(Syllable { orbit: i as u32, exp: e });
                }
            }
        }
        let mut out = vec![PiWord::identity(al)];
        let mut layer = vec![PiWord::identity(al)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &g in &gens {
                    if w.syllables.last().is_some_and(|l| l.orbit == g.orbit) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.syllables.push(g);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn conjugacy_matches_brute_force() {
        for al in [
            Alphabet::free(2),
            Alphabet::from_pairs(&["a", "b", "c"], &[("a", "b"), ("c", "c")]).unwrap(),
        ] {
            let words: Vec<PiWord> = reduced_words(&al, 3)
                .into_iter()
                .filter(|w| w.syllables.iter().all(|s| s.exp.abs() == 1))
                .collect();
            let conjugators = reduced_words(&al, 2);
            for u in &words {
                let orbit: std::collections::HashSet<PiWord> = conjugators
                    .iter()
                    .map(|x| prod(&[x.clone(), u.clone(), x.inverse()]))
                    .collect();
                for v in &words {
                    // every conjugate of a ≤3-syllable word by a reduced x has a witness of
                    // syllable length ≤ 2 among words of length ≤ 3
                    let brute = orbit.contains(v);
                    assert_eq!(u.is_conjugate(v).unwrap(), brute, "{:?} {:?}", u, v);
                }
            }
        }
    }

    #[test]
    fn shifted_wab_brute_force() {
        let al = Alphabet::free(2);
        let g = prod(&[z(&al, "a"), z(&al, "b"), z(&al, "A"), z(&al, "B")]);
        let h = prod(&[z(&al, "b"), z(&al, "A"), z(&al, "B"), z(&al, "a")]);
        let found = reduced_words(&al, 4)
            .iter()
            .any(|x| prod(&[x.clone(), g.clone(), x.inverse()]) == h);
        assert!(found);
    }

    fn arb_word() -> impl Strategy<Value = Vec<(u32, i64)>> {
        prop::collection::vec((0u32..3, -3i64..4), 0..8)
    }

    fn build(al: &Alphabet, raw: &[(u32, i64)]) -> PiWord {
        PiWord::from_syllables(al, raw.iter().map(|&(orbit, exp)| Syllable { orbit, exp }))
    }

    proptest! {
        #[test]
        fn group_laws(x in arb_word(), y in arb_word(), w in arb_word()) {
            let al = Alphabet::from_pairs(&["a", "b", "c", "d", "e"], &[("a", "b"), ("c", "d"), ("e", "e")]).unwrap();
            let (x, y, w) = (build(&al, &x), build(&al, &y), build(&al, &w));
            prop_assert_eq!(x.multiply(&y).unwrap().multiply(&w).unwrap(), x.multiply(&y.multiply(&w).unwrap()).unwrap());
            prop_assert!(x.multiply(&x.inverse()).unwrap().is_identity());
            let again = PiWord::from_syllables(&al, x.syllables().iter().copied());
            prop_assert_eq!(&again, &x);
            for pair in x.syllables().windows(2) {
                prop_assert!(pair[0].orbit != pair[1].orbit);
            }
            let conj = y.multiply(&x).unwrap().multiply(&y.inverse()).unwrap();
            prop_assert!(x.is_conjugate(&conj).unwrap());
            let (c, core) = x.cyclic_reduction();
            prop_assert_eq!(c.multiply(&core).unwrap().multiply(&c.inverse()).unwrap(), x.clone());
        }
    }
}

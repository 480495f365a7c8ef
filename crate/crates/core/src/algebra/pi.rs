use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::alphabet::{Alphabet, OrbitKind, Sym};

/// An element of the abelian group π(α, τ) = ℤ^{free orbits} ⊕ (ℤ/2)^{fixed points}.
///
/// Keys are orbit indices. Zero coefficients and zero bits are never stored,
/// so derived equality is equality in π.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiElement {
    free: BTreeMap<u32, i64>,
    torsion: BTreeSet<u32>,
}

impl PiElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.torsion.is_empty()
    }

    /// The generator `a` of π for a symbol `a` of the ground alphabet.
    pub fn of_letter(alphabet: &Alphabet, a: Sym) -> Self {
        let orbit = alphabet.orbit_index(a) as u32;
        let mut x = Self::zero();
        match alphabet.orbit(a).kind {
            OrbitKind::Free => {
                x.free.insert(orbit, alphabet.sign(a));
            }
            OrbitKind::Fixed => {
                x.torsion.insert(orbit);
            }
        }
        x
    }

    pub fn from_parts(
        free: impl IntoIterator<Item = (u32, i64)>,
        torsion: impl IntoIterator<Item = u32>,
    ) -> Self {
        let mut x = Self::zero();
        for (o, c) in free {
            x.add_free(o, c);
        }
        for o in torsion {
            x.flip_torsion(o);
        }
        x
    }

    fn add_free(&mut self, orbit: u32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.free.entry(orbit).or_insert(0);
        *e += c;
        if *e == 0 {
            self.free.remove(&orbit);
        }
    }

    fn flip_torsion(&mut self, orbit: u32) {
        if !self.torsion.remove(&orbit) {
            self.torsion.insert(orbit);
        }
    }

    pub fn free_coeffs(&self) -> &BTreeMap<u32, i64> {
        &self.free
    }

    pub fn torsion_bits(&self) -> &BTreeSet<u32> {
        &self.torsion
    }

    pub fn free_coeff(&self, orbit: u32) -> i64 {
        self.free.get(&orbit).copied().unwrap_or(0)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            free: self.free.iter().map(|(&o, &c)| (o, c * k)).collect(),
            torsion: if k % 2 == 0 { BTreeSet::new() } else { self.torsion.clone() },
        }
    }

    /// True when `x = -x`, i.e. the free part vanishes.
    pub fn is_self_negative(&self) -> bool {
        self.free.is_empty()
    }

    /// Chooses between `x` and `-x` the one whose first nonzero free coefficient is positive.
    /// Returns the representative and whether `x` was negated.
    pub fn sign_normalized(&self) -> (Self, bool) {
        match self.free.values().next() {
            Some(&c) if c < 0 => (-self, true),
            _ => (self.clone(), false),
        }
    }

    /// Sum of absolute free coefficients plus the number of torsion bits.
    pub fn degree(&self) -> u64 {
        self.free.values().map(|c| c.unsigned_abs()).sum::<u64>() + self.torsion.len() as u64
    }

    /// Pretty form over orbit representatives: `2a+b-c`, torsion terms suffixed `(2)`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (&o, &c) in &self.free {
            let name = alphabet.name(alphabet.orbits()[o as usize].representative);
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                let _ = write!(out, "{sign}{name}");
            } else {
                let _ = write!(out, "{sign}{mag}{name}");
            }
        }
        for &o in &self.torsion {
            let name = alphabet.name(alphabet.orbits()[o as usize].representative);
            let sign = if out.is_empty() { "" } else { "+" };
            let _ = write!(out, "{sign}{name}(2)");
        }
        out
    }
}

impl AddAssign<&PiElement> for PiElement {
    fn add_assign(&mut self, rhs: &PiElement) {
        for (&o, &c) in &rhs.free {
            self.add_free(o, c);
        }
        for &o in &rhs.torsion {
            self.flip_torsion(o);
        }
    }
}

impl Add<&PiElement> for &PiElement {
    type Output = PiElement;
    fn add(self, rhs: &PiElement) -> PiElement {
        let mut x = self.clone();
        x += rhs;
        x
    }
}

impl Add for PiElement {
    type Output = PiElement;
    fn add(mut self, rhs: PiElement) -> PiElement {
        self += &rhs;
        self
    }
}

impl Neg for &PiElement {
    type Output = PiElement;
    fn neg(self) -> PiElement {
        PiElement {
            free: self.free.iter().map(|(&o, &c)| (o, -c)).collect(),
            torsion: self.torsion.clone(),
        }
    }
}

impl Neg for PiElement {
    type Output = PiElement;
    fn neg(self) -> PiElement {
        -&self
    }
}

impl Sub<&PiElement> for &PiElement {
    type Output = PiElement;
    fn sub(self, rhs: &PiElement) -> PiElement {
        self + &(-rhs)
    }
}

impl Sub for PiElement {
    type Output = PiElement;
    fn sub(self, rhs: PiElement) -> PiElement {
        &self - &rhs
    }
}

impl Mul<i64> for &PiElement {
    type Output = PiElement;
    fn mul(self, k: i64) -> PiElement {
        self.scale(k)
    }
}

pub fn pi_of_letter(alphabet: &Alphabet, a: Sym) -> PiElement {
    PiElement::of_letter(alphabet, a)
}

pub fn pi_add(x: &PiElement, y: &PiElement) -> PiElement {
    x + y
}

pub fn pi_negate(x: &PiElement) -> PiElement {
    -x
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn letter(al: &Alphabet, n: &str) -> PiElement {
        PiElement::of_letter(al, al.sym(n).unwrap())
    }

    #[test]
    fn defining_relation() {
        let al = Alphabet::free(1);
        assert!(pi_add(&letter(&al, "a"), &letter(&al, "A")).is_zero());
        assert_eq!(letter(&al, "A"), pi_negate(&letter(&al, "a")));
    }

    #[test]
    fn torsion_has_order_two() {
        let al = Alphabet::fixed(1);
        let c = letter(&al, "a");
        assert!(!c.is_zero());
        assert!(pi_add(&c, &c).is_zero());
        assert_eq!(-&c, c);
    }

    #[test]
    fn sparse_form_of_combination() {
        // a + 2b + c over three free orbits {a,d}, {b,e}, {c,f}
        let al = Alphabet::from_pairs(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "d"), ("b", "e"), ("c", "f")],
        )
        .unwrap();
        let x = &(&letter(&al, "a") + &letter(&al, "b").scale(2)) + &letter(&al, "c");
        assert_eq!(x, PiElement::from_parts([(0, 1), (1, 2), (2, 1)], []));
        assert_eq!(x.display(&al), "a+2b+c");
        let y = &x + &letter(&al, "f");
        assert_eq!(y.display(&al), "a+2b");
        assert_eq!((-y).display(&al), "-a-2b");
    }

    #[test]
    fn torsion_display() {
        let al = Alphabet::from_pairs(&["a", "b", "c"], &[("a", "b"), ("c", "c")]).unwrap();
        let x = &letter(&al, "b") + &letter(&al, "c");
        assert_eq!(x.display(&al), "-a+c(2)");
    }

    fn arb_element() -> impl Strategy<Value = PiElement> {
        (prop::collection::vec((0u32..3, -4i64..5), 0..4), prop::collection::vec(3u32..5, 0..3))
            .prop_map(|(f, t)| PiElement::from_parts(f, t))
    }

    proptest! {
        #[test]
        fn abelian_group_laws(x in arb_element(), y in arb_element(), z in arb_element()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert!((&x - &x).is_zero());
            prop_assert_eq!(&x + &PiElement::zero(), x.clone());
            let (n, flipped) = x.sign_normalized();
            prop_assert_eq!(if flipped { -&n } else { n.clone() }, x.clone());
        }
    }
}

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use super::alphabet::{Alphabet, OrbitKind};
use super::pi::PiElement;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    Rationals,
    PrimeField(u64),
}

/// A value of φ: an exact rational or a residue modulo a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Rational(Ratio<i64>),
    Mod { value: u64, p: u64 },
}

impl FieldValue {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(r) => r.is_zero(),
            FieldValue::Mod { value, .. } => *value == 0,
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(r) => write!(f, "{r}"),
            FieldValue::Mod { value, p } => write!(f, "{value} (mod {p})"),
        }
    }
}

/// A homomorphism φ: π → F, given by its values on orbit representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhiSpec {
    target: Target,
    values: Vec<Ratio<i64>>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PhiSpec {
    /// `values[i]` is φ of the representative of orbit `i`.
    pub fn new(alphabet: &Alphabet, target: Target, values: Vec<Ratio<i64>>) -> Result<Self> {
        if values.len() != alphabet.orbits().len() {
            return Err(Error::InvalidPhi(format!(
                "expected {} orbit values, got {}",
                alphabet.orbits().len(),
                values.len()
            )));
        }
        if let Target::PrimeField(p) = target {
            if !is_prime(p) {
                return Err(Error::InvalidPhi(format!("{p} is not prime")));
            }
            if values.iter().any(|v| !v.is_integer()) {
                return Err(Error::InvalidPhi("prime-field values must be integers".into()));
            }
        }
        let spec = Self { target, values };
        for (i, o) in alphabet.orbits().iter().enumerate() {
            if o.kind == OrbitKind::Fixed && !spec.reduce(spec.values[i] * 2).is_zero() {
                return Err(Error::InvalidPhi(format!(
                    "2·φ({}) must vanish on a fixed point",
                    alphabet.name(o.representative)
                )));
            }
        }
        Ok(spec)
    }

    pub fn rational(alphabet: &Alphabet, values: &[i64]) -> Result<Self> {
        Self::new(alphabet, Target::Rationals, values.iter().map(|&v| Ratio::from_integer(v)).collect())
    }

    pub fn prime_field(alphabet: &Alphabet, p: u64, values: &[i64]) -> Result<Self> {
        Self::new(alphabet, Target::PrimeField(p), values.iter().map(|&v| Ratio::from_integer(v)).collect())
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn values(&self) -> &[Ratio<i64>] {
        &self.values
    }

    fn reduce(&self, r: Ratio<i64>) -> FieldValue {
        match self.target {
            Target::Rationals => FieldValue::Rational(r),
            Target::PrimeField(p) => FieldValue::Mod { value: r.to_integer().rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn apply(&self, x: &PiElement) -> FieldValue {
        let mut acc = Ratio::zero();
        for (&o, &c) in x.free_coeffs() {
            acc += self.values[o as usize] * c;
        }
        for &o in x.torsion_bits() {
            acc += self.values[o as usize];
        }
        self.reduce(acc)
    }

    /// φ(x) as an integer; defined when every value is an integer.
    pub fn apply_integer(&self, x: &PiElement) -> Option<i128> {
        let mut acc: i128 = 0;
        for (&o, &c) in x.free_coeffs() {
            let v = self.values[o as usize];
            if !v.is_integer() {
                return None;
            }
            acc += *v.numer() as i128 * c as i128;
        }
        for &o in x.torsion_bits() {
            let v = self.values[o as usize];
            if !v.is_integer() {
                return None;
            }
            acc += *v.numer() as i128;
        }
        Some(acc)
    }

    /// A short label such as `a=1,b=-1`, used as a column key.
    pub fn label(&self, alphabet: &Alphabet) -> String {
        let body: Vec<String> = alphabet
            .orbits()
            .iter()
            .zip(&self.values)
            .map(|(o, v)| format!("{}={}", alphabet.name(o.representative), v))
            .collect();
        match self.target {
            Target::Rationals => body.join(","),
            Target::PrimeField(p) => format!("{} mod {p}", body.join(",")),
        }
    }
}

pub fn phi_apply(phi: &PhiSpec, x: &PiElement) -> FieldValue {
    phi.apply(x)
}

/// All ±1 assignments on free orbits with fixed orbits sent to 0, one per pair {φ, −φ}.
pub fn default_battery(alphabet: &Alphabet) -> Vec<PhiSpec> {
    let free: Vec<usize> = alphabet
        .orbits()
        .iter()
        .enumerate()
        .filter(|(_, o)| o.kind == OrbitKind::Free)
        .map(|(i, _)| i)
        .collect();
    let k = free.len();
    if k == 0 {
        return vec![PhiSpec::rational(alphabet, &vec![0; alphabet.orbits().len()]).expect("zero phi")];
    }
    (0..1u64 << (k - 1))
        .map(|mask| {
            let mut values = vec![0i64; alphabet.orbits().len()];
            for (bit, &o) in free.iter().enumerate() {
                values[o] = if bit > 0 && mask >> (bit - 1) & 1 == 1 { -1 } else { 1 };
            }
            PhiSpec::rational(alphabet, &values).expect("valid battery phi")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::alphabet::Sym;

    #[test]
    fn kills_defining_relation() {
        let al = Alphabet::free(1);
        let phi = PhiSpec::rational(&al, &[1]).unwrap();
        let x = &PiElement::of_letter(&al, Sym(0)) + &PiElement::of_letter(&al, Sym(1));
        assert!(phi_apply(&phi, &x).is_zero());
    }

    #[test]
    fn phi_zero_on_signs() {
        let al = Alphabet::signs();
        let phi = PhiSpec::rational(&al, &[1]).unwrap();
        for k in -3..=3 {
            let x = PiElement::of_letter(&al, Sym(0)).scale(k);
            assert_eq!(phi.apply(&x), FieldValue::Rational(Ratio::from_integer(k)));
        }
        let minus = PiElement::of_letter(&al, Sym(1));
        assert_eq!(phi.apply_integer(&minus), Some(-1));
    }

    #[test]
    fn torsion_over_gf2() {
        let al = Alphabet::fixed(1);
        let phi = PhiSpec::prime_field(&al, 2, &[1]).unwrap();
        let c = PiElement::of_letter(&al, Sym(0));
        assert!(!phi.apply(&c).is_zero());
        assert!(phi.apply(&(&c + &c)).is_zero());
        assert!(PhiSpec::rational(&al, &[1]).is_err());
        assert!(PhiSpec::prime_field(&al, 3, &[1]).is_err());
        assert!(PhiSpec::prime_field(&al, 4, &[0]).is_err());
    }

    #[test]
    fn battery_size() {
        assert_eq!(default_battery(&Alphabet::free(1)).len(), 1);
        assert_eq!(default_battery(&Alphabet::free(3)).len(), 4);
        let mixed = Alphabet::from_pairs(&["a", "b", "c"], &[("a", "b"), ("c", "c")]).unwrap();
        let b = default_battery(&mixed);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].values()[1], Ratio::from_integer(0));
    }
}

use super::filling::{is_annihilating, pair, SVector};
use super::pairing::pairing_of_nanoword;
use crate::algebra::{Alphabet, OrbitKind, PiElement};
use crate::error::{Error, Result};
use crate::linalg::{hermite_basis, lattice_contains};
use crate::moves::{delete_factor, Factor};
use crate::words::Nanoword;

/// Checks the vanishing identities for the surgery filling of `w` along `factor` and
/// that the filling `{C + C′} ∪ {λ_B} ∪ {s}` of `p(w) ⊕ p(x′)⁻` annihilates.
pub fn verify_surgery_filling(w: &Nanoword, factor: &Factor) -> Result<bool> {
    let phrase = factor.phrase(w);
    if !phrase.is_even() {
        return Err(Error::InvalidFactor(format!("{} is not even", factor.segments_string())));
    }
    let Some(witness) = phrase.symmetry_witness() else {
        return Err(Error::InvalidFactor(format!("{} is not symmetric", factor.segments_string())));
    };
    let n = w.letter_count();
    let letters = factor.letters();
    let mut in_factor = vec![false; n];
    for &l in letters {
        in_factor[l as usize] = true;
    }
    let x = delete_factor(w, factor);
    let pw = pairing_of_nanoword(w);
    let sum = pw.sum(&pairing_of_nanoword(&x).opposite())?;

    let mut lambda_b = Vec::new();
    for (k, &b) in letters.iter().enumerate() {
        let bi = witness.iota[k] as usize;
        if bi < k {
            continue;
        }
        let (ib, jb) = (b as usize + 1, letters[bi] as usize + 1);
        lambda_b.push(if bi == k {
            SVector::basis(ib)
        } else {
            SVector::from_terms(vec![(ib, 1), (jb, if witness.epsilon[k] == 1 { -1 } else { 1 })])
        });
    }
    let context: Vec<usize> = (0..n).filter(|&l| !in_factor[l]).collect();

    let vanishes = lambda_b.iter().all(|u| {
        lambda_b.iter().all(|v| pair(&pw, u, v).is_zero())
            && context.iter().all(|&c| pair(&pw, u, &SVector::basis(c + 1)).is_zero())
            && pair(&pw, u, &SVector::s()).is_zero()
    });

    let mut filling = vec![SVector::s()];
    filling.extend(lambda_b.iter().cloned());
    for (k, &c) in context.iter().enumerate() {
        filling.push(SVector::plus(c + 1, n + k + 1));
    }
    Ok(vanishes && is_annihilating(&sum, &filling))
}

/// A subgroup of π given by generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    basis: Vec<Vec<i64>>,
}

fn coordinates(alphabet: &Alphabet, x: &PiElement) -> Vec<i64> {
    (0..alphabet.orbits().len() as u32)
        .map(|o| match alphabet.orbits()[o as usize].kind {
            OrbitKind::Free => x.free_coeff(o),
            OrbitKind::Fixed => i64::from(x.torsion_bits().contains(&o)),
        })
        .collect()
}

impl Subgroup {
    pub fn new(alphabet: &Alphabet, gens: &[PiElement]) -> Self {
        let dim = alphabet.orbits().len();
        let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| coordinates(alphabet, g)).collect();
        // torsion coordinates live in ℤ/2
        for (o, orbit) in alphabet.orbits().iter().enumerate() {
            if orbit.kind == OrbitKind::Fixed {
                let mut v = vec![0; dim];
                v[o] = 2;
                rows.push(v);
            }
        }
        Self { basis: hermite_basis(&rows, dim) }
    }

    /// π itself.
    pub fn whole(alphabet: &Alphabet) -> Self {
        let gens: Vec<PiElement> =
            alphabet.orbits().iter().map(|o| PiElement::of_letter(alphabet, o.representative)).collect();
        Self::new(alphabet, &gens)
    }

    pub fn zero(alphabet: &Alphabet) -> Self {
        Self::new(alphabet, &[])
    }

    pub fn contains(&self, alphabet: &Alphabet, x: &PiElement) -> bool {
        lattice_contains(&self.basis, &coordinates(alphabet, x))
    }
}

/// Deletes every letter `A` with `e_w(A, s) ∉ H_{|A|}`; `subgroups` is indexed by orbit.
pub fn covering(w: &Nanoword, subgroups: &[Subgroup]) -> Result<Nanoword> {
    let al = w.alphabet();
    if subgroups.len() != al.orbits().len() {
        return Err(Error::InvalidPairing(format!(
            "expected {} subgroups, one per orbit",
            al.orbits().len()
        )));
    }
    let p = pairing_of_nanoword(w);
    let keep: Vec<bool> = (0..w.letter_count())
        .map(|l| subgroups[al.orbit_index(w.proj(l as u32))].contains(al, p.e(l + 1, 0)))
        .collect();
    Ok(w.retain_letters(&keep))
}

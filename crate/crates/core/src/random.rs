//! Random generators for words, symmetric phrases and surgery instances.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Alphabet, PiElement, Sym};
use crate::moves::Factor;
use crate::pairings::AlphaPairing;
use crate::words::{Nanophrase, Nanoword};

pub fn random_symbol<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet) -> Sym {
    Sym(rng.gen_range(0..alphabet.len() as u32))
}

/// A uniformly shuffled nanoword with `letters` letters and uniform projections.
pub fn random_nanoword<R: Rng + ?Sized>(rng: &mut R, alphabet: &Arc<Alphabet>, letters: usize) -> Nanoword {
    let mut seq: Vec<u32> = (0..letters as u32).flat_map(|l| [l, l]).collect();
    seq.shuffle(rng);
    let proj = (0..letters).map(|_| random_symbol(rng, alphabet)).collect();
    Nanoword::new(alphabet.clone(), proj, seq).expect("valid by construction")
}

/// A random symmetric nanophrase whose words have the given (even) lengths.
///
/// Mirror pairs of entries are grouped either into an ι-fixed letter or, two at a
/// time, into a letter and its ι-image with `|ι(A)| = τ^{ε(A)}(|A|)`.
pub fn random_symmetric_phrase<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Arc<Alphabet>,
    lengths: &[usize],
) -> Nanophrase {
    assert!(lengths.iter().all(|n| n % 2 == 0), "word lengths must be even");
    // (word, position) of the left entry of each mirror pair
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (r, &n) in lengths.iter().enumerate() {
        for i in 0..n / 2 {
            pairs.push((r, i));
        }
    }
    pairs.shuffle(rng);
    let mut words: Vec<Vec<u32>> = lengths.iter().map(|&n| vec![u32::MAX; n]).collect();
    let mut proj = Vec::new();
    let mirror = |(r, i): (usize, usize)| (r, lengths[r] - 1 - i);
    let mut k = 0;
    while k < pairs.len() {
        let double = k + 1 < pairs.len() && rng.gen_bool(0.6);
        if !double {
            let p = pairs[k];
            let q = mirror(p);
            let l = proj.len() as u32;
            words[p.0][p.1] = l;
            words[q.0][q.1] = l;
            proj.push(random_symbol(rng, alphabet));
            k += 1;
            continue;
        }
        let (p, q) = (pairs[k], pairs[k + 1]);
        let q = if rng.gen_bool(0.5) { q } else { mirror(q) };
        let (pb, qb) = (mirror(p), mirror(q));
        let a = proj.len() as u32;
        let b = a + 1;
        words[p.0][p.1] = a;
        words[q.0][q.1] = a;
        words[pb.0][pb.1] = b;
        words[qb.0][qb.1] = b;
        let s = random_symbol(rng, alphabet);
        let eps = u8::from(p.0 != q.0);
        proj.push(s);
        proj.push(alphabet.tau_pow(s, eps));
        k += 2;
    }
    Nanophrase::new(alphabet.clone(), proj, words).expect("valid by construction")
}

/// A random even symmetric factor with `k` segments inserted into a random context word.
pub fn random_surgery_instance<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Arc<Alphabet>,
    context_letters: usize,
    factor_lengths: &[usize],
) -> (Nanoword, Factor) {
    let phrase = random_symmetric_phrase(rng, alphabet, factor_lengths);
    let context = random_nanoword(rng, alphabet, context_letters);
    let m = phrase.letter_count() as u32;
    let mut gaps: Vec<usize> = (0..factor_lengths.len()).map(|_| rng.gen_range(0..=context.len())).collect();
    gaps.sort();
    let mut seq = Vec::new();
    let mut segments = Vec::new();
    let mut next_gap = 0;
    for i in 0..=context.len() {
        while next_gap < gaps.len() && gaps[next_gap] == i {
            let start = seq.len();
            seq.extend_from_slice(&phrase.words()[next_gap]);
            segments.push((start, seq.len()));
            next_gap += 1;
        }
        if i < context.len() {
            seq.push(context.seq()[i] + m);
        }
    }
    let mut proj = phrase.projections().to_vec();
    proj.extend_from_slice(context.projections());
    let w = Nanoword::new(alphabet.clone(), proj, seq).expect("valid by construction");
    let factor = Factor::new(&w, segments).expect("segments cover the phrase letters");
    (w, factor)
}

/// A random alphabet with `free` free orbits and `fixed` fixed points.
pub fn mixed_alphabet(free: usize, fixed: usize) -> Arc<Alphabet> {
    let mut names = Vec::new();
    let mut tau = Vec::new();
    for i in 0..free {
        let c = (b'a' + i as u8) as char;
        names.push(c.to_string());
        names.push(c.to_ascii_uppercase().to_string());
        tau.push(2 * i + 1);
        tau.push(2 * i);
    }
    for j in 0..fixed {
        names.push(format!("{}", (b'p' + j as u8) as char));
        tau.push(2 * free + j);
    }
    Arc::new(Alphabet::new(names, tau).expect("valid alphabet"))
}

/// A random skew-symmetric pairing with `size` elements in `S°` and small entries.
pub fn random_skew_pairing<R: Rng + ?Sized>(rng: &mut R, alphabet: &Arc<Alphabet>, size: usize) -> AlphaPairing {
    let proj: Vec<Sym> = (0..size).map(|_| random_symbol(rng, alphabet)).collect();
    let n = size + 1;
    let mut e = vec![vec![PiElement::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut x = PiElement::zero();
            for _ in 0..rng.gen_range(0..3) {
                let g = PiElement::of_letter(alphabet, random_symbol(rng, alphabet));
                x += &g.scale(rng.gen_range(1..3));
            }
            e[j][i] = -&x;
            e[i][j] = x;
        }
    }
    AlphaPairing::new(alphabet.clone(), proj, e).expect("square matrix")
}

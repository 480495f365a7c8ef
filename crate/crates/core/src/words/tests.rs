use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{Alphabet, Sym};
use crate::random::random_nanoword;

fn free3() -> Arc<Alphabet> {
    Arc::new(Alphabet::free(3))
}

fn word(al: &Arc<Alphabet>, w: &str, proj: &[(&str, &str)]) -> Nanoword {
    Nanoword::parse(al.clone(), w, proj).unwrap()
}

fn phrase(al: &Arc<Alphabet>, p: &str, proj: &[(&str, &str)]) -> Nanophrase {
    Nanophrase::parse(al.clone(), p, proj).unwrap()
}

#[test]
fn canonical_form_relabels_by_first_occurrence() {
    let al = free3();
    let w = word(&al, "X Y X Y", &[("X", "a"), ("Y", "b")]);
    let c = w.canonical_form();
    assert_eq!(c.seq(), &[0, 1, 0, 1]);
    assert_eq!(al.name(c.proj(0)), "a");
    assert_eq!(al.name(c.proj(1)), "b");
    assert_eq!(c.canonical_form(), c);
    assert_eq!(c.word_string(), "L1 L2 L1 L2");
}

#[test]
fn isomorphic_words_share_canonical_forms() {
    let al = free3();
    let baab = word(&al, "BAAB", &[("A", "a"), ("B", "b")]);
    let abba = word(&al, "ABBA", &[("A", "b"), ("B", "a")]);
    assert!(baab.is_isomorphic(&abba));
    let other = word(&al, "ABBA", &[("A", "a"), ("B", "b")]);
    assert!(!baab.is_isomorphic(&other));
}

#[test]
fn parse_reports_occurrence_counts() {
    let err = Nanoword::parse(free3(), "A B A", &[("A", "a"), ("B", "b")]).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("A occurs 2 times"), "{msg}");
    assert!(msg.contains("B occurs 1"), "{msg}");
    let missing = Nanoword::parse(free3(), "A A", &[]).unwrap_err();
    assert!(matches!(missing, crate::Error::UnknownSymbol(_)));
}

#[test]
fn opposite_reverses() {
    let al = free3();
    let w = word(&al, "ABCBAC", &[("A", "a"), ("B", "b"), ("C", "c")]);
    assert_eq!(w.opposite().word_string(), "C A B C B A");
    assert_eq!(word(&al, "ABAB", &[("A", "a"), ("B", "b")]).opposite().word_string(), "B A B A");
    let e = Nanoword::empty(al.clone());
    assert_eq!(e.opposite(), e);
}

#[test]
fn concatenation_is_disjoint_with_unit() {
    let al = free3();
    let aa = word(&al, "AA", &[("A", "a")]);
    let bb = word(&al, "BB", &[("B", "b")]);
    assert_eq!(aa.concatenate(&bb).unwrap().word_string(), "A A B B");
    let abab = word(&al, "ABAB", &[("A", "a"), ("B", "b")]);
    let twice = abab.concatenate(&abab).unwrap().canonical_form();
    assert_eq!(twice.seq(), &[0, 1, 0, 1, 2, 3, 2, 3]);
    assert!(abab.concatenate(&Nanoword::empty(al.clone())).unwrap().is_isomorphic(&abab));
    let other = Nanoword::empty(Arc::new(Alphabet::signs()));
    assert!(abab.concatenate(&other).is_err());
}

#[test]
fn symmetry_examples() {
    let al = free3();
    for (x, y) in [("a", "b"), ("a", "A"), ("c", "c")] {
        let v = Nanophrase::from_nanoword(&word(&al, "ABBA", &[("A", x), ("B", y)]));
        let wit = v.symmetry_witness().unwrap();
        assert_eq!(wit.iota, vec![0, 1]);
    }
    assert!(Nanophrase::from_nanoword(&word(&al, "ABAB", &[("A", "a"), ("B", "a")])).is_symmetric());
    assert!(!Nanophrase::from_nanoword(&word(&al, "ABAB", &[("A", "a"), ("B", "b")])).is_symmetric());
    assert!(phrase(&al, "AB|BA", &[("A", "a"), ("B", "A")]).is_symmetric());
    assert!(!phrase(&al, "AB|BA", &[("A", "a"), ("B", "a")]).is_symmetric());
}

#[test]
fn evenness_and_epsilon() {
    let al = free3();
    let abba = phrase(&al, "AB|BA", &[("A", "a"), ("B", "A")]);
    assert!(abba.is_even());
    assert_eq!(abba.epsilon(0).unwrap(), 1);
    let a_a = phrase(&al, "A|A", &[("A", "a")]);
    assert!(!a_a.is_even());
    assert_eq!(a_a.epsilon(0).unwrap(), 1);
    let split = phrase(&al, "AA|BB", &[("A", "a"), ("B", "b")]);
    assert_eq!(split.epsilon(0).unwrap(), 0);
    assert!(split.epsilon(5).is_err());
    assert!(Nanophrase::from_nanoword(&word(&al, "ABCBAC", &[("A", "a"), ("B", "b"), ("C", "c")])).is_even());
}

#[test]
fn shift_examples() {
    let al = free3();
    let w = word(&al, "ABAB", &[("A", "a"), ("B", "b")]);
    let expected = word(&al, "ABAB", &[("A", "b"), ("B", "A")]);
    assert!(w.circular_shift().unwrap().is_isomorphic(&expected));
    let aa = word(&al, "AA", &[("A", "a")]);
    let shifted = aa.circular_shift().unwrap();
    assert_eq!(al.name(shifted.proj(0)), "A");
    assert_eq!(Nanoword::empty(al).circular_shift(), Err(crate::Error::EmptyWord));
}

#[test]
fn push_forward_and_pull_back_examples() {
    let al = free3();
    let w = word(&al, "ABACDCDB", &[("A", "a"), ("B", "a"), ("C", "c"), ("D", "c")]);
    let id: Vec<Sym> = al.symbols().collect();
    assert_eq!(w.push_forward(al.clone(), &id).unwrap(), w);
    let signs = Arc::new(Alphabet::signs());
    let to_signs: Vec<Sym> = al.symbols().map(|s| Sym(u32::from(al.sign(s) < 0))).collect();
    let pushed = w.push_forward(signs.clone(), &to_signs).unwrap();
    assert_eq!(pushed.seq(), w.seq());
    let bad: Vec<Sym> = al.symbols().map(|_| Sym(0)).collect();
    assert!(w.push_forward(signs, &bad).is_err());

    let orbit_a = [al.sym("a").unwrap(), al.sym("A").unwrap()];
    let pulled = w.pull_back(&orbit_a).unwrap();
    assert_eq!(pulled.seq(), &[0, 1, 0, 1]);
    assert_eq!(pulled.alphabet().len(), 2);
    assert!(w.pull_back(&[]).unwrap().is_empty());
    assert!(w.pull_back(&al.symbols().collect::<Vec<_>>()).unwrap() == w);
    assert!(w.pull_back(&[al.sym("a").unwrap()]).is_err());
}

#[test]
fn gamma_of_the_basic_word() {
    let al = free3();
    let w = word(&al, "ABAB", &[("A", "a"), ("B", "b")]);
    assert_eq!(w.gamma().display(&al), "z_a z_b z_a^-1 z_b^-1");
}

proptest! {
    #[test]
    fn shift_n_times_is_isomorphic(seed in any::<u64>(), letters in 1usize..6) {
        let al = free3();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_nanoword(&mut rng, &al, letters);
        let mut x = w.clone();
        for _ in 0..w.len() {
            x = x.circular_shift().unwrap();
        }
        prop_assert!(x.is_isomorphic(&w));
    }

    #[test]
    fn canonical_and_opposite_laws(seed in any::<u64>(), letters in 0usize..7) {
        let al = free3();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_nanoword(&mut rng, &al, letters);
        let c = w.canonical_form();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonical_form(), c.clone());
        prop_assert_eq!(w.opposite().opposite(), w.clone());
        let v = random_nanoword(&mut rng, &al, letters / 2);
        let lhs = w.concatenate(&v).unwrap().canonical_form();
        let rhs = c.concatenate(&v.canonical_form()).unwrap().canonical_form();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetric_phrases_over_free_alphabets_are_even(seed in any::<u64>(), k in 1usize..4) {
        use rand::Rng;
        let al = Arc::new(Alphabet::free(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_nanoword(&mut rng, &al, 3);
        let mut cuts: Vec<usize> = (0..k - 1).map(|_| rng.gen_range(0..=w.len())).collect();
        cuts.sort();
        let mut words = Vec::new();
        let mut prev = 0;
        for c in cuts.into_iter().chain([w.len()]) {
            words.push(w.seq()[prev..c].to_vec());
            prev = c;
        }
        let v = Nanophrase::new(al, w.projections().to_vec(), words).unwrap();
        if v.is_symmetric() {
            prop_assert!(v.is_even());
        }
    }

    #[test]
    fn pull_back_after_inclusion_is_identity(seed in any::<u64>(), letters in 0usize..6) {
        let small = Arc::new(Alphabet::free(1));
        let big = Arc::new(Alphabet::free(2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_nanoword(&mut rng, &small, letters);
        let inclusion = [Sym(0), Sym(1)];
        let pushed = w.push_forward(big, &inclusion).unwrap();
        let back = pushed.pull_back(&inclusion).unwrap();
        prop_assert_eq!(back.seq(), w.seq());
        prop_assert_eq!(back.projections(), w.projections());
    }
}

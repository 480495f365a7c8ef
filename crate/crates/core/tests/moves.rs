use std::sync::Arc;

use nanoword::algebra::Alphabet;
use nanoword::moves::*;
use nanoword::random::{mixed_alphabet, random_nanoword, random_surgery_instance};
use nanoword::words::Nanoword;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn free(k: usize) -> Arc<Alphabet> {
    Arc::new(Alphabet::free(k))
}

fn word(al: &Arc<Alphabet>, w: &str, proj: &[(&str, &str)]) -> Nanoword {
    Nanoword::parse(al.clone(), w, proj).unwrap()
}

fn same(x: &Nanoword, al: &Arc<Alphabet>, w: &str, proj: &[(&str, &str)]) -> bool {
    x.is_isomorphic(&word(al, w, proj))
}

#[test]
fn first_homotopy_move() {
    let al = free(2);
    let w = word(&al, "AABB", &[("A", "a"), ("B", "b")]);
    assert_eq!(find_h1_sites(&w), vec![0, 2]);
    let once = apply_h1(&w, 0).unwrap();
    assert!(same(&once, &al, "BB", &[("B", "b")]));
    assert!(apply_h1(&once, 0).unwrap().is_empty());
    assert!(find_h1_sites(&word(&al, "ABAB", &[("A", "a"), ("B", "b")])).is_empty());
    assert!(apply_h1(&w, 1).is_err());
}

#[test]
fn second_homotopy_move() {
    let al = free(2);
    let good = word(&al, "ABBA", &[("A", "a"), ("B", "A")]);
    assert_eq!(find_h2_sites(&good), vec![(0, 2)]);
    assert!(apply_h2(&good, (0, 2)).unwrap().is_empty());
    assert!(find_h2_sites(&word(&al, "ABBA", &[("A", "a"), ("B", "b")])).is_empty());
    let ctx = word(&al, "CABDBADC", &[("A", "a"), ("B", "A"), ("C", "b"), ("D", "B")]);
    assert_eq!(find_h2_sites(&ctx), vec![(1, 4)]);
    assert!(same(&apply_h2(&ctx, (1, 4)).unwrap(), &al, "CDDC", &[("C", "b"), ("D", "B")]));
}

#[test]
fn third_homotopy_move() {
    let al = free(2);
    let w = word(&al, "ABACBC", &[("A", "a"), ("B", "a"), ("C", "a")]);
    let sites = find_h3_sites(&w);
    assert_eq!(sites, vec![[0, 2, 4]]);
    let x = apply_h3(&w, sites[0]).unwrap();
    assert!(same(&x, &al, "BACACB", &[("A", "a"), ("B", "a"), ("C", "a")]));
    assert_eq!(find_inverse_h3_sites(&x), vec![[0, 2, 4]]);
    assert!(apply_inverse_h3(&x, [0, 2, 4]).unwrap().is_isomorphic(&w));
    assert!(find_h3_sites(&word(&al, "ABACBC", &[("A", "a"), ("B", "b"), ("C", "a")])).is_empty());
}

#[test]
fn surgery_factor_examples() {
    let al = free(3);
    let w = word(&al, "BAAB", &[("A", "a"), ("B", "b")]);
    let found = enumerate_even_symmetric_factors(&w, 6, 4);
    assert!(found.iter().any(|f| f.segments() == [(1, 3)]));

    let w = word(&al, "CABDBADC", &[("A", "a"), ("B", "A"), ("C", "b"), ("D", "c")]);
    assert!(enumerate_even_symmetric_factors(&w, 6, 4).iter().any(|f| f.segments() == [(1, 3), (4, 6)]));

    let w = word(&al, "ABCACDBD", &[("A", "a"), ("B", "a"), ("C", "b"), ("D", "b")]);
    let found = enumerate_even_symmetric_factors(&w, 6, 4);
    for f in &found {
        assert!(f.is_even_symmetric(&w));
        assert!(apply_surgery(&w, f).is_ok());
    }
    let f = Factor::new(&w, vec![(0, 2), (2, 8)]).unwrap();
    assert_eq!(found.contains(&f), f.is_even_symmetric(&w));
}

#[test]
fn surgery_examples() {
    let al = free(2);
    let w = word(&al, "ABACDCDB", &[("A", "a"), ("B", "a"), ("C", "b"), ("D", "b")]);
    let f = Factor::new(&w, vec![(3, 7)]).unwrap();
    let x = apply_surgery(&w, &f).unwrap();
    assert!(same(&x, &al, "ABAB", &[("A", "a"), ("B", "a")]));
    let g = Factor::new(&x, vec![(0, 4)]).unwrap();
    assert!(apply_surgery(&x, &g).unwrap().is_empty());
    assert!(Factor::new(&w, vec![(3, 6)]).is_err());
    assert!(apply_surgery(&w, &Factor::new(&w, vec![(0, 1), (2, 3)]).unwrap()).is_err());
}

#[test]
fn bridge_examples() {
    let al = free(3);

    let w = word(&al, "BACBAC", &[("A", "a"), ("B", "b"), ("C", "c")]);
    let f = Factor::new(&w, vec![(1, 2), (4, 5)]).unwrap();
    let b = validate_bridge(&w, &f, &[1, 0]).unwrap();
    assert_eq!(b.arches(), 1);
    assert_eq!(b.epsilon[1], 0);
    assert!(same(&apply_bridge(&w, &b).unwrap(), &al, "BCBC", &[("B", "b"), ("C", "c")]));
    assert!(validate_bridge(&w, &f, &[0, 1]).is_none());

    let w = word(&al, "CABCBADD", &[("A", "a"), ("B", "b"), ("C", "c"), ("D", "a")]);
    let f = Factor::new(&w, vec![(1, 3), (4, 6)]).unwrap();
    let b = validate_bridge(&w, &f, &[1, 0]).unwrap();
    assert!(same(&apply_bridge(&w, &b).unwrap(), &al, "CCDD", &[("C", "c"), ("D", "a")]));

    let w = word(&al, "ABCBCDAD", &[("A", "a"), ("B", "b"), ("C", "b"), ("D", "c")]);
    let f = Factor::new(&w, vec![(0, 1), (1, 5), (6, 7)]).unwrap();
    let b = validate_bridge(&w, &f, &[2, 1, 0]).unwrap();
    assert_eq!(b.arches(), 1);
    assert!(same(&apply_bridge(&w, &b).unwrap(), &al, "DD", &[("D", "c")]));

    let w = word(&al, "ADEBCDCAEB", &[("A", "a"), ("B", "a"), ("C", "b"), ("D", "c"), ("E", "C")]);
    let f = Factor::new(&w, vec![(0, 1), (3, 5), (6, 8), (9, 10)]).unwrap();
    let b = validate_bridge(&w, &f, &[3, 2, 1, 0]).unwrap();
    assert_eq!(b.arches(), 2);
    assert!(same(&apply_bridge(&w, &b).unwrap(), &al, "DEDE", &[("D", "c"), ("E", "C")]));

    let w = word(&al, "ABBA", &[("A", "a"), ("B", "b")]);
    let f = Factor::new(&w, vec![(0, 4)]).unwrap();
    let b = validate_bridge(&w, &f, &[0]).unwrap();
    assert_eq!(b.arches(), 0);
    assert_eq!(apply_bridge(&w, &b).unwrap(), apply_surgery(&w, &f).unwrap());
}

#[test]
fn bridge_enumeration() {
    let al = free(1);
    let aa = word(&al, "AA", &[("A", "a")]);
    let bridges = enumerate_bridges(&aa, 6, 4);
    assert!(bridges.iter().any(|b| b.arches() == 1 && b.factor.segments() == [(0, 1), (1, 2)]));
    assert!(bridges.iter().any(|b| b.arches() == 0 && b.factor.segments() == [(0, 2)]));
    assert!(enumerate_bridges(&Nanoword::empty(al), 6, 4).is_empty());

    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let al = mixed_alphabet(2, 1);
        let letters = rng.gen_range(1..5);
        let w = random_nanoword(&mut rng, &al, letters);
        let bridges = enumerate_bridges(&w, 4, 4);
        for b in &bridges {
            assert!(validate_bridge(&w, &b.factor, &b.kappa).is_some());
        }
        let identity = |b: &&Bridge| b.kappa.iter().enumerate().all(|(r, &k)| r == k);
        let surgeries = enumerate_even_symmetric_factors(&w, 4, 4);
        let mut from_bridges: Vec<Factor> = bridges.iter().filter(identity).map(|b| b.factor.clone()).collect();
        let mut expected = surgeries.clone();
        from_bridges.sort();
        expected.sort();
        assert_eq!(from_bridges, expected, "{}", w.word_string());
    }
}

#[test]
fn homotopy_deletions_are_surgeries() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let al = mixed_alphabet(2, 1);
        let letters = rng.gen_range(1..6);
        let w = random_nanoword(&mut rng, &al, letters);
        for p in find_h1_sites(&w) {
            let f = Factor::new(&w, vec![(p, p + 2)]).unwrap();
            assert_eq!(apply_h1(&w, p).unwrap(), apply_surgery(&w, &f).unwrap());
        }
        for (i, j) in find_h2_sites(&w) {
            let f = Factor::new(&w, vec![(i, i + 2), (j, j + 2)]).unwrap();
            assert_eq!(apply_h2(&w, (i, j)).unwrap(), apply_surgery(&w, &f).unwrap());
        }
    }
}

#[test]
fn metamorphoses_replay_and_invert() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let al = mixed_alphabet(2, 1);
        let (w, f) = random_surgery_instance(&mut rng, &al, 2, &[2, 2]);
        let mut m = Metamorphosis::new(&w);
        m.moves.push(Move::Surgery { segments: f.segments().to_vec() });
        let mut cur = m.replay().unwrap();
        if !cur.is_empty() {
            m.moves.push(Move::Shift { inverse: false });
            cur = m.replay().unwrap();
        }
        if let Some(&p) = find_h1_sites(&cur).first() {
            m.moves.push(Move::H1 { pos: p });
        }
        let end = m.replay().unwrap();
        let back = m.inverse().unwrap();
        assert_eq!(back.start, end);
        assert_eq!(back.replay().unwrap(), w.canonical_form());
        assert_eq!(Metamorphosis::parse_log(&w, &m.to_log()).unwrap(), m);
        let again = Metamorphosis::parse_log(&end, &back.to_log()).unwrap();
        assert_eq!(again.replay().unwrap(), w.canonical_form());
    }
}

#[test]
fn search_examples() {
    let al = free(2);
    let empty = Nanoword::empty(al.clone());
    let caps = Caps::default();
    let rep = Repertoire::default();

    let sym = word(&al, "ABCCBA", &[("A", "a"), ("B", "b"), ("C", "A")]);
    match bounded_bfs(&sym, &empty, &rep, &caps) {
        BfsOutcome::Equivalent(m) => {
            assert!(m.replay().unwrap().is_empty());
            assert_eq!(m.total_arches(), 0);
        }
        BfsOutcome::Unknown { .. } => panic!("symmetric word must reach the empty word"),
    }

    let w = word(&al, "ABAB", &[("A", "a"), ("B", "A")]);
    match bounded_bfs(&w, &empty, &rep, &caps) {
        BfsOutcome::Equivalent(m) => {
            assert_eq!(m.len(), 1);
            assert!(m.replay().unwrap().is_empty());
        }
        BfsOutcome::Unknown { .. } => panic!("w_(a,A) reaches the empty word"),
    }

    let w = word(&al, "ABAB", &[("A", "a"), ("B", "b")]);
    let capped = Caps { max_length: Some(8), ..caps };
    assert!(matches!(bounded_bfs(&w, &empty, &rep, &capped), BfsOutcome::Unknown { .. }));

    let w = word(&al, "ABACDCDB", &[("A", "a"), ("B", "a"), ("C", "b"), ("D", "b")]);
    match bounded_bfs(&w, &empty, &rep, &caps) {
        BfsOutcome::Equivalent(m) => {
            assert_eq!(m.len(), 2);
            assert!(m.moves.iter().all(|x| matches!(x, Move::Surgery { .. })));
            assert!(Metamorphosis::parse_log(&w, &m.to_log()).unwrap().replay().unwrap().is_empty());
        }
        BfsOutcome::Unknown { .. } => panic!("ABACDCDB reaches the empty word"),
    }
}

#[test]
fn log_parse_errors() {
    let al = free(1);
    assert!(Move::parse_log("H1@0", &al).is_err());
    assert!(Move::parse_log("FOO", &al).is_err());
    assert_eq!(Move::parse_log("H2@1,3", &al).unwrap(), Move::H2 { first: 0, second: 2 });
    let shift = Move::Shift { inverse: true };
    assert_eq!(Move::parse_log(&shift.to_log(&al), &al).unwrap(), shift);
}

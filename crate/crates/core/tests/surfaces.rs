use std::sync::Arc;

use nanoword::algebra::{Alphabet, PhiSpec};
use nanoword::pairings::{genus, pairing_of_nanoword};
use nanoword::surfaces::*;
use nanoword::words::Nanoword;

fn signs() -> Arc<Alphabet> {
    Arc::new(Alphabet::signs())
}

/// Every Gauss word on `n` letters in which letters first appear in order, with every sign choice.
fn all_words(al: &Arc<Alphabet>, n: usize) -> Vec<Nanoword> {
    fn rec(seq: &mut Vec<u32>, count: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u32>>) {
        if seq.len() == 2 * n {
            out.push(seq.clone());
            return;
        }
        let opened = count.iter().filter(|&&c| c > 0).count();
        for l in 0..n.min(opened + 1) {
            if count[l] < 2 {
                count[l] += 1;
                seq.push(l as u32);
                rec(seq, count, n, out);
                seq.pop();
                count[l] -= 1;
            }
        }
    }
    let mut seqs = Vec::new();
    rec(&mut Vec::new(), &mut vec![0; n], n, &mut seqs);
    let syms: Vec<_> = al.symbols().collect();
    let mut out = Vec::new();
    for seq in seqs {
        for mask in 0..1u32 << n {
            let proj = (0..n).map(|i| syms[(mask >> i & 1) as usize]).collect();
            out.push(Nanoword::new(al.clone(), proj, seq.clone()).unwrap());
        }
    }
    out
}

#[test]
fn small_surfaces() {
    let al = signs();
    let empty = Nanoword::empty(al.clone());
    let g = ribbon_graph_of(&empty).unwrap();
    assert!(g.is_annulus());
    let s = surface_stats(&g);
    assert_eq!((s.genus, s.boundary_components), (0, 2));
    assert!(genus_rank_check(&empty).unwrap());

    let aa = Nanoword::parse(al.clone(), "AA", &[("A", "+")]).unwrap();
    let g = ribbon_graph_of(&aa).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (1, 2));
    let s = surface_stats(&g);
    assert_eq!((s.euler, s.genus, s.boundary_components), (-1, 0, 3));

    let abab = Nanoword::parse(al.clone(), "ABAB", &[("A", "+"), ("B", "+")]).unwrap();
    let g = ribbon_graph_of(&abab).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (2, 4));
    let s = surface_stats(&g);
    assert_eq!((s.euler, s.genus, s.boundary_components), (-2, 1, 2));
    assert_eq!(gram_rank(&abab).unwrap(), 2);
}

#[test]
fn wrong_alphabet_is_rejected() {
    let al = Arc::new(Alphabet::free(2));
    let w = Nanoword::parse(al, "AA", &[("A", "a")]).unwrap();
    assert!(ribbon_graph_of(&w).is_err());
    let fixed = Arc::new(Alphabet::fixed(2));
    let w = Nanoword::parse(fixed, "AA", &[("A", "a")]).unwrap();
    assert!(ribbon_graph_of(&w).is_err());
}

#[test]
fn genus_rank_identity_up_to_four_letters() {
    let al = signs();
    let swap: Vec<_> = al.symbols().map(|x| al.tau(x)).collect();
    for n in 0..=4 {
        for w in all_words(&al, n) {
            let s = surface_stats(&ribbon_graph_of(&w).unwrap());
            if n > 0 {
                assert_eq!(s.euler, -(n as i64));
            }
            assert!(s.boundary_components >= 1);
            assert_eq!(s.euler, 2 - 2 * s.genus as i64 - s.boundary_components as i64);
            assert!(genus_rank_check(&w).unwrap(), "{}", w.word_string());

            let flipped = w.push_forward(al.clone(), &swap).unwrap();
            let t = surface_stats(&ribbon_graph_of(&flipped).unwrap());
            assert_eq!(t.genus, s.genus);
        }
    }
}

#[test]
fn sigma_is_at_most_the_genus() {
    let al = signs();
    let phi = PhiSpec::rational(&al, &[1]).unwrap();
    for n in 0..=3 {
        for w in all_words(&al, n) {
            let s = surface_stats(&ribbon_graph_of(&w).unwrap());
            let g = genus(&pairing_of_nanoword(&w), &phi).unwrap();
            assert!(g.twice_value <= 2 * s.genus, "{}", w.word_string());
        }
    }
}

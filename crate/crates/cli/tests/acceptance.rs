//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nanoword::algebra::{Alphabet, PiElement};
use nanoword::explorer::suites::{
    bridge_suite, genus_rank_suite, inequality_suite, move_invariance_suite, shift_suite, surgery_filling_suite,
    SuiteReport,
};
use nanoword::explorer::{classify, length_norm_bounds, slice_status, PairRelation, SliceVerdict};
use nanoword::moves::{Caps, Metamorphosis, Move};
use nanoword::pairings::{
    enumerate_fillings, is_annihilating, is_hyperbolic, pairing_of_nanoword, u_degree, u_polynomial, SVector,
};
use nanoword::words::Nanoword;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, Box<dyn std::error::Error>>;

fn word(al: &Arc<Alphabet>, w: &str, proj: &[(&str, &str)]) -> Nanoword {
    Nanoword::parse(al.clone(), w, proj).unwrap()
}

fn pi(al: &Alphabet, terms: &[(&str, i64)]) -> PiElement {
    let mut x = PiElement::zero();
    for &(s, k) in terms {
        x += &PiElement::of_letter(al, al.sym(s).unwrap()).scale(k);
    }
    x
}

fn suite(r: SuiteReport, min_checks: usize) -> Check {
    if r.passed() && r.checks >= min_checks {
        Ok(format!("{} checks", r.checks))
    } else {
        Err(r.to_string().into())
    }
}

fn reference_matrix() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_nanoword"))
        .args(["pairing", "--alphabet", "free:3", "--word", "ABCBAC A=a B=b C=c"])
        .output()
        ?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned().into());
    }
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    let expected = [
        ["s", "A", "B", "C"].as_slice(),
        &["s", "0", "-c", "-c", "a+b"],
        &["A", "c", "0", "0", "a+2b+c"],
        &["B", "c", "0", "0", "b+c"],
        &["C", "-a-b", "-a-2b-c", "-b-c", "0"],
    ];
    if rows.len() != expected.len() || rows.iter().zip(expected).any(|(r, e)| r.as_slice() != e) {
        return Err(format!("unexpected matrix:\n{text}").into());
    }
    let al = Arc::new(Alphabet::free(3));
    let p = pairing_of_nanoword(&word(&al, "ABCBAC", &[("A", "a"), ("B", "b"), ("C", "c")]));
    let (a, b, c) = (pi(&al, &[("a", 1)]), pi(&al, &[("b", 1)]), pi(&al, &[("c", 1)]));
    if p.e(1, 3) != &(&(&a + &b.scale(2)) + &c) || p.e(0, 3) != &(&a + &b) {
        return Err("matrix entries differ from the expected ones".into());
    }
    Ok("4x4 matrix matches".into())
}

fn hyperbolicity() -> Check {
    let al = Arc::new(Alphabet::free(2));
    let w = word(&al, "ABCADCBD", &[("A", "a"), ("B", "A"), ("C", "b"), ("D", "b")]);
    let p = pairing_of_nanoword(&w);
    let filling = [SVector::s(), SVector::minus(1, 2), SVector::plus(3, 4)];
    if !is_annihilating(&p, &filling) {
        return Err("{s, A-B, C+D} does not annihilate".into());
    }
    if is_hyperbolic(&p).is_none() {
        return Err("ABCADCBD not hyperbolic".into());
    }
    let al = Arc::new(Alphabet::free(3));
    let v = word(&al, "ABCBAC", &[("A", "a"), ("B", "b"), ("C", "c")]);
    let q = pairing_of_nanoword(&v);
    let all = enumerate_fillings(&q);
    if all.iter().any(|f| is_annihilating(&q, &f.vectors)) || is_hyperbolic(&q).is_some() {
        return Err("ABCBAC has an annihilating filling".into());
    }
    Ok(format!("witness annihilates; ABCBAC: none of {} fillings annihilates", all.len()))
}

fn surgery_cobordance() -> Check {
    suite(surgery_filling_suite(&mut ChaCha8Rng::seed_from_u64(3), 500)?, 500)
}

fn move_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let moves = suite(move_invariance_suite(&mut rng, 1000)?, 3000)?;
    let shifts = suite(shift_suite(&mut rng, 300)?, 1200)?;
    Ok(format!("moves {moves}, shifts {shifts}"))
}

fn genus_rank() -> Check {
    suite(genus_rank_suite(5)?, 1)
}

fn inequalities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let caps = Caps::default();
    let ineq = suite(inequality_suite(&mut rng, 100, 2)?, 500)?;
    let bridges = suite(bridge_suite(&mut rng, 200, &caps, false)?, 1)?;
    Ok(format!("triangle/subadditivity/sandwich {ineq}, bridges {bridges}"))
}

fn classification() -> Check {
    let al = Arc::new(Alphabet::free(2));
    let caps = Caps::default();
    let c = classify(2, &al, &caps, true)?;
    let syms: Vec<_> = al.symbols().collect();
    let mut wab = Vec::new();
    for &a in &syms {
        for &b in &syms {
            let w = Nanoword::new(al.clone(), vec![a, b], vec![0, 1, 0, 1])?;
            let i = c.position(&w).ok_or("w_ab missing from the enumeration")?;
            let slice = al.same_orbit(a, b);
            let v = &c.entries[i].verdict;
            if v.is_slice() != slice || v.is_not_slice() == slice {
                return Err(format!("{w}: {v}").into());
            }
            wab.push((i, slice));
        }
    }
    for &(i, si) in &wab {
        for &(j, sj) in &wab {
            let rel = c.relation(i, j);
            if i != j && !si && !sj && rel != PairRelation::Distinct {
                return Err(format!("non-slice w_ab pair {i},{j} is {rel}").into());
            }
        }
    }
    let w = word(&al, "ABACDCDB", &[("A", "a"), ("B", "a"), ("C", "b"), ("D", "b")]);
    let SliceVerdict::Slice(m) = slice_status(&w, &caps) else {
        return Err("ABACDCDB not certified slice".into());
    };
    let replayed = Metamorphosis::parse_log(&w, &m.to_log())?;
    if m.len() != 2 || !m.moves.iter().all(|x| matches!(x, Move::Surgery { .. })) || !replayed.replay()?.is_empty() {
        return Err(format!("witness is not a replayable 2-surgery metamorphosis:\n{}", m.to_log()).into());
    }
    Ok(format!("{} words, {} classes; ABACDCDB slice by 2 surgeries", c.entries.len(), c.component_count()))
}

fn length_norms() -> Check {
    let caps = Caps::default();
    let al = Arc::new(Alphabet::free(3));
    let w = word(&al, "ABCBAC", &[("A", "a"), ("B", "b"), ("C", "c")]);
    let u = u_polynomial(&pairing_of_nanoword(&w));
    let deg = u_degree(&u, &al, al.sym("c")?)?;
    let b = length_norm_bounds(&w, &caps)?;
    if deg + 1 != 3 || (b.lower, b.upper) != (3, 3) {
        return Err(format!("ABCBAC: deg u(c) = {deg}, bounds {}..{}", b.lower, b.upper).into());
    }
    let v = word(&al, "ABAB", &[("A", "a"), ("B", "b")]);
    let b = length_norm_bounds(&v, &caps)?;
    if (b.lower, b.upper) != (2, 2) {
        return Err(format!("w_ab: bounds {}..{}", b.lower, b.upper).into());
    }
    Ok("||ABCBAC|| = 3, ||w_ab|| = 2".into())
}

fn main() {
    type Criterion = (&'static str, fn() -> Check, Duration);
    let criteria: [Criterion; 8] = [
        ("ABCBAC pairing matrix", reference_matrix, Duration::from_secs(1)),
        ("hyperbolicity witnesses", hyperbolicity, Duration::from_secs(2)),
        ("surgery cobordance", surgery_cobordance, Duration::from_secs(60)),
        ("move invariance", move_invariance, Duration::from_secs(120)),
        ("genus-rank identity", genus_rank, Duration::from_secs(120)),
        ("inequality suites", inequalities, Duration::from_secs(300)),
        ("length-4 classification", classification, Duration::from_secs(60)),
        ("length-norm bounds", length_norms, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}, but took longer than {limit:?}").into()),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

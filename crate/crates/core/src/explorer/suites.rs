//! Randomized and exhaustive property checks shared by the command line and the test suites.

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::enumerate_nanowords;
use crate::algebra::{default_battery, Alphabet, PhiSpec, Sym};
use crate::error::Result;
use crate::moves::{apply_bridge, enumerate_bridges, find_h3_sites, Caps, Factor, Move};
use crate::pairings::{
    genus, pairing_of_nanoword, tuple_genus, u_polynomial, verify_surgery_filling, AlphaPairing,
};
use crate::random::{mixed_alphabet, random_nanoword, random_skew_pairing, random_surgery_instance};
use crate::surfaces::genus_rank_check;
use crate::words::Nanoword;

/// Outcome of one suite: how many checks ran and which failed.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub violations: Vec<String>,
    /// Free-form summary, e.g. the minimal slack of an inequality.
    pub note: String,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.checks > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checks, {} violations", self.name, self.checks, self.violations.len())?;
        if !self.note.is_empty() {
            write!(f, "; {}", self.note)?;
        }
        for v in self.violations.iter().take(5) {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

fn random_alphabet<R: Rng + ?Sized>(rng: &mut R) -> Arc<Alphabet> {
    mixed_alphabet(rng.gen_range(1..3), rng.gen_range(0..2))
}

fn random_free_alphabet<R: Rng + ?Sized>(rng: &mut R) -> Arc<Alphabet> {
    mixed_alphabet(rng.gen_range(1..3), 0)
}

/// Random even symmetric factors inserted into random words of length at most 14.
pub fn surgery_filling_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("surgery filling");
    for _ in 0..count {
        let al = random_alphabet(rng);
        let k = rng.gen_range(1..4);
        let mut lengths: Vec<usize> = (0..k).map(|_| 2 * rng.gen_range(1..3)).collect();
        while lengths.iter().sum::<usize>() > 10 {
            lengths.pop();
        }
        let room = (14 - lengths.iter().sum::<usize>()) / 2;
        let context = rng.gen_range(0..=room.min(3));
        let (w, f) = random_surgery_instance(rng, &al, context, &lengths);
        let ok = verify_surgery_filling(&w, &f)?;
        report.check(ok && w.len() <= 14, || format!("{w} with factor {}", f.segments_string()));
    }
    Ok(report)
}

/// Inserts the words of `phrase` into `context` at random gaps, returning the word and the segments.
fn insert_segments<R: Rng + ?Sized>(
    rng: &mut R,
    context: &Nanoword,
    phrase: &[Vec<u32>],
    proj: &[Sym],
) -> (Nanoword, Vec<(usize, usize)>) {
    let m = proj.len() as u32;
    let mut gaps: Vec<usize> = (0..phrase.len()).map(|_| rng.gen_range(0..=context.len())).collect();
    gaps.sort();
    let mut seq = Vec::new();
    let mut segments = Vec::new();
    let mut next = 0;
    for i in 0..=context.len() {
        while next < gaps.len() && gaps[next] == i {
            let start = seq.len();
            seq.extend_from_slice(&phrase[next]);
            segments.push((start, seq.len()));
            next += 1;
        }
        if i < context.len() {
            seq.push(context.seq()[i] + m);
        }
    }
    let mut all = proj.to_vec();
    all.extend_from_slice(context.projections());
    let w = Nanoword::new(context.alphabet_arc().clone(), all, seq).expect("valid by construction");
    (w, segments)
}

/// A random word together with a move applicable to it.
fn random_move<R: Rng + ?Sized>(rng: &mut R, al: &Arc<Alphabet>) -> (Nanoword, Move) {
    let letters = rng.gen_range(0..4);
    let context = random_nanoword(rng, al, letters);
    let a = Sym(rng.gen_range(0..al.len() as u32));
    match rng.gen_range(0..4) {
        0 => {
            let (w, segs) = insert_segments(rng, &context, &[vec![0, 0]], &[a]);
            (w, Move::H1 { pos: segs[0].0 })
        }
        1 => {
            let (w, segs) = insert_segments(rng, &context, &[vec![0, 1], vec![1, 0]], &[a, al.tau(a)]);
            (w, Move::H2 { first: segs[0].0, second: segs[1].0 })
        }
        2 => {
            let (w, _) = insert_segments(rng, &context, &[vec![0, 1], vec![0, 2], vec![1, 2]], &[a, a, a]);
            let sites = find_h3_sites(&w);
            let site = *sites.choose(rng).expect("the inserted triple is an H3 site");
            let inverse = rng.gen_bool(0.5);
            if inverse {
                let x = Move::H3 { sites: site, inverse: false }.apply(&w).expect("valid site");
                (x, Move::H3 { sites: site, inverse: true })
            } else {
                (w, Move::H3 { sites: site, inverse: false })
            }
        }
        _ => {
            let k = rng.gen_range(1..3);
            let lengths: Vec<usize> = (0..k).map(|_| 2 * rng.gen_range(1..3)).collect();
            let (w, f) = random_surgery_instance(rng, al, letters, &lengths);
            (w, Move::Surgery { segments: f.segments().to_vec() })
        }
    }
}

fn sigma_vector(p: &AlphaPairing, battery: &[PhiSpec]) -> Result<Vec<usize>> {
    battery.iter().map(|phi| Ok(genus(p, phi)?.twice_value)).collect()
}

/// γ, u and σ_φ are unchanged by homotopy moves and surgeries.
pub fn move_invariance_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("move invariance");
    for _ in 0..count {
        let al = random_alphabet(rng);
        let battery = default_battery(&al);
        let (w, m) = random_move(rng, &al);
        let x = m.apply(&w)?;
        let (p, q) = (pairing_of_nanoword(&w), pairing_of_nanoword(&x));
        let what = || format!("{w} under {}", m.to_log(&al));
        report.check(w.gamma() == x.gamma(), || format!("gamma changed: {}", what()));
        report.check(u_polynomial(&p) == u_polynomial(&q), || format!("u changed: {}", what()));
        report.check(sigma_vector(&p, &battery)? == sigma_vector(&q, &battery)?, || format!("sigma changed: {}", what()));
    }
    Ok(report)
}

/// Shifts keep the conjugacy class of γ, u and σ_φ, and act on pairings by the 2-shift at the first letter.
pub fn shift_suite<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("shift invariance");
    for _ in 0..count {
        let al = random_alphabet(rng);
        let battery = default_battery(&al);
        let letters = rng.gen_range(1..6);
        let w = random_nanoword(rng, &al, letters);
        let x = w.circular_shift()?;
        let (p, q) = (pairing_of_nanoword(&w), pairing_of_nanoword(&x));
        report.check(w.gamma().is_conjugate(&x.gamma())?, || format!("gamma class changed: {w}"));
        report.check(u_polynomial(&p) == u_polynomial(&q), || format!("u changed: {w}"));
        report.check(sigma_vector(&p, &battery)? == sigma_vector(&q, &battery)?, || format!("sigma changed: {w}"));
        let shifted = p.m_shift(w.seq()[0] as usize + 1, 2)?;
        report.check(shifted.is_isomorphic(&q), || format!("pairing of the shift is not the 2-shift: {w}"));
    }
    Ok(report)
}

/// Every word over `{+, -}` with at most `max_letters` letters.
pub fn genus_rank_suite(max_letters: usize) -> Result<SuiteReport> {
    let al = Arc::new(Alphabet::signs());
    let mut report = SuiteReport::new("genus-rank identity");
    for n in 0..=max_letters {
        let words = if n == 0 { vec![Nanoword::empty(al.clone())] } else { enumerate_nanowords(n, &al, true)? };
        let bad: Vec<String> = words
            .par_iter()
            .filter_map(|w| match genus_rank_check(w) {
                Ok(true) => None,
                Ok(false) => Some(w.to_string()),
                Err(e) => Some(format!("{w}: {e}")),
            })
            .collect();
        report.checks += words.len();
        report.violations.extend(bad);
    }
    report.note = format!("all words with at most {max_letters} letters");
    Ok(report)
}

/// Triangle inequality and subadditivity of σ_φ, and the sandwich bound on the tuple genus.
pub fn inequality_suite<R: Rng + ?Sized>(rng: &mut R, count: usize, s_bound: i64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("genus inequalities");
    let al = Arc::new(Alphabet::free(2));
    let battery = default_battery(&al);
    for _ in 0..count {
        let ps: Vec<AlphaPairing> = (0..3)
            .map(|_| {
                let size = rng.gen_range(0..3);
                random_skew_pairing(rng, &al, size)
            })
            .collect();
        for phi in &battery {
            let g = |p: &AlphaPairing| genus(p, phi).map(|g| g.twice_value);
            let d = |i: usize, j: usize| g(&ps[i].sum(&ps[j].opposite())?);
            let (d01, d12, d02) = (d(0, 1)?, d(1, 2)?, d(0, 2)?);
            report.check(d01 + d12 >= d02, || format!("triangle {d01} + {d12} < {d02}"));
            let (g0, g1, g01) = (g(&ps[0])?, g(&ps[1])?, g(&ps[0].sum(&ps[1])?)?);
            report.check(g0 + g1 >= g01, || format!("subadditivity {g0} + {g1} < {g01}"));
        }
    }
    let one = Arc::new(Alphabet::free(1));
    let phi = PhiSpec::rational(&one, &[1])?;
    for _ in 0..count {
        let size = rng.gen_range(0..3);
        let p1 = random_skew_pairing(rng, &one, size);
        let size = rng.gen_range(0..3);
        let p2 = random_skew_pairing(rng, &one, size);
        let big = genus(&p1.sum(&p2)?, &phi)?.twice_value;
        let t = tuple_genus(&[p1, p2], &phi, s_bound)?.twice_value;
        report.check(big >= t && t + 2 >= big, || format!("sandwich fails: sigma {big}/2, tuple genus {t}/2"));
    }
    Ok(report)
}

/// Arches of every enumerated bridge bound σ_φ(p_w ⊕ p_x⁻)/2 from above; with `weak`, also the tuple genus
/// of `(p_w, p_x⁻)` after a further shift of `x`.
pub fn bridge_suite<R: Rng + ?Sized>(rng: &mut R, words: usize, caps: &Caps, weak: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(if weak { "weak bridge inequality" } else { "bridge inequality" });
    let mut min_slack: Option<i64> = None;
    for _ in 0..words {
        let al = random_free_alphabet(rng);
        let battery = default_battery(&al);
        let letters = rng.gen_range(1..if weak { 4 } else { 5 });
        let w = random_nanoword(rng, &al, letters);
        let pw = pairing_of_nanoword(&w);
        for b in enumerate_bridges(&w, caps.max_letters, caps.max_k) {
            let x = apply_bridge(&w, &b)?;
            let arches = b.arches();
            let x = if weak && !x.is_empty() { x.circular_shift()? } else { x };
            let px = pairing_of_nanoword(&x).opposite();
            let sum = pw.sum(&px)?;
            for phi in &battery {
                let sigma = genus(&sum, phi)?.twice_value as i64;
                let bound = if weak {
                    tuple_genus(&[pw.clone(), px.clone()], phi, caps.s_bound)?.twice_value as i64
                } else {
                    sigma
                };
                // arches ≥ bound / 2, in units of quarters
                let slack = 4 * arches as i64 - bound;
                min_slack = Some(min_slack.map_or(slack, |m| m.min(slack)));
                let seg = Factor::segments_string(&b.factor);
                report.check(slack >= 0, || format!("{w}: bridge {seg} kappa {:?} has {arches} arches, bound {bound}/4", b.kappa));
                if weak {
                    report.check(4 * arches as i64 >= sigma - 2, || format!("{w}: bridge {seg} violates the weak sigma bound"));
                } else if arches == 0 {
                    report.check(sigma == 0, || format!("{w}: surgery {seg} changes the pairing class"));
                }
            }
        }
    }
    if let Some(m) = min_slack {
        report.note = format!("min slack {}", quarters(m));
    }
    Ok(report)
}

fn quarters(num: i64) -> String {
    num_rational::Ratio::new(num, 4).to_string()
}

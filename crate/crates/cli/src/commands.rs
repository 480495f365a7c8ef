//! The subcommands, each producing its output text and exit status.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nanoword::algebra::PhiSpec;
use nanoword::explorer::suites::{
    bridge_suite, genus_rank_suite, inequality_suite, move_invariance_suite, shift_suite, surgery_filling_suite,
    SuiteReport,
};
use nanoword::explorer::{classify, invariant_record_with, length_norm_bounds, slice_status, Classification, SliceVerdict};
use nanoword::moves::{bounded_bfs, shortest_reached, BfsOutcome, Caps, Metamorphosis, Repertoire};
use nanoword::pairings::{enumerate_fillings, is_hyperbolic, pairing_of_nanoword};
use nanoword::surfaces::{gram_rank, ribbon_graph_of, surface_stats};
use nanoword::words::Nanoword;

use crate::input::{Input, Item};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

/// Text to print and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: 0 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] crate::input::ParseError),
    #[error(transparent)]
    Core(#[from] nanoword::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type CmdResult = Result<Outcome, CommandError>;

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String, CommandError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| CommandError::Usage(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| CommandError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CommandError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn words(input: &Input) -> Result<Vec<&Nanoword>, CommandError> {
    let words: Vec<&Nanoword> = input.words().collect();
    if words.is_empty() {
        return Err(CommandError::Usage("no word given".into()));
    }
    Ok(words)
}

pub fn invariants(input: &Input, battery: &[PhiSpec], format: Format) -> CmdResult {
    let al = &input.alphabet;
    let mut text = String::new();
    let mut rows = Vec::new();
    for item in &input.items {
        let w = match item {
            Item::Word { word, .. } => word,
            Item::Phrase { phrase, .. } => {
                let _ = writeln!(
                    text,
                    "phrase: {} words, {} letters; even: {}; symmetric: {}",
                    phrase.words().len(),
                    phrase.letter_count(),
                    phrase.is_even(),
                    phrase.is_symmetric()
                );
                continue;
            }
        };
        let r = invariant_record_with(w, battery)?;
        let class = nanoword::algebra::PiWord::from_syllables(al, r.gamma_class.iter().copied());
        match format {
            Format::Text => {
                let _ = writeln!(text, "word: {w}");
                let _ = writeln!(text, "gamma: {}", r.gamma.display(al));
                let _ = writeln!(text, "gamma class: {}", class.display(al));
                let _ = writeln!(text, "u: {}", r.u.display(al));
                let _ = writeln!(text, "u fingerprint: {}", r.u.fingerprint(al));
                for (phi, g) in &r.genera {
                    let _ = writeln!(text, "sigma[{phi}]: {g}");
                }
                let _ = writeln!(text, "hyperbolic: {}", if r.hyperbolic { "yes" } else { "no" });
                let _ = writeln!(text, "r: {}", r.r.display(al));
            }
            Format::Csv => rows.push(vec![
                w.to_string(),
                w.len().to_string(),
                r.gamma.display(al),
                r.u.fingerprint(al),
                r.u.display(al),
                r.sigma_string(),
                r.hyperbolic.to_string(),
            ]),
        }
    }
    if format == Format::Csv {
        text = csv_string(&["word", "length", "gamma", "u_hash", "u", "sigma", "hyperbolic"], &rows)?;
    }
    Ok(Outcome::ok(text))
}

pub fn pairing(input: &Input) -> CmdResult {
    let mut text = String::new();
    for w in words(input)? {
        text.push_str(&pairing_of_nanoword(w).matrix_string());
    }
    Ok(Outcome::ok(text))
}

pub fn fillings(input: &Input, limit: usize) -> CmdResult {
    let mut text = String::new();
    for w in words(input)? {
        let p = pairing_of_nanoword(w);
        let all = enumerate_fillings(&p);
        let _ = writeln!(text, "word: {w}");
        let _ = writeln!(text, "fillings: {}", all.len());
        for f in all.iter().take(limit) {
            let _ = writeln!(text, "  {}", f.display(&p));
        }
        if all.len() > limit {
            let _ = writeln!(text, "  ... {} more", all.len() - limit);
        }
        match is_hyperbolic(&p) {
            Some(f) => {
                let _ = writeln!(text, "hyperbolic: yes, annihilating filling {}", f.display(&p));
            }
            None => {
                let _ = writeln!(text, "hyperbolic: no, none of the {} fillings annihilates", all.len());
            }
        }
    }
    Ok(Outcome::ok(text))
}

pub fn surface(input: &Input, format: Format) -> CmdResult {
    let mut text = String::new();
    let mut rows = Vec::new();
    for w in words(input)? {
        let s = surface_stats(&ribbon_graph_of(w)?);
        let rank = gram_rank(w)?;
        match format {
            Format::Text => {
                let _ = writeln!(text, "word: {w}");
                let _ = writeln!(
                    text,
                    "V={} E={} chi={} boundary={} genus={} rank={}",
                    s.vertices, s.edges, s.euler, s.boundary_components, s.genus, rank
                );
            }
            Format::Csv => rows.push(vec![
                w.to_string(),
                s.vertices.to_string(),
                s.edges.to_string(),
                s.euler.to_string(),
                s.boundary_components.to_string(),
                s.genus.to_string(),
                rank.to_string(),
            ]),
        }
    }
    if format == Format::Csv {
        text = csv_string(&["word", "V", "E", "chi", "boundary", "genus", "rank"], &rows)?;
    }
    Ok(Outcome::ok(text))
}

fn write_metamorphosis(text: &mut String, m: &Metamorphosis) -> Result<(), CommandError> {
    let trace = m.trace()?;
    let _ = writeln!(text, "# start: {}", trace[0]);
    for (line, w) in m.to_log().lines().zip(&trace[1..]) {
        let _ = writeln!(text, "{line}    # -> {w}");
    }
    Ok(())
}

/// Drops the verdict and norm lines of `check-slice` output so a saved report replays as a log.
fn strip_report_lines(log: &str) -> String {
    log.lines()
        .filter(|l| {
            let t = l.trim_start();
            !["Slice(", "NotSlice(", "Unknown(", "length norm:"].iter().any(|p| t.starts_with(p))
        })
        .map(|l| format!("{l}\n"))
        .collect()
}

/// Searches from the word to `to` (or towards the shortest reachable word), or replays a log.
pub fn moves(input: &Input, caps: &Caps, to: Option<&Input>, replay: Option<&str>) -> CmdResult {
    let w = words(input)?[0];
    let target = match to {
        Some(t) => Some(words(t)?[0].clone()),
        None => None,
    };
    let mut text = String::new();
    if let Some(log) = replay {
        let m = Metamorphosis::parse_log(w, &strip_report_lines(log))?;
        write_metamorphosis(&mut text, &m)?;
        let end = m.replay()?;
        let _ = writeln!(text, "# end: {end}");
        let _ = writeln!(text, "# arches: {}", m.total_arches());
        if let Some(t) = target {
            let ok = end.is_isomorphic(&t);
            let _ = writeln!(text, "# target reached: {}", if ok { "yes" } else { "no" });
            return Ok(Outcome { text, code: if ok { 0 } else { 1 } });
        }
        return Ok(Outcome::ok(text));
    }
    match target {
        Some(t) => match bounded_bfs(w, &t, &Repertoire::default(), caps) {
            BfsOutcome::Equivalent(m) => {
                let _ = writeln!(text, "# Equivalent");
                write_metamorphosis(&mut text, &m)?;
            }
            BfsOutcome::Unknown { caps, visited } => {
                let _ = writeln!(text, "# Unknown({caps}) after {visited} words");
            }
        },
        None => {
            let (letters, m) = shortest_reached(w, &Repertoire::default(), caps);
            let _ = writeln!(text, "# shortest reached: {letters} letters");
            write_metamorphosis(&mut text, &m)?;
        }
    }
    Ok(Outcome::ok(text))
}

pub fn check_slice(input: &Input, caps: &Caps) -> CmdResult {
    let mut text = String::new();
    for w in words(input)? {
        let verdict = slice_status(w, caps);
        let _ = writeln!(text, "{verdict}");
        if let SliceVerdict::Slice(m) = &verdict {
            write_metamorphosis(&mut text, m)?;
        }
        let b = length_norm_bounds(w, caps)?;
        if b.lower == b.upper {
            let _ = writeln!(text, "length norm: {}", b.lower);
        } else {
            let _ = writeln!(text, "length norm: between {} and {}", b.lower, b.upper);
        }
    }
    Ok(Outcome::ok(text))
}

pub fn classify_cmd(input: &Input, letters: usize, caps: &Caps, allow_large: bool, format: Format) -> CmdResult {
    let c: Classification = classify(letters, &input.alphabet, caps, allow_large)?;
    let text = match format {
        Format::Csv => csv_string(&Classification::csv_header(), &c.csv_records())?,
        Format::Text => {
            let mut text = String::new();
            let _ = writeln!(
                text,
                "{} words, {} invariant buckets, {} classes found (caps {})",
                c.entries.len(),
                c.bucket_count(),
                c.component_count(),
                c.caps
            );
            for r in c.csv_records() {
                let _ = writeln!(text, "class {:>3}  bucket {:>3}  {:<22} {:<28} gamma={} sigma=[{}]", r[8], r[7], r[0], r[6], r[2], r[5]);
            }
            let mut unknown = 0;
            for i in 0..c.entries.len() {
                for j in i + 1..c.entries.len() {
                    if c.relation(i, j) == nanoword::explorer::PairRelation::Unknown {
                        unknown += 1;
                    }
                }
            }
            let _ = writeln!(text, "pairs left undecided: {unknown}");
            text
        }
    };
    Ok(Outcome::ok(text))
}

pub const SUITES: [&str; 7] = ["plo", "moves", "shift", "genus-rank", "inequalities", "bridge", "weak-bridge"];

/// Runs the named suite (or `all`) and fails with code 1 on any violation.
pub fn verify(suite: &str, seed: u64, caps: &Caps) -> CmdResult {
    let selected: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { suite.split(',').map(str::trim).collect() };
    let mut text = String::new();
    let mut code = 0;
    for name in selected {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let report: SuiteReport = match name {
            "plo" => surgery_filling_suite(&mut rng, 500)?,
            "moves" => move_invariance_suite(&mut rng, 1000)?,
            "shift" => shift_suite(&mut rng, 300)?,
            "genus-rank" => genus_rank_suite(5)?,
            "inequalities" => inequality_suite(&mut rng, 100, caps.s_bound)?,
            "bridge" => bridge_suite(&mut rng, 200, caps, false)?,
            "weak-bridge" => bridge_suite(&mut rng, 30, caps, true)?,
            other => {
                return Err(CommandError::Usage(format!("unknown suite `{other}`; expected all or one of {}", SUITES.join(", "))))
            }
        };
        if !report.passed() {
            code = 1;
        }
        let _ = writeln!(text, "{report}");
    }
    Ok(Outcome { text, code })
}

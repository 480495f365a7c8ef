use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use super::bridge::enumerate_bridges;
use super::factor::enumerate_even_symmetric_factors;
use super::homotopy::{find_h1_sites, find_h2_sites, find_h3_sites, find_inverse_h3_sites};
use super::metamorphosis::{InsertKind, Metamorphosis, Move};
use crate::algebra::Sym;
use crate::words::Nanoword;

/// Search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_letters: usize,
    pub max_k: usize,
    /// Longest word kept in the search; `None` means the longer of the two endpoints.
    pub max_length: Option<usize>,
    pub max_nodes: usize,
    pub s_bound: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Self { max_letters: 6, max_k: 4, max_length: None, max_nodes: 20_000, s_bound: 2 }
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "letters={},k={},", self.max_letters, self.max_k)?;
        match self.max_length {
            Some(l) => write!(f, "bfs={l},")?,
            None => write!(f, "bfs=auto,")?,
        }
        write!(f, "nodes={},s={}", self.max_nodes, self.s_bound)
    }
}

/// A symmetric phrase inserted by inverse surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub kind: InsertKind,
    pub phrase: Vec<Vec<u32>>,
    pub proj: Vec<Sym>,
}

/// Which moves the search may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repertoire {
    pub homotopy: bool,
    pub surgery: bool,
    pub bridges: bool,
    pub shift: bool,
    pub builtin_templates: bool,
    pub templates: Vec<Template>,
}

impl Default for Repertoire {
    fn default() -> Self {
        Self { homotopy: true, surgery: true, bridges: false, shift: false, builtin_templates: true, templates: Vec::new() }
    }
}

impl Repertoire {
    /// Cobordism moves plus shifts.
    pub fn weak() -> Self {
        Self { shift: true, ..Self::default() }
    }

    fn all_templates(&self, w: &Nanoword) -> Vec<Template> {
        let mut out = Vec::new();
        if self.builtin_templates {
            let al = w.alphabet();
            for a in al.symbols() {
                out.push(Template { kind: InsertKind::H1, phrase: vec![vec![0, 0]], proj: vec![a] });
            }
            for a in al.symbols() {
                let b = al.tau(a);
                out.push(Template { kind: InsertKind::H2, phrase: vec![vec![0, 1], vec![1, 0]], proj: vec![a, b] });
            }
            for a in al.symbols() {
                let b = al.tau(a);
                out.push(Template { kind: InsertKind::Surgery, phrase: vec![vec![0, 1], vec![0, 1]], proj: vec![a, b] });
            }
        }
        out.extend(self.templates.iter().cloned());
        out
    }
}

pub enum BfsOutcome {
    Equivalent(Metamorphosis),
    Unknown { caps: Caps, visited: usize },
}

/// Nondecreasing gap tuples of length `k` in `0..=n`.
fn gap_tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|g: Vec<usize>| {
                let lo = g.last().copied().unwrap_or(0);
                (lo..=n).map(move |x| {
                    let mut g = g.clone();
                    g.push(x);
                    g
                })
            })
            .collect();
    }
    out
}

/// Moves available at `w` within the caps, each with its canonical result; the first
/// move reaching a given word is kept.
fn successors(w: &Nanoword, rep: &Repertoire, caps: &Caps, max_length: usize) -> Vec<(Move, Nanoword)> {
    let mut moves = Vec::new();
    if rep.homotopy {
        moves.extend(find_h1_sites(w).into_iter().map(|pos| Move::H1 { pos }));
        moves.extend(find_h2_sites(w).into_iter().map(|(first, second)| Move::H2 { first, second }));
        moves.extend(find_h3_sites(w).into_iter().map(|sites| Move::H3 { sites, inverse: false }));
        moves.extend(find_inverse_h3_sites(w).into_iter().map(|sites| Move::H3 { sites, inverse: true }));
    }
    if rep.surgery {
        moves.extend(
            enumerate_even_symmetric_factors(w, caps.max_letters, caps.max_k)
                .into_iter()
                .map(|f| Move::Surgery { segments: f.segments().to_vec() }),
        );
    }
    if rep.bridges {
        moves.extend(
            enumerate_bridges(w, caps.max_letters, caps.max_k)
                .into_iter()
                .filter(|b| b.arches() > 0)
                .map(|b| Move::Bridge { segments: b.factor.segments().to_vec(), kappa: b.kappa }),
        );
    }
    if rep.shift && !w.is_empty() {
        moves.push(Move::Shift { inverse: false });
        moves.push(Move::Shift { inverse: true });
    }
    for t in rep.all_templates(w) {
        let added: usize = t.phrase.iter().map(Vec::len).sum();
        if w.len() + added > max_length {
            continue;
        }
        for gaps in gap_tuples(t.phrase.len(), w.len()) {
            moves.push(Move::Insert { kind: t.kind.clone(), gaps, phrase: t.phrase.clone(), proj: t.proj.clone() });
        }
    }
    let mut seen = HashSet::new();
    moves
        .into_iter()
        .filter_map(|m| {
            let x = m.apply(w).ok()?;
            (x.len() <= max_length && seen.insert(x.clone())).then_some((m, x))
        })
        .collect()
}

struct Explored {
    parents: HashMap<Nanoword, Option<(Nanoword, Move)>>,
    found: Option<Nanoword>,
}

/// Level-synchronous breadth-first search; frontier expansion runs in parallel and is
/// merged in frontier order, so the result does not depend on scheduling.
fn explore(w: &Nanoword, target: Option<&Nanoword>, rep: &Repertoire, caps: &Caps, max_length: usize) -> Explored {
    let start = w.canonical_form();
    let target = target.map(Nanoword::canonical_form);
    let mut parents: HashMap<Nanoword, Option<(Nanoword, Move)>> = HashMap::new();
    parents.insert(start.clone(), None);
    if target.as_ref() == Some(&start) {
        return Explored { parents, found: Some(start) };
    }
    let mut frontier = vec![start];
    while !frontier.is_empty() && parents.len() < caps.max_nodes {
        let expanded: Vec<Vec<(Move, Nanoword)>> =
            frontier.par_iter().map(|u| successors(u, rep, caps, max_length)).collect();
        let mut next = Vec::new();
        for (u, succ) in frontier.iter().zip(expanded) {
            for (m, x) in succ {
                if parents.contains_key(&x) {
                    continue;
                }
                parents.insert(x.clone(), Some((u.clone(), m)));
                if target.as_ref() == Some(&x) {
                    return Explored { parents, found: Some(x) };
                }
                next.push(x);
                if parents.len() >= caps.max_nodes {
                    break;
                }
            }
            if parents.len() >= caps.max_nodes {
                break;
            }
        }
        frontier = next;
    }
    Explored { parents, found: None }
}

fn path_to(parents: &HashMap<Nanoword, Option<(Nanoword, Move)>>, start: &Nanoword, end: &Nanoword) -> Metamorphosis {
    let mut moves = Vec::new();
    let mut cur = end.clone();
    while let Some(Some((prev, m))) = parents.get(&cur) {
        moves.push(m.clone());
        cur = prev.clone();
    }
    moves.reverse();
    Metamorphosis { start: start.canonical_form(), moves }
}

/// Searches for a metamorphosis from `w` to `v` within the caps.
pub fn bounded_bfs(w: &Nanoword, v: &Nanoword, rep: &Repertoire, caps: &Caps) -> BfsOutcome {
    let max_length = caps.max_length.unwrap_or(w.len().max(v.len()));
    let ex = explore(w, Some(v), rep, caps, max_length);
    match ex.found {
        Some(end) => BfsOutcome::Equivalent(path_to(&ex.parents, w, &end)),
        None => BfsOutcome::Unknown { caps: *caps, visited: ex.parents.len() },
    }
}

/// Half the length of the shortest word reached from `w`, with the metamorphosis reaching it.
pub fn shortest_reached(w: &Nanoword, rep: &Repertoire, caps: &Caps) -> (usize, Metamorphosis) {
    let max_length = caps.max_length.unwrap_or(w.len());
    let empty = Nanoword::empty(w.alphabet_arc().clone());
    let ex = explore(w, Some(&empty), rep, caps, max_length);
    let best = match ex.found {
        Some(e) => e,
        None => ex
            .parents
            .keys()
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.seq().cmp(b.seq())))
            .expect("start is visited")
            .clone(),
    };
    (best.letter_count(), path_to(&ex.parents, w, &best))
}

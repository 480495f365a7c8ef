use std::fmt::Write as _;

use super::bridge::{apply_bridge, arches_of, is_involution, validate_bridge};
use super::factor::{apply_surgery, Factor};
use super::homotopy::{apply_h1, apply_h2, apply_h3, apply_inverse_h3};
use crate::algebra::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::words::Nanoword;

/// What an insertion re-creates, i.e. the deletion it inverts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InsertKind {
    H1,
    H2,
    Surgery,
    Bridge { kappa: Vec<usize> },
}

/// One move. Positions are 0-based in the canonical form of the current word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    H1 { pos: usize },
    H2 { first: usize, second: usize },
    H3 { sites: [usize; 3], inverse: bool },
    Surgery { segments: Vec<(usize, usize)> },
    Bridge { segments: Vec<(usize, usize)>, kappa: Vec<usize> },
    Shift { inverse: bool },
    /// Inserts word `r` of `phrase` at gap `gaps[r]` (the number of entries before it);
    /// phrase letters are `0..proj.len()`.
    Insert { kind: InsertKind, gaps: Vec<usize>, phrase: Vec<Vec<u32>>, proj: Vec<Sym> },
}

impl Move {
    pub fn arches(&self) -> usize {
        match self {
            Move::Bridge { kappa, .. } | Move::Insert { kind: InsertKind::Bridge { kappa }, .. } => arches_of(kappa),
            _ => 0,
        }
    }

    pub fn is_shift(&self) -> bool {
        matches!(self, Move::Shift { .. })
    }

    /// Applies the move and returns the canonical form of the result.
    pub fn apply(&self, w: &Nanoword) -> Result<Nanoword> {
        let out = match self {
            Move::H1 { pos } => apply_h1(w, *pos)?,
            Move::H2 { first, second } => apply_h2(w, (*first, *second))?,
            Move::H3 { sites, inverse: false } => apply_h3(w, *sites)?,
            Move::H3 { sites, inverse: true } => apply_inverse_h3(w, *sites)?,
            Move::Surgery { segments } => apply_surgery(w, &Factor::new(w, segments.clone())?)?,
            Move::Bridge { segments, kappa } => {
                let f = Factor::new(w, segments.clone())?;
                let b = validate_bridge(w, &f, kappa)
                    .ok_or_else(|| Error::InvalidFactor(format!("{} is not a bridge", f.segments_string())))?;
                apply_bridge(w, &b)?
            }
            Move::Shift { inverse: false } => w.circular_shift()?,
            Move::Shift { inverse: true } => inverse_shift(w)?,
            Move::Insert { kind, gaps, phrase, proj } => insert(w, kind, gaps, phrase, proj)?,
        };
        Ok(out.canonical_form())
    }

    /// The move undoing `self` when applied to `self.apply(before)`.
    pub fn inverse(&self, before: &Nanoword) -> Result<Move> {
        let w = before;
        let deletion = |segments: Vec<(usize, usize)>, kind: InsertKind| -> Result<Move> {
            let f = Factor::new(w, segments)?;
            let phrase_obj = f.phrase(w);
            Ok(Move::Insert {
                kind,
                gaps: f.gaps(),
                phrase: phrase_obj.words().to_vec(),
                proj: phrase_obj.projections().to_vec(),
            })
        };
        match self {
            Move::H1 { pos } => deletion(vec![(*pos, pos + 2)], InsertKind::H1),
            Move::H2 { first, second } => deletion(vec![(*first, first + 2), (*second, second + 2)], InsertKind::H2),
            Move::H3 { sites, inverse } => Ok(Move::H3 { sites: *sites, inverse: !inverse }),
            Move::Surgery { segments } => deletion(segments.clone(), InsertKind::Surgery),
            Move::Bridge { segments, kappa } => deletion(segments.clone(), InsertKind::Bridge { kappa: kappa.clone() }),
            Move::Shift { inverse } => Ok(Move::Shift { inverse: !inverse }),
            Move::Insert { kind, gaps, phrase, .. } => {
                let mut segments = Vec::new();
                let mut offset = 0;
                for (g, word) in gaps.iter().zip(phrase) {
                    segments.push((g + offset, g + offset + word.len()));
                    offset += word.len();
                }
                self.apply(w)?;
                Ok(match kind {
                    InsertKind::H1 => Move::H1 { pos: segments[0].0 },
                    InsertKind::H2 => Move::H2 { first: segments[0].0, second: segments[1].0 },
                    InsertKind::Surgery => Move::Surgery { segments },
                    InsertKind::Bridge { kappa } => Move::Bridge { segments, kappa: kappa.clone() },
                })
            }
        }
    }

    /// One log line; positions 1-based, gaps 0-based.
    pub fn to_log(&self, alphabet: &Alphabet) -> String {
        let segs = |s: &[(usize, usize)]| s.iter().map(|(a, b)| format!("{}..{}", a + 1, b)).collect::<Vec<_>>().join(",");
        let list = |v: &[usize], off: usize| v.iter().map(|x| (x + off).to_string()).collect::<Vec<_>>().join(",");
        match self {
            Move::H1 { pos } => format!("H1@{}", pos + 1),
            Move::H2 { first, second } => format!("H2@{},{}", first + 1, second + 1),
            Move::H3 { sites, inverse } => {
                format!("{}H3@{}", if *inverse { "INV " } else { "" }, list(sites, 1))
            }
            Move::Surgery { segments } => format!("SURG segs={}", segs(segments)),
            Move::Bridge { segments, kappa } => {
                format!("BRIDGE segs={} kappa={} arches={}", segs(segments), list(kappa, 1), arches_of(kappa))
            }
            Move::Shift { inverse } => format!("{}SHIFT", if *inverse { "INV " } else { "" }),
            Move::Insert { kind, gaps, phrase, proj } => {
                let mut s = String::from("INV ");
                match kind {
                    InsertKind::H1 => s.push_str("H1"),
                    InsertKind::H2 => s.push_str("H2"),
                    InsertKind::Surgery => s.push_str("SURG"),
                    InsertKind::Bridge { .. } => s.push_str("BRIDGE"),
                }
                let _ = write!(s, " gaps={}", list(gaps, 0));
                let words: Vec<String> = phrase
                    .iter()
                    .map(|w| w.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join("."))
                    .collect();
                let _ = write!(s, " phrase={}", words.join("|"));
                let names: Vec<&str> = proj.iter().map(|&p| alphabet.name(p)).collect();
                let _ = write!(s, " proj={}", names.join(","));
                if let InsertKind::Bridge { kappa } = kind {
                    let _ = write!(s, " kappa={} arches={}", list(kappa, 1), arches_of(kappa));
                }
                s
            }
        }
    }

    pub fn parse_log(line: &str, alphabet: &Alphabet) -> Result<Move> {
        let bad = || Error::BadLog(line.to_string());
        let line = line.trim();
        let (inverse, body) = match line.strip_prefix("INV ") {
            Some(rest) => (true, rest.trim()),
            None => (false, line),
        };
        let nums = |s: &str| -> Result<Vec<usize>> {
            s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let positions = |s: &str| -> Result<Vec<usize>> {
            nums(s)?.into_iter().map(|x| x.checked_sub(1).ok_or_else(bad)).collect()
        };
        let segs = |s: &str| -> Result<Vec<(usize, usize)>> {
            s.split(',')
                .map(|seg| {
                    let (a, b) = seg.split_once("..").ok_or_else(bad)?;
                    let a: usize = a.parse().map_err(|_| bad())?;
                    let b: usize = b.parse().map_err(|_| bad())?;
                    Ok((a.checked_sub(1).ok_or_else(bad)?, b))
                })
                .collect()
        };
        let mut fields = std::collections::HashMap::new();
        let mut words = body.split_whitespace();
        let head = words.next().ok_or_else(bad)?;
        for f in words {
            let (k, v) = f.split_once('=').ok_or_else(bad)?;
            fields.insert(k, v);
        }
        let field = |k: &str| fields.get(k).copied().ok_or_else(bad);
        if head == "SHIFT" {
            return Ok(Move::Shift { inverse });
        }
        if let Some(rest) = head.strip_prefix("H3@") {
            let p = positions(rest)?;
            let sites: [usize; 3] = p.try_into().map_err(|_| bad())?;
            return Ok(Move::H3 { sites, inverse });
        }
        if !inverse {
            if let Some(rest) = head.strip_prefix("H1@") {
                let p = positions(rest)?;
                return match p.as_slice() {
                    [pos] => Ok(Move::H1 { pos: *pos }),
                    _ => Err(bad()),
                };
            }
            if let Some(rest) = head.strip_prefix("H2@") {
                let p = positions(rest)?;
                return match p.as_slice() {
                    [a, b] => Ok(Move::H2 { first: *a, second: *b }),
                    _ => Err(bad()),
                };
            }
            return match head {
                "SURG" => Ok(Move::Surgery { segments: segs(field("segs")?)? }),
                "BRIDGE" => Ok(Move::Bridge { segments: segs(field("segs")?)?, kappa: positions(field("kappa")?)? }),
                _ => Err(bad()),
            };
        }
        let kind = match head {
            "H1" => InsertKind::H1,
            "H2" => InsertKind::H2,
            "SURG" => InsertKind::Surgery,
            "BRIDGE" => InsertKind::Bridge { kappa: positions(field("kappa")?)? },
            _ => return Err(bad()),
        };
        let gaps = nums(field("gaps")?)?;
        let phrase: Vec<Vec<u32>> = field("phrase")?
            .split('|')
            .map(|w| {
                w.split('.')
                    .map(|l| l.parse::<u32>().ok().and_then(|x| x.checked_sub(1)).ok_or_else(bad))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        let proj: Vec<Sym> = field("proj")?.split(',').map(|n| alphabet.sym(n)).collect::<Result<_>>()?;
        if gaps.len() != phrase.len() {
            return Err(bad());
        }
        Ok(Move::Insert { kind, gaps, phrase, proj })
    }
}

fn inverse_shift(w: &Nanoword) -> Result<Nanoword> {
    let Some(&last) = w.seq().last() else {
        return Err(Error::EmptyWord);
    };
    let mut seq = vec![last];
    seq.extend_from_slice(&w.seq()[..w.len() - 1]);
    let mut proj = w.projections().to_vec();
    proj[last as usize] = w.alphabet().tau(proj[last as usize]);
    Nanoword::new(w.alphabet_arc().clone(), proj, seq)
}

fn insert(w: &Nanoword, kind: &InsertKind, gaps: &[usize], phrase: &[Vec<u32>], proj: &[Sym]) -> Result<Nanoword> {
    if gaps.len() != phrase.len() || gaps.windows(2).any(|g| g[0] > g[1]) || gaps.iter().any(|&g| g > w.len()) {
        return Err(Error::InvalidSite("insertion gaps out of order".into()));
    }
    if phrase.iter().any(Vec::is_empty) {
        return Err(Error::InvalidSite("empty inserted word".into()));
    }
    let m = w.letter_count() as u32;
    let mut seq = Vec::with_capacity(w.len() + phrase.iter().map(Vec::len).sum::<usize>());
    let mut segments = Vec::new();
    let mut r = 0;
    for i in 0..=w.len() {
        while r < gaps.len() && gaps[r] == i {
            let s = seq.len();
            seq.extend(phrase[r].iter().map(|&l| l + m));
            segments.push((s, seq.len()));
            r += 1;
        }
        if i < w.len() {
            seq.push(w.seq()[i]);
        }
    }
    let mut all_proj = w.projections().to_vec();
    all_proj.extend_from_slice(proj);
    let out = Nanoword::new(w.alphabet_arc().clone(), all_proj, seq)?;
    let valid = match kind {
        InsertKind::H1 => segments.len() == 1 && apply_h1(&out, segments[0].0).is_ok() && segments[0].1 - segments[0].0 == 2,
        InsertKind::H2 => {
            segments.len() == 2
                && segments.iter().all(|(s, e)| e - s == 2)
                && apply_h2(&out, (segments[0].0, segments[1].0)).is_ok()
        }
        InsertKind::Surgery => Factor::new(&out, segments.clone()).is_ok_and(|f| f.is_even_symmetric(&out)),
        InsertKind::Bridge { kappa } => {
            is_involution(kappa)
                && Factor::new(&out, segments.clone()).is_ok_and(|f| validate_bridge(&out, &f, kappa).is_some())
        }
    };
    if !valid {
        return Err(Error::InvalidSite("inserted phrase does not form the claimed factor".into()));
    }
    Ok(out)
}

/// A sequence of moves starting from a given word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metamorphosis {
    pub start: Nanoword,
    pub moves: Vec<Move>,
}

impl Metamorphosis {
    pub fn new(start: &Nanoword) -> Self {
        Self { start: start.canonical_form(), moves: Vec::new() }
    }

    pub fn total_arches(&self) -> usize {
        self.moves.iter().map(Move::arches).sum()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// All intermediate words, starting with the canonical start.
    pub fn trace(&self) -> Result<Vec<Nanoword>> {
        let mut cur = self.start.canonical_form();
        let mut out = vec![cur.clone()];
        for m in &self.moves {
            cur = m.apply(&cur)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// The canonical end word.
    pub fn replay(&self) -> Result<Nanoword> {
        Ok(self.trace()?.pop().expect("start word"))
    }

    pub fn inverse(&self) -> Result<Metamorphosis> {
        let trace = self.trace()?;
        let mut moves = Vec::with_capacity(self.moves.len());
        for (i, m) in self.moves.iter().enumerate().rev() {
            moves.push(m.inverse(&trace[i])?);
        }
        Ok(Metamorphosis { start: trace.last().expect("start").clone(), moves })
    }

    /// One line per move; deletions also name the deleted letters of the current word.
    pub fn to_log(&self) -> String {
        let al = self.start.alphabet();
        let trace = self.trace().ok();
        let mut out = String::new();
        for (i, m) in self.moves.iter().enumerate() {
            let mut line = m.to_log(al);
            let segments = match m {
                Move::Surgery { segments } | Move::Bridge { segments, .. } => Some(segments),
                _ => None,
            };
            if let (Some(segments), Some(trace)) = (segments, &trace) {
                if let Ok(f) = Factor::new(&trace[i], segments.clone()) {
                    let names: Vec<String> = f.letters().iter().map(|&l| format!("L{}", l + 1)).collect();
                    let head = line.find(' ').unwrap_or(line.len());
                    line.insert_str(head, &format!(" letters={}", names.join(",")));
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn parse_log(start: &Nanoword, text: &str) -> Result<Self> {
        let al = start.alphabet();
        let moves = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| Move::parse_log(l, al))
            .collect::<Result<_>>()?;
        Ok(Self { start: start.canonical_form(), moves })
    }
}

//! The text formats read by the command line: alphabets, words, phrases, caps and φ.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use nanoword::algebra::{default_battery, Alphabet, PhiSpec};
use nanoword::moves::Caps;
use nanoword::random::mixed_alphabet;
use nanoword::words::{Nanophrase, Nanoword};

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

#[derive(Clone, Debug)]
pub enum Item {
    Word { line: usize, word: Nanoword },
    Phrase { line: usize, phrase: Nanophrase },
}

#[derive(Clone, Debug)]
pub struct Input {
    pub alphabet: Arc<Alphabet>,
    pub items: Vec<Item>,
}

impl Input {
    pub fn words(&self) -> impl Iterator<Item = &Nanoword> {
        self.items.iter().filter_map(|i| match i {
            Item::Word { word, .. } => Some(word),
            Item::Phrase { .. } => None,
        })
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push((offset + s[..b].chars().count() + 1, &s[b..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((offset + s[..b].chars().count() + 1, &s[b..]));
    }
    out
}

struct Pending {
    line: usize,
    kind: &'static str,
    body: String,
}

/// Parses an input file. `alphabet` supplies the ground alphabet when the text does not declare one.
pub fn parse_input(text: &str, alphabet: Option<Arc<Alphabet>>, strict: bool) -> Result<Input, ParseError> {
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut declared: Option<Arc<Alphabet>> = None;
    let mut items = Vec::new();
    let mut pending: Option<Pending> = None;
    let lines: Vec<&str> = text.lines().collect();

    for (idx, raw) in lines.iter().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        let indent = raw.chars().count() - trimmed.chars().count();
        let content = trimmed.trim_end();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            return Err(err(line, indent + 1, format!("expected `key: value`, found `{content}`")));
        };
        let offset = indent + key.chars().count() + 1;
        match key.trim() {
            "alphabet" => {
                if names.is_some() || alphabet.is_some() {
                    return Err(err(line, indent + 1, "alphabet declared twice"));
                }
                let mut seen = HashSet::new();
                let mut list = Vec::new();
                for (col, t) in tokens(rest, offset) {
                    if !seen.insert(t) {
                        return Err(err(line, col, format!("duplicate symbol `{t}`")));
                    }
                    list.push(t.to_string());
                }
                if list.is_empty() {
                    return Err(err(line, offset + 1, "empty alphabet"));
                }
                names = Some((line, list));
            }
            "tau" => {
                let Some((_, list)) = &names else {
                    return Err(err(line, indent + 1, "tau line before the alphabet line"));
                };
                let mut tau: Vec<Option<usize>> = vec![None; list.len()];
                let mut pairs_seen = HashSet::new();
                for (col, t) in tokens(rest, offset) {
                    let Some((x, y)) = t.split_once("<->") else {
                        return Err(err(line, col, format!("expected `x<->y`, found `{t}`")));
                    };
                    let find = |s: &str, c: usize| {
                        list.iter().position(|n| n == s).ok_or_else(|| err(line, c, format!("unknown symbol `{s}`")))
                    };
                    let (i, j) = (find(x, col)?, find(y, col + x.chars().count() + 3)?);
                    let key = (i.min(j), i.max(j));
                    if !pairs_seen.insert(key) && strict {
                        return Err(err(line, col, format!("pair `{t}` declared twice")));
                    }
                    for (a, b) in [(i, j), (j, i)] {
                        match tau[a] {
                            Some(c) if c != b => {
                                return Err(err(
                                    line,
                                    col,
                                    format!("tau is not an involution: `{}` is paired with `{}` and `{}`", list[a], list[c], list[b]),
                                ));
                            }
                            _ => tau[a] = Some(b),
                        }
                    }
                }
                let tau: Vec<usize> = tau
                    .iter()
                    .enumerate()
                    .map(|(i, t)| t.ok_or_else(|| err(line, offset + 1, format!("symbol `{}` has no tau pair", list[i]))))
                    .collect::<Result<_, _>>()?;
                let al = Alphabet::new(list.clone(), tau).map_err(|e| err(line, offset + 1, e.to_string()))?;
                declared = Some(Arc::new(al));
            }
            "word" | "phrase" => {
                if let Some(p) = pending.take() {
                    return Err(err(p.line, 1, format!("projection missing for the {} on line {}", p.kind, p.line)));
                }
                if declared.is_none() && alphabet.is_none() {
                    return Err(err(line, indent + 1, format!("{} before the alphabet", key.trim())));
                }
                let kind = if key.trim() == "word" { "word" } else { "phrase" };
                pending = Some(Pending { line, kind, body: rest.trim().to_string() });
            }
            "proj" => {
                let Some(p) = pending.take() else {
                    return Err(err(line, indent + 1, "proj line without a preceding word"));
                };
                let al = declared.clone().or_else(|| alphabet.clone()).expect("checked at the word line");
                let mut proj = Vec::new();
                for (col, t) in tokens(rest, offset) {
                    let Some((l, s)) = t.split_once('=') else {
                        return Err(err(line, col, format!("expected `Letter=symbol`, found `{t}`")));
                    };
                    if al.sym(s).is_err() {
                        return Err(err(line, col + l.chars().count() + 1, format!("unknown symbol `{s}`")));
                    }
                    proj.push((l.to_string(), s.to_string()));
                }
                let pairs: Vec<(&str, &str)> = proj.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                let item = if p.kind == "word" {
                    Nanoword::parse(al, &p.body, &pairs).map(|word| Item::Word { line: p.line, word })
                } else {
                    Nanophrase::parse(al, &p.body, &pairs).map(|phrase| Item::Phrase { line: p.line, phrase })
                };
                let item = item.map_err(|e| {
                    let at = if e.to_string().contains("no projection") { line } else { p.line };
                    err(at, 1, e.to_string())
                })?;
                items.push(item);
            }
            other => return Err(err(line, indent + 1, format!("unknown key `{other}`"))),
        }
    }
    if let Some(p) = pending {
        if p.body.is_empty() {
            items.push(Item::Word {
                line: p.line,
                word: Nanoword::empty(declared.clone().or_else(|| alphabet.clone()).expect("alphabet present")),
            });
        } else {
            return Err(err(p.line, 1, format!("projection missing for the {} on line {}", p.kind, p.line)));
        }
    }
    if let Some((line, _)) = names {
        if declared.is_none() {
            return Err(err(line, 1, "alphabet without a tau line"));
        }
    }
    let alphabet = declared.or(alphabet).ok_or_else(|| err(lines.len().max(1), 1, "no alphabet given"))?;
    Ok(Input { alphabet, items })
}

/// An alphabet argument: `free:K`, `fixed:K`, `mixed:F,X`, `signs`, a file, or inline text with `;` for newlines.
pub fn parse_alphabet_arg(arg: &str, strict: bool) -> Result<Arc<Alphabet>, ParseError> {
    let arg = arg.trim();
    let count = |s: &str| s.trim().parse::<usize>().map_err(|_| err(1, 1, format!("bad count `{s}`")));
    if arg == "signs" {
        return Ok(Arc::new(Alphabet::signs()));
    }
    if let Some(k) = arg.strip_prefix("free:") {
        return Ok(Arc::new(Alphabet::free(count(k)?)));
    }
    if let Some(k) = arg.strip_prefix("fixed:") {
        return Ok(Arc::new(Alphabet::fixed(count(k)?)));
    }
    if let Some(rest) = arg.strip_prefix("mixed:") {
        let (f, x) = rest.split_once(',').ok_or_else(|| err(1, 1, "expected `mixed:F,X`"))?;
        return Ok(mixed_alphabet(count(f)?, count(x)?));
    }
    let text = read_or_inline(arg);
    Ok(parse_input(&text, None, strict)?.alphabet)
}

fn read_or_inline(arg: &str) -> String {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).unwrap_or_default()
    } else {
        arg.replace(';', "\n")
    }
}

/// A word argument: a file, inline input text with `;` for newlines, or the short form `ABAB A=a B=b`.
pub fn parse_word_arg(arg: &str, alphabet: Option<Arc<Alphabet>>, strict: bool) -> Result<Input, ParseError> {
    let text = read_or_inline(arg);
    if text.contains(':') {
        return parse_input(&text, alphabet, strict);
    }
    let (proj, word): (Vec<&str>, Vec<&str>) = text.split_whitespace().partition(|t| t.contains('='));
    let key = if word.contains(&"|") || word.iter().any(|t| t.contains('|')) { "phrase" } else { "word" };
    let short = format!("{key}: {}\nproj: {}", word.join(" "), proj.join(" "));
    parse_input(&short, alphabet, strict)
}

/// `letters=6,k=4,bfs=8,nodes=20000,s=2`; `bfs=auto` uses the longer endpoint.
pub fn parse_caps(arg: &str) -> Result<Caps, ParseError> {
    let mut caps = Caps::default();
    for (i, part) in arg.split(',').enumerate().filter(|(_, p)| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| err(1, i + 1, format!("expected `key=value`, found `{part}`")))?;
        let bad = || err(1, i + 1, format!("bad value `{v}` for `{k}`"));
        let n = || v.trim().parse::<usize>().map_err(|_| bad());
        match k.trim() {
            "letters" => caps.max_letters = n()?,
            "k" => caps.max_k = n()?,
            "bfs" if v.trim() == "auto" => caps.max_length = None,
            "bfs" => caps.max_length = Some(n()?),
            "nodes" => caps.max_nodes = n()?,
            "s" => caps.s_bound = v.trim().parse::<i64>().map_err(|_| bad())?,
            other => return Err(err(1, i + 1, format!("unknown cap `{other}`"))),
        }
        if k.trim() != "bfs" && n().map_or(true, |x| x == 0) {
            return Err(err(1, i + 1, format!("cap `{k}` must be positive")));
        }
    }
    Ok(caps)
}

/// `all` for the ±1 battery, or values per orbit such as `1,-1`, optionally prefixed by `modP:`.
pub fn parse_phi(arg: &str, alphabet: &Alphabet) -> Result<Vec<PhiSpec>, ParseError> {
    let arg = arg.trim();
    if arg == "all" {
        return Ok(default_battery(alphabet));
    }
    let (prime, values) = match arg.strip_prefix("mod").and_then(|r| r.split_once(':')) {
        Some((p, v)) => (Some(p.parse::<u64>().map_err(|_| err(1, 4, format!("bad prime `{p}`")))?), v),
        None => (None, arg),
    };
    let values: Vec<i64> = values
        .split(',')
        .enumerate()
        .map(|(i, v)| v.trim().parse().map_err(|_| err(1, i + 1, format!("bad phi value `{v}`"))))
        .collect::<Result<_, _>>()?;
    let phi = match prime {
        Some(p) => PhiSpec::prime_field(alphabet, p, &values),
        None => PhiSpec::rational(alphabet, &values),
    };
    phi.map(|p| vec![p]).map_err(|e| err(1, 1, e.to_string()))
}

//! Enumeration, invariant tables, slice verdicts and classification of short nanowords.

pub mod suites;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{default_battery, Alphabet, PhiSpec, PiElement, PiWord, Syllable, Sym};
use crate::error::{Error, Result};
use crate::moves::{bounded_bfs, shortest_reached, BfsOutcome, Caps, Metamorphosis, Repertoire};
use crate::pairings::{
    genus, is_hyperbolic, pairing_of_nanoword, u_degree, u_polynomial, AlphaPairing, Genus, UPoly,
};
use crate::words::Nanoword;

/// Sequences on `n` letters in which each letter first appears in order: one per chord matching.
pub fn matchings(n: usize) -> Vec<Vec<u32>> {
    fn rec(seq: &mut Vec<u32>, count: &mut [u8], opened: usize, n: usize, out: &mut Vec<Vec<u32>>) {
        if seq.len() == 2 * n {
            out.push(seq.clone());
            return;
        }
        for l in 0..opened {
            if count[l] == 1 {
                count[l] = 2;
                seq.push(l as u32);
                rec(seq, count, opened, n, out);
                seq.pop();
                count[l] = 1;
            }
        }
        if opened < n {
            count[opened] = 1;
            seq.push(opened as u32);
            rec(seq, count, opened + 1, n, out);
            seq.pop();
            count[opened] = 0;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![0; n], 0, n, &mut out);
    out
}

/// All nanowords with `n` letters over `alphabet` up to isomorphism, in canonical form.
pub fn enumerate_nanowords(n: usize, alphabet: &Arc<Alphabet>, allow_large: bool) -> Result<Vec<Nanoword>> {
    if !allow_large && (alphabet.len() > 3 || n > 6) {
        return Err(Error::TooLarge(format!("{n} letters over an alphabet of {} symbols", alphabet.len())));
    }
    let syms: Vec<Sym> = alphabet.symbols().collect();
    let labelings = syms.len().pow(n as u32);
    let mut words: Vec<Nanoword> = matchings(n)
        .into_par_iter()
        .flat_map_iter(|seq| {
            let syms = &syms;
            (0..labelings).map(move |mut code| {
                let proj = (0..n)
                    .map(|_| {
                        let s = syms[code % syms.len()];
                        code /= syms.len();
                        s
                    })
                    .collect();
                Nanoword::new(alphabet.clone(), proj, seq.clone()).expect("valid by construction").canonical_form()
            })
        })
        .collect();
    words.sort_by(|a, b| (a.seq(), a.projections()).cmp(&(b.seq(), b.projections())));
    words.dedup();
    Ok(words)
}

/// The cobordism invariants of one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub word: Nanoword,
    pub gamma: PiWord,
    pub gamma_class: Vec<Syllable>,
    pub u: UPoly,
    /// σ_φ for each φ of the battery, keyed by its label.
    pub genera: BTreeMap<String, Genus>,
    pub hyperbolic: bool,
    pub r: PiElement,
}

/// The part of a record that is invariant under cobordism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordKey {
    gamma: PiWord,
    u: String,
    genera: Vec<(String, Genus)>,
    hyperbolic: bool,
    r: PiElement,
}

impl InvariantRecord {
    pub fn key(&self) -> RecordKey {
        let al = self.word.alphabet();
        RecordKey {
            gamma: self.gamma.clone(),
            u: self.u.display(al),
            genera: self.genera.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            hyperbolic: self.hyperbolic,
            r: self.r.clone(),
        }
    }

    /// Largest σ_φ over the battery.
    pub fn max_genus(&self) -> Genus {
        self.genera.values().copied().max().unwrap_or(Genus { twice_value: 0 })
    }

    pub fn sigma_string(&self) -> String {
        self.genera.values().map(Genus::to_string).collect::<Vec<_>>().join(" ")
    }
}

pub fn invariant_record(w: &Nanoword) -> Result<InvariantRecord> {
    invariant_record_with(w, &default_battery(w.alphabet()))
}

pub fn invariant_record_with(w: &Nanoword, battery: &[PhiSpec]) -> Result<InvariantRecord> {
    let word = w.canonical_form();
    let al = word.alphabet();
    let p = pairing_of_nanoword(&word);
    let gamma = word.gamma();
    let mut genera = BTreeMap::new();
    for phi in battery {
        genera.insert(phi.label(al), genus(&p, phi)?);
    }
    Ok(InvariantRecord {
        gamma_class: gamma.conjugacy_class(),
        gamma,
        u: u_polynomial(&p),
        genera,
        hyperbolic: is_hyperbolic(&p).is_some(),
        r: p.r().clone(),
        word,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceVerdict {
    Slice(Metamorphosis),
    /// Names the obstruction: `gamma` or `pairing`.
    NotSlice(&'static str),
    Unknown(Caps),
}

impl SliceVerdict {
    pub fn is_slice(&self) -> bool {
        matches!(self, SliceVerdict::Slice(_))
    }

    pub fn is_not_slice(&self) -> bool {
        matches!(self, SliceVerdict::NotSlice(_))
    }
}

impl fmt::Display for SliceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceVerdict::Slice(m) => write!(f, "Slice({} moves)", m.len()),
            SliceVerdict::NotSlice(why) => write!(f, "NotSlice({why})"),
            SliceVerdict::Unknown(caps) => write!(f, "Unknown({caps})"),
        }
    }
}

fn obstruction(w: &Nanoword, p: &AlphaPairing) -> Option<&'static str> {
    if !w.gamma().is_identity() {
        Some("gamma")
    } else if is_hyperbolic(p).is_none() {
        Some("pairing")
    } else {
        None
    }
}

pub fn slice_status(w: &Nanoword, caps: &Caps) -> SliceVerdict {
    if let Some(why) = obstruction(w, &pairing_of_nanoword(w)) {
        return SliceVerdict::NotSlice(why);
    }
    let empty = Nanoword::empty(w.alphabet_arc().clone());
    match bounded_bfs(w, &empty, &Repertoire::default(), caps) {
        BfsOutcome::Equivalent(m) => SliceVerdict::Slice(m),
        BfsOutcome::Unknown { caps, .. } => SliceVerdict::Unknown(caps),
    }
}

/// Bounds on the length norm: half the length of the shortest word cobordant to `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBounds {
    pub lower: usize,
    pub upper: usize,
    /// Reaches a word with `upper` letters.
    pub witness: Metamorphosis,
}

pub fn length_norm_bounds(w: &Nanoword, caps: &Caps) -> Result<NormBounds> {
    let (upper, witness) = shortest_reached(w, &Repertoire::default(), caps);
    if upper == 0 {
        return Ok(NormBounds { lower: 0, upper, witness });
    }
    let p = pairing_of_nanoword(w);
    if obstruction(w, &p).is_none() {
        return Ok(NormBounds { lower: 0, upper, witness });
    }
    // the norm never takes the value 1
    let mut lower = 2;
    let al = w.alphabet();
    if al.is_fixed_point_free() {
        let u = u_polynomial(&p);
        for a in al.symbols() {
            lower = lower.max(u_degree(&u, al, a)? as usize + 1);
        }
    }
    for phi in default_battery(al) {
        let g = genus(&p, &phi)?;
        lower = lower.max(g.twice_value.div_ceil(4) + 1);
    }
    if lower > upper {
        return Err(Error::Soundness(format!("length norm of {w} bounded below by {lower} and above by {upper}")));
    }
    Ok(NormBounds { lower, upper, witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairRelation {
    Distinct,
    Cobordant,
    Unknown,
}

impl fmt::Display for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairRelation::Distinct => "Distinct",
            PairRelation::Cobordant => "Cobordant",
            PairRelation::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub record: InvariantRecord,
    pub verdict: SliceVerdict,
    pub bucket: usize,
    pub component: usize,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub entries: Vec<ClassEntry>,
    pub caps: Caps,
    /// Witnesses for the merges performed inside buckets.
    pub merges: Vec<(usize, usize, Metamorphosis)>,
}

impl Classification {
    pub fn relation(&self, i: usize, j: usize) -> PairRelation {
        let (a, b) = (&self.entries[i], &self.entries[j]);
        if a.component == b.component {
            PairRelation::Cobordant
        } else if a.bucket != b.bucket {
            PairRelation::Distinct
        } else {
            PairRelation::Unknown
        }
    }

    pub fn bucket_count(&self) -> usize {
        self.entries.iter().map(|e| e.bucket + 1).max().unwrap_or(0)
    }

    pub fn component_count(&self) -> usize {
        self.entries.iter().map(|e| e.component).collect::<BTreeSet<_>>().len()
    }

    pub fn position(&self, w: &Nanoword) -> Option<usize> {
        let c = w.canonical_form();
        self.entries.iter().position(|e| e.record.word == c)
    }

    pub fn csv_header() -> [&'static str; 9] {
        ["word", "length", "gamma", "u_hash", "u", "sigma", "verdict", "bucket", "class"]
    }

    pub fn csv_records(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| {
                let al = e.record.word.alphabet();
                vec![
                    e.record.word.to_string(),
                    e.record.word.len().to_string(),
                    e.record.gamma.display(al),
                    e.record.u.fingerprint(al),
                    e.record.u.display(al),
                    e.record.sigma_string(),
                    e.verdict.to_string(),
                    e.bucket.to_string(),
                    e.component.to_string(),
                ]
            })
            .collect()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Classifies the words with `n` letters over `alphabet` (and the empty word) up to cobordism, as far as the
/// invariants and the bounded search can tell.
pub fn classify(n: usize, alphabet: &Arc<Alphabet>, caps: &Caps, allow_large: bool) -> Result<Classification> {
    let mut words = vec![Nanoword::empty(alphabet.clone())];
    if n > 0 {
        words.extend(enumerate_nanowords(n, alphabet, allow_large)?);
    }
    let battery = default_battery(alphabet);
    let records: Vec<InvariantRecord> =
        words.par_iter().map(|w| invariant_record_with(w, &battery)).collect::<Result<_>>()?;
    let verdicts: Vec<SliceVerdict> = records.par_iter().map(|r| slice_status(&r.word, caps)).collect();

    let keys: Vec<RecordKey> = records.iter().map(InvariantRecord::key).collect();
    let mut bucket_of: HashMap<&RecordKey, usize> = HashMap::new();
    let mut buckets = Vec::with_capacity(records.len());
    for k in &keys {
        let next = bucket_of.len();
        buckets.push(*bucket_of.entry(k).or_insert(next));
    }

    let mut parent: Vec<usize> = (0..records.len()).collect();
    let mut merges = Vec::new();
    let union = |parent: &mut [usize], i: usize, j: usize| -> Result<()> {
        if buckets[i] != buckets[j] {
            return Err(Error::Soundness(format!(
                "{} and {} are cobordant but their invariants differ",
                records[i].word, records[j].word
            )));
        }
        let (a, b) = (find(parent, i), find(parent, j));
        parent[a.max(b)] = a.min(b);
        Ok(())
    };
    for (i, v) in verdicts.iter().enumerate() {
        if let SliceVerdict::Slice(m) = v {
            if !m.replay()?.is_empty() {
                return Err(Error::Soundness(format!("slice witness for {} does not end at the empty word", records[i].word)));
            }
            union(&mut parent, 0, i)?;
        }
    }
    for i in 0..records.len() {
        for j in i + 1..records.len() {
            if buckets[i] != buckets[j] || find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            if let BfsOutcome::Equivalent(m) = bounded_bfs(&records[i].word, &records[j].word, &Repertoire::default(), caps) {
                union(&mut parent, i, j)?;
                merges.push((i, j, m));
            }
        }
    }

    let mut component_ids: HashMap<usize, usize> = HashMap::new();
    let entries = records
        .into_iter()
        .zip(verdicts)
        .enumerate()
        .map(|(i, (record, verdict))| {
            let root = find(&mut parent, i);
            let next = component_ids.len();
            let component = *component_ids.entry(root).or_insert(next);
            ClassEntry { record, verdict, bucket: buckets[i], component }
        })
        .collect();
    Ok(Classification { entries, caps: *caps, merges })
}

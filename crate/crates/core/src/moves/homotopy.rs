use crate::error::{Error, Result};
use crate::words::Nanoword;

/// Positions `i` with `w(i) = w(i+1)`, leftmost first.
pub fn find_h1_sites(w: &Nanoword) -> Vec<usize> {
    let s = w.seq();
    (0..s.len().saturating_sub(1)).filter(|&i| s[i] == s[i + 1]).collect()
}

pub fn apply_h1(w: &Nanoword, site: usize) -> Result<Nanoword> {
    let s = w.seq();
    if site + 1 >= s.len() || s[site] != s[site + 1] {
        return Err(Error::InvalidSite(format!("H1@{}", site + 1)));
    }
    let mut keep = vec![true; w.letter_count()];
    keep[s[site] as usize] = false;
    Ok(w.retain_letters(&keep))
}

/// Pairs `(i, j)` with `w = x A B y B A z`, `A` at `i`, `B` at `j`, and `|B| = τ(|A|)`.
pub fn find_h2_sites(w: &Nanoword) -> Vec<(usize, usize)> {
    let s = w.seq();
    let al = w.alphabet();
    let mut out = Vec::new();
    for i in 0..s.len().saturating_sub(1) {
        let (a, b) = (s[i], s[i + 1]);
        if a == b || w.proj(b) != al.tau(w.proj(a)) {
            continue;
        }
        let j = w.positions(b)[1];
        if j + 1 < s.len() && s[j + 1] == a && j > i + 1 {
            out.push((i, j));
        }
    }
    out
}

pub fn apply_h2(w: &Nanoword, site: (usize, usize)) -> Result<Nanoword> {
    if !find_h2_sites(w).contains(&site) {
        return Err(Error::InvalidSite(format!("H2@{},{}", site.0 + 1, site.1 + 1)));
    }
    let s = w.seq();
    let mut keep = vec![true; w.letter_count()];
    keep[s[site.0] as usize] = false;
    keep[s[site.0 + 1] as usize] = false;
    Ok(w.retain_letters(&keep))
}

/// Triples `(i, j, k)` with `w = x AB y AC z BC t` at those positions and `|A| = |B| = |C|`.
pub fn find_h3_sites(w: &Nanoword) -> Vec<[usize; 3]> {
    let s = w.seq();
    let mut out = Vec::new();
    for i in 0..s.len().saturating_sub(1) {
        let (a, b) = (s[i], s[i + 1]);
        if a == b || w.proj(a) != w.proj(b) {
            continue;
        }
        let j = w.positions(a)[1];
        if j <= i + 1 || j + 1 >= s.len() {
            continue;
        }
        let c = s[j + 1];
        if c == a || c == b || w.proj(c) != w.proj(a) {
            continue;
        }
        let k = w.positions(b)[1];
        if k > j + 1 && k + 1 < s.len() && s[k + 1] == c {
            out.push([i, j, k]);
        }
    }
    out
}

/// Triples `(i, j, k)` with `w = x BA y CA z CB t` at those positions, the result of an H3 move.
pub fn find_inverse_h3_sites(w: &Nanoword) -> Vec<[usize; 3]> {
    let s = w.seq();
    let mut out = Vec::new();
    for i in 0..s.len().saturating_sub(1) {
        let (b, a) = (s[i], s[i + 1]);
        if a == b || w.proj(a) != w.proj(b) {
            continue;
        }
        let j = w.positions(a)[1] - 1;
        if w.positions(a)[1] == i + 1 || j <= i + 1 {
            continue;
        }
        let c = s[j];
        if c == a || c == b || w.proj(c) != w.proj(a) {
            continue;
        }
        let k = w.positions(c)[1];
        if k > j + 1 && k + 1 < s.len() && s[k + 1] == b {
            out.push([i, j, k]);
        }
    }
    out
}

fn swap_pairs(w: &Nanoword, site: [usize; 3]) -> Result<Nanoword> {
    let mut seq = w.seq().to_vec();
    for p in site {
        seq.swap(p, p + 1);
    }
    w.with_seq(seq)
}

pub fn apply_h3(w: &Nanoword, site: [usize; 3]) -> Result<Nanoword> {
    if !find_h3_sites(w).contains(&site) {
        return Err(Error::InvalidSite(format!("H3@{},{},{}", site[0] + 1, site[1] + 1, site[2] + 1)));
    }
    swap_pairs(w, site)
}

pub fn apply_inverse_h3(w: &Nanoword, site: [usize; 3]) -> Result<Nanoword> {
    if !find_inverse_h3_sites(w).contains(&site) {
        return Err(Error::InvalidSite(format!("INV H3@{},{},{}", site[0] + 1, site[1] + 1, site[2] + 1)));
    }
    swap_pairs(w, site)
}

//! The oriented surface obtained by thickening the Gauss diagram of a nanoword over `{+, -}`.

use std::fmt;

use crate::algebra::{Alphabet, PhiSpec};
use crate::error::{Error, Result};
use crate::pairings::filling::PhiMatrix;
use crate::pairings::pairing_of_nanoword;
use crate::words::Nanoword;

pub const FIRST_IN: usize = 0;
pub const FIRST_OUT: usize = 1;
pub const SECOND_IN: usize = 2;
pub const SECOND_OUT: usize = 3;

/// A 4-valent ribbon graph. Half-edge slots are numbered `4 * vertex + slot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    /// `true` for a vertex of sign `+`.
    pub signs: Vec<bool>,
    /// Edge `t` joins the out-slot of entry `t` to the in-slot of entry `t + 1` (cyclically).
    pub edges: Vec<(usize, usize)>,
    /// Counterclockwise order of the slots around each vertex.
    pub rotation: Vec<[usize; 4]>,
}

impl RibbonGraph {
    pub fn vertex_count(&self) -> usize {
        self.signs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The graph of the empty word: a circle without vertices, thickened to an annulus.
    pub fn is_annulus(&self) -> bool {
        self.signs.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceStats {
    pub vertices: usize,
    pub edges: usize,
    pub euler: i64,
    pub boundary_components: usize,
    pub genus: usize,
}

impl fmt::Display for SurfaceStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V={} E={} chi={} boundary={} genus={}",
            self.vertices, self.edges, self.euler, self.boundary_components, self.genus
        )
    }
}

fn check_signs(al: &Alphabet) -> Result<()> {
    if al.len() != 2 || al.orbits().len() != 1 || al.is_fixed(al.symbols().next().expect("two symbols")) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(())
}

pub fn ribbon_graph_of(w: &Nanoword) -> Result<RibbonGraph> {
    let al = w.alphabet();
    check_signs(al)?;
    let n = w.letter_count();
    let signs: Vec<bool> = (0..n as u32).map(|l| al.sign(w.proj(l)) > 0).collect();
    let seq = w.seq();
    let slot = |t: usize, out: bool| {
        let l = seq[t];
        let first = w.positions(l)[0] == t;
        4 * l as usize
            + match (first, out) {
                (true, false) => FIRST_IN,
                (true, true) => FIRST_OUT,
                (false, false) => SECOND_IN,
                (false, true) => SECOND_OUT,
            }
    };
    let edges = (0..seq.len()).map(|t| (slot(t, true), slot((t + 1) % seq.len(), false))).collect();
    let rotation = signs
        .iter()
        .map(|&plus| {
            if plus {
                [FIRST_IN, SECOND_IN, FIRST_OUT, SECOND_OUT]
            } else {
                [SECOND_OUT, FIRST_OUT, SECOND_IN, FIRST_IN]
            }
        })
        .collect();
    Ok(RibbonGraph { signs, edges, rotation })
}

/// Counts boundary circles by walking faces: cross an edge, then turn to the next slot around the vertex.
pub fn surface_stats(g: &RibbonGraph) -> SurfaceStats {
    if g.is_annulus() {
        return SurfaceStats { vertices: 0, edges: 1, euler: 0, boundary_components: 2, genus: 0 };
    }
    let darts = 4 * g.vertex_count();
    let mut across = vec![0; darts];
    for &(a, b) in &g.edges {
        across[a] = b;
        across[b] = a;
    }
    let mut next = vec![0; darts];
    for (v, rot) in g.rotation.iter().enumerate() {
        for i in 0..4 {
            next[4 * v + rot[i]] = 4 * v + rot[(i + 1) % 4];
        }
    }
    let mut seen = vec![false; darts];
    let mut faces = 0;
    for start in 0..darts {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = next[across[d]];
        }
    }
    let euler = g.vertex_count() as i64 - g.edge_count() as i64;
    let genus = (2 - euler - faces as i64) / 2;
    SurfaceStats {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        euler,
        boundary_components: faces,
        genus: genus as usize,
    }
}

/// Rank of the Gram matrix of the tautological filling `{s, A, B, …}` under `φ₀(z) = 1`.
pub fn gram_rank(w: &Nanoword) -> Result<usize> {
    check_signs(w.alphabet())?;
    let p = pairing_of_nanoword(w);
    let phi = PhiSpec::rational(w.alphabet(), &[1])?;
    let basis: Vec<_> = (0..=p.size()).map(crate::pairings::SVector::basis).collect();
    Ok(PhiMatrix::new(&p, &phi).rank(&basis))
}

/// Whether the Gram rank equals twice the genus of the surface.
pub fn genus_rank_check(w: &Nanoword) -> Result<bool> {
    let stats = surface_stats(&ribbon_graph_of(w)?);
    Ok(gram_rank(w)? == 2 * stats.genus)
}

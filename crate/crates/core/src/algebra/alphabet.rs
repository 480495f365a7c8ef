use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol of the ground alphabet, in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub u32);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    Free,
    Fixed,
}

/// A τ-orbit, named by its least symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    pub representative: Sym,
    pub kind: OrbitKind,
}

/// A finite ground set with an involution τ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    tau: Vec<Sym>,
    orbit_of: Vec<u32>,
    orbits: Vec<Orbit>,
}

impl Alphabet {
    /// Builds an alphabet from symbol names and the image of each symbol under τ.
    pub fn new(names: Vec<String>, tau: Vec<usize>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateSymbol(n.clone()));
            }
        }
        if tau.len() != names.len() {
            return Err(Error::MissingTau(
                names.get(tau.len()).cloned().unwrap_or_default(),
            ));
        }
        for (i, &t) in tau.iter().enumerate() {
            if t >= names.len() || tau[t] != i {
                return Err(Error::NotInvolutive(names[i].clone()));
            }
        }
        let mut orbit_of = vec![u32::MAX; names.len()];
        let mut orbits = Vec::new();
        for i in 0..names.len() {
            if orbit_of[i] != u32::MAX {
                continue;
            }
            let idx = orbits.len() as u32;
            orbit_of[i] = idx;
            orbit_of[tau[i]] = idx;
            let kind = if tau[i] == i { OrbitKind::Fixed } else { OrbitKind::Free };
            orbits.push(Orbit { representative: Sym(i as u32), kind });
        }
        Ok(Self {
            names,
            tau: tau.into_iter().map(|t| Sym(t as u32)).collect(),
            orbit_of,
            orbits,
        })
    }

    /// Builds an alphabet from names and a list of τ-pairs; `(x, x)` declares a fixed point.
    pub fn from_pairs(names: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let find = |n: &str| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::UnknownSymbol(n.to_string()))
        };
        let mut tau = vec![usize::MAX; names.len()];
        for &(x, y) in pairs {
            let (i, j) = (find(x)?, find(y)?);
            for (a, b) in [(i, j), (j, i)] {
                if tau[a] != usize::MAX && tau[a] != b {
                    return Err(Error::NotInvolutive(names[a].clone()));
                }
                tau[a] = b;
            }
        }
        if let Some(i) = tau.iter().position(|&t| t == usize::MAX) {
            return Err(Error::MissingTau(names[i].clone()));
        }
        Self::new(names, tau)
    }

    /// `k` free orbits `{a, A}, {b, B}, …`; the lowercase symbol represents its orbit.
    pub fn free(k: usize) -> Self {
        let mut names = Vec::with_capacity(2 * k);
        let mut tau = Vec::with_capacity(2 * k);
        for i in 0..k {
            let c = (b'a' + i as u8) as char;
            names.push(c.to_string());
            names.push(c.to_ascii_uppercase().to_string());
            tau.push(2 * i + 1);
            tau.push(2 * i);
        }
        Self::new(names, tau).expect("valid free alphabet")
    }

    /// The alphabet `{+, -}` with τ swapping the two signs.
    pub fn signs() -> Self {
        Self::new(vec!["+".into(), "-".into()], vec![1, 0]).expect("valid")
    }

    /// `k` fixed points `a, b, …`.
    pub fn fixed(k: usize) -> Self {
        let names = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Self::new(names, (0..k).collect()).expect("valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.names.len() as u32).map(Sym)
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sym(&self, name: &str) -> Result<Sym> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Sym(i as u32))
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn tau(&self, s: Sym) -> Sym {
        self.tau[s.index()]
    }

    /// τ applied `e` times.
    pub fn tau_pow(&self, s: Sym, e: u8) -> Sym {
        if e % 2 == 1 {
            self.tau(s)
        } else {
            s
        }
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_index(&self, s: Sym) -> usize {
        self.orbit_of[s.index()] as usize
    }

    pub fn orbit(&self, s: Sym) -> Orbit {
        self.orbits[self.orbit_index(s)]
    }

    pub fn is_fixed(&self, s: Sym) -> bool {
        self.tau(s) == s
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.orbits.iter().all(|o| o.kind == OrbitKind::Free)
    }

    /// +1 on orbit representatives and fixed points, -1 on the τ-partner of a representative.
    pub fn sign(&self, s: Sym) -> i64 {
        if self.orbit(s).representative == s {
            1
        } else {
            -1
        }
    }

    pub fn same_orbit(&self, a: Sym, b: Sym) -> bool {
        self.orbit_of[a.index()] == self.orbit_of[b.index()]
    }

    pub fn free_orbit_count(&self) -> usize {
        self.orbits.iter().filter(|o| o.kind == OrbitKind::Free).count()
    }

    /// Symbols lying in free orbits.
    pub fn free_part(&self) -> Vec<Sym> {
        self.symbols().filter(|&s| !self.is_fixed(s)).collect()
    }
}

/// Orbit decomposition in representative order.
pub fn orbit_decomposition(alphabet: &Alphabet) -> Vec<Orbit> {
    alphabet.orbits().to_vec()
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alphabet: {}", self.names.join(" "))?;
        write!(f, "\ntau:")?;
        for o in &self.orbits {
            let r = o.representative;
            write!(f, " {}<->{}", self.name(r), self.name(self.tau(r)))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_free_orbit() {
        let a = Alphabet::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(
            orbit_decomposition(&a),
            vec![Orbit { representative: Sym(0), kind: OrbitKind::Free }]
        );
    }

    #[test]
    fn single_fixed_point() {
        let a = Alphabet::from_pairs(&["a"], &[("a", "a")]).unwrap();
        assert_eq!(
            orbit_decomposition(&a),
            vec![Orbit { representative: Sym(0), kind: OrbitKind::Fixed }]
        );
    }

    #[test]
    fn mixed_orbits() {
        let a = Alphabet::from_pairs(&["a", "b", "c"], &[("a", "b"), ("c", "c")]).unwrap();
        let orbits = orbit_decomposition(&a);
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[0], Orbit { representative: Sym(0), kind: OrbitKind::Free });
        assert_eq!(orbits[1], Orbit { representative: Sym(2), kind: OrbitKind::Fixed });
        assert_eq!(a.sign(Sym(1)), -1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Alphabet::new(vec!["a".into(), "a".into()], vec![0, 1]),
            Err(Error::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Alphabet::new(vec!["a".into(), "b".into(), "c".into()], vec![1, 2, 0]),
            Err(Error::NotInvolutive(_))
        ));
        assert!(matches!(
            Alphabet::from_pairs(&["a", "b"], &[("a", "a")]),
            Err(Error::MissingTau(_))
        ));
    }
}

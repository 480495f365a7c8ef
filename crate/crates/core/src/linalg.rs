//! Exact rank computations and integer-lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Rank over ℚ of an integer matrix, by fraction-free (Bareiss) elimination.
pub fn rank_integer(m: &[Vec<i128>]) -> usize {
    match bareiss_i128(m) {
        Some(r) => r,
        None => bareiss_big(m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()),
    }
}

fn bareiss_i128(m: &[Vec<i128>]) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = a[rank][c]
                    .checked_mul(a[r][k])?
                    .checked_sub(a[r][c].checked_mul(a[rank][k])?)?;
                a[r][k] = v / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rank over GF(p) of a matrix of residues.
pub fn rank_mod_p(m: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for r in rank + 1..rows {
            let f = (a[r][c] as u128 * inv as u128 % p as u128) as u64;
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let sub = (f as u128 * a[rank][k] as u128 % p as u128) as u64;
                a[r][k] = (a[r][k] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Row-style Hermite normal form of the lattice spanned by `gens` in ℤ^dim.
pub fn hermite_basis(gens: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    let mut basis = Vec::new();
    for c in 0..dim {
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&r| rows[r][c].abs());
            let piv = nz[0];
            for &r in &nz[1..] {
                let q = Integer::div_floor(&rows[r][c], &rows[piv][c]);
                for k in 0..dim {
                    rows[r][k] -= q * rows[piv][k];
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&r| rows[r][c] != 0) {
            let mut row = rows.swap_remove(i);
            if row[c] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(row);
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    basis
}

/// Whether `v` lies in the lattice with the given Hermite basis.
pub fn lattice_contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v = v.to_vec();
    for row in basis {
        let c = row.iter().position(|&x| x != 0).expect("nonzero basis row");
        if v[c] % row[c] != 0 {
            return false;
        }
        let q = v[c] / row[c];
        for (x, y) in v.iter_mut().zip(row) {
            *x -= q * y;
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Scales each rational row to integers (rank is unchanged).
pub fn clear_denominators(m: &[Vec<num_rational::Ratio<i64>>]) -> Vec<Vec<i128>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(1i128, |acc, r| acc.lcm(&(*r.denom() as i128)));
            row.iter().map(|r| *r.numer() as i128 * (l / *r.denom() as i128)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gram_of_wab_has_rank_two() {
        let m = vec![vec![0, -1, 1], vec![1, 0, 2], vec![-1, -2, 0]];
        assert_eq!(rank_integer(&m), 2);
    }

    #[test]
    fn big_entries_fall_back() {
        let b = 1i128 << 100;
        let m = vec![vec![b, b + 1, 3], vec![b + 1, b, 5], vec![2 * b + 1, 2 * b + 1, 8]];
        assert_eq!(rank_integer(&m), 2);
        assert_eq!(rank_integer(&[vec![b, 1], vec![1, b]]), 2);
    }

    #[test]
    fn mod_p_rank() {
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, 1]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![0, 1], vec![1, 0]], 2), 2);
        assert_eq!(rank_mod_p(&[vec![2, 4], vec![1, 2]], 3), 1);
    }

    #[test]
    fn even_sublattice_membership() {
        let basis = hermite_basis(&[vec![2, 0], vec![0, 2]], 2);
        assert!(lattice_contains(&basis, &[2, -4]));
        assert!(!lattice_contains(&basis, &[1, 0]));
        assert!(!lattice_contains(&basis, &[0, -1]));
        let basis = hermite_basis(&[vec![1, 1], vec![1, -1]], 2);
        assert!(lattice_contains(&basis, &[2, 0]));
        assert!(!lattice_contains(&basis, &[1, 0]));
    }

    fn rank_big(m: &[Vec<i128>]) -> usize {
        bareiss_big(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    proptest! {
        #[test]
        fn small_and_big_paths_agree(m in prop::collection::vec(prop::collection::vec(-3i128..4, 5), 0..6)) {
            prop_assert_eq!(rank_integer(&m), rank_big(&m));
            let cols = m.first().map_or(0, Vec::len);
            // the transpose has the same rank
            let t: Vec<Vec<i128>> = (0..cols).map(|c| m.iter().map(|r| r[c]).collect()).collect();
            prop_assert_eq!(rank_integer(&m), rank_integer(&t));
        }

        #[test]
        fn membership_matches_generators(
            gens in prop::collection::vec(prop::collection::vec(-4i64..5, 3), 1..4),
            coeffs in prop::collection::vec(-3i64..4, 4),
        ) {
            let basis = hermite_basis(&gens, 3);
            let mut v = vec![0i64; 3];
            for (g, c) in gens.iter().zip(&coeffs) {
                for k in 0..3 { v[k] += c * g[k]; }
            }
            prop_assert!(lattice_contains(&basis, &v));
        }
    }
}

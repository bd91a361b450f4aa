//! Exact sparse linear algebra over the rationals.
//!
//! Rank computation is a division-controlled Gaussian elimination: rows are
//! kept as integer vectors with content stripped after every combination,
//! and pivots are chosen by a Markowitz-style fill estimate. No modular
//! arithmetic is used anywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::num::Q;

/// Sparse matrix assembled column by column: `push_col` records the support
/// of one basis image.
#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: usize,
    /// Column-major: `(row, coefficient)` sorted by row.
    pub entries: Vec<Vec<(usize, Q)>>,
}

impl SparseMat {
    pub fn new(rows: usize) -> Self {
        SparseMat { rows, cols: 0, entries: vec![] }
    }

    pub fn push_col(&mut self, mut col: Vec<(usize, Q)>) {
        col.sort_by_key(|&(r, _)| r);
        col.retain(|(_, c)| !c.is_zero());
        for &(r, _) in &col {
            assert!(r < self.rows, "row index out of range");
        }
        self.entries.push(col);
        self.cols += 1;
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_empty())
    }

    /// Apply to a coefficient vector indexed like the columns.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (j, col) in self.entries.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (r, c) in col {
                out[*r] += c * &v[j];
            }
        }
        out
    }

    /// Coordinate dump, one `row col numerator/denominator` per line.
    pub fn dump_coordinate(&self) -> String {
        let mut s = String::new();
        for (j, col) in self.entries.iter().enumerate() {
            for (r, c) in col {
                let _ = writeln!(s, "{} {} {}/{}", r, j, c.numer(), c.denom());
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        rank_sparse(self)
    }
}

/// Rank by division-controlled elimination with Markowitz pivoting.
fn rank_sparse(m: &SparseMat) -> usize {
    // Row-major integer data: clear denominators row-wise, strip content.
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut rows_q: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); m.rows];
    for (j, col) in m.entries.iter().enumerate() {
        for (r, c) in col {
            rows_q[*r].insert(j, c.clone());
        }
    }
    for (r, rq) in rows_q.iter().enumerate() {
        let mut lcm = BigInt::one();
        for c in rq.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut row = BTreeMap::new();
        for (j, c) in rq {
            let v = c.numer() * (&lcm / c.denom());
            if !v.is_zero() {
                row.insert(*j, v);
            }
        }
        strip_content(&mut row);
        rows[r] = row;
    }
    drop(rows_q);

    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (r, row) in rows.iter().enumerate() {
        for j in row.keys() {
            col_rows.entry(*j).or_default().insert(r);
        }
    }
    let mut active: BTreeSet<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let mut rank = 0usize;

    while !active.is_empty() {
        // candidate pivot: scan a few shortest active rows
        let mut cands: Vec<usize> = active.iter().cloned().collect();
        cands.sort_by_key(|&r| rows[r].len());
        let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
        for &r in cands.iter().take(12) {
            let rn = rows[r].len();
            for (j, v) in &rows[r] {
                if v.is_zero() {
                    continue;
                }
                let cn = col_rows.get(j).map_or(0, |s| s.len());
                let score = (rn - 1) * (cn - 1);
                if best.as_ref().is_none_or(|&(s, _, _)| score < s) {
                    best = Some((score, r, *j));
                }
            }
            if best.is_some_and(|(s, _, _)| s == 0) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else { break };
        rank += 1;
        let piv_row = rows[pr].clone();
        let piv_val = piv_row[&pc].clone();
        // remove pivot row from indices
        active.remove(&pr);
        for j in piv_row.keys() {
            if let Some(s) = col_rows.get_mut(j) {
                s.remove(&pr);
            }
        }
        rows[pr].clear();
        // eliminate pc from the other rows
        let targets: Vec<usize> = col_rows
            .get(&pc)
            .map(|s| s.iter().cloned().collect())
            .unwrap_or_default();
        for tr in targets {
            let factor = rows[tr][&pc].clone();
            // row := piv_val * row - factor * piv_row
            let old_keys: Vec<usize> = rows[tr].keys().cloned().collect();
            let mut new_row: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (j, v) in &rows[tr] {
                new_row.insert(*j, v * &piv_val);
            }
            for (j, v) in &piv_row {
                let e = new_row.entry(*j).or_insert_with(BigInt::zero);
                *e -= v * &factor;
            }
            new_row.retain(|_, v| !v.is_zero());
            strip_content(&mut new_row);
            // index maintenance
            for j in old_keys {
                if !new_row.contains_key(&j) {
                    if let Some(s) = col_rows.get_mut(&j) {
                        s.remove(&tr);
                    }
                }
            }
            for j in new_row.keys() {
                col_rows.entry(*j).or_default().insert(tr);
            }
            if new_row.is_empty() {
                active.remove(&tr);
            }
            rows[tr] = new_row;
        }
        col_rows.remove(&pc);
    }
    rank
}

fn strip_content(row: &mut BTreeMap<usize, BigInt>) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.values_mut() {
        *v /= &g;
    }
}

/// Dense Gaussian elimination over the rationals. Independent of the sparse
/// path; used as a brute-force oracle in tests and cross-checks.
pub fn dense_rank(mut a: Vec<Vec<Q>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for c in col..cols {
            let v = &a[row][c] * &inv;
            a[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let sub = &a[row][c] * &f;
                    a[r][c] -= sub;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

impl SparseMat {
    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.cols]; self.rows];
        for (j, col) in self.entries.iter().enumerate() {
            for (r, c) in col {
                d[*r][j] = c.clone();
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{qi, qq};
    use rand::{RngExt, SeedableRng};

    #[test]
    fn rank_of_simple_matrices() {
        let mut m = SparseMat::new(2);
        m.push_col(vec![(0, qi(1)), (1, qi(2))]);
        m.push_col(vec![(0, qi(2)), (1, qi(4))]);
        m.push_col(vec![(0, qi(0))]);
        assert_eq!(m.rank(), 1);
        assert_eq!(dense_rank(m.to_dense()), 1);

        let mut id = SparseMat::new(3);
        for i in 0..3 {
            id.push_col(vec![(i, qq(1, 3))]);
        }
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn sparse_rank_matches_dense_on_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..30 {
            let rows = 1 + (trial % 8);
            let cols = 1 + (trial % 11);
            let mut m = SparseMat::new(rows);
            for _ in 0..cols {
                let mut col = vec![];
                for r in 0..rows {
                    if rng.random_range(0..3) == 0 {
                        col.push((r, qi(rng.random_range(-3..4))));
                    }
                }
                m.push_col(col);
            }
            assert_eq!(m.rank(), dense_rank(m.to_dense()), "trial {trial}");
        }
    }

    #[test]
    fn dump_format() {
        let mut m = SparseMat::new(2);
        m.push_col(vec![(1, qq(-1, 2))]);
        assert_eq!(m.dump_coordinate(), "1 0 -1/2\n");
    }
}

//! Truncated chain complexes with explicit boundary matrices.
//!
//! A complex is assembled from a basis enumerator and a differential given
//! on basis keys. Differentials that exit the enumerated bases raise a
//! truncation-leak error instead of silently dropping terms; callers
//! enumerate one guard degree beyond the window they want homology in.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::RangeInclusive;

use num_traits::Zero;
use thiserror::Error;

use crate::chain::Chain;
use crate::exact::SparseMat;
use crate::num::Q;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("differential leaks out of the enumerated basis in degree {degree}: {witness}")]
    TruncationLeak { degree: i32, witness: String },
    #[error("d^2 != 0 at degree {degree}: {witness}")]
    NotAComplex { degree: i32, witness: String },
    #[error("not a chain map: {witness}")]
    NotChainMap { witness: String },
    #[error("window touches the truncation edge: {0}")]
    EdgeEffect(String),
    #[error("dimensions did not stabilize: {0}")]
    NonStabilization(String),
}

pub type CResult<T> = Result<T, ComplexError>;

/// Z-graded complex on explicit finite bases, boundary maps degree k to k-1.
pub struct TruncatedComplex<K: Ord + Clone + Debug> {
    pub lo: i32,
    pub hi: i32,
    pub bases: BTreeMap<i32, Vec<K>>,
    pub index: BTreeMap<i32, BTreeMap<K, usize>>,
    /// `boundary[k]`: matrix of d: C_k -> C_{k-1}, for lo < k <= hi.
    pub boundary: BTreeMap<i32, SparseMat>,
}

impl<K: Ord + Clone + Debug> TruncatedComplex<K> {
    /// Assemble from enumerated bases and a basis-level differential,
    /// verifying exactness of d·d and absence of truncation leaks.
    pub fn assemble(
        degrees: RangeInclusive<i32>,
        mut basis: impl FnMut(i32) -> Vec<K>,
        mut diff: impl FnMut(i32, &K) -> Chain<K>,
    ) -> CResult<Self> {
        let (lo, hi) = (*degrees.start(), *degrees.end());
        let mut bases = BTreeMap::new();
        let mut index: BTreeMap<i32, BTreeMap<K, usize>> = BTreeMap::new();
        for k in lo..=hi {
            let b = basis(k);
            let idx: BTreeMap<K, usize> =
                b.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
            assert_eq!(idx.len(), b.len(), "duplicate basis keys in degree {k}");
            bases.insert(k, b);
            index.insert(k, idx);
        }
        let mut boundary = BTreeMap::new();
        let mut images: BTreeMap<i32, Vec<Chain<K>>> = BTreeMap::new();
        for k in (lo + 1)..=hi {
            let mut mat = SparseMat::new(bases[&(k - 1)].len());
            let mut imgs = vec![];
            for x in &bases[&k] {
                let dx = diff(k, x);
                let mut col = vec![];
                for (key, c) in dx.iter() {
                    match index[&(k - 1)].get(key) {
                        Some(&r) => col.push((r, c.clone())),
                        None => {
                            return Err(ComplexError::TruncationLeak {
                                degree: k,
                                witness: format!("d({x:?}) hits {key:?}"),
                            })
                        }
                    }
                }
                mat.push_col(col);
                imgs.push(dx);
            }
            boundary.insert(k, mat);
            images.insert(k, imgs);
        }
        // d^2 = 0, checked chain-wise
        for k in (lo + 2)..=hi {
            for (i, dx) in images[&k].iter().enumerate() {
                let mut dd: Chain<K> = Chain::zero();
                for (key, c) in dx.iter() {
                    let r = index[&(k - 1)][key];
                    dd.add_scaled(&images[&(k - 1)][r], c);
                }
                if !dd.is_zero() {
                    return Err(ComplexError::NotAComplex {
                        degree: k,
                        witness: format!("basis element {:?}", bases[&k][i]),
                    });
                }
            }
        }
        Ok(TruncatedComplex { lo, hi, bases, index, boundary })
    }

    pub fn dim(&self, k: i32) -> usize {
        self.bases.get(&k).map_or(0, |b| b.len())
    }

    pub fn total_dim(&self) -> usize {
        self.bases.values().map(|b| b.len()).sum()
    }

    /// Homology dimensions over a window with one degree of margin on each
    /// side of the truncation.
    pub fn homology_dims(&self, window: RangeInclusive<i32>) -> CResult<BTreeMap<i32, usize>> {
        let (a, b) = (*window.start(), *window.end());
        if a <= self.lo || b >= self.hi {
            return Err(ComplexError::EdgeEffect(format!(
                "window {a}..={b} inside truncation {}..={}",
                self.lo, self.hi
            )));
        }
        let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
        for k in a..=(b + 1) {
            ranks.insert(k, self.boundary[&k].rank());
        }
        let mut dims = BTreeMap::new();
        for k in a..=b {
            let dim = self.dim(k);
            let h = dim - ranks[&k] - ranks[&(k + 1)];
            dims.insert(k, h);
        }
        Ok(dims)
    }

    /// Verify that `f` is a chain map into `target` on every basis element,
    /// then build the mapping cone `target <- f - shifted self`.
    pub fn mapping_cone<K2: Ord + Clone + Debug>(
        &self,
        target: &TruncatedComplex<K2>,
        mut f: impl FnMut(i32, &K) -> Chain<K2>,
        shift: i32,
    ) -> CResult<TruncatedComplex<ConeKey<K, K2>>> {
        // f maps degree k of self to degree k + shift of target
        let lo = (self.lo + 1).max(target.lo - shift);
        let hi = self.hi.min(target.hi - shift);
        // chain-map check where both sides are defined
        for k in (lo + 1)..=hi {
            for x in &self.bases[&k] {
                let mut df = f(k, x).map_linear(|y| diff_of(target, k + shift, y));
                let fd = diff_of_chain(self, k, x).map_linear(|z| f(k - 1, z));
                df.sub(&fd);
                if !df.is_zero() {
                    return Err(ComplexError::NotChainMap {
                        witness: format!("degree {k}: {x:?}"),
                    });
                }
            }
        }
        let cone = TruncatedComplex::assemble(
            (lo + shift)..=(hi + shift + 1),
            |k| {
                let mut b: Vec<ConeKey<K, K2>> = self
                    .bases
                    .get(&(k - 1 - shift))
                    .map(|v| v.iter().cloned().map(ConeKey::Shifted).collect())
                    .unwrap_or_default();
                if k >= lo + shift && k <= hi + shift {
                    if let Some(t) = target.bases.get(&k) {
                        b.extend(t.iter().cloned().map(ConeKey::Target));
                    }
                }
                b
            },
            |k, key| match key {
                ConeKey::Shifted(x) => {
                    let minus_d = diff_of_chain(self, k - 1 - shift, x)
                        .scaled(&-Q::from_integer(1.into()))
                        .map_keys(|z| ConeKey::Shifted(z.clone()));
                    let fx = f(k - 1 - shift, x).map_keys(|y| ConeKey::Target(y.clone()));
                    minus_d.plus(&fx)
                }
                ConeKey::Target(y) => {
                    diff_of(target, k, y).map_keys(|z| ConeKey::Target(z.clone()))
                }
            },
        )?;
        Ok(cone)
    }

    /// Quotient by a monomial basis action. `canon` sends a key to its
    /// orbit representative together with the coefficient (+1/-1) relating
    /// them; a zero coefficient kills the orbit (sign-inconsistent orbits of
    /// alternating complexes).
    pub fn coinvariants(&self, canon: impl Fn(&K) -> (K, Q)) -> CResult<TruncatedComplex<K>> {
        let mut qbases: BTreeMap<i32, Vec<K>> = BTreeMap::new();
        let mut pick: BTreeMap<i32, BTreeMap<K, K>> = BTreeMap::new(); // rep -> a preimage
        for (k, b) in &self.bases {
            let mut reps: BTreeMap<K, K> = BTreeMap::new();
            for x in b {
                let (rep, sign) = canon(x);
                if sign.is_zero() {
                    continue;
                }
                reps.entry(rep).or_insert_with(|| x.clone());
            }
            qbases.insert(*k, reps.keys().cloned().collect());
            pick.insert(*k, reps);
        }
        TruncatedComplex::assemble(
            self.lo..=self.hi,
            |k| qbases[&k].clone(),
            |k, rep| {
                let x = &pick[&k][rep];
                let (_, sx) = canon(x);
                let inv = sx.recip();
                let mut out = Chain::zero();
                for (y, c) in diff_of_chain(self, k, x).iter() {
                    let (ry, sy) = canon(y);
                    if sy.is_zero() {
                        continue;
                    }
                    out.add_term(ry, c * &sy * &inv);
                }
                out
            },
        )
    }

    pub fn boundary_dump(&self, k: i32) -> Option<String> {
        self.boundary.get(&k).map(|m| m.dump_coordinate())
    }
}

fn diff_of<K: Ord + Clone + Debug>(cx: &TruncatedComplex<K>, k: i32, x: &K) -> Chain<K> {
    let Some(mat) = cx.boundary.get(&k) else {
        return Chain::zero();
    };
    let j = cx.index[&k][x];
    let mut out = Chain::zero();
    for (r, c) in &mat.entries[j] {
        out.add_term(cx.bases[&(k - 1)][*r].clone(), c.clone());
    }
    out
}

fn diff_of_chain<K: Ord + Clone + Debug>(
    cx: &TruncatedComplex<K>,
    k: i32,
    x: &K,
) -> Chain<K> {
    diff_of(cx, k, x)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ConeKey<K, K2> {
    Shifted(K),
    Target(K2),
}

/// Stabilization driver: grow the parameter until the reported dimensions
/// agree for `p` and `p + step`, then return them with the level reached.
pub fn stabilized_dims<T: PartialEq + Debug>(
    mut build: impl FnMut(u32) -> CResult<T>,
    start: u32,
    step: u32,
    max: u32,
) -> CResult<(T, u32)> {
    let mut p = start;
    let mut cur = build(p)?;
    while p + step <= max {
        let next = build(p + step)?;
        if next == cur {
            return Ok((next, p + step));
        }
        cur = next;
        p += step;
    }
    Err(ComplexError::NonStabilization(format!(
        "no agreement up to parameter {max}; last value {cur:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qi;

    /// Circle-like complex: Q -0-> Q.
    fn circle() -> TruncatedComplex<(i32, u8)> {
        TruncatedComplex::assemble(
            -1..=2,
            |k| match k {
                0 | 1 => vec![(k, 0u8)],
                _ => vec![],
            },
            |_, _| Chain::zero(),
        )
        .unwrap()
    }

    #[test]
    fn circle_homology() {
        let c = circle();
        let dims = c.homology_dims(0..=1).unwrap();
        assert_eq!(dims[&0], 1);
        assert_eq!(dims[&1], 1);
    }

    #[test]
    fn zero_complex_has_empty_matrices() {
        let c = TruncatedComplex::<(i32, u8)>::assemble(-1..=2, |_| vec![], |_, _| Chain::zero())
            .unwrap();
        assert_eq!(c.total_dim(), 0);
        assert_eq!(c.homology_dims(0..=1).unwrap()[&0], 0);
    }

    #[test]
    fn leak_is_reported() {
        let r = TruncatedComplex::assemble(
            0..=1,
            |k| if k == 1 { vec![(1, 0u8)] } else { vec![] },
            |_, _| Chain::generator((0, 7u8)),
        );
        assert!(matches!(r, Err(ComplexError::TruncationLeak { .. })));
    }

    #[test]
    fn edge_window_rejected() {
        let c = circle();
        assert!(c.homology_dims(-1..=0).is_err());
        assert!(c.homology_dims(0..=2).is_err());
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = circle();
        let cone = c
            .mapping_cone(&circle(), |_, x| Chain::generator(*x), 0)
            .unwrap();
        let dims = cone.homology_dims(1..=1).unwrap();
        assert_eq!(dims[&1], 0);
    }

    #[test]
    fn cone_of_zero_is_sum_with_shift() {
        let c = circle();
        let cone = c.mapping_cone(&circle(), |_, _| Chain::zero(), 0).unwrap();
        let dims = cone.homology_dims(1..=1).unwrap();
        // degree 1 of the cone: H_0(self) + H_1(target) = 2
        assert_eq!(dims[&1], 2);
    }

    #[test]
    fn non_chain_map_rejected_with_witness() {
        // a complex with a nonzero differential: Q -id-> Q
        let line = TruncatedComplex::assemble(
            -1..=2,
            |k| match k {
                0 | 1 => vec![(k, 0u8)],
                _ => vec![],
            },
            |k, _| {
                if k == 1 {
                    Chain::generator((0, 0u8))
                } else {
                    Chain::zero()
                }
            },
        )
        .unwrap();
        // f: circle -> line as identity on bases is not a chain map
        let r = circle().mapping_cone(&line, |_, x| Chain::generator(*x), 0);
        assert!(matches!(r, Err(ComplexError::NotChainMap { .. })));
    }

    #[test]
    fn coinvariants_of_sign_flip_kills_generator() {
        // one generator in degree 0 with canon coefficient 0
        let c = TruncatedComplex::assemble(
            -1..=1,
            |k| if k == 0 { vec![(0, 0u8), (0, 1u8)] } else { vec![] },
            |_, _| Chain::zero(),
        )
        .unwrap();
        let q = c
            .coinvariants(|k| {
                if k.1 == 1 {
                    ((0, 0u8), qi(0))
                } else {
                    ((0, 0u8), qi(1))
                }
            })
            .unwrap();
        assert_eq!(q.dim(0), 1);
    }

    #[test]
    fn cone_of_the_two_point_augmentation_is_acyclic() {
        // full Bar complex of a 2-point set through degree 3, augmented to
        // the one-point complex; the cone must be exact in the window
        fn tuples(n: usize) -> Vec<Vec<u8>> {
            if n == 0 {
                return vec![vec![]];
            }
            tuples(n - 1)
                .into_iter()
                .flat_map(|t| {
                    [0u8, 1].iter().map(move |&x| {
                        let mut u = t.clone();
                        u.push(x);
                        u
                    })
                })
                .collect()
        }
        let bar = TruncatedComplex::assemble(
            -1..=3,
            |k| {
                if k < 0 {
                    vec![]
                } else {
                    tuples(k as usize + 1)
                }
            },
            |_, t: &Vec<u8>| {
                if t.len() <= 1 {
                    return Chain::zero();
                }
                let mut out = Chain::zero();
                for i in 0..t.len() {
                    let mut f = t.clone();
                    f.remove(i);
                    out.add_term(f, qi(if i % 2 == 0 { 1 } else { -1 }));
                }
                out
            },
        )
        .unwrap();
        // the one-point Bar complex: boundary matrices alternate zero and iso
        let point = TruncatedComplex::assemble(
            -1..=3,
            |k| if k < 0 { vec![] } else { vec![vec![9u8; k as usize + 1]] },
            |k, t: &Vec<u8>| {
                if k >= 1 && k % 2 == 0 {
                    Chain::generator(vec![9u8; t.len() - 1])
                } else {
                    Chain::zero()
                }
            },
        )
        .unwrap();
        for k in 1..=3 {
            let rank = point.boundary[&k].rank();
            assert_eq!(rank, if k % 2 == 0 { 1 } else { 0 });
        }
        // the augmentation as a chain map to the point complex
        let cone = bar
            .mapping_cone(&point, |k, t| {
                if k >= 0 {
                    Chain::generator(vec![9u8; t.len()])
                } else {
                    Chain::zero()
                }
            }, 0)
            .unwrap();
        let dims = cone.homology_dims(1..=2).unwrap();
        assert_eq!(dims[&1], 0);
        assert_eq!(dims[&2], 0);
    }

    #[test]
    fn coinvariants_commute_with_the_boundary() {
        // free Z/2-swap on two copies of an interval complex
        // vertices (side, 0|1), edge (side,) with d(edge) = v1 - v0
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
        enum K {
            V(u8, u8),
            E(u8),
        }
        let cx = TruncatedComplex::assemble(
            -1..=2,
            |k| match k {
                0 => vec![K::V(0, 0), K::V(0, 1), K::V(1, 0), K::V(1, 1)],
                1 => vec![K::E(0), K::E(1)],
                _ => vec![],
            },
            |_, key| match key {
                K::E(s) => {
                    let mut c = Chain::generator(K::V(*s, 1));
                    c.add_term(K::V(*s, 0), qi(-1));
                    c
                }
                _ => Chain::zero(),
            },
        )
        .unwrap();
        let canon = |k: &K| -> (K, Q) {
            // swap the two sides; representative = side 0
            match k {
                K::V(_, i) => (K::V(0, *i), qi(1)),
                K::E(_) => (K::E(0), qi(1)),
            }
        };
        let q = cx.coinvariants(canon).unwrap();
        assert_eq!(q.dim(0), 2);
        assert_eq!(q.dim(1), 1);
        // the quotient boundary is the projected boundary
        let col = &q.boundary[&1].entries[0];
        assert_eq!(col.len(), 2);
        let dims = q.homology_dims(0..=1).unwrap();
        assert_eq!(dims[&0], 1);
        assert_eq!(dims[&1], 0);
    }

    #[test]
    fn stabilization_detects_agreement_and_failure() {
        let (v, level) = stabilized_dims(|p| Ok(p.min(3)), 1, 1, 10).unwrap();
        assert_eq!((v, level), (3, 4));
        let r = stabilized_dims(|p| Ok(p), 1, 1, 5);
        assert!(matches!(r, Err(ComplexError::NonStabilization(_))));
    }
}

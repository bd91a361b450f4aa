//! Free groups with the word metric on their Cayley tree.
//!
//! Letters are nonzero `i8`: `i > 0` is the generator with index `i-1`,
//! `-i` its inverse. Words are kept freely reduced.

use super::{Elem, GResult, GroupError};
use crate::metric::Dist;
use crate::num::Q;

#[derive(Clone, Debug)]
pub struct FreeGroup {
    pub rank: usize,
}

pub fn concat_reduce(a: &[i8], b: &[i8]) -> Vec<i8> {
    let mut out = a.to_vec();
    for &l in b {
        if out.last().is_some_and(|&t| t == -l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Order generators as a < A < b < B < ...
pub fn letter_rank(l: i8) -> i64 {
    let idx = (l.unsigned_abs() as i64 - 1) * 2;
    if l > 0 {
        idx
    } else {
        idx + 1
    }
}

pub fn display(w: &[i8]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|&l| {
            let c = (b'a' + (l.unsigned_abs() - 1)) as char;
            if l > 0 {
                c
            } else {
                c.to_ascii_uppercase()
            }
        })
        .collect()
}

/// Cyclic reduction: returns `(p, c)` with the input equal to `p c p^{-1}`
/// and `c` cyclically reduced.
pub fn cyclic_reduce(w: &[i8]) -> (Vec<i8>, Vec<i8>) {
    let mut prefix = vec![];
    let mut core = w.to_vec();
    while core.len() >= 2 && core.first() == core.last().map(|&l| -l).as_ref() {
        prefix.push(core[0]);
        core = core[1..core.len() - 1].to_vec();
    }
    (prefix, core)
}

fn rotations(c: &[i8]) -> Vec<Vec<i8>> {
    if c.is_empty() {
        return vec![vec![]];
    }
    (0..c.len())
        .map(|i| {
            let mut r = c[i..].to_vec();
            r.extend_from_slice(&c[..i]);
            r
        })
        .collect()
}

/// Shortlex-minimal rotation of the cyclic reduction.
pub fn class_rep(a: &Elem) -> Elem {
    let Elem::Free(w) = a else {
        panic!("mixed group backends")
    };
    let (_, core) = cyclic_reduce(w);
    let best = rotations(&core)
        .into_iter()
        .min_by_key(|r| r.iter().map(|&l| letter_rank(l)).collect::<Vec<_>>())
        .unwrap();
    Elem::Free(best)
}

pub fn conjugating_element(v: &Elem, w: &Elem) -> Option<Elem> {
    let (Elem::Free(vw), Elem::Free(ww)) = (v, w) else {
        panic!("mixed group backends")
    };
    let (p, cv) = cyclic_reduce(vw);
    let (q, cw) = cyclic_reduce(ww);
    if cv.len() != cw.len() {
        return None;
    }
    for i in 0..cv.len().max(1) {
        let mut rot = cv[i..].to_vec();
        rot.extend_from_slice(&cv[..i]);
        if rot == cw {
            // v = p c p^{-1}; rotation by i conjugates c to rot via u = c[..i]
            // s = p u q^{-1} satisfies s^{-1} v s = w
            let u = &cv[..i];
            let q_inv: Vec<i8> = q.iter().rev().map(|l| -l).collect();
            let s = concat_reduce(&concat_reduce(&p, u), &q_inv);
            return Some(Elem::Free(s));
        }
    }
    None
}

/// Primitive root: the shortest `r` with `v = r^m`. Returns `(r, m)`.
pub fn primitive_root(w: &[i8]) -> (Vec<i8>, usize) {
    let (p, c) = cyclic_reduce(w);
    if c.is_empty() {
        return (w.to_vec(), 1);
    }
    let n = c.len();
    for period in 1..=n {
        if n % period != 0 {
            continue;
        }
        if (period..n).all(|i| c[i] == c[i - period]) {
            let root_core = c[..period].to_vec();
            // conjugate back: root = p root_core p^{-1}
            let p_inv: Vec<i8> = p.iter().rev().map(|l| -l).collect();
            let root = concat_reduce(&concat_reduce(&p, &root_core), &p_inv);
            return (root, n / period);
        }
    }
    unreachable!()
}

impl FreeGroup {
    pub fn symmetric_generators(&self) -> Vec<Elem> {
        let mut out = vec![];
        for i in 1..=self.rank as i8 {
            out.push(Elem::Free(vec![i]));
            out.push(Elem::Free(vec![-i]));
        }
        out
    }

    pub fn ball(&self, center: &Elem, radius: &Dist) -> Vec<Elem> {
        let Elem::Free(c) = center else {
            panic!("mixed group backends")
        };
        let r = radius.to_f64().floor() as usize;
        // exact check: word metric is integral, radius compared exactly
        let rq = Q::from_integer((r as i64).into());
        let r = if rq <= radius.square().clone() || Dist::from_q(rq) <= *radius {
            r
        } else {
            r.saturating_sub(1)
        };
        let mut out: Vec<Vec<i8>> = vec![vec![]];
        let mut frontier: Vec<Vec<i8>> = vec![vec![]];
        for _ in 0..r {
            let mut next = vec![];
            for w in &frontier {
                for l in 1..=self.rank as i8 {
                    for s in [l, -l] {
                        if w.last().is_some_and(|&t| t == -s) {
                            continue;
                        }
                        let mut nw = w.clone();
                        nw.push(s);
                        next.push(nw);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.into_iter()
            .map(|w| Elem::Free(concat_reduce(c, &w)))
            .collect()
    }

    pub fn parse(&self, s: &str) -> GResult<Elem> {
        let mut w = vec![];
        for ch in s.chars() {
            let lower = ch.to_ascii_lowercase();
            let idx = (lower as i32) - ('a' as i32) + 1;
            if idx < 1 || idx as usize > self.rank {
                return Err(GroupError::BadInput(format!("unknown letter '{ch}'")));
            }
            let l = if ch.is_ascii_lowercase() {
                idx as i8
            } else {
                -(idx as i8)
            };
            w = concat_reduce(&w, &[l]);
        }
        Ok(Elem::Free(w))
    }

    /// Signed position (in edge units) of the projection of `g` onto the
    /// axis of the cyclically reduced word `v`, where position 0 is the
    /// identity vertex and `v` sits at position `|v|`.
    pub fn axis_position(&self, v: &[i8], g: &[i8]) -> i64 {
        assert!(!v.is_empty(), "axis of the identity");
        debug_assert!(
            cyclic_reduce(v).1.len() == v.len(),
            "axis anchor must be cyclically reduced"
        );
        // Forward ray spells v^infinity, backward ray spells (v^-1)^infinity.
        let fwd = |i: usize| v[i % v.len()];
        let bwd = |i: usize| -v[v.len() - 1 - (i % v.len())];
        let mut f = 0usize;
        while f < g.len() && g[f] == fwd(f) {
            f += 1;
        }
        if f > 0 {
            return f as i64;
        }
        let mut b = 0usize;
        while b < g.len() && g[b] == bwd(b) {
            b += 1;
        }
        -(b as i64)
    }
}

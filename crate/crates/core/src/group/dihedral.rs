//! The infinite dihedral group acting on the line.
//!
//! Normal form `(t, flip)`: `x -> x + t` when `flip` is false, `x -> t - x`
//! otherwise. Generators are the reflections `a = (0, flip)` at 0 and
//! `b = (1, flip)` at 1/2. Base point `x = 1/4` (trivial stabilizer),
//! fundamental domain `[0, 1/2)`.

use super::{Elem, GResult, GroupError};
use crate::metric::Dist;
use crate::num::{qq, Q};
use num_traits::Signed;

#[derive(Clone, Debug)]
pub struct DihedralGroup;

pub fn mul(t1: i64, f1: bool, t2: i64, f2: bool) -> Elem {
    // (g h)(x) = g(h(x))
    if !f1 {
        Elem::Dihedral { t: t1 + t2, flip: f2 }
    } else {
        // g(x) = t1 - x
        if !f2 {
            // h(x) = x + t2; g(h(x)) = t1 - t2 - x
            Elem::Dihedral { t: t1 - t2, flip: true }
        } else {
            // h(x) = t2 - x; g(h(x)) = t1 - t2 + x
            Elem::Dihedral { t: t1 - t2, flip: false }
        }
    }
}

/// Image of a rational point under the isometry.
pub fn act(t: i64, flip: bool, x: &Q) -> Q {
    let tq = Q::from_integer(t.into());
    if flip {
        tq - x
    } else {
        tq + x
    }
}

pub fn base_point() -> Q {
    qq(1, 4)
}

pub fn word_len(t: i64, flip: bool) -> u64 {
    if flip {
        (2 * t - 1).unsigned_abs()
    } else {
        2 * t.unsigned_abs()
    }
}

impl DihedralGroup {
    pub fn dist(&self, a: &Elem, b: &Elem) -> Dist {
        let (Elem::Dihedral { t: t1, flip: f1 }, Elem::Dihedral { t: t2, flip: f2 }) = (a, b)
        else {
            panic!("mixed group backends")
        };
        let x = base_point();
        let d = (act(*t1, *f1, &x) - act(*t2, *f2, &x)).abs();
        Dist::from_q(d)
    }

    pub fn ball(&self, center: &Elem, radius: &Dist) -> Vec<Elem> {
        let Elem::Dihedral { t: ct, flip: cf } = center else {
            panic!("mixed group backends")
        };
        let c = act(*ct, *cf, &base_point());
        let r = radius.to_f64().ceil() as i64 + 2;
        let mut out = vec![];
        for t in (-r + c.to_integer().try_into().unwrap_or(0i64))..=(r + c.to_integer().try_into().unwrap_or(0i64)) {
            for flip in [false, true] {
                let g = Elem::Dihedral { t, flip };
                if self.dist(center, &g) <= *radius {
                    out.push(g);
                }
            }
        }
        out
    }
}

pub fn class_rep(a: &Elem) -> Elem {
    let Elem::Dihedral { t, flip } = a else {
        panic!("mixed group backends")
    };
    if *flip {
        // reflections split by parity of t
        Elem::Dihedral { t: t.rem_euclid(2), flip: true }
    } else {
        Elem::Dihedral { t: t.abs(), flip: false }
    }
}

pub fn conjugating_element(v: &Elem, w: &Elem) -> Option<Elem> {
    let (Elem::Dihedral { t: tv, flip: fv }, Elem::Dihedral { t: tw, flip: fw }) = (v, w) else {
        panic!("mixed group backends")
    };
    if fv != fw {
        return None;
    }
    if !fv {
        if tv == tw {
            return Some(Elem::Dihedral { t: 0, flip: false });
        }
        if *tv == -*tw {
            return Some(Elem::Dihedral { t: 0, flip: true });
        }
        return None;
    }
    // reflections: s = translation by (tv - tw)/2 when parity matches
    if (tv - tw) % 2 != 0 {
        return None;
    }
    Some(Elem::Dihedral { t: (tv - tw) / 2, flip: false })
}

pub fn display(t: i64, flip: bool) -> String {
    if t == 0 && !flip {
        return "e".into();
    }
    // (t,0) = (ba)^t, (t,1) = (ba)^t a
    let mut s = String::new();
    let n = t.abs();
    for _ in 0..n {
        s.push_str(if t > 0 { "ba" } else { "ab" });
    }
    if flip {
        s.push('a');
    }
    // reduce aa if it appears at the junction (t<0 followed by a)
    let bytes = s.replace("aa", "");
    if bytes.is_empty() {
        "e".into()
    } else {
        bytes
    }
}

pub fn parse(s: &str) -> GResult<Elem> {
    if s == "e" {
        return Ok(Elem::Dihedral { t: 0, flip: false });
    }
    if let Some(ts) = s.strip_prefix('t') {
        let t: i64 = ts
            .parse()
            .map_err(|_| GroupError::BadInput(format!("bad translation {s}")))?;
        return Ok(Elem::Dihedral { t, flip: false });
    }
    let mut cur = Elem::Dihedral { t: 0, flip: false };
    for c in s.chars() {
        let g = match c {
            'a' => Elem::Dihedral { t: 0, flip: true },
            'b' => Elem::Dihedral { t: 1, flip: true },
            _ => return Err(GroupError::BadInput(format!("unknown letter '{c}'"))),
        };
        let (Elem::Dihedral { t: t1, flip: f1 }, Elem::Dihedral { t: t2, flip: f2 }) = (&cur, &g)
        else {
            unreachable!()
        };
        cur = mul(*t1, *f1, *t2, *f2);
    }
    Ok(cur)
}

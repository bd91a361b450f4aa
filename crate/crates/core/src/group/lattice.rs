//! `Z^n` acting on flat `R^n` by translations. Base point at the origin,
//! fundamental domain the half-open unit cube.

use super::{dot_i64, Elem, GResult, GroupError};
use crate::metric::Dist;
use crate::num::Q;

#[derive(Clone, Debug)]
pub struct LatticeGroup {
    pub dim: usize,
}

impl LatticeGroup {
    pub fn coords<'a>(&self, a: &'a Elem) -> &'a [i64] {
        match a {
            Elem::Lattice(x) => {
                assert_eq!(x.len(), self.dim, "lattice rank mismatch");
                x
            }
            _ => panic!("mixed group backends"),
        }
    }

    pub fn dist(&self, a: &Elem, b: &Elem) -> Dist {
        let x = self.coords(a);
        let y = self.coords(b);
        let sq: i64 = x
            .iter()
            .zip(y)
            .map(|(u, v)| {
                let d = u - v;
                d * d
            })
            .sum();
        Dist::from_square(Q::from_integer(sq.into()))
    }

    pub fn symmetric_generators(&self) -> Vec<Elem> {
        let mut out = vec![];
        for i in 0..self.dim {
            for s in [1i64, -1] {
                let mut v = vec![0i64; self.dim];
                v[i] = s;
                out.push(Elem::Lattice(v));
            }
        }
        out
    }

    pub fn ball(&self, center: &Elem, radius: &Dist) -> Vec<Elem> {
        let c = self.coords(center);
        let r2 = radius.square();
        // box bound: coordinates differ by at most floor(sqrt(r^2))
        let rf = radius.to_f64().ceil() as i64 + 1;
        let mut out = vec![];
        let mut cursor = vec![-rf; self.dim];
        'outer: loop {
            let sq: i64 = cursor.iter().map(|d| d * d).sum();
            if Q::from_integer(sq.into()) <= r2 {
                let pt: Vec<i64> = cursor.iter().zip(c).map(|(d, cc)| d + cc).collect();
                out.push(Elem::Lattice(pt));
            }
            // increment odometer
            for i in 0..self.dim {
                cursor[i] += 1;
                if cursor[i] <= rf {
                    continue 'outer;
                }
                cursor[i] = -rf;
            }
            break;
        }
        out
    }

    pub fn parse(&self, s: &str) -> GResult<Elem> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GroupError::BadInput(format!("expected (a,b,..): {s}")))?;
        let coords: Result<Vec<i64>, _> =
            inner.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let coords =
            coords.map_err(|_| GroupError::BadInput(format!("bad lattice vector {s}")))?;
        if coords.len() != self.dim {
            return Err(GroupError::BadInput(format!(
                "expected {} coordinates, got {}",
                self.dim,
                coords.len()
            )));
        }
        Ok(Elem::Lattice(coords))
    }

    /// Inner product with `v`, used by the axis coordinate.
    pub fn dot(&self, a: &Elem, v: &Elem) -> i64 {
        dot_i64(self.coords(a), self.coords(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupModel;
    use crate::num::qi;

    #[test]
    fn balls_are_exact() {
        let g = GroupModel::lattice(1);
        let ball = g.ball(&g.identity(), &Dist::from_q(qi(2)));
        assert_eq!(
            ball,
            vec![-2i64, -1, 0, 1, 2]
                .into_iter()
                .map(|t| Elem::Lattice(vec![t]))
                .collect::<Vec<_>>()
        );
        let g2 = GroupModel::lattice(2);
        let b1 = g2.ball(&g2.identity(), &Dist::from_q(qi(1)));
        assert_eq!(b1.len(), 5);
        let b2 = g2.ball(&g2.identity(), &Dist::from_q(qi(2)));
        assert_eq!(b2.len(), 13);
    }
}

//! Geometric models: flat space for the lattice and dihedral backends, the
//! Cayley tree for free groups. Nearest-point projections onto closed convex
//! sets, fundamental-domain cells, and the axis splitting of the minimal
//! displacement set. All membership decisions are exact.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{dihedral, free, Elem, GResult, GroupError, GroupModel};
use crate::metric::Dist;
use crate::num::{exact_sqrt, q_to_f64, Q};

/// Point of a flat model: coordinates `rat + irr * sqrt(radicand)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatPoint {
    pub rat: Vec<Q>,
    pub irr: Option<(Vec<Q>, Q)>,
}

impl FlatPoint {
    pub fn rational(coords: Vec<Q>) -> Self {
        FlatPoint { rat: coords, irr: None }
    }

    fn normalized(mut self) -> Self {
        if let Some((w, s)) = &self.irr {
            if w.iter().all(|c| c.is_zero()) || s.is_zero() {
                self.irr = None;
            } else if let Some(r) = exact_sqrt(s) {
                for (c, wi) in self.rat.iter_mut().zip(w) {
                    *c += wi * &r;
                }
                self.irr = None;
            }
        }
        self
    }

    pub fn to_f64(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.rat.iter().map(q_to_f64).collect();
        if let Some((w, s)) = &self.irr {
            let sv = q_to_f64(s).sqrt();
            for (o, wi) in out.iter_mut().zip(w) {
                *o += q_to_f64(wi) * sv;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelPoint {
    Flat(FlatPoint),
    TreeVertex(Vec<i8>),
}

impl ModelPoint {
    pub fn flat_rational(coords: Vec<Q>) -> Self {
        ModelPoint::Flat(FlatPoint::rational(coords))
    }
}

/// Closed convex subsets of the model.
#[derive(Clone, Debug)]
pub enum ConvexSet {
    Whole,
    Ball { center: ModelPoint, radius: Dist },
    FixedSet(Elem),
    MinSet(Elem),
}

enum Resolved {
    Whole,
    Ball { center: ModelPoint, radius: Dist },
    Point(Vec<Q>),
    AxisOf(Elem),
}

fn resolve(model: &GroupModel, set: &ConvexSet) -> GResult<Resolved> {
    match set {
        ConvexSet::Whole => Ok(Resolved::Whole),
        ConvexSet::Ball { center, radius } => Ok(Resolved::Ball {
            center: center.clone(),
            radius: radius.clone(),
        }),
        ConvexSet::FixedSet(v) => match model {
            GroupModel::Lattice(_) => {
                if model.is_identity(v) {
                    Ok(Resolved::Whole)
                } else {
                    Err(GroupError::Domain(
                        "translation has empty fixed set".into(),
                    ))
                }
            }
            GroupModel::Dihedral(_) => match v {
                Elem::Dihedral { t: 0, flip: false } => Ok(Resolved::Whole),
                Elem::Dihedral { t, flip: true } => {
                    Ok(Resolved::Point(vec![crate::num::qq(*t, 2)]))
                }
                _ => Err(GroupError::Domain(
                    "nontrivial translation has empty fixed set".into(),
                )),
            },
            GroupModel::Free(_) => {
                if model.is_identity(v) {
                    Ok(Resolved::Whole)
                } else {
                    Err(GroupError::Domain("free group acts freely".into()))
                }
            }
            GroupModel::Finite(_) => Err(GroupError::Unsupported("no geometric model")),
        },
        ConvexSet::MinSet(v) => match model {
            GroupModel::Lattice(_) => Ok(Resolved::Whole),
            GroupModel::Dihedral(_) => match v {
                Elem::Dihedral { flip: false, .. } => Ok(Resolved::Whole),
                Elem::Dihedral { t, flip: true } => {
                    Ok(Resolved::Point(vec![crate::num::qq(*t, 2)]))
                }
                _ => panic!("mixed group backends"),
            },
            GroupModel::Free(_) => {
                if model.is_identity(v) {
                    Ok(Resolved::Whole)
                } else {
                    Ok(Resolved::AxisOf(v.clone()))
                }
            }
            GroupModel::Finite(_) => Err(GroupError::Unsupported("no geometric model")),
        },
    }
}

pub fn fixed_set(model: &GroupModel, v: &Elem) -> GResult<ConvexSet> {
    resolve(model, &ConvexSet::FixedSet(v.clone()))?;
    Ok(ConvexSet::FixedSet(v.clone()))
}

pub fn min_set(model: &GroupModel, v: &Elem) -> GResult<ConvexSet> {
    resolve(model, &ConvexSet::MinSet(v.clone()))?;
    Ok(ConvexSet::MinSet(v.clone()))
}

pub fn orbit_point(model: &GroupModel, g: &Elem) -> GResult<ModelPoint> {
    match (model, g) {
        (GroupModel::Lattice(gr), Elem::Lattice(x)) => {
            let _ = gr;
            Ok(ModelPoint::flat_rational(
                x.iter().map(|&v| Q::from_integer(v.into())).collect(),
            ))
        }
        (GroupModel::Dihedral(_), &Elem::Dihedral { t, flip }) => Ok(ModelPoint::flat_rational(
            vec![dihedral::act(t, flip, &dihedral::base_point())],
        )),
        (GroupModel::Free(_), Elem::Free(w)) => Ok(ModelPoint::TreeVertex(w.clone())),
        _ => Err(GroupError::Unsupported("no geometric model")),
    }
}

/// Squared flat distance as `a + b * sqrt(u)`.
fn dist_sq_flat(p: &FlatPoint, q: &FlatPoint) -> (Q, Q, Q) {
    let dr: Vec<Q> = p.rat.iter().zip(&q.rat).map(|(a, b)| a - b).collect();
    let dot = |x: &[Q], y: &[Q]| -> Q { x.iter().zip(y).map(|(a, b)| a * b).sum() };
    match (&p.irr, &q.irr) {
        (None, None) => (dot(&dr, &dr), Q::zero(), Q::zero()),
        (Some((w, s)), None) => {
            let a = dot(&dr, &dr) + dot(w, w) * s;
            let b = Q::from_integer(2.into()) * dot(&dr, w);
            (a, b, s.clone())
        }
        (None, Some((w, s))) => {
            let a = dot(&dr, &dr) + dot(w, w) * s;
            let b = -Q::from_integer(2.into()) * dot(&dr, w);
            (a, b, s.clone())
        }
        (Some((w1, s)), Some((w2, t))) => {
            let c_s = Q::from_integer(2.into()) * dot(&dr, w1);
            let c_t = -Q::from_integer(2.into()) * dot(&dr, w2);
            let c_st = -Q::from_integer(2.into()) * dot(w1, w2);
            let a = dot(&dr, &dr) + dot(w1, w1) * s + dot(w2, w2) * t;
            match (c_s.is_zero(), c_t.is_zero(), c_st.is_zero()) {
                (true, true, _) => (a, c_st, s * t),
                (false, true, true) => (a, c_s, s.clone()),
                (true, false, true) => (a, c_t, t.clone()),
                _ => panic!("flat distance with three independent radicals"),
            }
        }
    }
}

/// Sign of `c + e sqrt(b)`, `b >= 0`.
fn sign_affine(c: &Q, e: &Q, b: &Q) -> Ordering {
    if e.is_zero() || b.is_zero() {
        return c.cmp(&Q::zero());
    }
    if c.is_zero() {
        return e.cmp(&Q::zero());
    }
    match (c.is_positive(), e.is_positive()) {
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
        (true, false) => (c * c).cmp(&(e * e * b)),
        (false, true) => (e * e * b).cmp(&(c * c)),
    }
}

/// Exact test `d(p, q) <= bound` for model points.
pub fn point_dist_le(model: &GroupModel, p: &ModelPoint, q: &ModelPoint, bound: &Dist) -> bool {
    match (p, q) {
        (ModelPoint::Flat(a), ModelPoint::Flat(b)) => {
            let (c, e, u) = dist_sq_flat(a, b);
            // c + e sqrt(u) <= bound^2
            sign_affine(&(c - bound.square()), &e, &u) != Ordering::Greater
        }
        (ModelPoint::TreeVertex(a), ModelPoint::TreeVertex(b)) => {
            let _ = model;
            let d = free::concat_reduce(&a.iter().rev().map(|l| -l).collect::<Vec<_>>(), b).len();
            Dist::from_q(Q::from_integer((d as i64).into())) <= *bound
        }
        _ => panic!("mixed model points"),
    }
}

/// Exact distance between model points, when it is a quadratic length.
pub fn point_dist(p: &ModelPoint, q: &ModelPoint) -> Dist {
    match (p, q) {
        (ModelPoint::Flat(a), ModelPoint::Flat(b)) => {
            let (c, e, _u) = dist_sq_flat(a, b);
            assert!(e.is_zero(), "distance is not a quadratic length");
            Dist::from_square(c)
        }
        (ModelPoint::TreeVertex(a), ModelPoint::TreeVertex(b)) => {
            let d = free::concat_reduce(&a.iter().rev().map(|l| -l).collect::<Vec<_>>(), b).len();
            Dist::from_q(Q::from_integer((d as i64).into()))
        }
        _ => panic!("mixed model points"),
    }
}

pub fn project_convex(
    model: &GroupModel,
    p: &ModelPoint,
    set: &ConvexSet,
) -> GResult<ModelPoint> {
    match resolve(model, set)? {
        Resolved::Whole => Ok(p.clone()),
        Resolved::Point(c) => match p {
            ModelPoint::Flat(_) => Ok(ModelPoint::flat_rational(c)),
            _ => Err(GroupError::Unsupported("point target in a tree model")),
        },
        Resolved::Ball { center, radius } => project_ball(p, &center, &radius),
        Resolved::AxisOf(v) => project_axis(model, p, &v),
    }
}

fn project_ball(p: &ModelPoint, center: &ModelPoint, radius: &Dist) -> GResult<ModelPoint> {
    match (p, center) {
        (ModelPoint::Flat(fp), ModelPoint::Flat(fc)) => {
            if fp.irr.is_some() || fc.irr.is_some() {
                return Err(GroupError::Unsupported("ball projection of irrational point"));
            }
            let dir: Vec<Q> = fp.rat.iter().zip(&fc.rat).map(|(a, b)| a - b).collect();
            let s: Q = dir.iter().map(|d| d * d).sum();
            if s <= radius.square() {
                return Ok(p.clone());
            }
            // center + dir * radius / sqrt(s)
            let point = match radius {
                Dist::Exact(r) => {
                    let coef = r / &s; // r/sqrt(s) = (r/s) sqrt(s)
                    FlatPoint {
                        rat: fc.rat.clone(),
                        irr: Some((dir.iter().map(|d| d * &coef).collect(), s)),
                    }
                }
                Dist::Sqrt(rho) => {
                    let rad = rho / &s;
                    FlatPoint {
                        rat: fc.rat.clone(),
                        irr: Some((dir, rad)),
                    }
                }
            };
            Ok(ModelPoint::Flat(point.normalized()))
        }
        (ModelPoint::TreeVertex(w), ModelPoint::TreeVertex(c)) => {
            let path = free::concat_reduce(&c.iter().rev().map(|l| -l).collect::<Vec<_>>(), w);
            let r = integral_radius(radius);
            if path.len() as i64 <= r {
                return Ok(p.clone());
            }
            let cut = &path[..r.max(0) as usize];
            Ok(ModelPoint::TreeVertex(free::concat_reduce(c, cut)))
        }
        _ => Err(GroupError::Unsupported("mismatched model points")),
    }
}

/// Largest integer `<= radius`.
fn integral_radius(radius: &Dist) -> i64 {
    let mut r = radius.to_f64().floor() as i64;
    while r >= 0 && Dist::from_q(Q::from_integer(r.into())) > *radius {
        r -= 1;
    }
    while Dist::from_q(Q::from_integer((r + 1).into())) <= *radius {
        r += 1;
    }
    r
}

fn project_axis(model: &GroupModel, p: &ModelPoint, v: &Elem) -> GResult<ModelPoint> {
    let GroupModel::Free(fg) = model else {
        return Err(GroupError::Unsupported("axis projection needs a tree"));
    };
    let (Elem::Free(vw), ModelPoint::TreeVertex(g)) = (v, p) else {
        return Err(GroupError::Unsupported("axis projection needs tree data"));
    };
    let (prefix, core) = free::cyclic_reduce(vw);
    if core.is_empty() {
        return Err(GroupError::Domain("axis of a torsion element".into()));
    }
    let p_inv: Vec<i8> = prefix.iter().rev().map(|l| -l).collect();
    let local = free::concat_reduce(&p_inv, g);
    let pos = fg.axis_position(&core, &local);
    let vertex = axis_vertex(&core, pos);
    Ok(ModelPoint::TreeVertex(free::concat_reduce(&prefix, &vertex)))
}

/// Vertex of the axis of a cyclically reduced word at signed position `pos`.
pub fn axis_vertex(core: &[i8], pos: i64) -> Vec<i8> {
    let mut w = vec![];
    if pos >= 0 {
        for i in 0..pos as usize {
            w.push(core[i % core.len()]);
        }
    } else {
        for i in 0..(-pos) as usize {
            w.push(-core[core.len() - 1 - (i % core.len())]);
        }
    }
    w
}

/// Exact floor of `a + b sqrt(s)`.
fn floor_affine(a: &Q, b: &Q, s: &Q) -> i64 {
    let est = q_to_f64(a) + q_to_f64(b) * q_to_f64(s).sqrt();
    let mut m = est.floor() as i64;
    let le = |m: i64| -> bool {
        // m <= a + b sqrt(s)
        sign_affine(&(a - Q::from_integer(m.into())), b, s) != Ordering::Less
    };
    while !le(m) {
        m -= 1;
    }
    while le(m + 1) {
        m += 1;
    }
    m
}

/// All group elements whose fundamental-domain translate contains `p`.
pub fn cell_reps(model: &GroupModel, p: &ModelPoint) -> GResult<Vec<Elem>> {
    match (model, p) {
        (GroupModel::Lattice(g), ModelPoint::Flat(fp)) => {
            let mut cell = vec![0i64; g.dim];
            for i in 0..g.dim {
                let (b, s) = match &fp.irr {
                    Some((w, s)) => (w[i].clone(), s.clone()),
                    None => (Q::zero(), Q::zero()),
                };
                cell[i] = floor_affine(&fp.rat[i], &b, &s);
            }
            Ok(vec![Elem::Lattice(cell)])
        }
        (GroupModel::Dihedral(_), ModelPoint::Flat(fp)) => {
            if fp.irr.is_some() {
                return Err(GroupError::Unsupported("irrational point on the line"));
            }
            let x = &fp.rat[0];
            let mut out = vec![];
            let half = crate::num::qq(1, 2);
            // closed domain [0, 1/2]: translations give [t, t + 1/2]
            let lo: i64 = (x - &half)
                .floor()
                .to_integer()
                .try_into()
                .map_err(|_| GroupError::Domain("point out of range".into()))?;
            for t in lo..=lo + 2 {
                let tq = Q::from_integer(t.into());
                if &tq <= x && x <= &(&tq + &half) {
                    out.push(Elem::Dihedral { t, flip: false });
                }
                // reflections give [t - 1/2, t]
                if &(&tq - &half) <= x && x <= &tq {
                    out.push(Elem::Dihedral { t, flip: true });
                }
            }
            out.sort();
            Ok(out)
        }
        (GroupModel::Free(_), ModelPoint::TreeVertex(w)) => Ok(vec![Elem::Free(w.clone())]),
        _ => Err(GroupError::Unsupported("no fundamental domain")),
    }
}

/// Does `gD` meet the resolved convex set? Exact per backend.
pub fn cell_meets_convex(model: &GroupModel, g: &Elem, set: &ConvexSet) -> GResult<bool> {
    match resolve(model, set)? {
        Resolved::Whole => Ok(true),
        Resolved::Point(c) => match (model, g) {
            (GroupModel::Lattice(_), Elem::Lattice(x)) => Ok(x
                .iter()
                .zip(&c)
                .all(|(&xi, ci)| {
                    let lo = Q::from_integer(xi.into());
                    let hi = Q::from_integer((xi + 1).into());
                    &lo <= ci && ci < &hi
                })),
            (GroupModel::Dihedral(_), &Elem::Dihedral { t, flip }) => {
                let c = &c[0];
                let tq = Q::from_integer(t.into());
                let half = crate::num::qq(1, 2);
                Ok(if flip {
                    &(&tq - &half) <= c && c <= &tq
                } else {
                    &tq <= c && c <= &(&tq + &half)
                })
            }
            _ => Err(GroupError::Unsupported("no fundamental domain")),
        },
        Resolved::Ball { .. } | Resolved::AxisOf(_) => {
            Err(GroupError::Unsupported("cell intersection with this set"))
        }
    }
}

/// Normalized axis coordinate of an infinite-order isometry.
#[derive(Clone, Debug)]
pub enum AxisCoord {
    Lattice { v: Vec<i64>, y_dot: Q, norm_sq: Q },
    Line { y: Q, shift: i64 },
    FreeAxis { prefix: Vec<i8>, core: Vec<i8>, len: i64, shift: i64 },
}

impl AxisCoord {
    /// `c(g)`: signed, normalized position of the orbit point of `g` along
    /// the axis; increases by exactly 1 under the defining translation.
    pub fn eval(&self, model: &GroupModel, g: &Elem) -> Q {
        match (self, g) {
            (AxisCoord::Lattice { v, y_dot, norm_sq }, Elem::Lattice(x)) => {
                let dot: i64 = x.iter().zip(v).map(|(a, b)| a * b).sum();
                (Q::from_integer(dot.into()) - y_dot) / norm_sq
            }
            (AxisCoord::Line { y, shift }, &Elem::Dihedral { t, flip }) => {
                let p = dihedral::act(t, flip, &dihedral::base_point());
                (p - y) / Q::from_integer((*shift).into())
            }
            (AxisCoord::FreeAxis { prefix, core, len, shift }, Elem::Free(w)) => {
                let GroupModel::Free(fg) = model else {
                    panic!("axis coordinate on wrong backend")
                };
                let p_inv: Vec<i8> = prefix.iter().rev().map(|l| -l).collect();
                let local = free::concat_reduce(&p_inv, w);
                let pos = fg.axis_position(core, &local);
                Q::new((pos - shift).into(), (*len).into())
            }
            _ => panic!("mixed group backends"),
        }
    }
}

pub fn min_split(model: &GroupModel, v: &Elem, y: &ModelPoint) -> GResult<(Dist, AxisCoord)> {
    if model.is_torsion(v) {
        return Err(GroupError::Domain("stable length of a torsion element".into()));
    }
    match (model, v, y) {
        (GroupModel::Lattice(_), Elem::Lattice(vx), ModelPoint::Flat(fy)) => {
            if fy.irr.is_some() {
                return Err(GroupError::Domain("irrational base point".into()));
            }
            let norm_sq: i64 = vx.iter().map(|c| c * c).sum();
            let nq = Q::from_integer(norm_sq.into());
            let y_dot: Q = fy
                .rat
                .iter()
                .zip(vx)
                .map(|(a, &b)| a * Q::from_integer(b.into()))
                .sum();
            Ok((
                Dist::from_square(nq.clone()),
                AxisCoord::Lattice { v: vx.clone(), y_dot, norm_sq: nq },
            ))
        }
        (GroupModel::Dihedral(_), &Elem::Dihedral { t, flip: false }, ModelPoint::Flat(fy)) => {
            if fy.irr.is_some() {
                return Err(GroupError::Domain("irrational base point".into()));
            }
            Ok((
                Dist::from_q(Q::from_integer(t.abs().into())),
                AxisCoord::Line { y: fy.rat[0].clone(), shift: t },
            ))
        }
        (GroupModel::Free(_), Elem::Free(vw), ModelPoint::TreeVertex(yw)) => {
            let (prefix, core) = free::cyclic_reduce(vw);
            let p_inv: Vec<i8> = prefix.iter().rev().map(|l| -l).collect();
            let local = free::concat_reduce(&p_inv, yw);
            let GroupModel::Free(fg) = model else { unreachable!() };
            let pos = fg.axis_position(&core, &local);
            if axis_vertex(&core, pos) != local {
                return Err(GroupError::Domain(
                    "base point not on the minimal displacement set".into(),
                ));
            }
            Ok((
                Dist::from_q(Q::from_integer((core.len() as i64).into())),
                AxisCoord::FreeAxis {
                    prefix,
                    core: core.clone(),
                    len: core.len() as i64,
                    shift: pos,
                },
            ))
        }
        _ => Err(GroupError::Unsupported("minimal-set splitting")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{qi, qq};

    fn flat(coords: &[i64]) -> ModelPoint {
        ModelPoint::flat_rational(coords.iter().map(|&c| qi(c)).collect())
    }

    #[test]
    fn ball_projection_matches_example() {
        let g = GroupModel::lattice(2);
        let set = ConvexSet::Ball { center: flat(&[0, 0]), radius: Dist::from_q(qi(1)) };
        let p = flat(&[3, 0]);
        let proj = g.project_convex(&p, &set).unwrap();
        assert_eq!(proj, flat(&[1, 0]));
        // off-axis projection is irrational but exact
        let p2 = flat(&[3, 4]);
        let proj2 = g.project_convex(&p2, &set).unwrap();
        let ModelPoint::Flat(fp) = &proj2 else { panic!() };
        assert!(fp.irr.is_none()); // 3-4-5 triangle: rational
        assert_eq!(fp.rat, vec![qq(3, 5), qq(4, 5)]);
        let p3 = flat(&[1, 1]);
        let proj3 = g.project_convex(&p3, &set).unwrap();
        let ModelPoint::Flat(fp3) = &proj3 else { panic!() };
        assert!(fp3.irr.is_some());
    }

    #[test]
    fn projection_contracts_on_samples() {
        let g = GroupModel::lattice(2);
        let set = ConvexSet::Ball { center: flat(&[0, 0]), radius: Dist::from_q(qi(2)) };
        let pts: Vec<ModelPoint> = [(3, 0), (0, 5), (4, 4), (-3, 2), (1, 0), (-5, -5)]
            .iter()
            .map(|&(a, b)| flat(&[a, b]))
            .collect();
        for p in &pts {
            for q in &pts {
                let pp = g.project_convex(p, &set).unwrap();
                let qq_ = g.project_convex(q, &set).unwrap();
                let bound = point_dist(p, q);
                assert!(
                    point_dist_le(&g, &pp, &qq_, &bound),
                    "projection expanded {p:?} {q:?}"
                );
            }
        }
    }

    #[test]
    fn lattice_cells_are_floors() {
        let g = GroupModel::lattice(2);
        let set = ConvexSet::Ball { center: flat(&[0, 0]), radius: Dist::from_q(qi(1)) };
        let proj = g.project_convex(&flat(&[1, 1]), &set).unwrap();
        // (1,1)/sqrt2 ~ (0.707, 0.707): cell (0,0)
        assert_eq!(g.cell_reps(&proj).unwrap(), vec![Elem::Lattice(vec![0, 0])]);
    }

    #[test]
    fn dihedral_cells_at_fixed_point() {
        let g = GroupModel::dihedral();
        let p = ModelPoint::flat_rational(vec![qi(0)]);
        let cells = g.cell_reps(&p).unwrap();
        assert_eq!(
            cells,
            vec![
                Elem::Dihedral { t: 0, flip: false },
                Elem::Dihedral { t: 0, flip: true }
            ]
        );
        let p2 = ModelPoint::flat_rational(vec![qq(1, 4)]);
        assert_eq!(g.cell_reps(&p2).unwrap(), vec![Elem::Dihedral { t: 0, flip: false }]);
    }

    #[test]
    fn min_split_examples() {
        let z1 = GroupModel::lattice(1);
        let (l, c) = z1
            .min_split(&Elem::Lattice(vec![3]), &flat(&[0]))
            .unwrap();
        assert_eq!(l, Dist::from_q(qi(3)));
        assert_eq!(c.eval(&z1, &Elem::Lattice(vec![5])), qq(5, 3));

        let z2 = GroupModel::lattice(2);
        let (l, _) = z2
            .min_split(&Elem::Lattice(vec![3, 4]), &flat(&[0, 0]))
            .unwrap();
        assert_eq!(l, Dist::from_q(qi(5)));

        let f2 = GroupModel::free(2);
        let v = f2.parse_elem("ab").unwrap();
        let (l, c) = f2
            .min_split(&v, &ModelPoint::TreeVertex(vec![]))
            .unwrap();
        assert_eq!(l, Dist::from_q(qi(2)));
        // c(v g) = c(g) + 1
        let g = f2.parse_elem("ba").unwrap();
        let vg = f2.mul(&v, &g);
        assert_eq!(c.eval(&f2, &vg), c.eval(&f2, &g) + qi(1));

        assert!(z1.min_split(&z1.identity(), &flat(&[0])).is_err());
    }

    #[test]
    fn axis_coordinate_shifts_by_one() {
        let z2 = GroupModel::lattice(2);
        let v = Elem::Lattice(vec![3, 4]);
        let (_, c) = z2.min_split(&v, &flat(&[0, 0])).unwrap();
        for g in [vec![0, 0], vec![2, -1], vec![7, 3]] {
            let ge = Elem::Lattice(g);
            let vg = z2.mul(&v, &ge);
            assert_eq!(c.eval(&z2, &vg), c.eval(&z2, &ge) + qi(1));
        }
    }
}

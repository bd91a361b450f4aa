//! Bar and Rips complexes of a group, the antisymmetrizer, the prism
//! homotopy between chain maps, and the projection-step contractions with
//! their radius-growth contracts.

use itertools::Itertools;

use crate::chain::Chain;
use crate::group::{ConvexSet, Elem, GResult, GroupModel, ModelPoint};
use crate::metric::{Dist, DistSum};
use crate::num::{factorial, Q};

/// Ordered tuple of group elements; degree = entries - 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct BarSimplex(pub Vec<Elem>);

impl BarSimplex {
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn support(&self) -> impl Iterator<Item = &Elem> {
        self.0.iter()
    }
}

/// Alternating sum of the face maps; zero in degree 0.
pub fn bar_boundary(sigma: &BarSimplex) -> Chain<BarSimplex> {
    let n = sigma.degree();
    if n == 0 {
        return Chain::zero();
    }
    let mut out = Chain::zero();
    for i in 0..=n {
        let mut v = sigma.0.clone();
        v.remove(i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.add_term(BarSimplex(v), crate::num::qi(sign));
    }
    out
}

/// Augmentation: sum of coefficients (every vertex maps to 1).
pub fn augmentation(c: &Chain<BarSimplex>) -> Q {
    c.iter().map(|(_, q)| q.clone()).sum()
}

pub fn augmentation_vertex(c: &Chain<Elem>) -> Q {
    c.iter().map(|(_, q)| q.clone()).sum()
}

/// Pairwise-distance constraint of the Rips subcomplex.
pub fn within_radius(model: &GroupModel, sigma: &BarSimplex, radius: &Dist) -> bool {
    let v = &sigma.0;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if model.dist(&v[i], &v[j]) > *radius {
                return false;
            }
        }
    }
    true
}

/// Largest pairwise distance inside the simplex.
pub fn simplex_diameter(model: &GroupModel, sigma: &BarSimplex) -> Dist {
    let v = &sigma.0;
    let mut best = Dist::zero();
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            let d = model.dist(&v[i], &v[j]);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// A linear self-map of the vertex space, the degree-0 data from which all
/// chain maps here are induced.
pub struct VertexMap<'a>(pub Box<dyn Fn(&Elem) -> Chain<Elem> + 'a>);

impl<'a> VertexMap<'a> {
    pub fn identity() -> Self {
        VertexMap(Box::new(|g| Chain::generator(g.clone())))
    }

    pub fn constant(target: Chain<Elem>) -> Self {
        VertexMap(Box::new(move |_| target.clone()))
    }

    pub fn apply(&self, g: &Elem) -> Chain<Elem> {
        (self.0)(g)
    }

    /// Augmentation compatibility on the listed vertices.
    pub fn check_augmentation(&self, sample: &[Elem]) -> bool {
        sample
            .iter()
            .all(|g| augmentation_vertex(&self.apply(g)) == crate::num::qi(1))
    }
}

/// Tensor-power extension of a vertex map to simplices.
pub fn induced_map(f: &VertexMap, sigma: &BarSimplex) -> Chain<BarSimplex> {
    let factors: Vec<Chain<Elem>> = sigma.0.iter().map(|g| f.apply(g)).collect();
    expand_tuple(&factors)
}

fn expand_tuple(factors: &[Chain<Elem>]) -> Chain<BarSimplex> {
    let mut acc: Vec<(Vec<Elem>, Q)> = vec![(vec![], crate::num::qi(1))];
    for f in factors {
        let mut next = vec![];
        for (prefix, c) in &acc {
            for (g, q) in f.iter() {
                let mut p = prefix.clone();
                p.push(g.clone());
                next.push((p, c * q));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(v, c)| (BarSimplex(v), c)).collect()
}

/// Prism homotopy between the chain maps induced by `phi` and `psi`:
/// `psi - phi = d h + h d` whenever the two agree under the augmentation.
pub fn bar_homotopy(phi: &VertexMap, psi: &VertexMap, sigma: &BarSimplex) -> Chain<BarSimplex> {
    let n = sigma.degree();
    let mut out = Chain::zero();
    for i in 0..=n {
        let mut factors: Vec<Chain<Elem>> = Vec::with_capacity(n + 2);
        for (j, g) in sigma.0.iter().enumerate() {
            if j < i {
                factors.push(phi.apply(g));
            } else if j == i {
                factors.push(phi.apply(g));
                factors.push(psi.apply(g));
            } else {
                factors.push(psi.apply(g));
            }
        }
        let sign = crate::num::qi(if i % 2 == 0 { 1 } else { -1 });
        out.add_scaled(&expand_tuple(&factors), &sign);
    }
    out
}

/// Antisymmetrization projector; the identity in degree 0, kills any
/// simplex with a repeated entry.
pub fn antisymmetrize(sigma: &BarSimplex) -> Chain<BarSimplex> {
    let n = sigma.degree();
    let norm = factorial(n + 1).recip();
    let mut out = Chain::zero();
    for perm in (0..=n).permutations(n + 1) {
        let sign = perm_sign(&perm);
        let v: Vec<Elem> = perm.iter().map(|&i| sigma.0[i].clone()).collect();
        out.add_term(BarSimplex(v), &norm * crate::num::qi(sign));
    }
    out
}

pub fn antisymmetrize_chain(c: &Chain<BarSimplex>) -> Chain<BarSimplex> {
    c.map_linear(antisymmetrize)
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Anchor data of the projection steps: a fixed-set base point on the flat
/// backends, a vertex on the word backends.
#[derive(Clone, Debug)]
pub enum Anchor {
    Flat { y: ModelPoint, v: Elem },
    Word { y: Elem },
}

impl Anchor {
    pub fn for_group(model: &GroupModel, y_elem: &Elem, v: &Elem) -> GResult<Anchor> {
        match model.case() {
            crate::group::GeomCase::Flat => {
                let y0 = model.orbit_point(y_elem)?;
                let fixed = model.fixed_set(v)?;
                let y = model.project_convex(&y0, &fixed)?;
                Ok(Anchor::Flat { y, v: v.clone() })
            }
            crate::group::GeomCase::Word => Ok(Anchor::Word { y: y_elem.clone() }),
        }
    }
}

/// The projection step at radius `n`: averages the fundamental-domain cells
/// of the composite "project to the ball, then to the fixed set" on the flat
/// backends, and the nearest ball points on the word backends.
pub fn step_projection(
    model: &GroupModel,
    anchor: &Anchor,
    n: u64,
) -> GResult<VertexMap<'static>> {
    let model = model.clone();
    let anchor = anchor.clone();
    Ok(VertexMap(Box::new(move |g: &Elem| {
        step_projection_apply(&model, &anchor, n, g)
    })))
}

fn uniform_average(elems: Vec<Elem>) -> Chain<Elem> {
    assert!(!elems.is_empty(), "projection produced an empty set");
    let w = Q::new(1.into(), (elems.len() as i64).into());
    elems.into_iter().map(|e| (e, w.clone())).collect()
}

fn step_projection_apply(model: &GroupModel, anchor: &Anchor, n: u64, g: &Elem) -> Chain<Elem> {
    match anchor {
        Anchor::Flat { y, v } => {
            let gx = model.orbit_point(g).expect("flat backend");
            let ball = ConvexSet::Ball {
                center: y.clone(),
                radius: Dist::from_q(Q::from_integer((n as i64).into())),
            };
            let p1 = model.project_convex(&gx, &ball).expect("ball projection");
            let fixed = model.fixed_set(v).expect("fixed set");
            let p2 = model.project_convex(&p1, &fixed).expect("fixed-set projection");
            uniform_average(model.cell_reps(&p2).expect("cells"))
        }
        Anchor::Word { y } => {
            // nearest points of the ball B(y, n) to g
            let dyg = model.dist(y, g);
            let nq = Dist::from_q(Q::from_integer((n as i64).into()));
            if dyg <= nq {
                return Chain::generator(g.clone());
            }
            match model {
                GroupModel::Free(_) => {
                    // unique: cut the geodesic from y to g at length n
                    let (Elem::Free(yw), Elem::Free(gw)) = (y, g) else {
                        unreachable!()
                    };
                    let path = crate::group::free::concat_reduce(
                        &yw.iter().rev().map(|l| -l).collect::<Vec<_>>(),
                        gw,
                    );
                    let cut = &path[..(n as usize).min(path.len())];
                    Chain::generator(Elem::Free(crate::group::free::concat_reduce(yw, cut)))
                }
                GroupModel::Finite(_) => {
                    let ball = model.ball(y, &nq);
                    let dmin = ball.iter().map(|h| model.dist(g, h)).min().unwrap();
                    uniform_average(
                        ball.into_iter()
                            .filter(|h| model.dist(g, h) == dmin)
                            .collect(),
                    )
                }
                _ => panic!("word anchor on a flat backend"),
            }
        }
    }
}

/// Limit of the projection steps: the direct fixed-set projection on the
/// flat backends, the identity on the word backends.
pub fn limit_projection(model: &GroupModel, anchor: &Anchor) -> VertexMap<'static> {
    let model = model.clone();
    let anchor = anchor.clone();
    VertexMap(Box::new(move |g: &Elem| match &anchor {
        Anchor::Flat { v, .. } => {
            let gx = model.orbit_point(g).expect("flat backend");
            let fixed = model.fixed_set(v).expect("fixed set");
            let p = model.project_convex(&gx, &fixed).expect("projection");
            uniform_average(model.cell_reps(&p).expect("cells"))
        }
        Anchor::Word { .. } => Chain::generator(g.clone()),
    }))
}

/// Saturation level: past this radius the projection steps agree on `g`.
pub(crate) fn step_cutoff(model: &GroupModel, anchor: &Anchor, g: &Elem) -> u64 {
    match anchor {
        Anchor::Flat { y, .. } => {
            let gx = model.orbit_point(g).expect("flat backend");
            let d = crate::group::geometry::point_dist(y, &gx);
            d.to_f64().ceil() as u64 + 1
        }
        Anchor::Word { y } => model.dist(y, g).to_f64().ceil() as u64 + 1,
    }
}

/// The radial contraction on alternating chains: finite telescope of prism
/// homotopies between consecutive projection steps, closed up by the prism
/// from the limit projection to the identity, antisymmetrized. Satisfies
/// `d h + h d = id - (base step)` on alternating chains, with image radius
/// growth at most `2 diam(D) + 1` (flat) or `2 delta + 1` (word).
pub struct RadialHomotopy<'g> {
    pub model: &'g GroupModel,
    pub anchor: Anchor,
}

impl<'g> RadialHomotopy<'g> {
    pub fn new(model: &'g GroupModel, anchor: Anchor) -> Self {
        RadialHomotopy { model, anchor }
    }

    /// Evaluate on a simplex (extend linearly for chains).
    pub fn apply(&self, sigma: &BarSimplex) -> Chain<BarSimplex> {
        let cutoff = sigma
            .support()
            .map(|g| step_cutoff(self.model, &self.anchor, g))
            .max()
            .unwrap_or(0);
        let mut out = Chain::zero();
        for n in 0..cutoff {
            let pn = step_projection(self.model, &self.anchor, n).expect("step");
            let pn1 = step_projection(self.model, &self.anchor, n + 1).expect("step");
            out.add(&bar_homotopy(&pn, &pn1, sigma));
        }
        let lim = limit_projection(self.model, &self.anchor);
        out.add(&bar_homotopy(&lim, &VertexMap::identity(), sigma));
        antisymmetrize_chain(&out)
    }

    pub fn apply_chain(&self, c: &Chain<BarSimplex>) -> Chain<BarSimplex> {
        c.map_linear(|s| self.apply(s))
    }

    /// The chain map the contraction retracts onto (the 0-step projection).
    pub fn base_projection(&self) -> VertexMap<'static> {
        step_projection(self.model, &self.anchor, 0).expect("step")
    }

    /// Radius-growth bound for images of simplices of diameter `r`.
    pub fn growth_bound(&self, r: &Dist) -> DistSum {
        let mut s = DistSum::zero();
        s.add(r);
        s.add(&self.model.growth_pad());
        s.add(&Dist::from_q(crate::num::qi(1)));
        s
    }
}

/// Support condition of the class subcomplex: every vertex cell meets the
/// fixed set of `v` (flat case), or lies in the centralizer (word case).
pub fn in_class_subcomplex(model: &GroupModel, v: &Elem, sigma: &BarSimplex) -> GResult<bool> {
    for g in sigma.support() {
        if !model.class_support_contains(v, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Enumerate the elements carrying the class subcomplex inside a ball around
/// the identity; errors when that set is not finite-by-construction here.
pub fn class_support_in_ball(model: &GroupModel, v: &Elem, radius: &Dist) -> GResult<Vec<Elem>> {
    let ball = model.ball(&model.identity(), radius);
    let mut out = vec![];
    for g in ball {
        if model.class_support_contains(v, &g)? {
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{qi, qq};

    fn z(n: i64) -> Elem {
        Elem::Lattice(vec![n])
    }

    #[test]
    fn boundary_and_augmentation() {
        let model = GroupModel::lattice(1);
        let _ = &model;
        let s = BarSimplex(vec![z(0), z(1)]);
        let d = bar_boundary(&s);
        assert_eq!(d.coeff(&BarSimplex(vec![z(1)])), qi(1));
        assert_eq!(d.coeff(&BarSimplex(vec![z(0)])), qi(-1));
        assert_eq!(augmentation(&d), qi(0));
        // d d = 0
        let s2 = BarSimplex(vec![z(0), z(1), z(5)]);
        let dd = bar_boundary(&s2).map_linear(|t| bar_boundary(t));
        assert!(dd.is_zero());
    }

    #[test]
    fn prism_homotopy_identity() {
        let model = GroupModel::lattice(1);
        let id = VertexMap::identity();
        // phi = psi = id on a vertex: h([x]) = [x,x]
        let h0 = bar_homotopy(&id, &id, &BarSimplex(vec![z(3)]));
        assert_eq!(h0.coeff(&BarSimplex(vec![z(3), z(3)])), qi(1));
        // exact homotopy identity for phi = id, psi = const
        let psi = VertexMap::constant(Chain::generator(z(0)));
        for s in [
            BarSimplex(vec![z(1), z(4)]),
            BarSimplex(vec![z(2), z(2), z(-1)]),
        ] {
            let lhs = {
                let mut t = bar_boundary(&s).map_linear(|f| bar_homotopy(&id, &psi, f));
                t.add(&bar_homotopy(&id, &psi, &s).map_linear(|f| bar_boundary(f)));
                t
            };
            let mut rhs = induced_map(&psi, &s);
            rhs.sub(&induced_map(&id, &s));
            assert_eq!(lhs, rhs, "homotopy identity on {s:?}");
        }
        let _ = &model;
    }

    #[test]
    fn antisymmetrizer_is_projector() {
        let s = BarSimplex(vec![z(0), z(1)]);
        let a = antisymmetrize(&s);
        assert_eq!(a.coeff(&BarSimplex(vec![z(0), z(1)])), qq(1, 2));
        assert_eq!(a.coeff(&BarSimplex(vec![z(1), z(0)])), qq(-1, 2));
        let aa = antisymmetrize_chain(&a);
        assert_eq!(aa, a);
        // repeated entry dies
        assert!(antisymmetrize(&BarSimplex(vec![z(2), z(2)])).is_zero());
        // commutes with the boundary
        let s3 = BarSimplex(vec![z(0), z(2), z(5)]);
        let lhs = antisymmetrize_chain(&bar_boundary(&s3));
        let rhs = antisymmetrize(&s3).map_linear(|t| bar_boundary(t));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn step_projection_on_line() {
        // Z on R, v = e, y = 0, n = 0: [5] -> [0]
        let model = GroupModel::lattice(1);
        let anchor = Anchor::for_group(&model, &z(0), &model.identity()).unwrap();
        let p0 = step_projection(&model, &anchor, 0).unwrap();
        assert_eq!(p0.apply(&z(5)), Chain::generator(z(0)));
        // saturated: g inside the ball projects to itself
        let p9 = step_projection(&model, &anchor, 9).unwrap();
        assert_eq!(p9.apply(&z(5)), Chain::generator(z(5)));
        // augmentation compatible
        assert!(p0.check_augmentation(&[z(-3), z(0), z(7)]));
    }

    #[test]
    fn radial_homotopy_contracts_on_line() {
        let model = GroupModel::lattice(1);
        let anchor = Anchor::for_group(&model, &z(0), &model.identity()).unwrap();
        let h = RadialHomotopy::new(&model, anchor);
        let base = h.base_projection();
        for s in [
            BarSimplex(vec![z(3)]),
            BarSimplex(vec![z(1), z(2)]),
            BarSimplex(vec![z(-2), z(0), z(1)]),
        ] {
            let c = antisymmetrize(&s);
            if c.is_zero() {
                continue;
            }
            let mut lhs = h.apply_chain(&c).map_linear(|f| bar_boundary(f));
            lhs.add(&h.apply_chain(&c.map_linear(|f| bar_boundary(f))));
            let mut rhs = c.clone();
            rhs.sub(&antisymmetrize_chain(&c.map_linear(|f| induced_map(&base, f))));
            assert_eq!(lhs, rhs, "contraction identity on {s:?}");
        }
    }

    #[test]
    fn radial_homotopy_contracts_on_dihedral_reflection_class() {
        let model = GroupModel::dihedral();
        let a = Elem::Dihedral { t: 0, flip: true };
        let anchor = Anchor::for_group(&model, &model.identity(), &a).unwrap();
        let h = RadialHomotopy::new(&model, anchor);
        let base = h.base_projection();
        let e = model.identity();
        for s in [
            BarSimplex(vec![e.clone()]),
            BarSimplex(vec![e.clone(), a.clone()]),
        ] {
            let c = antisymmetrize(&s);
            let mut lhs = h.apply_chain(&c).map_linear(|f| bar_boundary(f));
            lhs.add(&h.apply_chain(&c.map_linear(|f| bar_boundary(f))));
            let mut rhs = c.clone();
            rhs.sub(&antisymmetrize_chain(&c.map_linear(|f| induced_map(&base, f))));
            assert_eq!(lhs, rhs, "contraction identity on {s:?}");
        }
    }

    #[test]
    fn word_backend_steps_telescope_to_identity() {
        let model = GroupModel::free(2);
        let y = model.identity();
        let anchor = Anchor::Word { y };
        let h = RadialHomotopy::new(&model, anchor);
        let base = h.base_projection();
        let g = model.parse_elem("ab").unwrap();
        let s = BarSimplex(vec![g.clone(), model.parse_elem("a").unwrap()]);
        let c = antisymmetrize(&s);
        let mut lhs = h.apply_chain(&c).map_linear(|f| bar_boundary(f));
        lhs.add(&h.apply_chain(&c.map_linear(|f| bar_boundary(f))));
        let mut rhs = c.clone();
        rhs.sub(&antisymmetrize_chain(&c.map_linear(|f| induced_map(&base, f))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_covariance_of_radial_homotopy() {
        // g h_(y,v) g^{-1} = h_(gy, g v g^{-1}) on the dihedral backend
        let model = GroupModel::dihedral();
        let v = Elem::Dihedral { t: 0, flip: true };
        let g = Elem::Dihedral { t: 2, flip: false };
        let anchor = Anchor::for_group(&model, &model.identity(), &v).unwrap();
        let h_yv = RadialHomotopy::new(&model, anchor);
        let gv = model.mul(&model.mul(&g, &v), &model.inv(&g));
        let gy_elem = g.clone(); // g acting on the cell of e
        let anchor2 = Anchor::for_group(&model, &gy_elem, &gv).unwrap();
        let h_conj = RadialHomotopy::new(&model, anchor2);
        let translate = |c: &Chain<BarSimplex>, k: &Elem| -> Chain<BarSimplex> {
            c.map_keys(|s| BarSimplex(s.0.iter().map(|x| model.mul(k, x)).collect()))
        };
        for s in [
            BarSimplex(vec![model.identity()]),
            BarSimplex(vec![model.identity(), v.clone()]),
        ] {
            let c = antisymmetrize(&s);
            let lhs = translate(&h_yv.apply_chain(&c), &g);
            let rhs = h_conj.apply_chain(&translate(&c, &g));
            assert_eq!(lhs, rhs, "covariance on {s:?}");
        }
    }

    #[test]
    fn radius_growth_respected() {
        let model = GroupModel::dihedral();
        let v = Elem::Dihedral { t: 0, flip: true };
        let anchor = Anchor::for_group(&model, &model.identity(), &v).unwrap();
        let h = RadialHomotopy::new(&model, anchor);
        let e = model.identity();
        let s = BarSimplex(vec![e, v.clone()]);
        let r = simplex_diameter(&model, &s);
        let bound = h.growth_bound(&r);
        for (t, _) in h.apply(&s).iter() {
            let d = simplex_diameter(&model, t);
            assert!(bound.dominates(&d), "diameter {d:?} over bound {bound:?}");
        }
    }
}

//! The retraction operators tying the class subcomplex of the Bar resolution
//! to the cyclic resolution: the anchored Bar-factor homotopy, the averaged
//! retraction step and its residual, and the exact cone contraction built
//! from the cyclic contraction blockwise, evaluated by filtration descent.

use crate::bar::{
    antisymmetrize, antisymmetrize_chain, bar_boundary, Anchor, BarSimplex, RadialHomotopy,
};
use crate::chain::Chain;
use crate::cyclic::hcyc::CyclicContraction;
use crate::cyclic::{
    total_diff, CrossedStandard, CyclicForm, FormAlgebra, PointAlgebra,
};
use crate::group::{Elem, GResult, GroupError, GroupModel};
use crate::num::{qi, qq, Q};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TiltError {
    #[error("filtration descent did not terminate: {0}")]
    NoDescent(String),
}

/// Bar factor of a mixed element; `Unit` is the degree -1 augmentation slot.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum BarFactor {
    Unit,
    Simplex(BarSimplex),
}

impl BarFactor {
    pub fn degree(&self) -> i64 {
        match self {
            BarFactor::Unit => -1,
            BarFactor::Simplex(s) => s.degree() as i64,
        }
    }

}

/// Mixed generator: Bar factor tensor cyclic factor over the group entries.
pub type MixedKey = (BarFactor, CyclicForm<Elem>);

/// Mixed generator with a point-algebra cyclic factor.
pub type MixedPointKey = (BarFactor, CyclicForm<()>);

fn bar_factor_boundary(f: &BarFactor, augmented: bool) -> Chain<BarFactor> {
    match f {
        BarFactor::Unit => Chain::zero(),
        BarFactor::Simplex(s) => {
            if s.degree() == 0 {
                if augmented {
                    Chain::generator(BarFactor::Unit)
                } else {
                    Chain::zero()
                }
            } else {
                bar_boundary(s).map_keys(|t| BarFactor::Simplex(t.clone()))
            }
        }
    }
}

/// Koszul-signed tensor differential on the mixed complex over the group
/// entries. The cyclic side uses the crossed differential for the given
/// marker (`v = e` gives the plain one).
pub fn mixed_diff(
    model: &GroupModel,
    v: &Elem,
    augmented: bool,
    key: &MixedKey,
) -> Chain<MixedKey> {
    let alg = CrossedStandard::new(model, v.clone());
    let (alpha, omega) = key;
    let mut out: Chain<MixedKey> = bar_factor_boundary(alpha, augmented)
        .map_keys(|a| (a.clone(), omega.clone()));
    let sign = if alpha.degree() % 2 == 0 { qi(1) } else { qi(-1) };
    let dw = total_diff(&alg, &Chain::generator(omega.clone()));
    for (w, c) in dw.iter() {
        out.add_term((alpha.clone(), w.clone()), c * &sign);
    }
    out
}

pub fn mixed_point_diff(augmented: bool, key: &MixedPointKey) -> Chain<MixedPointKey> {
    let (alpha, omega) = key;
    let mut out: Chain<MixedPointKey> = bar_factor_boundary(alpha, augmented)
        .map_keys(|a| (a.clone(), omega.clone()));
    let sign = if alpha.degree() % 2 == 0 { qi(1) } else { qi(-1) };
    let dw = total_diff(&PointAlgebra, &Chain::generator(omega.clone()));
    for (w, c) in dw.iter() {
        out.add_term((alpha.clone(), w.clone()), c * &sign);
    }
    out
}

/// Nearest centralizer points of `g`, the word-backend anchor set.
fn nearest_centralizer(model: &GroupModel, v: &Elem, g: &Elem) -> Vec<Elem> {
    match model {
        GroupModel::Finite(grp) => {
            let all = grp.all_elements();
            let zs: Vec<Elem> = all
                .into_iter()
                .filter(|z| model.centralizer_contains(z, v))
                .collect();
            let dmin = zs.iter().map(|z| model.dist(g, z)).min().unwrap();
            zs.into_iter().filter(|z| model.dist(g, z) == dmin).collect()
        }
        GroupModel::Free(_) => {
            // torsion v in a free group is the identity; the centralizer is
            // everything and g is its own nearest point
            vec![g.clone()]
        }
        _ => panic!("word anchor set on a flat backend"),
    }
}

/// The anchored Bar-factor homotopy: applies the radial contraction whose
/// anchor is read off the leading entry of the cyclic factor (averaged over
/// the nearest centralizer points on the word backends). Acts on the
/// augmented alternating Bar factor and leaves the cyclic factor untouched.
pub struct AnchoredHomotopy<'g> {
    pub model: &'g GroupModel,
    pub v: Elem,
}

impl<'g> AnchoredHomotopy<'g> {
    pub fn new(model: &'g GroupModel, v: &Elem) -> GResult<Self> {
        if !model.is_torsion(v) {
            return Err(GroupError::Domain(
                "retraction anchors need a finite-order element".into(),
            ));
        }
        Ok(AnchoredHomotopy { model, v: v.clone() })
    }

    fn anchors_of(&self, omega: &CyclicForm<Elem>) -> Vec<Anchor> {
        // leading entry of a led form, first entry otherwise
        let g0 = &omega.entries[0];
        match self.model.case() {
            crate::group::GeomCase::Flat => {
                vec![Anchor::for_group(self.model, g0, &self.v).expect("anchor")]
            }
            crate::group::GeomCase::Word => nearest_centralizer(self.model, &self.v, g0)
                .into_iter()
                .map(|h| Anchor::Word { y: h })
                .collect(),
        }
    }

    fn apply_to_factor(&self, anchor: &Anchor, alpha: &BarFactor) -> Chain<BarFactor> {
        let h = RadialHomotopy::new(self.model, anchor.clone());
        match alpha {
            BarFactor::Unit => {
                // degree -1 convention: the base projection of the identity
                let base = h.base_projection();
                antisymmetrize_chain(
                    &base
                        .apply(&self.model.identity())
                        .map_keys(|g| BarSimplex(vec![g.clone()])),
                )
                .map_keys(|s| BarFactor::Simplex(s.clone()))
            }
            BarFactor::Simplex(s) => h
                .apply(s)
                .map_keys(|t| BarFactor::Simplex(t.clone())),
        }
    }

    /// The raw retraction step on a mixed generator.
    pub fn mu_prime(&self, key: &MixedKey) -> Chain<MixedKey> {
        let (alpha, omega) = key;
        let anchors = self.anchors_of(omega);
        let w = qq(1, anchors.len() as i64);
        let mut out = Chain::zero();
        for anchor in &anchors {
            let part = self.apply_to_factor(anchor, alpha);
            for (a, c) in part.iter() {
                out.add_term((a.clone(), omega.clone()), c * &w);
            }
        }
        out
    }

    /// The averaged step in crossed coordinates: the lift through the marker
    /// identification is the U-invariant average of the representative, so
    /// the anchor runs over the U-orbit of the leading entry while the
    /// cyclic factor keeps its class.
    pub fn mu(&self, key: &MixedKey) -> Chain<MixedKey> {
        let alg = CrossedStandard::new(self.model, self.v.clone());
        let (alpha, omega) = key;
        let m = self
            .model
            .order_of(&self.v)
            .expect("torsion marker") as i64;
        let class = alg.canonical(omega.clone());
        let mut out = Chain::zero();
        let mut u = self.model.identity();
        for _ in 0..m {
            let omega_u = crate::cyclic::translate_form(self.model, &u, omega);
            let anchors = self.anchors_of(&omega_u);
            let w = qq(1, m * anchors.len() as i64);
            for anchor in &anchors {
                let part = self.apply_to_factor(anchor, alpha);
                for (a, c) in part.iter() {
                    out.add_term((a.clone(), class.clone()), c * &w);
                }
            }
            u = self.model.mul(&u, &self.v);
        }
        out
    }

    /// Residual of the averaged step: `id - (mu d + d mu)` on the augmented
    /// crossed mixed complex. A chain map that lowers the Bar contribution
    /// on alternating inputs.
    pub fn phi(&self, key: &MixedKey) -> Chain<MixedKey> {
        let mut out = Chain::generator(key.clone());
        let d = mixed_diff(self.model, &self.v, true, key);
        out.sub(&d.map_linear(|k| self.mu(k)));
        out.sub(
            &self
                .mu(key)
                .map_linear(|k| mixed_diff(self.model, &self.v, true, k)),
        );
        out
    }

    /// Radius-growth bound of the raw step on Bar factors of diameter `r`.
    pub fn growth_bound(&self, r: &crate::metric::Dist) -> crate::metric::DistSum {
        let mut s = crate::metric::DistSum::zero();
        s.add(r);
        s.add(&self.model.growth_pad());
        s.add(&crate::metric::Dist::from_q(qi(1)));
        s
    }
}

/// Keys of the cone of `id (x) counit` from the group mixed complex to the
/// point mixed complex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ConeElt {
    Upstairs(BarFactor, CyclicForm<Elem>),
    Downstairs(BarFactor, CyclicForm<()>),
}

fn point_shadow(f: &CyclicForm<Elem>) -> CyclicForm<()> {
    CyclicForm { kind: f.kind, entries: vec![(); f.entries.len()] }
}

fn lift_point(f: &CyclicForm<()>, at: &Elem) -> CyclicForm<Elem> {
    CyclicForm { kind: f.kind, entries: vec![at.clone(); f.entries.len()] }
}

/// The cone machinery for the counit comparison. All operators act on the
/// plain (non-augmented) Bar factors; the contraction identity holds on
/// cone elements whose Bar factors are alternating.
pub struct CounitCone<'g> {
    pub model: &'g GroupModel,
    pub v: Elem,
    u_elements: Vec<Elem>,
}

impl<'g> CounitCone<'g> {
    pub fn new(model: &'g GroupModel, v: &Elem) -> GResult<Self> {
        let Some(m) = model.order_of(v) else {
            return Err(GroupError::Domain(
                "the cone contraction needs a finite-order marker".into(),
            ));
        };
        let mut u_elements = vec![];
        let mut u = model.identity();
        for _ in 0..m {
            u_elements.push(u.clone());
            u = model.mul(&u, v);
        }
        Ok(CounitCone { model, v: v.clone(), u_elements })
    }

    pub fn diff(&self, x: &ConeElt) -> Chain<ConeElt> {
        match x {
            ConeElt::Upstairs(a, w) => {
                let mut out: Chain<ConeElt> =
                    mixed_diff(self.model, &self.model.identity(), false, &(a.clone(), w.clone()))
                        .map_keys(|(b, u)| ConeElt::Upstairs(b.clone(), u.clone()))
                        .scaled(&qi(-1));
                out.add_term(ConeElt::Downstairs(a.clone(), point_shadow(w)), qi(1));
                out
            }
            ConeElt::Downstairs(a, w) => mixed_point_diff(false, &(a.clone(), w.clone()))
                .map_keys(|(b, u)| ConeElt::Downstairs(b.clone(), u.clone())),
        }
    }

    /// Off-diagonal block `nu`: the cyclic contraction on the group side,
    /// the anchored constant-lift on the point side, both antisymmetrized in
    /// the Bar factor and averaged over U at the leading vertex.
    pub fn nu(&self, x: &ConeElt) -> Chain<ConeElt> {
        match x {
            ConeElt::Upstairs(BarFactor::Simplex(s), w) => {
                let m = s.degree() as i64;
                let sign = qi(if (m - 1).rem_euclid(2) == 0 { 1 } else { -1 });
                let h0 = &s.0[0];
                let alt = antisymmetrize(s);
                let uw = qq(1, self.u_elements.len() as i64);
                let mut out = Chain::zero();
                for u in &self.u_elements {
                    let at = self.model.mul(u, h0);
                    let contraction =
                        CyclicContraction::new(self.model, &at).expect("contraction");
                    let hw = contraction.apply(w);
                    for (a, ca) in alt.iter() {
                        for (wf, cw) in hw.iter() {
                            out.add_term(
                                ConeElt::Upstairs(BarFactor::Simplex(a.clone()), wf.clone()),
                                ca * cw * &sign * &uw,
                            );
                        }
                    }
                }
                out
            }
            ConeElt::Downstairs(BarFactor::Simplex(s), w) => {
                let h0 = &s.0[0];
                let alt = antisymmetrize(s);
                let uw = qq(1, self.u_elements.len() as i64);
                let mut out = Chain::zero();
                for u in &self.u_elements {
                    let at = self.model.mul(u, h0);
                    let lifted = lift_point(w, &at);
                    for (a, ca) in alt.iter() {
                        out.add_term(
                            ConeElt::Upstairs(BarFactor::Simplex(a.clone()), lifted.clone()),
                            ca * &uw,
                        );
                    }
                }
                out
            }
            _ => Chain::zero(),
        }
    }

    /// One descent step: `id - (d nu + nu d)`. Strictly lowers the Bar
    /// degree of alternating cone elements.
    pub fn psi(&self, c: &Chain<ConeElt>) -> Chain<ConeElt> {
        let mut out = c.clone();
        out.sub(&c.map_linear(|x| self.nu(x)).map_linear(|x| self.diff(x)));
        out.sub(&c.map_linear(|x| self.diff(x)).map_linear(|x| self.nu(x)));
        out
    }

    /// The full contraction: the geometric series of `nu` along the descent,
    /// summed until the descent terminates.
    pub fn contraction(&self, c: &Chain<ConeElt>) -> Result<Chain<ConeElt>, TiltError> {
        let mut acc = c.clone();
        let mut total = Chain::zero();
        let max_bar = c
            .keys()
            .map(|k| match k {
                ConeElt::Upstairs(a, _) | ConeElt::Downstairs(a, _) => a.degree(),
            })
            .max()
            .unwrap_or(-1);
        let bound = (max_bar + 3) as usize * 2 + 4;
        let mut steps = 0usize;
        while !acc.is_zero() {
            total.add(&acc.map_linear(|x| self.nu(x)));
            acc = self.psi(&acc);
            steps += 1;
            if steps > bound {
                return Err(TiltError::NoDescent(format!(
                    "no termination after {steps} steps on {} terms",
                    acc.len()
                )));
            }
        }
        Ok(total)
    }
}

/// The scalar counit on crossed group forms: composite of the counit to the
/// point algebra and the functional reading off the degree-0 coefficient.
pub fn eps_prime(c: &Chain<CyclicForm<Elem>>) -> Q {
    crate::cyclic::crossed::scalar_counit(c)
}

/// Counit to the point algebra on the cyclic factor.
pub fn counit_map(f: &CyclicForm<Elem>) -> CyclicForm<()> {
    point_shadow(f)
}

/// Section of the counit at a chosen element (all entries constant).
pub fn counit_section(model: &GroupModel, at: &Elem, f: &CyclicForm<()>) -> Chain<CyclicForm<Elem>> {
    let _ = model;
    Chain::generator(lift_point(f, at))
}

/// Alternating projector on the Bar factor of a cone element.
pub fn alternate_cone(c: &Chain<ConeElt>) -> Chain<ConeElt> {
    let mut out = Chain::zero();
    for (x, q) in c.iter() {
        match x {
            ConeElt::Upstairs(BarFactor::Simplex(s), w) => {
                for (a, ca) in antisymmetrize(s).iter() {
                    out.add_term(
                        ConeElt::Upstairs(BarFactor::Simplex(a.clone()), w.clone()),
                        ca * q,
                    );
                }
            }
            ConeElt::Downstairs(BarFactor::Simplex(s), w) => {
                for (a, ca) in antisymmetrize(s).iter() {
                    out.add_term(
                        ConeElt::Downstairs(BarFactor::Simplex(a.clone()), w.clone()),
                        ca * q,
                    );
                }
            }
            other => out.add_term(other.clone(), q.clone()),
        }
    }
    out
}

/// Alternating projector on the Bar factor of a mixed element.
pub fn alternate_mixed(c: &Chain<MixedKey>) -> Chain<MixedKey> {
    let mut out = Chain::zero();
    for ((a, w), q) in c.iter() {
        match a {
            BarFactor::Simplex(s) => {
                for (b, cb) in antisymmetrize(s).iter() {
                    out.add_term((BarFactor::Simplex(b.clone()), w.clone()), cb * q);
                }
            }
            BarFactor::Unit => out.add_term((BarFactor::Unit, w.clone()), q.clone()),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_cone_contraction(model: &GroupModel, v: &Elem, elements: Vec<ConeElt>) {
        let cone = CounitCone::new(model, v).unwrap();
        for x in elements {
            let c = alternate_cone(&Chain::generator(x.clone()));
            if c.is_zero() {
                continue;
            }
            let h = cone.contraction(&c).unwrap();
            let mut lhs = h.map_linear(|y| cone.diff(y));
            lhs.add(&cone.contraction(&c.map_linear(|y| cone.diff(y))).unwrap());
            assert_eq!(lhs, c, "cone contraction on {x:?}");
        }
    }

    #[test]
    fn cone_diff_squares_to_zero() {
        let model = GroupModel::lattice(1);
        let cone = CounitCone::new(&model, &model.identity()).unwrap();
        let z = |n: i64| Elem::Lattice(vec![n]);
        let elts = vec![
            ConeElt::Upstairs(
                BarFactor::Simplex(BarSimplex(vec![z(0), z(1)])),
                CyclicForm::lead(vec![z(2), z(0)]),
            ),
            ConeElt::Downstairs(
                BarFactor::Simplex(BarSimplex(vec![z(1), z(-1), z(0)])),
                CyclicForm::nolead(vec![(); 2]),
            ),
        ];
        for x in elts {
            let dd = cone
                .diff(&x)
                .map_linear(|y| cone.diff(y));
            assert!(dd.is_zero(), "d^2 on {x:?}");
        }
    }

    #[test]
    fn cone_contraction_on_the_line() {
        let model = GroupModel::lattice(1);
        let z = |n: i64| Elem::Lattice(vec![n]);
        let e = model.identity();
        check_cone_contraction(
            &model,
            &e,
            vec![
                ConeElt::Upstairs(
                    BarFactor::Simplex(BarSimplex(vec![z(0)])),
                    CyclicForm::lead(vec![z(1)]),
                ),
                ConeElt::Upstairs(
                    BarFactor::Simplex(BarSimplex(vec![z(0), z(2)])),
                    CyclicForm::lead(vec![z(1), z(0)]),
                ),
                ConeElt::Downstairs(
                    BarFactor::Simplex(BarSimplex(vec![z(1), z(0)])),
                    CyclicForm::nolead(vec![(); 1]),
                ),
                ConeElt::Downstairs(
                    BarFactor::Simplex(BarSimplex(vec![z(0), z(1), z(3)])),
                    CyclicForm::lead(vec![(); 2]),
                ),
            ],
        );
    }

    #[test]
    fn cone_contraction_on_dihedral_reflection() {
        let model = GroupModel::dihedral();
        let a = Elem::Dihedral { t: 0, flip: true };
        let e = model.identity();
        check_cone_contraction(
            &model,
            &a,
            vec![
                ConeElt::Upstairs(
                    BarFactor::Simplex(BarSimplex(vec![e.clone()])),
                    CyclicForm::lead(vec![a.clone()]),
                ),
                ConeElt::Upstairs(
                    BarFactor::Simplex(BarSimplex(vec![e.clone(), a.clone()])),
                    CyclicForm::lead(vec![e.clone(), a.clone()]),
                ),
                ConeElt::Downstairs(
                    BarFactor::Simplex(BarSimplex(vec![a.clone(), e.clone()])),
                    CyclicForm::nolead(vec![(); 2]),
                ),
            ],
        );
    }

    #[test]
    fn mu_prime_on_dihedral_respects_radius_growth() {
        let model = GroupModel::dihedral();
        let a = Elem::Dihedral { t: 0, flip: true };
        let h = AnchoredHomotopy::new(&model, &a).unwrap();
        let e = model.identity();
        let alpha = BarFactor::Simplex(BarSimplex(vec![e.clone(), a.clone()]));
        let omega = CyclicForm::lead(vec![a.clone(), e.clone()]);
        let r = crate::bar::simplex_diameter(&model, &BarSimplex(vec![e.clone(), a.clone()]));
        let bound = h.growth_bound(&r);
        for ((af, _), _) in h.mu_prime(&(alpha.clone(), omega.clone())).iter() {
            if let BarFactor::Simplex(s) = af {
                let d = crate::bar::simplex_diameter(&model, s);
                assert!(bound.dominates(&d), "{d:?} within {bound:?}");
            }
        }
        // torsion-free marker is rejected
        assert!(AnchoredHomotopy::new(&model, &Elem::Dihedral { t: 1, flip: false }).is_err());
    }

    #[test]
    fn phi_is_a_chain_map_on_samples() {
        let model = GroupModel::dihedral();
        let a = Elem::Dihedral { t: 0, flip: true };
        let h = AnchoredHomotopy::new(&model, &a).unwrap();
        let e = model.identity();
        let keys = vec![
            (
                BarFactor::Simplex(BarSimplex(vec![e.clone()])),
                CyclicForm::lead(vec![a.clone()]),
            ),
            (
                BarFactor::Simplex(BarSimplex(vec![e.clone(), a.clone()])),
                CyclicForm::lead(vec![e.clone(), a.clone()]),
            ),
            (BarFactor::Unit, CyclicForm::lead(vec![a.clone()])),
        ];
        for k in keys {
            let c = alternate_mixed(&Chain::generator(k.clone()));
            if c.is_zero() {
                continue;
            }
            let lhs = c
                .map_linear(|x| h.phi(x))
                .map_linear(|x| mixed_diff(&model, &a, true, x));
            let rhs = c
                .map_linear(|x| mixed_diff(&model, &a, true, x))
                .map_linear(|x| h.phi(x));
            assert_eq!(lhs, rhs, "phi chain map on {k:?}");
        }
    }

    #[test]
    fn mu_is_centralizer_equivariant() {
        let model = GroupModel::dihedral();
        let a = Elem::Dihedral { t: 0, flip: true };
        let h = AnchoredHomotopy::new(&model, &a).unwrap();
        let e = model.identity();
        let key = (
            BarFactor::Simplex(BarSimplex(vec![e.clone(), a.clone()])),
            CyclicForm::lead(vec![a.clone(), e.clone()]),
        );
        let translate = |c: &Chain<MixedKey>, zc: &Elem| -> Chain<MixedKey> {
            c.map_keys(|(af, w)| {
                let af2 = match af {
                    BarFactor::Unit => BarFactor::Unit,
                    BarFactor::Simplex(s) => BarFactor::Simplex(BarSimplex(
                        s.0.iter().map(|x| model.mul(zc, x)).collect(),
                    )),
                };
                (af2, crate::cyclic::translate_form(&model, zc, w))
            })
        };
        let c = Chain::generator(key);
        for zc in model.centralizer_sample(&a, 2) {
            let alg = CrossedStandard::new(&model, a.clone());
            let lhs = translate(&c.map_linear(|x| h.mu(x)), &zc)
                .map_keys(|(af, w)| (af.clone(), alg.canonical(w.clone())));
            let rhs = translate(&c, &zc).map_linear(|x| h.mu(x));
            assert_eq!(lhs, rhs, "equivariance under {zc:?}");
        }
    }

    #[test]
    fn counit_split() {
        let model = GroupModel::lattice(1);
        let z = |n: i64| Elem::Lattice(vec![n]);
        let f = CyclicForm::lead(vec![z(3)]);
        assert_eq!(eps_prime(&Chain::generator(f.clone())), qi(1));
        assert_eq!(counit_map(&f), CyclicForm::lead(vec![()]));
        let back = counit_section(&model, &z(0), &counit_map(&f));
        assert_eq!(eps_prime(&back), qi(1));
        // degree >= 1 dies
        let g = CyclicForm::lead(vec![z(1), z(2)]);
        assert_eq!(eps_prime(&Chain::generator(g)), qi(0));
    }
}

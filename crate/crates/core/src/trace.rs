//! The hyperbolic-part cochain machinery: the degree-one winding cochain on
//! the line crossed product, its pullbacks along axis coordinates, their
//! descents to class components of the group ring, class traces, and the
//! slant product by a trace.

use num_traits::{Signed, Zero};

use crate::chain::Chain;
use crate::cyclic::{connes, hochschild, CyclicForm, GroupRingOf, Kind};
use crate::group::{AxisCoord, Elem, GResult, GroupError, GroupModel, ModelPoint};
use crate::metric::Dist;
use crate::num::{qi, Q};

/// Crossed-product form over the line, unit-marker component.
pub type LineForm = CyclicForm<Q>;

/// Winding cochain on the line: measures the oriented displacement of a
/// degree-one form, counts marked forms without a lead once, and vanishes in
/// every other degree. Its coboundary is the point-mass trace at the marker.
pub fn winding(form: &LineForm) -> Q {
    if form.degree() != 1 {
        return Q::zero();
    }
    match form.kind {
        Kind::Lead => &form.entries[1] - &form.entries[0],
        Kind::NoLead => qi(1),
    }
}

pub fn winding_chain(c: &Chain<LineForm>) -> Q {
    c.iter().map(|(f, q)| winding(f) * q).sum()
}

/// Pullback data for the axis cochain of an infinite-order element.
pub struct AxisCochain<'g> {
    pub model: &'g GroupModel,
    pub v: Elem,
    pub stable_length: Dist,
    coord: AxisCoord,
    /// Coset representatives of the cyclic subgroup of `v` inside its
    /// centralizer; averaging over them makes the cochain invariant.
    averaging: Vec<Elem>,
}

impl<'g> AxisCochain<'g> {
    /// `v` must have infinite order; on the word backends it is replaced by
    /// the shortlex-minimal representative of its class before the axis is
    /// taken (the translation length is realized there).
    pub fn new(model: &'g GroupModel, v: &Elem) -> GResult<Self> {
        if model.is_torsion(v) {
            return Err(GroupError::Domain(
                "axis cochain of a torsion element".into(),
            ));
        }
        match model {
            GroupModel::Lattice(g) => {
                let y = ModelPoint::flat_rational(vec![Q::zero(); g.dim]);
                let (l, coord) = model.min_split(v, &y)?;
                Ok(AxisCochain {
                    model,
                    v: v.clone(),
                    stable_length: l,
                    coord,
                    averaging: vec![model.identity()],
                })
            }
            GroupModel::Dihedral(_) => {
                let y = ModelPoint::flat_rational(vec![Q::zero()]);
                let (l, coord) = model.min_split(v, &y)?;
                Ok(AxisCochain {
                    model,
                    v: v.clone(),
                    stable_length: l,
                    coord,
                    averaging: vec![model.identity()],
                })
            }
            GroupModel::Free(_) => {
                let vmin = model.class_rep(v);
                let Elem::Free(vw) = &vmin else { unreachable!() };
                let (root, mult) = crate::group::free::primitive_root(vw);
                let y = ModelPoint::TreeVertex(vec![]);
                let (l, coord) = model.min_split(&vmin, &y)?;
                // centralizer = powers of the root; cosets of <v> are
                // root^0 .. root^{mult-1}
                let mut averaging = vec![];
                let mut w = model.identity();
                for _ in 0..mult {
                    averaging.push(w.clone());
                    w = model.mul(&w, &Elem::Free(root.clone()));
                }
                Ok(AxisCochain {
                    model,
                    v: vmin,
                    stable_length: l,
                    coord,
                    averaging,
                })
            }
            GroupModel::Finite(_) => Err(GroupError::Domain(
                "finite groups have no hyperbolic classes".into(),
            )),
        }
    }

    fn pullback_once(&self, z_inv: &Elem, form: &CyclicForm<Elem>) -> Q {
        if form.degree() != 1 {
            return Q::zero();
        }
        match form.kind {
            Kind::Lead => {
                let g0 = self.model.mul(z_inv, &form.entries[0]);
                let g1 = self.model.mul(z_inv, &form.entries[1]);
                self.coord.eval(self.model, &g1) - self.coord.eval(self.model, &g0)
            }
            Kind::NoLead => qi(1),
        }
    }

    /// Value on a crossed-coordinate form of the `v`-component.
    pub fn eval(&self, form: &CyclicForm<Elem>) -> Q {
        let m = qi(self.averaging.len() as i64);
        let mut acc = Q::zero();
        for z in &self.averaging {
            let z_inv = self.model.inv(z);
            acc += self.pullback_once(&z_inv, form);
        }
        acc / m
    }

    pub fn eval_chain(&self, c: &Chain<CyclicForm<Elem>>) -> Q {
        c.iter().map(|(f, q)| self.eval(f) * q).sum()
    }

    /// The sharp pointwise bound on degree-one forms: the cochain is
    /// dominated by weight over stable length, compared exactly.
    pub fn bound_holds(&self, form: &CyclicForm<Elem>) -> bool {
        if form.degree() != 1 {
            return self.eval(form).is_zero();
        }
        let value = self.eval(form).abs();
        let lhs = self.stable_length.scale(&value);
        let w = crate::norms::v_weight(self.model, form, &self.v);
        w.dominates(&lhs)
    }
}

/// Conjugacy-class characteristic trace on degree-0 led forms.
pub fn class_trace(model: &GroupModel, v: &Elem, c: &Chain<CyclicForm<Elem>>) -> Q {
    let rep = model.class_rep(v);
    let mut out = Q::zero();
    for (f, q) in c.iter() {
        if f.kind == Kind::Lead && f.degree() == 0 && model.class_rep(&f.entries[0]) == rep {
            out += q;
        }
    }
    out
}

/// The cochain on the class component of the group ring obtained from the
/// axis cochain through the descent map: evaluate on any preimage; the
/// centralizer invariance makes the value independent of the choice.
pub struct ClassCochain<'g> {
    pub axis: AxisCochain<'g>,
}

impl<'g> ClassCochain<'g> {
    pub fn new(model: &'g GroupModel, v: &Elem) -> GResult<Self> {
        Ok(ClassCochain { axis: AxisCochain::new(model, v)? })
    }

    /// A descent preimage of a class-component form, as a crossed form.
    pub fn preimage(&self, form: &CyclicForm<Elem>) -> Option<CyclicForm<Elem>> {
        let model = self.axis.model;
        let v = &self.axis.v;
        let es = &form.entries;
        // rotated product starting after the lead slot
        let rot: Elem = match form.kind {
            Kind::Lead => {
                let mut p = model.identity();
                for e in &es[1..] {
                    p = model.mul(&p, e);
                }
                model.mul(&p, &es[0])
            }
            Kind::NoLead => {
                let mut p = model.identity();
                for e in &es[1..] {
                    p = model.mul(&p, e);
                }
                model.mul(&p, &es[0])
            }
        };
        let s = model.conjugating_element(v, &rot)?;
        match form.kind {
            Kind::Lead => {
                let mut g = vec![s.clone()];
                let mut cur = s;
                for e in &es[1..] {
                    cur = model.mul(&cur, e);
                    g.push(cur.clone());
                }
                Some(CyclicForm::lead(g))
            }
            Kind::NoLead => {
                let mut g = vec![s.clone()];
                let mut cur = s;
                for e in &es[1..] {
                    cur = model.mul(&cur, e);
                    g.push(cur.clone());
                }
                Some(CyclicForm::nolead(g))
            }
        }
    }

    /// Value on a class-component form; zero off the component or in
    /// degrees other than one.
    pub fn eval(&self, form: &CyclicForm<Elem>) -> Q {
        if form.degree() != 1 {
            return Q::zero();
        }
        let model = self.axis.model;
        if crate::cyclic::class_of_form(model, form) != model.class_rep(&self.axis.v) {
            return Q::zero();
        }
        let pre = self
            .preimage(form)
            .expect("class-component form has a descent preimage");
        self.axis.eval(&pre)
    }

    pub fn eval_chain(&self, c: &Chain<CyclicForm<Elem>>) -> Q {
        c.iter().map(|(f, q)| self.eval(f) * q).sum()
    }

    /// The coboundary pairing: value on `(b+B)` of a form.
    pub fn coboundary(&self, form: &CyclicForm<Elem>) -> Q {
        let model = self.axis.model;
        let ring = GroupRingOf { model };
        let mut d = hochschild(&ring, form);
        d.add(&connes(&ring, form));
        self.eval_chain(&d)
    }
}

/// Slant product of a trace with a form over a product of two groups: the
/// trace eats the product of the first components and the second components
/// survive as a form of the same kind. The caller supplies the splitting of
/// product elements and the first-factor group.
pub fn trace_slant(
    model_a: &GroupModel,
    split: impl Fn(&Elem) -> (Elem, Elem),
    trace_a: impl Fn(&Elem) -> Q,
    form: &CyclicForm<Elem>,
) -> Chain<CyclicForm<Elem>> {
    let mut a_prod = model_a.identity();
    let mut b_entries = vec![];
    for e in &form.entries {
        let (a, b) = split(e);
        a_prod = model_a.mul(&a_prod, &a);
        b_entries.push(b);
    }
    let coeff = trace_a(&a_prod);
    if coeff.is_zero() {
        return Chain::zero();
    }
    Chain::single(CyclicForm { kind: form.kind, entries: b_entries }, coeff)
}

/// Slant that refuses non-traces: the functional must pass the sampled
/// trace property before it is applied (general slants by non-trace
/// cochains need a shuffle comparison that is out of scope here).
pub fn checked_trace_slant(
    model_a: &GroupModel,
    split: impl Fn(&Elem) -> (Elem, Elem),
    trace_a: impl Fn(&Elem) -> Q,
    trace_samples: &[(Elem, Elem)],
    form: &CyclicForm<Elem>,
) -> Result<Chain<CyclicForm<Elem>>, String> {
    for (a, b) in trace_samples {
        if trace_a(&model_a.mul(a, b)) != trace_a(&model_a.mul(b, a)) {
            return Err(format!(
                "not a trace: differs on ({}, {})",
                model_a.display_elem(a),
                model_a.display_elem(b)
            ));
        }
    }
    Ok(trace_slant(model_a, split, trace_a, form))
}

/// Sampled trace property: `tau(ab) = tau(ba)` on the listed pairs.
pub fn is_trace_on_samples(
    model: &GroupModel,
    tau: impl Fn(&Elem) -> Q,
    pairs: &[(Elem, Elem)],
) -> bool {
    pairs
        .iter()
        .all(|(a, b)| tau(&model.mul(a, b)) == tau(&model.mul(b, a)))
}

/// Cap with the class trace through the diagonal: the characteristic
/// projector onto one class component of the group-ring complex.
pub fn cap_with_class_trace(
    model: &GroupModel,
    v: &Elem,
    form: &CyclicForm<Elem>,
) -> Chain<CyclicForm<Elem>> {
    let rep = model.class_rep(v);
    if crate::cyclic::class_of_form(model, form) == rep {
        Chain::generator(form.clone())
    } else {
        Chain::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qq;

    fn lf(kind: Kind, ts: &[Q]) -> LineForm {
        CyclicForm { kind, entries: ts.to_vec() }
    }

    #[test]
    fn winding_values() {
        assert_eq!(winding(&lf(Kind::Lead, &[qi(2), qi(5)])), qi(3));
        assert_eq!(winding(&lf(Kind::NoLead, &[qq(7, 2)])), qi(1));
        assert_eq!(winding(&lf(Kind::Lead, &[qi(1)])), qi(0));
    }

    #[test]
    fn winding_is_closed_under_b() {
        // value on the Hochschild boundary of any degree-2 form vanishes
        let alg = crate::cyclic::LineAlgebra;
        for f in [
            lf(Kind::Lead, &[qi(1), qq(5, 2), qi(-3)]),
            lf(Kind::NoLead, &[qi(0), qi(4)]),
            lf(Kind::NoLead, &[qq(-1, 3), qi(2)]),
        ] {
            let b = hochschild(&alg, &f);
            assert_eq!(winding_chain(&b), qi(0), "b-closedness on {f:?}");
        }
    }

    #[test]
    fn winding_coboundary_is_the_point_trace() {
        // value on B of a degree-0 form equals 1 = the marker trace
        let alg = crate::cyclic::LineAlgebra;
        for t in [qi(0), qq(3, 4), qi(-7)] {
            let f = lf(Kind::Lead, &[t]);
            let big_b = connes(&alg, &f);
            assert_eq!(winding_chain(&big_b), qi(1));
        }
    }

    fn z(n: i64) -> Elem {
        Elem::Lattice(vec![n])
    }

    fn z2(a: i64, b: i64) -> Elem {
        Elem::Lattice(vec![a, b])
    }

    #[test]
    fn axis_cochain_examples() {
        // Z, v = 1, y = 0: value on u<2>d<5> is 3
        let model = GroupModel::lattice(1);
        let chi = AxisCochain::new(&model, &z(1)).unwrap();
        assert_eq!(chi.eval(&CyclicForm::lead(vec![z(2), z(5)])), qi(3));
        // Z^2, v = (1,0): first-coordinate displacement
        let model2 = GroupModel::lattice(2);
        let chi2 = AxisCochain::new(&model2, &z2(1, 0)).unwrap();
        assert_eq!(
            chi2.eval(&CyclicForm::lead(vec![z2(0, 3), z2(4, 3)])),
            qi(4)
        );
        // torsion rejection
        assert!(AxisCochain::new(&model, &z(0)).is_err());
    }

    #[test]
    fn axis_cochain_is_centralizer_invariant() {
        let model = GroupModel::free(2);
        let v = model.parse_elem("abab").unwrap(); // (ab)^2, centralizer <ab>
        let chi = AxisCochain::new(&model, &v).unwrap();
        let g0 = model.parse_elem("a").unwrap();
        let g1 = model.parse_elem("bA").unwrap();
        let f = CyclicForm::lead(vec![g0, g1]);
        let base = chi.eval(&f);
        for zc in model.centralizer_sample(&v, 4) {
            let tf = crate::cyclic::translate_form(&model, &zc, &f);
            assert_eq!(chi.eval(&tf), base, "shifted by {zc:?}");
        }
    }

    #[test]
    fn axis_bound_is_sharp_on_marked_forms() {
        let model = GroupModel::lattice(2);
        let chi = AxisCochain::new(&model, &z2(3, 4)).unwrap();
        for f in [
            CyclicForm::lead(vec![z2(0, 0), z2(2, -1)]),
            CyclicForm::lead(vec![z2(1, 5), z2(1, 5)]),
            CyclicForm::nolead(vec![z2(7, -2)]),
            CyclicForm::nolead(vec![z2(0, 1)]),
        ] {
            assert!(chi.bound_holds(&f), "bound fails on {f:?}");
        }
    }

    #[test]
    fn class_cochain_coboundary_is_the_class_trace() {
        let model = GroupModel::lattice(1);
        let ring = GroupRingOf { model: &model };
        let chic = ClassCochain::new(&model, &z(1)).unwrap();
        // degree 0: value on B of t equals 1, on B of t^2 equals 0
        let t = CyclicForm::lead(vec![z(1)]);
        let b_t = connes(&ring, &t);
        assert_eq!(chic.eval_chain(&b_t), qi(1));
        assert_eq!(class_trace(&model, &z(1), &Chain::generator(t)), qi(1));
        let t2 = CyclicForm::lead(vec![z(2)]);
        assert_eq!(chic.eval_chain(&connes(&ring, &t2)), qi(0));
        // degree 2 of the class component: value on b vanishes
        for f in [
            CyclicForm::lead(vec![z(-2), z(1), z(2)]),
            CyclicForm::nolead(vec![z(3), z(-2)]),
        ] {
            assert_eq!(chic.coboundary(&f), qi(0), "on {f:?}");
        }
    }

    #[test]
    fn class_cochain_value_is_preimage_independent() {
        let model = GroupModel::free(2);
        let v = model.parse_elem("ab").unwrap();
        let chic = ClassCochain::new(&model, &v).unwrap();
        // two preimages of the same degree-1 class form differ by a
        // centralizer translation; values agree
        let h1 = model.parse_elem("a").unwrap();
        let h0 = {
            // h0 h1 must be conjugate to ab: take h0 = b
            model.parse_elem("b").unwrap()
        };
        let f = CyclicForm::lead(vec![h0, h1]);
        let p1 = chic.preimage(&f).unwrap();
        let zc = model.parse_elem("ab").unwrap(); // central for v
        let p2 = crate::cyclic::translate_form(&model, &zc, &p1);
        assert_eq!(chic.axis.eval(&p1), chic.axis.eval(&p2));
    }

    #[test]
    fn slant_by_class_trace() {
        // Q[Z] tensor Q[Z] realized over the rank-2 lattice
        let prod = GroupModel::lattice(2);
        let line = GroupModel::lattice(1);
        let split = |e: &Elem| -> (Elem, Elem) {
            let Elem::Lattice(v) = e else { panic!() };
            (z(v[0]), z(v[1]))
        };
        let tau_e = |a: &Elem| -> Q {
            if line.is_identity(a) {
                qi(1)
            } else {
                qi(0)
            }
        };
        // (t tensor t) d (t^{-1} tensor t^{-1}) -> tau(e) * t d t^{-1}
        let f = CyclicForm::lead(vec![z2(1, 1), z2(-1, -1)]);
        let out = trace_slant(&line, split, tau_e, &f);
        assert_eq!(out, Chain::generator(CyclicForm::lead(vec![z(1), z(-1)])));
        // diagonal of t^2 d t^{-1}: product t, trace 0
        let g = CyclicForm::lead(vec![z2(2, 2), z2(-1, -1)]);
        assert!(trace_slant(&line, split, tau_e, &g).is_zero());
        let _ = &prod;
    }

    #[test]
    fn slant_is_a_chain_map_on_samples() {
        let prod = GroupModel::lattice(2);
        let line = GroupModel::lattice(1);
        let ring2 = GroupRingOf { model: &prod };
        let ring1 = GroupRingOf { model: &line };
        let split = |e: &Elem| -> (Elem, Elem) {
            let Elem::Lattice(v) = e else { panic!() };
            (z(v[0]), z(v[1]))
        };
        let tau_e = |a: &Elem| -> Q {
            if line.is_identity(a) {
                qi(1)
            } else {
                qi(0)
            }
        };
        assert!(is_trace_on_samples(
            &line,
            tau_e,
            &[(z(1), z(2)), (z(0), z(-3)), (z(2), z(2))]
        ));
        for f in [
            CyclicForm::lead(vec![z2(1, 2), z2(-1, 0)]),
            CyclicForm::lead(vec![z2(0, 1), z2(0, -1), z2(0, 2)]),
            CyclicForm::nolead(vec![z2(1, 1), z2(-1, 2)]),
        ] {
            let c = Chain::generator(f.clone());
            let lhs = crate::cyclic::total_diff(&ring2, &c)
                .map_linear(|x| trace_slant(&line, split, tau_e, x));
            let rhs = crate::cyclic::total_diff(
                &ring1,
                &trace_slant(&line, split, tau_e, &f),
            );
            assert_eq!(lhs, rhs, "slant chain map on {f:?}");
        }
    }

    #[test]
    fn non_trace_functionals_are_rejected() {
        // a point mass at a non-central element of a nonabelian group fails
        // the trace property
        let s3 = GroupModel::by_name("s3").unwrap();
        let split = |e: &Elem| -> (Elem, Elem) { (e.clone(), e.clone()) };
        let rs = s3.mul(
            &s3.parse_elem("a").unwrap(),
            &s3.parse_elem("b").unwrap(),
        );
        let not_trace = move |a: &Elem| -> Q {
            if *a == rs {
                qi(1)
            } else {
                qi(0)
            }
        };
        let pairs = vec![(s3.parse_elem("a").unwrap(), s3.parse_elem("b").unwrap())];
        let f = CyclicForm::lead(vec![s3.identity()]);
        let r = checked_trace_slant(&s3, split, &not_trace, &pairs, &f);
        assert!(r.is_err());
        // the class trace passes
        let tau = |a: &Elem| -> Q {
            if s3.is_identity(a) {
                qi(1)
            } else {
                qi(0)
            }
        };
        assert!(checked_trace_slant(&s3, split, tau, &pairs, &f).is_ok());
    }

    #[test]
    fn cap_is_the_class_projector() {
        let model = GroupModel::lattice(1);
        let f = CyclicForm::lead(vec![z(2), z(3)]); // class 5
        assert_eq!(
            cap_with_class_trace(&model, &z(5), &f),
            Chain::generator(f.clone())
        );
        assert!(cap_with_class_trace(&model, &z(1), &f).is_zero());
        // idempotent
        let once = cap_with_class_trace(&model, &z(5), &f);
        let twice = once.map_linear(|x| cap_with_class_trace(&model, &z(5), x));
        assert_eq!(once, twice);
    }
}

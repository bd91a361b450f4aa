//! Crossed-product coordinates: the marker-attaching identification with
//! plain forms, averaging onto U-invariants, the descent onto the class
//! component of the group ring, the scalar counit and the idempotent Chern
//! character of the point algebra.

use num_traits::Zero;

use crate::chain::Chain;
use crate::cyclic::{translate_form, CrossedStandard, CyclicForm, FormAlgebra, Kind};
use crate::group::{Elem, GroupModel};
use crate::num::{qi, qq, Q};

/// Attach the crossed marker: the coordinates are the same tuples, so the
/// identification is the identity on data. Kept explicit so round trips and
/// the quotient comparison below have a named home.
pub fn to_crossed(form: &CyclicForm<Elem>) -> CyclicForm<Elem> {
    form.clone()
}

pub fn from_crossed(form: &CyclicForm<Elem>) -> CyclicForm<Elem> {
    form.clone()
}

/// Averaging projector onto U-invariants of the plain complex, for a finite
/// cyclic group generated by `v`.
pub fn u_average(
    model: &GroupModel,
    v: &Elem,
    c: &Chain<CyclicForm<Elem>>,
) -> Chain<CyclicForm<Elem>> {
    let m = model
        .order_of(v)
        .expect("averaging needs a finite-order element") as i64;
    let mut out = Chain::zero();
    let w = qq(1, m);
    let mut u = model.identity();
    for _ in 0..m {
        for (f, q) in c.iter() {
            out.add_term(translate_form(model, &u, f), q * &w);
        }
        u = model.mul(&u, v);
    }
    out
}

/// Push a chain of crossed coordinates to canonical orbit representatives.
pub fn canonicalize_chain(
    alg: &CrossedStandard,
    c: &Chain<CyclicForm<Elem>>,
) -> Chain<CyclicForm<Elem>> {
    c.map_keys(|f| alg.canonical(f.clone()))
}

/// Descent onto the class component of the group-ring complex:
/// consecutive-quotient coordinates with the marker folded into the wrap.
pub fn class_descent(model: &GroupModel, v: &Elem, form: &CyclicForm<Elem>) -> CyclicForm<Elem> {
    let es = &form.entries;
    match form.kind {
        Kind::Lead => {
            let n = es.len() - 1;
            let mut out = Vec::with_capacity(es.len());
            // g_n^{-1} v g_0
            out.push(model.mul(&model.mul(&model.inv(&es[n]), v), &es[0]));
            for i in 0..n {
                out.push(model.mul(&model.inv(&es[i]), &es[i + 1]));
            }
            CyclicForm::lead(out)
        }
        Kind::NoLead => {
            let n = es.len();
            let mut out = Vec::with_capacity(n);
            out.push(model.mul(&model.mul(&model.inv(&es[n - 1]), v), &es[0]));
            for i in 0..(n - 1) {
                out.push(model.mul(&model.inv(&es[i]), &es[i + 1]));
            }
            CyclicForm::nolead(out)
        }
    }
}

pub fn class_descent_chain(
    model: &GroupModel,
    v: &Elem,
    c: &Chain<CyclicForm<Elem>>,
) -> Chain<CyclicForm<Elem>> {
    c.map_keys(|f| class_descent(model, v, f))
}

/// Scalar counit of the crossed complex: 1 on degree-0 led forms, 0 on
/// everything of positive degree. The composite of the augmentation to the
/// point algebra with the functional that reads off the marker coefficient.
pub fn scalar_counit<E: Ord + Clone + std::fmt::Debug>(c: &Chain<CyclicForm<E>>) -> Q {
    let mut out = Q::zero();
    for (f, q) in c.iter() {
        if f.kind == Kind::Lead && f.degree() == 0 {
            out += q;
        }
    }
    out
}

/// Chern character of the idempotent point, truncated at degree `2m`:
/// degree 0 term the point itself, degree 2k term
/// `(-1)^k (2k)!/k! (e - 1/2)(de)^{2k}`. Closed under `b + B` up to the
/// guard degree `2m + 1`.
pub fn chern_point(m: usize) -> Chain<CyclicForm<()>> {
    let mut out = Chain::generator(CyclicForm::lead(vec![()]));
    let mut coef = qi(1);
    for k in 1..=m {
        // (2k)!/k! with alternating sign
        coef = -coef * qi((2 * k as i64 - 1) * 2 * k as i64) / qi(k as i64);
        out.add_term(CyclicForm::lead(vec![(); 2 * k + 1]), coef.clone());
        out.add_term(CyclicForm::nolead(vec![(); 2 * k]), -coef.clone() * qq(1, 2));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{hochschild, total_diff, GroupRingOf, PointAlgebra};

    fn z(n: i64) -> Elem {
        Elem::Lattice(vec![n])
    }

    #[test]
    fn roundtrip_is_identity() {
        let f = CyclicForm::lead(vec![z(1), z(4)]);
        assert_eq!(from_crossed(&to_crossed(&f)), f);
    }

    #[test]
    fn descent_matches_the_defining_example() {
        // v = 1, g0 = 0, g1 = 3 over Z: u_v<0>d<3> -> t^{-2} d t^{3}
        let model = GroupModel::lattice(1);
        let d = class_descent(&model, &z(1), &CyclicForm::lead(vec![z(0), z(3)]));
        assert_eq!(d, CyclicForm::lead(vec![z(-2), z(3)]));
    }

    #[test]
    fn descent_kills_the_diagonal_action_and_lands_in_the_class() {
        let g = crate::group::finite::builtin_s3();
        let model = GroupModel::Finite(g);
        let v = model.parse_elem("b").unwrap(); // a transposition
        let r = model.parse_elem("a").unwrap();
        let f = CyclicForm::lead(vec![r.clone(), model.mul(&r, &r), v.clone()]);
        let d0 = class_descent(&model, &v, &f);
        // invariance under left translation by centralizer elements
        for zc in model.centralizer_sample(&v, 3) {
            let tf = translate_form(&model, &zc, &f);
            assert_eq!(class_descent(&model, &v, &tf), d0);
        }
        // the image lies in the class component of v
        assert_eq!(
            crate::cyclic::class_of_form(&model, &d0),
            model.class_rep(&v)
        );
    }

    #[test]
    fn descent_is_a_chain_map() {
        let g = crate::group::finite::builtin_s3();
        let model = GroupModel::Finite(g);
        let v = model.parse_elem("b").unwrap();
        let crossed = CrossedStandard::new(&model, v.clone());
        let ring = GroupRingOf { model: &model };
        let r = model.parse_elem("a").unwrap();
        let forms = vec![
            CyclicForm::lead(vec![r.clone()]),
            CyclicForm::lead(vec![r.clone(), v.clone()]),
            CyclicForm::lead(vec![v.clone(), r.clone(), model.identity()]),
            CyclicForm::nolead(vec![r.clone(), v.clone()]),
        ];
        for f in forms {
            let c = Chain::generator(crossed.canonical(f.clone()));
            let lhs = class_descent_chain(&model, &v, &total_diff(&crossed, &c));
            let rhs = total_diff(&ring, &class_descent_chain(&model, &v, &c));
            assert_eq!(lhs, rhs, "p_v chain map on {f:?}");
        }
    }

    #[test]
    fn averaging_then_descending_is_unchanged() {
        // p_v is constant on U-orbits, so averaging first changes nothing
        let gq = crate::group::finite::builtin_z2xz2();
        let model = GroupModel::Finite(gq);
        let v = model.parse_elem("a").unwrap();
        let x = model.parse_elem("b").unwrap();
        let f = CyclicForm::lead(vec![x.clone(), v.clone()]);
        let c = Chain::generator(f);
        let avg = u_average(&model, &v, &c);
        assert_eq!(
            class_descent_chain(&model, &v, &avg),
            class_descent_chain(&model, &v, &c)
        );
    }

    #[test]
    fn counit_splits_scalars() {
        let c = chern_point(2);
        assert_eq!(scalar_counit(&c), qi(1));
        // vanishes on positive degree
        let f: Chain<CyclicForm<()>> = Chain::generator(CyclicForm::lead(vec![(); 3]));
        assert_eq!(scalar_counit(&f), qi(0));
    }

    #[test]
    fn counit_is_a_cocycle_in_degree_one() {
        // counit(b(degree-1 led form)) = 0
        let model = GroupModel::lattice(1);
        let alg = crate::cyclic::StandardOf { model: &model };
        let f = CyclicForm::lead(vec![z(2), z(5)]);
        let b = hochschild(&alg, &f);
        assert_eq!(scalar_counit(&b), qi(0));
    }

    #[test]
    fn chern_is_closed_up_to_the_guard() {
        let m = 3;
        let ch = chern_point(m);
        let d = total_diff(&PointAlgebra, &ch);
        // all terms of degree <= 2m vanish; only the top spill remains
        for (f, q) in d.iter() {
            assert!(
                f.degree() > 2 * m,
                "unexpected low-degree term {f:?} with {q}"
            );
        }
        assert_eq!(scalar_counit(&ch), qi(1));
    }
}

//! Noncommutative differential forms over group rings, standard algebras and
//! their crossed products, with the Hochschild and Connes operators.
//!
//! A form either carries a leading algebra entry (`a0 da1 ... dan`) or not
//! (`da1 ... dan`). Crossed-product forms relative to the group ring of the
//! cyclic subgroup U are written in the coordinates that put the single
//! `u_v` marker in front; the residual relation is simultaneous translation
//! of all entries by U, handled by a canonical orbit representative.

pub mod crossed;
pub mod hcyc;
pub mod standard;

use std::fmt::Debug;

use crate::chain::Chain;
use crate::group::{Elem, GroupModel};
use crate::num::{qi, Q};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Kind {
    /// `a0 da1 ... dan`
    Lead,
    /// `da1 ... dan`
    NoLead,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct CyclicForm<E: Ord + Clone> {
    pub kind: Kind,
    pub entries: Vec<E>,
}

impl<E: Ord + Clone + Debug> CyclicForm<E> {
    pub fn lead(entries: Vec<E>) -> Self {
        assert!(!entries.is_empty());
        CyclicForm { kind: Kind::Lead, entries }
    }

    pub fn nolead(entries: Vec<E>) -> Self {
        assert!(!entries.is_empty());
        CyclicForm { kind: Kind::NoLead, entries }
    }

    pub fn degree(&self) -> usize {
        match self.kind {
            Kind::Lead => self.entries.len() - 1,
            Kind::NoLead => self.entries.len(),
        }
    }
}

/// The multiplicative structure a family of forms lives over: how adjacent
/// entries merge under the Hochschild boundary and how the distinguished
/// group element twists entries wrapped around the cyclic edge.
pub trait FormAlgebra {
    type E: Ord + Clone + Debug;

    /// Product of two basis entries (both algebras used here send products
    /// of basis vectors to basis vectors).
    fn merge(&self, a: &Self::E, b: &Self::E) -> Self::E;

    /// Left action of the crossed marker `v`; identity on plain algebras.
    fn twist(&self, a: &Self::E) -> Self::E;

    /// Left action of `v^{-1}`.
    fn untwist(&self, a: &Self::E) -> Self::E;

    /// Orbit representative under the simultaneous-translation relation of
    /// the crossed coordinates; identity on plain algebras.
    fn canonical(&self, f: CyclicForm<Self::E>) -> CyclicForm<Self::E>;
}

/// Hochschild boundary in the chosen algebra. Degree 0 maps to zero.
pub fn hochschild<A: FormAlgebra>(
    alg: &A,
    f: &CyclicForm<A::E>,
) -> Chain<CyclicForm<A::E>> {
    let mut out = Chain::zero();
    let es = &f.entries;
    match f.kind {
        Kind::Lead => {
            let n = f.degree();
            if n == 0 {
                return out;
            }
            for i in 0..n {
                // merge slot i into slot i+1 (slot 0 is the lead)
                let mut v = Vec::with_capacity(es.len() - 1);
                v.extend_from_slice(&es[..i]);
                v.push(alg.merge(&es[i], &es[i + 1]));
                v.extend_from_slice(&es[i + 2..]);
                let sign = qi(if i % 2 == 0 { 1 } else { -1 });
                out.add_term(alg.canonical(CyclicForm::lead(v)), sign);
            }
            // wrap: a_n a_0, with the marker twist passing through a_n
            let mut v = Vec::with_capacity(es.len() - 1);
            v.push(alg.merge(&alg.untwist(&es[n]), &es[0]));
            v.extend_from_slice(&es[1..n]);
            let sign = qi(if n % 2 == 0 { 1 } else { -1 });
            out.add_term(alg.canonical(CyclicForm::lead(v)), sign);
        }
        Kind::NoLead => {
            let n = f.degree();
            // first entry becomes the lead
            out.add_term(
                alg.canonical(CyclicForm::lead(es.clone())),
                qi(1),
            );
            for i in 0..(n - 1) {
                let mut v = Vec::with_capacity(es.len() - 1);
                v.extend_from_slice(&es[..i]);
                v.push(alg.merge(&es[i], &es[i + 1]));
                v.extend_from_slice(&es[i + 2..]);
                let sign = qi(if i % 2 == 0 { -1 } else { 1 }); // (-1)^{i+1}
                out.add_term(alg.canonical(CyclicForm::nolead(v)), sign);
            }
            // wrap: a_n multiplies the external unit in front
            let mut v = Vec::with_capacity(es.len());
            v.push(alg.untwist(&es[n - 1]));
            v.extend_from_slice(&es[..n - 1]);
            let sign = qi(if n % 2 == 0 { 1 } else { -1 });
            out.add_term(alg.canonical(CyclicForm::lead(v)), sign);
        }
    }
    out
}

/// Connes operator: cyclic spread of a led form into `d`-forms, zero on
/// forms without a lead. On degree 0 it is `a0 -> d a0`.
pub fn connes<A: FormAlgebra>(alg: &A, f: &CyclicForm<A::E>) -> Chain<CyclicForm<A::E>> {
    let mut out = Chain::zero();
    if f.kind == Kind::NoLead {
        return out;
    }
    let n = f.degree();
    let es = &f.entries;
    for i in 0..=n {
        // d a_i ... d a_n d(v.a_0) ... d(v.a_{i-1})
        let mut v = Vec::with_capacity(es.len());
        v.extend_from_slice(&es[i..]);
        for e in &es[..i] {
            v.push(alg.twist(e));
        }
        let sign = qi(if (n * i) % 2 == 0 { 1 } else { -1 });
        out.add_term(alg.canonical(CyclicForm::nolead(v)), sign);
    }
    out
}

/// Total differential `b + B` of the two-periodic complex.
pub fn total_diff<A: FormAlgebra>(
    alg: &A,
    c: &Chain<CyclicForm<A::E>>,
) -> Chain<CyclicForm<A::E>> {
    let mut out = c.map_linear(|f| hochschild(alg, f));
    out.add(&c.map_linear(|f| connes(alg, f)));
    out
}

/// The standard algebra on the elements of a group: `x y = y`.
pub struct StandardOf<'g> {
    pub model: &'g GroupModel,
}

impl FormAlgebra for StandardOf<'_> {
    type E = Elem;
    fn merge(&self, _a: &Elem, b: &Elem) -> Elem {
        b.clone()
    }
    fn twist(&self, a: &Elem) -> Elem {
        a.clone()
    }
    fn untwist(&self, a: &Elem) -> Elem {
        a.clone()
    }
    fn canonical(&self, f: CyclicForm<Elem>) -> CyclicForm<Elem> {
        f
    }
}

/// The group ring with its group multiplication.
pub struct GroupRingOf<'g> {
    pub model: &'g GroupModel,
}

impl FormAlgebra for GroupRingOf<'_> {
    type E = Elem;
    fn merge(&self, a: &Elem, b: &Elem) -> Elem {
        self.model.mul(a, b)
    }
    fn twist(&self, a: &Elem) -> Elem {
        a.clone()
    }
    fn untwist(&self, a: &Elem) -> Elem {
        a.clone()
    }
    fn canonical(&self, f: CyclicForm<Elem>) -> CyclicForm<Elem> {
        f
    }
}

/// Crossed product of the standard algebra by the cyclic subgroup generated
/// by `v`, component of the marker `u_v`, in the coordinates with the marker
/// in front. Entries translate simultaneously under U; `canonical` selects
/// the shortlex-least translate.
pub struct CrossedStandard<'g> {
    pub model: &'g GroupModel,
    pub v: Elem,
}

impl<'g> CrossedStandard<'g> {
    pub fn new(model: &'g GroupModel, v: Elem) -> Self {
        CrossedStandard { model, v }
    }

    fn translate(&self, f: &CyclicForm<Elem>, w: &Elem) -> CyclicForm<Elem> {
        CyclicForm {
            kind: f.kind,
            entries: f.entries.iter().map(|e| self.model.mul(w, e)).collect(),
        }
    }

    fn tuple_key(&self, f: &CyclicForm<Elem>) -> Vec<(u64, Vec<i64>)> {
        f.entries.iter().map(|e| self.model.shortlex_key(e)).collect()
    }
}

impl FormAlgebra for CrossedStandard<'_> {
    type E = Elem;
    fn merge(&self, _a: &Elem, b: &Elem) -> Elem {
        b.clone()
    }
    fn twist(&self, a: &Elem) -> Elem {
        self.model.mul(&self.v, a)
    }
    fn untwist(&self, a: &Elem) -> Elem {
        self.model.mul(&self.model.inv(&self.v), a)
    }
    fn canonical(&self, f: CyclicForm<Elem>) -> CyclicForm<Elem> {
        match self.model.order_of(&self.v) {
            Some(1) => f,
            Some(m) => {
                let mut best = f.clone();
                let mut best_key = self.tuple_key(&f);
                let mut w = self.v.clone();
                for _ in 1..m {
                    let cand = self.translate(&f, &w);
                    let key = self.tuple_key(&cand);
                    if key < best_key {
                        best_key = key;
                        best = cand;
                    }
                    w = self.model.mul(&w, &self.v);
                }
                best
            }
            None => {
                // infinite cyclic: the minimum lives in a window determined
                // by the first entry's word length
                let (len0, _) = self.model.shortlex_key(&f.entries[0]);
                let bound = 2 * len0 as i64 + 2;
                let mut best: Option<(Vec<(u64, Vec<i64>)>, CyclicForm<Elem>)> = None;
                for k in -bound..=bound {
                    let mut w = self.model.identity();
                    let step = if k >= 0 {
                        self.v.clone()
                    } else {
                        self.model.inv(&self.v)
                    };
                    for _ in 0..k.abs() {
                        w = self.model.mul(&w, &step);
                    }
                    let cand = self.translate(&f, &w);
                    let key = self.tuple_key(&cand);
                    if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                        best = Some((key, cand));
                    }
                }
                best.unwrap().1
            }
        }
    }
}

/// Crossed product over the one-point standard algebra; entries carry no
/// information and U acts trivially.
pub struct PointAlgebra;

impl FormAlgebra for PointAlgebra {
    type E = ();
    fn merge(&self, _a: &(), _b: &()) {}
    fn twist(&self, _a: &()) {}
    fn untwist(&self, _a: &()) {}
    fn canonical(&self, f: CyclicForm<()>) -> CyclicForm<()> {
        f
    }
}

/// Crossed product of the standard algebra on the rational points of the
/// line by the integer translations, unit-marker component.
pub struct LineAlgebra;

impl FormAlgebra for LineAlgebra {
    type E = Q;
    fn merge(&self, _a: &Q, b: &Q) -> Q {
        b.clone()
    }
    fn twist(&self, a: &Q) -> Q {
        a + qi(1)
    }
    fn untwist(&self, a: &Q) -> Q {
        a - qi(1)
    }
    fn canonical(&self, f: CyclicForm<Q>) -> CyclicForm<Q> {
        // shift all coordinates so the first lies in [0, 1)
        let shift = f.entries[0].floor();
        CyclicForm {
            kind: f.kind,
            entries: f.entries.iter().map(|t| t - &shift).collect(),
        }
    }
}

/// Diagonal left translation of a plain form over group entries.
pub fn translate_form(
    model: &GroupModel,
    w: &Elem,
    f: &CyclicForm<Elem>,
) -> CyclicForm<Elem> {
    CyclicForm {
        kind: f.kind,
        entries: f.entries.iter().map(|e| model.mul(w, e)).collect(),
    }
}

/// Conjugacy class of the product of a form's entries: the label of its
/// component in the class decomposition of the group-ring complex.
pub fn class_of_form(model: &GroupModel, f: &CyclicForm<Elem>) -> Elem {
    let mut p = model.identity();
    for e in &f.entries {
        p = model.mul(&p, e);
    }
    model.class_rep(&p)
}

/// Split a group-ring chain into its class components.
pub fn decompose_by_class(
    model: &GroupModel,
    c: &Chain<CyclicForm<Elem>>,
) -> std::collections::BTreeMap<Elem, Chain<CyclicForm<Elem>>> {
    let mut out: std::collections::BTreeMap<Elem, Chain<CyclicForm<Elem>>> =
        std::collections::BTreeMap::new();
    for (f, q) in c.iter() {
        out.entry(class_of_form(model, f))
            .or_default()
            .add_term(f.clone(), q.clone());
    }
    out
}

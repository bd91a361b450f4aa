//! Algebra maps between standard algebras and the homotopies their induced
//! chain maps satisfy: the Cartan formula for a smooth family, and its
//! integrated form for the affine segment between two maps.

use itertools::Itertools;

use crate::bar::VertexMap;
use crate::chain::Chain;
use crate::cyclic::{CyclicForm, Kind};
use crate::group::Elem;
use crate::num::{binomial, qi, Q};

/// Standard-algebra product of chains: `a * b = eps(a) b`.
pub fn std_mul(a: &Chain<Elem>, b: &Chain<Elem>) -> Chain<Elem> {
    let eps: Q = a.iter().map(|(_, c)| c.clone()).sum();
    b.clone().scaled(&eps)
}

/// A linear map on vertices is a non-vanishing algebra map of standard
/// algebras exactly when it commutes with augmentations; returns a witness
/// pair violating multiplicativity otherwise.
pub fn check_std_hom(f: &VertexMap, sample: &[Elem]) -> Result<(), (Elem, Elem)> {
    for x in sample {
        let eps: Q = f.apply(x).iter().map(|(_, c)| c.clone()).sum();
        if eps != qi(1) {
            // f(x . y) = f(y) but f(x) f(y) = eps(f(x)) f(y)
            let y = sample.first().unwrap_or(x).clone();
            return Err((x.clone(), y));
        }
    }
    Ok(())
}

/// Induced map on cyclic forms: apply the vertex map to every entry.
pub fn cc_map(f: &VertexMap, form: &CyclicForm<Elem>) -> Chain<CyclicForm<Elem>> {
    let factors: Vec<Chain<Elem>> = form.entries.iter().map(|e| f.apply(e)).collect();
    expand(form.kind, &factors)
}

fn expand(kind: Kind, factors: &[Chain<Elem>]) -> Chain<CyclicForm<Elem>> {
    let mut acc: Vec<(Vec<Elem>, Q)> = vec![(vec![], qi(1))];
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
    acc.into_iter()
        .map(|(v, c)| (CyclicForm { kind, entries: v }, c))
        .collect()
}

/// The affine family `(1-t) phi + t psi` of algebra maps.
pub struct AffineFamily<'a> {
    pub phi: &'a VertexMap<'a>,
    pub psi: &'a VertexMap<'a>,
}

impl AffineFamily<'_> {
    pub fn at(&self, t: &Q, x: &Elem) -> Chain<Elem> {
        let one_minus = qi(1) - t;
        self.phi
            .apply(x)
            .scaled(&one_minus)
            .plus(&self.psi.apply(x).scaled(t))
    }

    /// Velocity of the family: `psi - phi`, independent of `t`.
    pub fn velocity(&self, x: &Elem) -> Chain<Elem> {
        self.psi.apply(x).minus(&self.phi.apply(x))
    }

    /// `d/dt CC(F_t)` at `t`: slot-wise replacement by the velocity.
    pub fn cc_derivative(&self, t: &Q, form: &CyclicForm<Elem>) -> Chain<CyclicForm<Elem>> {
        let mut out = Chain::zero();
        for slot in 0..form.entries.len() {
            let factors: Vec<Chain<Elem>> = form
                .entries
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    if j == slot {
                        self.velocity(e)
                    } else {
                        self.at(t, e)
                    }
                })
                .collect();
            out.add(&expand(form.kind, &factors));
        }
        out
    }

    /// Degree-lowering Cartan operator at `t`. Vanishes on led forms over a
    /// standard algebra (the leading product carries the augmentation of the
    /// velocity, which is 0).
    pub fn cartan_lower(&self, t: &Q, form: &CyclicForm<Elem>) -> Chain<CyclicForm<Elem>> {
        let n = form.degree();
        if n == 0 {
            return Chain::zero();
        }
        let es = &form.entries;
        let sign = qi(if (n - 1) % 2 == 0 { 1 } else { -1 });
        match form.kind {
            Kind::Lead => {
                // lead = velocity(a_n) * F(a_0), a standard product
                let lead = std_mul(&self.velocity(&es[n]), &self.at(t, &es[0]));
                let mut factors = vec![lead];
                for e in &es[1..n] {
                    factors.push(self.at(t, e));
                }
                expand(Kind::Lead, &factors).scaled(&sign)
            }
            Kind::NoLead => {
                // external unit lead: velocity(a_n) becomes the lead entry
                let mut factors = vec![self.velocity(&es[n - 1])];
                for e in &es[..n - 1] {
                    factors.push(self.at(t, e));
                }
                expand(Kind::Lead, &factors).scaled(&sign)
            }
        }
    }

    /// Degree-raising Cartan operator at `t`; zero on `d`-forms (their
    /// external unit enters a differential slot).
    pub fn cartan_raise(&self, t: &Q, form: &CyclicForm<Elem>) -> Chain<CyclicForm<Elem>> {
        if form.kind == Kind::NoLead {
            return Chain::zero();
        }
        let n = form.degree();
        let es = &form.entries;
        let mut out = Chain::zero();
        for i in 1..=n {
            for j in i..=n {
                let sign = qi(if (i * n + 1) % 2 == 0 { 1 } else { -1 });
                // d F(a_i) .. d F(a_{j-1}) d V(a_j) d F(a_{j+1}) .. d F(a_n)
                // d F(a_0) .. d F(a_{i-1})
                let mut factors = vec![];
                for k in i..=n {
                    if k == j {
                        factors.push(self.velocity(&es[k]));
                    } else {
                        factors.push(self.at(t, &es[k]));
                    }
                }
                for e in &es[..i] {
                    factors.push(self.at(t, e));
                }
                out.add_scaled(&expand(Kind::NoLead, &factors), &sign);
            }
        }
        out
    }
}

/// Integrated homotopy between the chain maps of two standard-algebra maps:
/// the degree-lowering part, supported on `d`-forms.
pub fn integrated_lower(
    f: &VertexMap,
    g: &VertexMap,
    form: &CyclicForm<Elem>,
) -> Chain<CyclicForm<Elem>> {
    if form.kind == Kind::Lead {
        return Chain::zero();
    }
    let n = form.degree();
    let es = &form.entries;
    let velocity = |x: &Elem| g.apply(x).minus(&f.apply(x));
    let outer = qi(if (n - 1) % 2 == 0 { 1 } else { -1 }) / qi(n as i64);
    let mut out = Chain::zero();
    // subsets of the middle indices 1..n-1 (entry slots 0..n-2 here)
    for k in 0..n {
        let weight = &outer * binomial(n - 1, k).recip();
        for subset in (0..n - 1).combinations(k) {
            let mut factors = vec![velocity(&es[n - 1])];
            for (slot, e) in es[..n - 1].iter().enumerate() {
                if subset.contains(&slot) {
                    factors.push(f.apply(e));
                } else {
                    factors.push(g.apply(e));
                }
            }
            out.add_scaled(&expand(Kind::Lead, &factors), &weight);
        }
    }
    out
}

/// Integrated homotopy, degree-raising part, supported on led forms.
pub fn integrated_raise(
    f: &VertexMap,
    g: &VertexMap,
    form: &CyclicForm<Elem>,
) -> Chain<CyclicForm<Elem>> {
    if form.kind == Kind::NoLead {
        return Chain::zero();
    }
    let n = form.degree();
    let es = &form.entries;
    let velocity = |x: &Elem| g.apply(x).minus(&f.apply(x));
    let mut out = Chain::zero();
    for i in 1..=n {
        for j in i..=n {
            for k in 0..=n {
                let weight = qi(if (i * n + 1) % 2 == 0 { 1 } else { -1 })
                    / qi((n + 1) as i64)
                    * binomial(n, k).recip();
                // subsets of {0..n} \ {j} of size k
                let positions: Vec<usize> = (0..=n).filter(|&p| p != j).collect();
                for subset in positions.iter().cloned().combinations(k) {
                    let pick = |p: usize| -> Chain<Elem> {
                        if p == j {
                            velocity(&es[p])
                        } else if subset.contains(&p) {
                            f.apply(&es[p])
                        } else {
                            g.apply(&es[p])
                        }
                    };
                    let mut factors = vec![];
                    for p in i..=n {
                        factors.push(pick(p));
                    }
                    for p in 0..i {
                        factors.push(pick(p));
                    }
                    out.add_scaled(&expand(Kind::NoLead, &factors), &weight);
                }
            }
        }
    }
    out
}

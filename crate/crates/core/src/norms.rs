//! Weight of cyclic forms relative to a reference element, the graded
//! weighted norms built from it, and the empirical operator-norm probes.
//!
//! Norms are exact rationals whenever the weight is an integer and the
//! growth base is rational; Euclidean weights fall back to floating point
//! (reports only — nothing exact ever consumes these values).

use std::fmt::Debug;

use num_traits::{Signed, Zero};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bar::BarSimplex;
use crate::chain::Chain;
use crate::cyclic::{CyclicForm, Kind};
use crate::group::{Elem, GroupModel};
use crate::metric::{Dist, DistSum};
use crate::num::{factorial, q_to_f64, Q};

#[derive(Clone, Debug)]
pub struct NormParams {
    pub lambda: Q,
    pub big_n: Q,
    pub k: u32,
    pub l: u32,
    pub v: Elem,
}

impl NormParams {
    pub fn new(lambda: Q, big_n: Q, k: u32, l: u32, v: Elem) -> Self {
        assert!(lambda > Q::from_integer(1.into()), "lambda must exceed 1");
        assert!(big_n > Q::from_integer(1.into()), "N must exceed 1");
        NormParams { lambda, big_n, k, l, v }
    }

    pub fn describe(&self, model: &GroupModel) -> String {
        format!(
            "lambda={} N={} k={} l={} v={}",
            self.lambda,
            self.big_n,
            self.k,
            self.l,
            model.display_elem(&self.v)
        )
    }
}

/// Cyclic weight of a form: consecutive distances closed up with a twist by
/// the reference element. Invariant under left translation by the
/// centralizer of `v`.
pub fn v_weight(model: &GroupModel, form: &CyclicForm<Elem>, v: &Elem) -> DistSum {
    let es = &form.entries;
    let mut s = DistSum::zero();
    for i in 0..es.len() - 1 {
        s.add(&model.dist(&es[i], &es[i + 1]));
    }
    let close_to = match form.kind {
        Kind::Lead => &es[0],
        Kind::NoLead => &es[0],
    };
    s.add(&model.dist(es.last().unwrap(), &model.mul(v, close_to)));
    s
}

/// An exact-or-float norm value.
#[derive(Clone, Debug, PartialEq)]
pub enum NormValue {
    Exact(Q),
    Approx(f64),
}

impl NormValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            NormValue::Exact(q) => q_to_f64(q),
            NormValue::Approx(x) => *x,
        }
    }

    fn add(&self, other: &NormValue) -> NormValue {
        match (self, other) {
            (NormValue::Exact(a), NormValue::Exact(b)) => NormValue::Exact(a + b),
            _ => NormValue::Approx(self.to_f64() + other.to_f64()),
        }
    }

    fn scale_q(&self, c: &Q) -> NormValue {
        match self {
            NormValue::Exact(a) => NormValue::Exact(a * c),
            NormValue::Approx(x) => NormValue::Approx(x * q_to_f64(c)),
        }
    }
}

fn lambda_pow(lambda: &Q, w: &DistSum) -> NormValue {
    match w.as_integer() {
        Some(e) => NormValue::Exact(lambda.pow(e as i32)),
        None => NormValue::Approx(q_to_f64(lambda).powf(w.to_f64())),
    }
}

/// Norm of a basis form: `(1+n)^k N^{-n} / c(n)! * lambda^{weight}` with
/// `c(2n) = c(2n+1) = n`.
pub fn basis_norm(model: &GroupModel, p: &NormParams, form: &CyclicForm<Elem>) -> NormValue {
    let n = form.degree();
    let poly = Q::from_integer(((1 + n) as i64).into()).pow(p.k as i32);
    let geom = p.big_n.pow(n as i32).recip();
    let c_fact = factorial(n / 2).recip();
    let rational = poly * geom * c_fact;
    lambda_pow(&p.lambda, &v_weight(model, form, &p.v)).scale_q(&rational)
}

/// Weighted l^1 norm of a chain: the largest norm that takes the prescribed
/// values on basis forms.
pub fn chain_norm(model: &GroupModel, p: &NormParams, c: &Chain<CyclicForm<Elem>>) -> NormValue {
    let mut acc = NormValue::Exact(Q::zero());
    for (f, q) in c.iter() {
        let t = basis_norm(model, p, f).scale_q(&q.abs());
        acc = acc.add(&t);
    }
    acc
}

fn support_distance(model: &GroupModel, a: &BarSimplex, w: &CyclicForm<Elem>) -> Dist {
    let mut best: Option<Dist> = None;
    for x in a.support() {
        for y in &w.entries {
            let d = model.dist(x, y);
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.unwrap_or_else(Dist::zero)
}

/// Tensor norm on a mixed generator: the cyclic-factor norm scaled by
/// `(1 + d(supports) + weight)^l`.
pub fn mixed_basis_norm(
    model: &GroupModel,
    p: &NormParams,
    bar: &BarSimplex,
    form: &CyclicForm<Elem>,
) -> NormValue {
    let base = basis_norm(model, p, form);
    if p.l == 0 {
        return base;
    }
    let mut s = DistSum::zero();
    s.add(&Dist::from_q(Q::from_integer(1.into())));
    s.add(&support_distance(model, bar, form));
    let w = v_weight(model, form, &p.v);
    s.rat += &w.rat;
    for r in &w.roots {
        s.roots.push(r.clone());
    }
    match s.as_exact() {
        Some(q) => base.scale_q(&q.pow(p.l as i32)),
        None => NormValue::Approx(base.to_f64() * s.to_f64().powi(p.l as i32)),
    }
}

/// Outcome of an operator-norm probe.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub operator: String,
    pub params: String,
    pub samples: usize,
    pub observed_sup: f64,
    pub witness: String,
    pub skipped_zero_inputs: usize,
}

/// Sample basis elements, compare output and input norms, report the
/// observed supremum with its witness. Inputs of zero norm are skipped.
pub fn operator_norm_probe<T: Debug>(
    operator: &str,
    params: &str,
    mut sampler: impl FnMut(&mut ChaCha8Rng) -> T,
    in_norm: impl Fn(&T) -> f64,
    out_norm: impl Fn(&T) -> f64,
    count: usize,
    seed: u64,
) -> ProbeReport {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sup = 0.0f64;
    let mut witness = String::new();
    let mut skipped = 0usize;
    for _ in 0..count {
        let x = sampler(&mut rng);
        let denom = in_norm(&x);
        if denom == 0.0 {
            skipped += 1;
            continue;
        }
        let ratio = out_norm(&x) / denom;
        if ratio > sup {
            sup = ratio;
            witness = format!("{x:?}");
        }
    }
    ProbeReport {
        operator: operator.to_string(),
        params: params.to_string(),
        samples: count,
        observed_sup: sup,
        witness,
        skipped_zero_inputs: skipped,
    }
}

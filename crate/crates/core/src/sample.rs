//! Seeded, reproducible samplers for the identity suites. All randomness in
//! the crate flows through these; the same seed gives the same stream on
//! every platform.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::BarSimplex;
use crate::cyclic::{CyclicForm, Kind};
use crate::group::{Elem, GroupModel};
use crate::metric::Dist;
use crate::num::qi;

pub struct Sampler {
    pub rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.random_range(0..items.len())]
    }

    /// Uniform element of the ball of the given radius around the identity.
    pub fn elem(&mut self, model: &GroupModel, radius: i64) -> Elem {
        let ball = model.ball(&model.identity(), &Dist::from_q(qi(radius)));
        ball[self.rng.random_range(0..ball.len())].clone()
    }

    pub fn elems(&mut self, model: &GroupModel, radius: i64, count: usize) -> Vec<Elem> {
        let ball = model.ball(&model.identity(), &Dist::from_q(qi(radius)));
        (0..count)
            .map(|_| ball[self.rng.random_range(0..ball.len())].clone())
            .collect()
    }

    /// Random cyclic form of degree up to `max_degree`.
    pub fn form(
        &mut self,
        model: &GroupModel,
        radius: i64,
        max_degree: usize,
        allow_unled: bool,
    ) -> CyclicForm<Elem> {
        let kind = if allow_unled && self.rng.random_range(0..2) == 0 {
            Kind::NoLead
        } else {
            Kind::Lead
        };
        let degree = match kind {
            Kind::Lead => self.rng.random_range(0..=max_degree),
            Kind::NoLead => self.rng.random_range(1..=max_degree.max(1)),
        };
        let len = match kind {
            Kind::Lead => degree + 1,
            Kind::NoLead => degree,
        };
        let entries = self.elems(model, radius, len);
        CyclicForm { kind, entries }
    }

    /// Random Bar simplex of the given degree.
    pub fn bar(&mut self, model: &GroupModel, radius: i64, degree: usize) -> BarSimplex {
        BarSimplex(self.elems(model, radius, degree + 1))
    }

    /// Random Bar simplex with support in the class subcomplex of `v`.
    pub fn bar_in_class(
        &mut self,
        model: &GroupModel,
        v: &Elem,
        radius: i64,
        degree: usize,
    ) -> Option<BarSimplex> {
        let pool: Vec<Elem> = model
            .ball(&model.identity(), &Dist::from_q(qi(radius)))
            .into_iter()
            .filter(|g| model.class_support_contains(v, g).unwrap_or(false))
            .collect();
        if pool.is_empty() {
            return None;
        }
        Some(BarSimplex(
            (0..=degree)
                .map(|_| pool[self.rng.random_range(0..pool.len())].clone())
                .collect(),
        ))
    }

    /// Random rational in `[-bound, bound]` with denominator up to `den`.
    pub fn rational(&mut self, bound: i64, den: i64) -> crate::num::Q {
        let d = self.rng.random_range(1..=den);
        let n = self.rng.random_range(-bound * d..=bound * d);
        crate::num::Q::new(n.into(), d.into())
    }
}

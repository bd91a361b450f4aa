//! Exact length arithmetic.
//!
//! Distances on the flat backends are square roots of rationals; word-metric
//! backends produce plain rationals. Everything that the chain machinery
//! compares (ball membership, diameter bounds, projection contraction,
//! cochain bounds) reduces to signs of expressions with at most two distinct
//! radicals, which are decided exactly by repeated squaring. No floating
//! point is involved in any decision; `to_f64` exists for reports only.

use std::cmp::Ordering;

use crate::num::{exact_sqrt, q_to_f64, Q};
use num_traits::{Signed, Zero};

/// An exact nonnegative length: either a rational or the square root of a
/// rational that is not a perfect square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dist {
    Exact(Q),
    Sqrt(Q),
}

impl Dist {
    pub fn zero() -> Self {
        Dist::Exact(Q::zero())
    }

    pub fn from_q(q: Q) -> Self {
        assert!(!q.is_negative(), "negative length");
        Dist::Exact(q)
    }

    /// Length whose square is `sq`.
    pub fn from_square(sq: Q) -> Self {
        assert!(!sq.is_negative(), "negative squared length");
        match exact_sqrt(&sq) {
            Some(r) => Dist::Exact(r),
            None => Dist::Sqrt(sq),
        }
    }

    pub fn square(&self) -> Q {
        match self {
            Dist::Exact(q) => q * q,
            Dist::Sqrt(s) => s.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Dist::Exact(q) => q.is_zero(),
            Dist::Sqrt(s) => s.is_zero(),
        }
    }

    /// Exact rational value, if the length is rational.
    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Dist::Exact(q) => Some(q),
            Dist::Sqrt(_) => None,
        }
    }

    pub fn scale(&self, c: &Q) -> Dist {
        assert!(!c.is_negative());
        match self {
            Dist::Exact(q) => Dist::Exact(q * c),
            Dist::Sqrt(s) => Dist::from_square(s * c * c),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Dist::Exact(q) => q_to_f64(q),
            Dist::Sqrt(s) => q_to_f64(s).sqrt(),
        }
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.square().cmp(&other.square())
    }
}

/// A finite sum of exact lengths: `rat + sum_i sqrt(roots[i])`.
///
/// Rational summands are folded into `rat`; radicals keep their radicand
/// (a coefficient `c` on `sqrt(r)` is stored as `sqrt(c^2 r)`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DistSum {
    pub rat: Q,
    pub roots: Vec<Q>,
}

impl DistSum {
    pub fn zero() -> Self {
        DistSum::default()
    }

    pub fn add(&mut self, d: &Dist) {
        match d {
            Dist::Exact(q) => self.rat += q,
            Dist::Sqrt(s) => self.roots.push(s.clone()),
        }
        self.roots.sort();
    }

    pub fn of(parts: &[Dist]) -> Self {
        let mut s = DistSum::zero();
        for p in parts {
            s.add(p);
        }
        s
    }

    pub fn as_exact(&self) -> Option<&Q> {
        if self.roots.is_empty() {
            Some(&self.rat)
        } else {
            None
        }
    }

    /// Exact integer value, if the sum is a nonnegative integer.
    pub fn as_integer(&self) -> Option<i64> {
        let q = self.as_exact()?;
        if q.is_integer() {
            q.to_integer().try_into().ok()
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.rat) + self.roots.iter().map(|r| q_to_f64(r).sqrt()).sum::<f64>()
    }

    /// Multisets of summands agree (the strong form of equality used for
    /// translation-invariance checks).
    pub fn same_terms(&self, other: &DistSum) -> bool {
        self.rat == other.rat && self.roots == other.roots
    }

    /// Decide `lhs <= self` exactly, for any number of radicals: the sign of
    /// `self - lhs` is determined in the multi-quadratic field.
    pub fn dominates(&self, lhs: &Dist) -> bool {
        let mut terms: Vec<(Q, Q)> = vec![(self.rat.clone(), Q::zero())];
        for r in &self.roots {
            terms.push((Q::from_integer(1.into()), r.clone()));
        }
        match lhs {
            Dist::Exact(q) => terms.push((-q.clone(), Q::zero())),
            Dist::Sqrt(s) => terms.push((-Q::from_integer(1.into()), s.clone())),
        }
        sign_radical_expr(&terms) != Ordering::Less
    }
}

/// Exact sign of `sum_i coef_i * sqrt(radicand_i)` (radicand 0 or 1 for
/// rational terms). Zero is detected exactly by square-free coordinates;
/// nonzero signs by certified interval refinement.
pub fn sign_radical_expr(terms: &[(Q, Q)]) -> Ordering {
    use num_bigint::BigInt;
    use num_traits::One;
    use std::collections::BTreeMap;

    // coordinates over square-free integer radicands
    let mut coords: BTreeMap<BigInt, Q> = BTreeMap::new();
    for (coef, rad) in terms {
        if coef.is_zero() {
            continue;
        }
        if rad.is_zero() {
            *coords.entry(BigInt::one()).or_insert_with(Q::zero) += coef;
            continue;
        }
        assert!(!rad.is_negative(), "negative radicand");
        // sqrt(a/b) = sqrt(ab) / b
        let ab = rad.numer() * rad.denom();
        let (sf, sq) = squarefree_split(&ab);
        let adjusted = coef * Q::new(sq, rad.denom().clone());
        if adjusted.is_zero() {
            continue;
        }
        let e = coords.entry(sf).or_insert_with(Q::zero);
        *e += adjusted;
    }
    coords.retain(|_, c| !c.is_zero());
    if coords.is_empty() {
        return Ordering::Equal;
    }
    // nonzero: refine rational intervals for each sqrt until the sign shows
    let mut prec: u32 = 16;
    loop {
        let mut lo = Q::zero();
        let mut hi = Q::zero();
        let scale = BigInt::one() << prec;
        for (sf, c) in &coords {
            let scaled = sf * (&scale * &scale);
            let root_lo = crate::num::isqrt(&scaled);
            let root_hi = &root_lo + 1;
            let (slo, shi) = (
                Q::new(root_lo, scale.clone()),
                Q::new(root_hi, scale.clone()),
            );
            if c.is_positive() {
                lo += c * &slo;
                hi += c * &shi;
            } else {
                lo += c * &shi;
                hi += c * &slo;
            }
        }
        if lo.is_positive() {
            return Ordering::Greater;
        }
        if hi.is_negative() {
            return Ordering::Less;
        }
        prec *= 2;
        assert!(prec <= 1 << 14, "radical sign refinement stalled");
    }
}

/// `n = sf * sq^2` with `sf` square-free.
fn squarefree_split(n: &num_bigint::BigInt) -> (num_bigint::BigInt, num_bigint::BigInt) {
    use num_bigint::BigInt;
    use num_traits::One;
    let mut sf = n.clone();
    let mut sq = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d * &d * &d <= &sf * BigInt::from(4) {
        let dd = &d * &d;
        while (&sf % &dd).is_zero() {
            sf /= &dd;
            sq *= &d;
        }
        d += 1;
        if d > BigInt::from(100_000) {
            break; // residual square factors beyond this are out of scale
        }
    }
    // final chance: the remainder itself may be a perfect square
    let r = crate::num::isqrt(&sf);
    if &r * &r == sf {
        sq *= &r;
        sf = BigInt::one();
    }
    (sf, sq)
}

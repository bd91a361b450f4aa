//! Finitely supported linear combinations with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::num::Q;

/// Sparse chain over an ordered basis-key type. Zero coefficients are never
/// stored, so equality of chains is equality of maps.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain<K: Ord + Clone> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord + Clone> Default for Chain<K> {
    fn default() -> Self {
        Chain { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(k: K) -> Self {
        let mut c = Self::zero();
        c.add_term(k, Q::from_integer(1.into()));
        c
    }

    pub fn single(k: K, coeff: Q) -> Self {
        let mut c = Self::zero();
        c.add_term(k, coeff);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, Q)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, k: K, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let v = e.get_mut();
                *v += coeff;
                if v.is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &Chain<K>) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub(&mut self, other: &Chain<K>) {
        for (k, c) in other.iter() {
            self.add_term(k.clone(), -c.clone());
        }
    }

    pub fn plus(mut self, other: &Chain<K>) -> Chain<K> {
        self.add(other);
        self
    }

    pub fn minus(mut self, other: &Chain<K>) -> Chain<K> {
        self.sub(other);
        self
    }

    pub fn scaled(mut self, c: &Q) -> Chain<K> {
        if c.is_zero() {
            return Chain::zero();
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
        self
    }

    pub fn add_scaled(&mut self, other: &Chain<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Push the chain through a linear map given on basis keys.
    pub fn map_linear<K2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Chain<K2>,
    ) -> Chain<K2> {
        let mut out = Chain::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Rename basis keys (injective maps only make sense here, but collisions
    /// just accumulate coefficients).
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Chain<K2> {
        let mut out = Chain::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// l^1 norm of the coefficient vector.
    pub fn l1(&self) -> Q {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Chain<K> {
    fn from_iter<T: IntoIterator<Item = (K, Q)>>(iter: T) -> Self {
        let mut c = Chain::zero();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

impl<K: Ord + Clone + fmt::Debug> fmt::Debug for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*{k:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{qi, qq};

    #[test]
    fn arithmetic_drops_zeros() {
        let mut c = Chain::generator("x");
        c.add_term("x", qi(-1));
        assert!(c.is_zero());
        let mut c = Chain::single("x", qq(1, 2));
        c.add_term("y", qi(2));
        let d = c.clone().scaled(&qi(2));
        assert_eq!(d.coeff(&"x"), qi(1));
        assert_eq!(d.coeff(&"y"), qi(4));
        assert_eq!(d.l1(), qi(5));
    }

    #[test]
    fn linear_maps_compose() {
        let c: Chain<&str> = [("x", qi(1)), ("y", qi(-2))].into_iter().collect();
        let image = c.map_linear(|k| match *k {
            "x" => Chain::generator(0).plus(&Chain::generator(1)),
            _ => Chain::single(1, qi(3)),
        });
        assert_eq!(image.coeff(&0), qi(1));
        assert_eq!(image.coeff(&1), qi(-5));
    }
}

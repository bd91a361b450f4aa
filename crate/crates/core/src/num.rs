//! Exact rational scalars and small combinatorial helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The coefficient field. Every chain-level identity in this crate is
/// checked over `Q`; floating point only ever appears in reporting.
pub type Q = num_rational::BigRational;

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn qq(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> Q {
    if k > n {
        return Q::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Q::new(num, den)
}

/// Integer square root of a nonnegative `BigInt` (floor).
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative");
    n.sqrt()
}

/// If `q >= 0` is a perfect square of a rational, return its square root.
pub fn exact_sqrt(q: &Q) -> Option<Q> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer();
    let den = q.denom();
    let rn = isqrt(num);
    let rd = isqrt(den);
    if &rn * &rn == *num && &rd * &rd == *den {
        Some(Q::new(rn, rd))
    } else {
        None
    }
}

/// Convert to `f64` for reports.
pub fn q_to_f64(q: &Q) -> f64 {
    let n = q.numer();
    let d = q.denom();
    // Split off the integer part to keep precision for very large values.
    let (quot, rem) = n.div_rem(d);
    let qf: f64 = quot.to_string().parse().unwrap_or(f64::NAN);
    let rf: f64 = {
        let rn: f64 = rem.to_string().parse().unwrap_or(0.0);
        let rd: f64 = d.to_string().parse().unwrap_or(1.0);
        rn / rd
    };
    qf + rf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 2), qi(10));
        assert_eq!(binomial(4, 0), qi(1));
        assert_eq!(binomial(3, 5), qi(0));
        assert_eq!(factorial(5), qi(120));
        assert_eq!(factorial(0), qi(1));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&qq(9, 4)), Some(qq(3, 2)));
        assert_eq!(exact_sqrt(&qi(2)), None);
        assert_eq!(exact_sqrt(&qi(0)), Some(qi(0)));
    }

    #[test]
    fn f64_conversion_is_close() {
        assert!((q_to_f64(&qq(1, 3)) - 0.333333333).abs() < 1e-6);
    }
}

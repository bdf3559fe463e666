//! Hyper-Catalan numbers by exact factorial arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::index::MultiIndex;

/// The hyper-Catalan number
/// `C(m) = (2m1 + 3m2 + ... + (k+1)mk)! / ((1 + m1 + 2m2 + ... + k mk)! m1! ... mk!)`.
///
/// Computed as `binom(t + w, t) * multinomial(t; m) / (w + 1)` where
/// `t = m1 + ... + mk` and `w = m1 + 2m2 + ... + k mk`, which keeps every
/// intermediate near the size of the result instead of forming three full
/// factorials. The final division is exact.
pub fn hyper_catalan(m: &MultiIndex) -> BigInt {
    let t = m.total() as u64;
    let w: u64 = m
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &mi)| (i as u64 + 1) * mi as u64)
        .sum();
    let mut acc = binomial(t + w, t);
    acc *= multinomial(m.as_slice());
    let (q, r) = acc.div_rem(&BigInt::from(w + 1));
    debug_assert!(r.is_zero(), "hyper-Catalan division must be exact");
    q
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Exact binomial coefficient `binom(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1; // exact: product of j consecutive integers is divisible by j!
    }
    acc
}

/// `(m1 + ... + mk)! / (m1! ... mk!)` as a product of binomials.
fn multinomial(m: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut prefix: u64 = 0;
    for &mi in m {
        prefix += mi as u64;
        acc *= binomial(prefix, mi as u64);
    }
    acc
}

/// The ordinary Catalan number `binom(2n, n) / (n + 1)`, used as an
/// independent cross-check for the one-variable case.
pub fn catalan(n: u64) -> BigInt {
    let (q, r) = binomial(2 * n, n).div_rem(&BigInt::from(n + 1));
    debug_assert!(r.is_zero());
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: &[u32]) -> BigInt {
        hyper_catalan(&MultiIndex::new(m.to_vec()))
    }

    /// Direct three-factorial evaluation, kept as an independent route.
    fn c_by_factorials(m: &[u32]) -> BigInt {
        let num: u64 = m.iter().enumerate().map(|(i, &mi)| (i as u64 + 2) * mi as u64).sum();
        let den1: u64 = 1 + m.iter().enumerate().map(|(i, &mi)| (i as u64 + 1) * mi as u64).sum::<u64>();
        let mut den = factorial(den1);
        for &mi in m {
            den *= factorial(mi as u64);
        }
        let (q, r) = factorial(num).div_rem(&den);
        assert!(r.is_zero());
        q
    }

    #[test]
    fn small_values() {
        assert_eq!(c(&[0, 0, 0]), BigInt::from(1));
        assert_eq!(c(&[3]), BigInt::from(5));
        assert_eq!(c(&[1, 1]), BigInt::from(5));
        assert_eq!(c(&[2, 1]), BigInt::from(21));
        assert_eq!(c(&[1, 2, 1]), BigInt::from(660));
        assert_eq!(c(&[0, 1, 2]), BigInt::from(55));
    }

    #[test]
    fn agrees_with_factorial_route() {
        for m in crate::index::compositions(7, 3) {
            assert_eq!(c(&m), c_by_factorials(&m), "at {m:?}");
        }
        assert_eq!(
            c(&[4, 7, 8]),
            "1722644698604308479000".parse().unwrap()
        );
    }

    #[test]
    fn one_variable_is_catalan() {
        for n in 0..=30 {
            assert_eq!(c(&[n]), catalan(n as u64), "C([{n}])");
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(10, 0), BigInt::one());
        assert_eq!(binomial(10, 11), BigInt::zero());
        assert_eq!(binomial(7, 2), BigInt::from(21));
    }
}

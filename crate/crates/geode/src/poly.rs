//! Sparse homogeneous multivariate polynomials and exact simplex division.
//!
//! Houses the hyper-Catalan polynomial `P(n, k)` and the Geode polynomial
//! `Q(n, k) = P(n+1, k) / (t1 + ... + tk)`. Exponent vectors are fixed-length
//! `Vec<u32>` keys; the canonical term order is graded lexicographic
//! descending (all terms of a homogeneous polynomial share the grade, so this
//! is plain lex descending).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::GeodeError;
use crate::hyper::hyper_catalan;
use crate::index::{composition_count, compositions, MultiIndex};
use crate::par;
use crate::DEFAULT_TERM_CAP;

/// A sparse homogeneous polynomial: every stored exponent vector sums to
/// `degree`, and no zero coefficient is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    degree: u32,
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl HomogeneousPoly {
    /// Build from raw terms, dropping zeros. Panics on a mis-graded exponent.
    pub fn from_terms<I>(degree: u32, num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars);
            assert_eq!(e.iter().sum::<u32>(), degree, "term {e:?} off-grade");
            if !c.is_zero() {
                map.insert(e, c);
            }
        }
        HomogeneousPoly {
            degree,
            num_vars,
            terms: map,
        }
    }

    pub fn zero(degree: u32, num_vars: usize) -> Self {
        HomogeneousPoly {
            degree,
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in graded-lex descending order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter().rev()
    }
}

/// The polynomial `P(n, k) = sum over |m| = n of C(m) t^m`, with the default
/// term budget.
pub fn build_p(n: u32, k: usize) -> Result<HomogeneousPoly, GeodeError> {
    build_p_with_cap(n, k, DEFAULT_TERM_CAP)
}

/// As [`build_p`] with an explicit term budget.
pub fn build_p_with_cap(n: u32, k: usize, cap: usize) -> Result<HomogeneousPoly, GeodeError> {
    assert!(n >= 1 && k >= 1);
    let count = composition_count(n, k);
    if count > cap as u128 {
        return Err(GeodeError::TermBudget {
            needed: count.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    let exps: Vec<Vec<u32>> = compositions(n, k).collect();
    let terms = par::map_items(exps, |e| {
        let c = hyper_catalan(&MultiIndex::new(e.clone()));
        (e, c)
    });
    Ok(HomogeneousPoly::from_terms(n, k, terms))
}

/// Exact division of a homogeneous polynomial by `t1 + ... + tk`.
///
/// The divisor is monic in `t1` under lex order, so the quotient is pinned
/// term by term in descending lex: for each degree-(n-1) exponent `u`,
/// `q[u] = p[u + e1] - sum over i >= 2 of q[u + e1 - ei]`, every index on the
/// right being lex-greater and already known. The remainder is supported on
/// the `t1`-free face and is zero exactly when `p` is divisible.
pub fn divide_by_simplex(p: &HomogeneousPoly) -> (HomogeneousPoly, HomogeneousPoly) {
    let n = p.degree;
    let k = p.num_vars;
    assert!(n >= 1, "cannot divide a degree-0 polynomial by the simplex");

    let mut quotient: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for u in compositions(n - 1, k) {
        let mut up = u.clone();
        up[0] += 1; // u + e1
        let mut c = p.coeff(&up);
        for i in 1..k {
            if u[i] == 0 {
                continue;
            }
            up[i] -= 1; // u + e1 - ei
            if let Some(q) = quotient.get(&up) {
                c -= q;
            }
            up[i] += 1;
        }
        if !c.is_zero() {
            quotient.insert(u, c);
        }
    }

    // Cancellation above zeroes every coefficient of p - q*(t1+...+tk) whose
    // exponent has t1-degree >= 1; only the t1 = 0 face can survive. For
    // k = 1 that face has no degree-n monomials at all.
    let mut rem: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for v in (k > 1).then(|| compositions(n, k - 1)).into_iter().flatten() {
        let mut full = vec![0u32; k];
        full[1..].copy_from_slice(&v);
        let mut c = p.coeff(&full);
        for i in 1..k {
            if full[i] == 0 {
                continue;
            }
            full[i] -= 1;
            if let Some(q) = quotient.get(&full) {
                c -= q;
            }
            full[i] += 1;
        }
        if !c.is_zero() {
            rem.insert(full, c);
        }
    }

    (
        HomogeneousPoly {
            degree: n - 1,
            num_vars: k,
            terms: quotient,
        },
        HomogeneousPoly {
            degree: n,
            num_vars: k,
            terms: rem,
        },
    )
}

/// The Geode polynomial `Q(n, k) = P(n+1, k) / (t1 + ... + tk)`.
///
/// Errors with [`GeodeError::NotDivisible`] if the division leaves a
/// remainder, which would signal an arithmetic bug.
pub fn geode_poly(n: u32, k: usize) -> Result<HomogeneousPoly, GeodeError> {
    geode_poly_with_cap(n, k, DEFAULT_TERM_CAP)
}

/// As [`geode_poly`] with an explicit term budget.
pub fn geode_poly_with_cap(n: u32, k: usize, cap: usize) -> Result<HomogeneousPoly, GeodeError> {
    let p = build_p_with_cap(n + 1, k, cap)?;
    let (q, r) = divide_by_simplex(&p);
    if !r.is_zero() {
        return Err(GeodeError::NotDivisible {
            degree: n + 1,
            num_vars: k,
            remainder_terms: r.term_count(),
        });
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn p_1_2_is_t1_plus_t2() {
        let p = build_p(1, 2).unwrap();
        assert_eq!(p.term_count(), 2);
        assert_eq!(p.coeff(&[1, 0]), BigInt::one());
        assert_eq!(p.coeff(&[0, 1]), BigInt::one());
    }

    #[test]
    fn p_2_1_is_2_t1_squared() {
        let p = build_p(2, 1).unwrap();
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.coeff(&[2]), BigInt::from(2));
    }

    #[test]
    fn p_5_3_term_count() {
        // stars and bars: binom(7, 2) = 21
        assert_eq!(build_p(5, 3).unwrap().term_count(), 21);
    }

    #[test]
    fn term_budget_enforced() {
        let err = build_p_with_cap(100, 4, 1000).unwrap_err();
        assert!(matches!(err, GeodeError::TermBudget { .. }));
    }

    #[test]
    fn divide_simplex_by_itself() {
        let p = build_p(1, 2).unwrap();
        let (q, r) = divide_by_simplex(&p);
        assert!(r.is_zero());
        assert_eq!(q.degree(), 0);
        assert_eq!(q.coeff(&[0, 0]), BigInt::one());
    }

    #[test]
    fn non_divisible_has_remainder() {
        // (t1 + t2) does not divide t1^2 + t2^2: substituting t2 = -t1
        // leaves 2 t1^2.
        let p = HomogeneousPoly::from_terms(
            2,
            2,
            vec![(vec![2, 0], BigInt::one()), (vec![0, 2], BigInt::one())],
        );
        let (q, r) = divide_by_simplex(&p);
        assert!(!r.is_zero());
        // p = q * (t1 + t2) + r must still hold exactly.
        let mut recon = r.clone();
        let mut terms: BTreeMap<Vec<u32>, BigInt> = recon.terms.clone();
        for (e, c) in q.iter() {
            for i in 0..2 {
                let mut f = e.clone();
                f[i] += 1;
                *terms.entry(f).or_insert_with(BigInt::zero) += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        recon.terms = terms;
        assert_eq!(recon.terms, p.terms);
    }

    #[test]
    fn geode_theorem_small_sweep() {
        for k in 2..=4usize {
            for n in 1..=9u32 {
                let p = build_p(n, k).unwrap();
                let (_, r) = divide_by_simplex(&p);
                assert!(r.is_zero(), "P({n},{k}) not divisible");
            }
        }
    }

    #[test]
    fn geode_poly_values() {
        // Q(0, 2) = 1
        let q = geode_poly(0, 2).unwrap();
        assert_eq!(q.coeff(&[0, 0]), BigInt::one());
        // coefficient of t1 t2 in Q(2, 2) is G(1,1) = 16
        let q = geode_poly(2, 2).unwrap();
        assert_eq!(q.coeff(&[1, 1]), BigInt::from(16));
        // coefficient of t1 t2 t3 in Q(3, 3) is G(1,1,1) = 319
        let q = geode_poly(3, 3).unwrap();
        assert_eq!(q.coeff(&[1, 1, 1]), BigInt::from(319));
    }

    #[test]
    fn k1_degenerate() {
        // Q(n, 1) = C(n+1) t1^n
        let q = geode_poly(4, 1).unwrap();
        assert_eq!(q.coeff(&[4]), crate::hyper::catalan(5));
    }
}

//! Definitional computation of Geode numbers.
//!
//! `G(m)` is the coefficient of `t^m` in `Q(|m|, k)`. Comparing coefficients
//! in `P = Q * (t1 + ... + tk)` gives, for every degree-n exponent `u`,
//!
//! ```text
//! G(u) = C(u + e1) - sum over i >= 2 of G(u + e1 - ei)
//! ```
//!
//! where each index on the right has a strictly larger first entry. A single
//! value therefore needs only the cone of points reachable by moving units
//! into position 1 — never the full polynomial — and a whole degree slice can
//! be filled layer by layer on the first coordinate, each layer independent
//! of its siblings.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::GeodeError;
use crate::hyper::hyper_catalan;
use crate::index::{composition_count, compositions, MultiIndex};
use crate::par;
use crate::DEFAULT_TERM_CAP;

/// A memoized table of Geode numbers keyed by multi-index.
///
/// Immutable once built; safe to share across threads.
#[derive(Debug, Clone)]
pub struct GeodeTable {
    k: usize,
    max_total: u32,
    values: HashMap<Vec<u32>, BigInt>,
}

impl GeodeTable {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest degree the table is complete up to.
    pub fn max_total(&self) -> u32 {
        self.max_total
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, m: &[u32]) -> Option<&BigInt> {
        self.values.get(m)
    }

    /// Value at `m` shifted by `-j` in coordinate `dir` (0-based); a shift
    /// below zero yields the conventional `G = 0`.
    pub fn get_shifted(&self, m: &[u32], dir: usize, j: u32) -> Option<BigInt> {
        if m[dir] < j {
            return Some(BigInt::zero());
        }
        let mut v = m.to_vec();
        v[dir] -= j;
        self.values.get(&v).cloned()
    }

    /// All points of the table in graded-lex ascending order (degree first,
    /// then ascending lex) — a canonical enumeration for reproducible runs.
    pub fn points_graded(&self) -> Vec<Vec<u32>> {
        let mut pts = Vec::with_capacity(self.values.len());
        for n in 0..=self.max_total {
            let mut slice: Vec<Vec<u32>> = compositions(n, self.k)
                .filter(|e| self.values.contains_key(e))
                .collect();
            slice.reverse(); // compositions yields lex descending
            pts.extend(slice);
        }
        pts
    }

    /// Build a table from explicit pairs (used for derived sequences such as
    /// the diagonal, which the guesser consumes through the same interface).
    pub fn from_pairs<I>(k: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let values: HashMap<Vec<u32>, BigInt> = pairs.into_iter().collect();
        let max_total = values
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0);
        GeodeTable {
            k,
            max_total,
            values,
        }
    }
}

/// Size of the dependency cone of a single oracle query: moving units into
/// position 1 can only decrease the remaining coordinates, so the cone has at
/// most `prod over i >= 2 of (m_i + 1)` points.
fn cone_bound(m: &[u32]) -> u128 {
    m[1..].iter().map(|&x| x as u128 + 1).product()
}

/// A single Geode number straight from the definition, with the default term
/// budget.
pub fn geode_number_oracle(m: &MultiIndex) -> Result<BigInt, GeodeError> {
    geode_number_oracle_with_cap(m, DEFAULT_TERM_CAP)
}

/// As [`geode_number_oracle`] with an explicit term budget.
///
/// Runs the quotient recurrence over the dependency cone of `m` only,
/// memoizing on demand; the full polynomial `P(|m|+1, k)` is never formed.
pub fn geode_number_oracle_with_cap(m: &MultiIndex, cap: usize) -> Result<BigInt, GeodeError> {
    let bound = cone_bound(m.as_slice());
    if bound > cap as u128 {
        return Err(GeodeError::TermBudget {
            needed: bound.min(usize::MAX as u128) as usize,
            cap,
        });
    }

    let k = m.k();
    let mut memo: HashMap<Vec<u32>, BigInt> = HashMap::new();
    // Explicit work stack: recursion depth grows with the first coordinate
    // and large queries would overflow the call stack.
    let mut stack: Vec<Vec<u32>> = vec![m.as_slice().to_vec()];
    while let Some(u) = stack.last().cloned() {
        if memo.contains_key(&u) {
            stack.pop();
            continue;
        }
        let mut missing = false;
        let mut dep = u.clone();
        dep[0] += 1;
        for i in 1..k {
            if u[i] == 0 {
                continue;
            }
            dep[i] -= 1;
            if !memo.contains_key(&dep) {
                stack.push(dep.clone());
                missing = true;
            }
            dep[i] += 1;
        }
        if missing {
            continue;
        }
        let mut val = {
            let mut c_arg = u.clone();
            c_arg[0] += 1;
            hyper_catalan(&MultiIndex::new(c_arg))
        };
        for i in 1..k {
            if u[i] == 0 {
                continue;
            }
            dep[i] -= 1;
            val -= &memo[&dep];
            dep[i] += 1;
        }
        memo.insert(u, val);
        stack.pop();
    }
    Ok(memo.remove(m.as_slice()).expect("root was computed"))
}

/// Every Geode number with `total(m) <= n_max`, default term budget.
pub fn geode_table(n_max: u32, k: usize) -> Result<GeodeTable, GeodeError> {
    geode_table_with_cap(n_max, k, DEFAULT_TERM_CAP)
}

/// As [`geode_table`] with an explicit term budget.
pub fn geode_table_with_cap(n_max: u32, k: usize, cap: usize) -> Result<GeodeTable, GeodeError> {
    build_table(n_max, k, cap, false)
}

/// Sequential twin of [`geode_table_with_cap`], bypassing the rayon pool
/// regardless of features. Exists so benchmarks can compare both paths.
#[doc(hidden)]
pub fn geode_table_with_cap_seq(n_max: u32, k: usize, cap: usize) -> Result<GeodeTable, GeodeError> {
    build_table(n_max, k, cap, true)
}

fn build_table(n_max: u32, k: usize, cap: usize, force_seq: bool) -> Result<GeodeTable, GeodeError> {
    assert!(k >= 1);
    let total: u128 = (0..=n_max).map(|n| composition_count(n, k)).sum();
    if total > cap as u128 {
        return Err(GeodeError::TermBudget {
            needed: total.min(usize::MAX as u128) as usize,
            cap,
        });
    }

    let mut values: HashMap<Vec<u32>, BigInt> = HashMap::with_capacity(total as usize);
    for n in 0..=n_max {
        // Fill the degree-n slice layer by layer on the first coordinate,
        // descending: points with m1 = c depend only on points with m1 = c+1.
        for c in (0..=n).rev() {
            let layer: Vec<Vec<u32>> = if k == 1 {
                if c == n {
                    vec![vec![n]]
                } else {
                    vec![]
                }
            } else {
                compositions(n - c, k - 1)
                    .map(|rest| {
                        let mut e = Vec::with_capacity(k);
                        e.push(c);
                        e.extend_from_slice(&rest);
                        e
                    })
                    .collect()
            };
            let compute = |u: Vec<u32>| {
                let mut c_arg = u.clone();
                c_arg[0] += 1;
                let mut val = hyper_catalan(&MultiIndex::new(c_arg));
                let mut dep = u.clone();
                dep[0] += 1;
                for i in 1..k {
                    if u[i] == 0 {
                        continue;
                    }
                    dep[i] -= 1;
                    val -= &values[&dep];
                    dep[i] += 1;
                }
                (u, val)
            };
            let computed = if force_seq {
                par::map_items_seq(layer, compute)
            } else {
                par::map_items(layer, compute)
            };
            values.extend(computed);
        }
    }
    Ok(GeodeTable {
        k,
        max_total: n_max,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(m: &[u32]) -> BigInt {
        geode_number_oracle(&MultiIndex::new(m.to_vec())).unwrap()
    }

    #[test]
    fn paper_anchor_values() {
        assert_eq!(g(&[1, 1]), BigInt::from(16));
        assert_eq!(g(&[1, 1, 1]), BigInt::from(319));
        assert_eq!(g(&[2, 2, 2]), BigInt::from(669123));
        assert_eq!(
            g(&[4, 7, 8]),
            "11258614474275030033600".parse().unwrap()
        );
    }

    #[test]
    fn two_dimensional_slice() {
        // Frozen from an independent polynomial-division computation.
        let expected: [(&[u32], u64); 10] = [
            (&[0, 0], 1),
            (&[1, 0], 2),
            (&[0, 1], 3),
            (&[2, 0], 5),
            (&[0, 2], 12),
            (&[2, 1], 70),
            (&[1, 2], 110),
            (&[3, 2], 3850),
            (&[4, 1], 1155),
            (&[0, 4], 273),
        ];
        for (m, v) in expected {
            assert_eq!(g(m), BigInt::from(v), "G({m:?})");
        }
    }

    #[test]
    fn three_dimensional_points() {
        let expected: [(&[u32], u64); 7] = [
            (&[1, 0, 0], 2),
            (&[0, 1, 0], 3),
            (&[0, 0, 1], 4),
            (&[1, 0, 1], 23),
            (&[1, 1, 2], 4522),
            (&[2, 2, 1], 27840),
            (&[0, 0, 6], 53820),
        ];
        for (m, v) in expected {
            assert_eq!(g(m), BigInt::from(v), "G({m:?})");
        }
    }

    #[test]
    fn four_dimensional_point() {
        assert_eq!(g(&[1, 1, 1, 1]), BigInt::from(12344));
        assert_eq!(g(&[1, 2, 0, 1]), BigInt::from(4445));
    }

    #[test]
    fn oracle_matches_materialized_polynomial() {
        // Two independent code paths: cone recurrence vs full expansion
        // followed by simplex division.
        for k in 1..=3usize {
            for n in 0..=8u32 {
                let q = crate::poly::geode_poly(n, k).unwrap();
                for m in compositions(n, k) {
                    assert_eq!(
                        g(&m),
                        q.coeff(&m),
                        "oracle vs polynomial at {m:?}, k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn table_agrees_with_single_queries() {
        let t = geode_table(8, 3).unwrap();
        assert_eq!(t.len() as u128, (0..=8).map(|n| composition_count(n, 3)).sum::<u128>());
        for m in t.points_graded() {
            assert_eq!(t.get(&m).unwrap(), &g(&m), "table vs oracle at {m:?}");
        }
    }

    #[test]
    fn table_k2_contains_unit() {
        let t = geode_table(2, 2).unwrap();
        assert_eq!(t.get(&[0, 0]).unwrap(), &BigInt::from(1));
    }

    #[test]
    fn sequential_twin_matches() {
        let a = geode_table_with_cap(6, 3, DEFAULT_TERM_CAP).unwrap();
        let b = geode_table_with_cap_seq(6, 3, DEFAULT_TERM_CAP).unwrap();
        for m in a.points_graded() {
            assert_eq!(a.get(&m), b.get(&m));
        }
    }

    #[test]
    fn cap_reported() {
        let err = geode_number_oracle_with_cap(&MultiIndex::new(vec![2, 1000, 1000]), 100_000)
            .unwrap_err();
        assert!(matches!(err, GeodeError::TermBudget { .. }));
    }

    #[test]
    fn defining_identity_small() {
        // sum over i of G(m - ei) = C(m), negative indices contributing 0.
        for k in 2..=4usize {
            let t = geode_table(9, k).unwrap();
            for m in t.points_graded() {
                if m.iter().sum::<u32>() == 0 {
                    continue;
                }
                let mut lhs = BigInt::zero();
                for i in 0..k {
                    lhs += t.get_shifted(&m, i, 1).unwrap();
                }
                assert_eq!(lhs, hyper_catalan(&MultiIndex::new(m.clone())), "identity at {m:?}");
            }
        }
    }
}

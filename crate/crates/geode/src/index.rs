//! Multi-indices: the arguments of the hyper-Catalan and Geode numbers.

use std::fmt;

/// A list of non-negative integer exponents `[m1, ..., mk]`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// Wrap an exponent list. Panics if the list is empty.
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "a multi-index needs k >= 1 entries");
        MultiIndex(exponents)
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Sum of the entries: the degree of the monomial `t^m`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The weighted sum `2*m1 + 3*m2 + ... + (k+1)*mk`.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 2) * m as u64)
            .sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// The diagonal point `(n, ..., n)` in `k` variables.
    pub fn diagonal(n: u32, k: usize) -> Self {
        MultiIndex::new(vec![n; k])
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(s: &[u32]) -> Self {
        MultiIndex::new(s.to_vec())
    }
}

/// Number of length-`k` compositions of `n`, i.e. `binom(n+k-1, k-1)`.
pub fn composition_count(n: u32, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 1..k as u128 {
        acc = acc * (n as u128 + i) / i;
    }
    acc
}

/// All length-`k` exponent vectors summing to `n`, in lexicographically
/// descending order, starting from `(n, 0, ..., 0)`.
pub fn compositions(n: u32, k: usize) -> Compositions {
    assert!(k >= 1);
    Compositions {
        next: Some({
            let mut v = vec![0u32; k];
            v[0] = n;
            v
        }),
    }
}

pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        // Successor in descending lex: find the rightmost entry before the
        // last that is positive, decrement it, and dump everything to its
        // right onto the position just after it.
        let k = current.len();
        let mut succ = current.clone();
        let mut i = k.wrapping_sub(2);
        loop {
            if i == usize::MAX {
                break; // exhausted
            }
            if succ[i] > 0 {
                succ[i] -= 1;
                let tail: u32 = succ[i + 1..].iter().sum();
                for e in succ[i + 1..].iter_mut() {
                    *e = 0;
                }
                succ[i + 1] = tail + 1;
                self.next = Some(succ);
                break;
            }
            i = i.wrapping_sub(1);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order_and_count() {
        let all: Vec<_> = compositions(3, 3).collect();
        assert_eq!(all.len(), composition_count(3, 3) as usize);
        assert_eq!(all.first().unwrap(), &vec![3, 0, 0]);
        assert_eq!(all.last().unwrap(), &vec![0, 0, 3]);
        // strictly descending lex
        for w in all.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert!(all.iter().all(|c| c.iter().sum::<u32>() == 3));
    }

    #[test]
    fn composition_k1() {
        let all: Vec<_> = compositions(5, 1).collect();
        assert_eq!(all, vec![vec![5]]);
    }

    #[test]
    fn composition_count_matches_binomial() {
        // binom(5+3-1, 2) = binom(7,2) = 21
        assert_eq!(composition_count(5, 3), 21);
        assert_eq!(composition_count(0, 4), 1);
    }

    #[test]
    fn weight_and_total() {
        let m = MultiIndex::new(vec![1, 1]);
        assert_eq!(m.total(), 2);
        assert_eq!(m.weight(), 2 + 3);
        let m = MultiIndex::new(vec![4, 7, 8]);
        assert_eq!(m.total(), 19);
        assert_eq!(m.weight(), 2 * 4 + 3 * 7 + 4 * 8);
    }
}

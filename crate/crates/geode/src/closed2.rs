//! Two-dimensional Geode numbers: closed form and first-order step ratios.
//!
//! The closed form is
//!
//! ```text
//! G(m1, m2) = (2m1+3m2+3)! / ((2m1+2m2+3)(m1+m2+1)(m1+2m2+2)! m1! m2!)
//! ```
//!
//! The second factor of the published statement is garbled (it reads
//! `m2 + m3 + 1` in a two-variable formula); `m1 + m2 + 1` is the reading
//! that matches the definitional oracle, and the tests check all candidate
//! readings against oracle data. See `g2_closed_with_factor`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GeodeError;
use crate::hyper::factorial;

/// A pair of non-negative indices `(m1, m2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pair {
    pub m1: u32,
    pub m2: u32,
}

impl Pair {
    pub fn new(m1: u32, m2: u32) -> Self {
        Pair { m1, m2 }
    }
}

/// The closed-form expression with an arbitrary second correction factor, as
/// an exact rational. Used by the typo-resolution tests: only the corrected
/// factor `m1 + m2 + 1` yields oracle values (and integers) everywhere.
pub fn g2_closed_with_factor(p: Pair, second_factor: u64) -> BigRational {
    let (m1, m2) = (p.m1 as u64, p.m2 as u64);
    let num = factorial(2 * m1 + 3 * m2 + 3);
    let mut den = factorial(m1 + 2 * m2 + 2);
    den *= factorial(m1);
    den *= factorial(m2);
    den *= BigInt::from(2 * m1 + 2 * m2 + 3);
    den *= BigInt::from(second_factor);
    BigRational::new(num, den)
}

/// The closed form `G(m1, m2)`, with the corrected `(m1 + m2 + 1)` factor.
pub fn g2_closed(p: Pair) -> BigInt {
    let q = g2_closed_with_factor(p, p.m1 as u64 + p.m2 as u64 + 1);
    debug_assert!(q.is_integer(), "closed form must be integral at {p:?}");
    q.to_integer()
}

/// The exact step ratio `G(m1, m2) / G(m1 - 1, m2)`.
///
/// Errors if `m1 = 0`: the ratio has `m1` in its denominator.
pub fn g2_step_factor_m1(p: Pair) -> Result<BigRational, GeodeError> {
    if p.m1 == 0 {
        return Err(GeodeError::Domain(
            "step ratio in m1 needs m1 >= 1".into(),
        ));
    }
    let (a, b) = (p.m1 as i128, p.m2 as i128);
    let num = (2 * a + 2 + 3 * b) * (2 * a + 3 * b + 3) * (2 * a + 1 + 2 * b) * (a + b);
    let den = a * (2 * a + 2 * b + 3) * (a + b + 1) * (a + 2 * b + 2);
    Ok(ratio_i128(num, den))
}

/// The exact step ratio `G(m1, m2) / G(m1, m2 - 1)`.
///
/// Errors if `m2 = 0`.
pub fn g2_step_factor_m2(p: Pair) -> Result<BigRational, GeodeError> {
    if p.m2 == 0 {
        return Err(GeodeError::Domain(
            "step ratio in m2 needs m2 >= 1".into(),
        ));
    }
    let (a, b) = (p.m1 as i128, p.m2 as i128);
    let num = (2 * a + 1 + 3 * b)
        * (2 * a + 2 + 3 * b)
        * (2 * a + 3 * b + 3)
        * (2 * a + 1 + 2 * b)
        * (a + b);
    let den = b * (2 * a + 2 * b + 3) * (a + b + 1) * (1 + a + 2 * b) * (a + 2 * b + 2);
    Ok(ratio_i128(num, den))
}

fn ratio_i128(num: i128, den: i128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `G(m1, m2)` by ratio iteration from `G(0,0) = 1`: up `m2` first at
/// `m1 = 0`, then up `m1` at fixed `m2`. The running value stays an integer
/// at every step; the per-step rational is reduced in machine words before
/// it ever touches the big integer, so nothing like a full factorial is
/// formed.
pub fn g2_fast(p: Pair) -> BigInt {
    let mut val = BigInt::one();
    for b in 1..=p.m2 {
        val = apply_ratio(val, g2_step_factor_m2(Pair::new(0, b)).unwrap());
    }
    for a in 1..=p.m1 {
        val = apply_ratio(val, g2_step_factor_m1(Pair::new(a, p.m2)).unwrap());
    }
    val
}

fn apply_ratio(val: BigInt, ratio: BigRational) -> BigInt {
    let num = val * ratio.numer();
    let (q, r) = num.div_rem(ratio.denom());
    debug_assert!(r.is_zero(), "2D ratio iteration left a remainder");
    debug_assert!(!q.is_negative());
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::MultiIndex;
    use crate::oracle::geode_number_oracle;

    fn oracle(m1: u32, m2: u32) -> BigInt {
        geode_number_oracle(&MultiIndex::new(vec![m1, m2])).unwrap()
    }

    #[test]
    fn closed_form_anchor_values() {
        assert_eq!(g2_closed(Pair::new(1, 1)), BigInt::from(16));
        assert_eq!(g2_closed(Pair::new(0, 0)), BigInt::from(1));
        assert_eq!(g2_closed(Pair::new(2, 1)), BigInt::from(70));
        assert_eq!(g2_closed(Pair::new(1, 0)), BigInt::from(2));
        assert_eq!(g2_closed(Pair::new(0, 1)), BigInt::from(3));
    }

    #[test]
    fn typo_resolution_against_oracle() {
        // The published second factor reads "m2 + m3 + 1" in a two-variable
        // statement. Candidate readings: drop the stray index (m2 + 1), take
        // it as m2 (2*m2 + 1), or take it as m1 (m1 + m2 + 1). Only the last
        // matches the oracle; each other reading must fail somewhere on a
        // 50-point grid.
        let mut fail_drop = 0;
        let mut fail_m2 = 0;
        for m1 in 0..10u32 {
            for m2 in 0..5u32 {
                let p = Pair::new(m1, m2);
                let g = BigRational::from_integer(oracle(m1, m2));
                if g2_closed_with_factor(p, m2 as u64 + 1) != g {
                    fail_drop += 1;
                }
                if g2_closed_with_factor(p, 2 * m2 as u64 + 1) != g {
                    fail_m2 += 1;
                }
                assert_eq!(
                    g2_closed_with_factor(p, m1 as u64 + m2 as u64 + 1),
                    g,
                    "corrected reading must match at {p:?}"
                );
            }
        }
        assert!(fail_drop > 0, "reading m3 := 0 should fail somewhere");
        assert!(fail_m2 > 0, "reading m3 := m2 should fail somewhere");
    }

    #[test]
    fn step_ratios_match_oracle() {
        for m1 in 0..=8u32 {
            for m2 in 0..=8u32 {
                if m1 >= 1 {
                    let lhs = BigRational::from_integer(oracle(m1, m2));
                    let rhs = g2_step_factor_m1(Pair::new(m1, m2)).unwrap()
                        * BigRational::from_integer(oracle(m1 - 1, m2));
                    assert_eq!(lhs, rhs, "m1-step at ({m1},{m2})");
                }
                if m2 >= 1 {
                    let lhs = BigRational::from_integer(oracle(m1, m2));
                    let rhs = g2_step_factor_m2(Pair::new(m1, m2)).unwrap()
                        * BigRational::from_integer(oracle(m1, m2 - 1));
                    assert_eq!(lhs, rhs, "m2-step at ({m1},{m2})");
                }
            }
        }
    }

    #[test]
    fn step_ratio_known_value() {
        // G(2,1)/G(1,1) = 70/16 = 35/8
        let r = g2_step_factor_m1(Pair::new(2, 1)).unwrap();
        assert_eq!(r, ratio_i128(35, 8));
    }

    #[test]
    fn step_ratio_domain_errors() {
        assert!(g2_step_factor_m1(Pair::new(0, 3)).is_err());
        assert!(g2_step_factor_m2(Pair::new(3, 0)).is_err());
    }

    #[test]
    fn fast_path_agrees() {
        for m1 in 0..=10u32 {
            for m2 in 0..=10u32 {
                let p = Pair::new(m1, m2);
                assert_eq!(g2_fast(p), g2_closed(p), "fast vs closed at {p:?}");
            }
        }
        assert_eq!(g2_fast(Pair::new(1, 1)), BigInt::from(16));
    }

    #[test]
    fn closed_form_integral_to_100() {
        for m1 in (0..=100u32).step_by(20) {
            for m2 in (0..=100u32).step_by(20) {
                let p = Pair::new(m1, m2);
                let q = g2_closed_with_factor(p, m1 as u64 + m2 as u64 + 1);
                assert!(q.is_integer(), "non-integral at {p:?}");
            }
        }
    }
}

//! Word-sized modular arithmetic, nullspaces mod p, Chinese remaindering,
//! and rational reconstruction.
//!
//! Primes are 62-bit so a product can be reduced from `u128`, and row
//! eliminations use Shoup's precomputed-quotient multiplication: with the
//! multiplier fixed per row update, each entry costs two multiplies and no
//! division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic stream of 62-bit primes, descending from `2^62`.
pub fn prime_stream(skip: usize) -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62))
        .rev()
        .filter(|&n| is_prime_u64(n))
        .skip(skip)
}

/// Deterministic Miller-Rabin for u64 (the 12 smallest prime bases are a
/// proven witness set for all 64-bit integers).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse via extended Euclid. Panics if `a` is not invertible.
pub fn inv_mod_u64(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "element not invertible");
    t0.rem_euclid(m as i128) as u64
}

/// Non-negative residue of a big integer mod a word prime.
pub fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = x.mod_floor(&m);
    r.to_u64().expect("residue fits u64")
}

/// Fixed-multiplier modular multiplication (Shoup). Valid for `p < 2^63`.
#[derive(Copy, Clone)]
struct ShoupMul {
    w: u64,
    w_shoup: u64,
    p: u64,
}

impl ShoupMul {
    fn new(w: u64, p: u64) -> Self {
        debug_assert!(w < p);
        ShoupMul {
            w,
            w_shoup: (((w as u128) << 64) / p as u128) as u64,
            p,
        }
    }

    #[inline(always)]
    fn mul(self, a: u64) -> u64 {
        let q = ((a as u128 * self.w_shoup as u128) >> 64) as u64;
        let r = a
            .wrapping_mul(self.w)
            .wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

/// Result of a mod-p nullspace computation.
#[derive(Debug, Clone)]
pub struct NullspaceModP {
    pub p: u64,
    /// Pivot columns of the row echelon form, ascending.
    pub pivot_cols: Vec<usize>,
    /// One basis vector per free column (ascending free column order), each
    /// of full length `cols`, normalized with the free coordinate set to 1.
    pub basis: Vec<Vec<u64>>,
}

impl NullspaceModP {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }
}

/// Row-major dense matrix mod p with `rows * cols` entries in `data`.
pub struct MatrixModP {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl MatrixModP {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        MatrixModP {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Nullspace by in-place Gaussian elimination. Deterministic: pivots are
    /// the first rows with a nonzero entry in each column, scanned left to
    /// right, so the reduced form (and hence the basis) is canonical.
    pub fn nullspace(mut self) -> NullspaceModP {
        let p = self.p;
        let cols = self.cols;
        let rows = self.rows;
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut pivot_row = 0usize;

        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            // find pivot
            let mut sel = None;
            for r in pivot_row..rows {
                if self.data[r * cols + col] != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            if sel != pivot_row {
                for c in 0..cols {
                    self.data.swap(sel * cols + c, pivot_row * cols + c);
                }
            }
            // normalize pivot row to leading 1
            let inv = inv_mod_u64(self.data[pivot_row * cols + col], p);
            let sm = ShoupMul::new(inv, p);
            for c in col..cols {
                let v = self.data[pivot_row * cols + c];
                self.data[pivot_row * cols + c] = sm.mul(v);
            }
            // eliminate below
            let (upper, lower) = self.data.split_at_mut((pivot_row + 1) * cols);
            let prow = &upper[pivot_row * cols..];
            eliminate_rows(lower, prow, col, p);
            pivot_cols.push(col);
            pivot_row += 1;
        }

        let rank = pivot_cols.len();
        let is_pivot = {
            let mut v = vec![false; cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let free_cols: Vec<usize> = (0..cols).filter(|c| !is_pivot[*c]).collect();

        // Back-substitute one basis vector per free column. The eliminated
        // matrix has unit leading entries, so
        //   x[pivot_i] = -(M[i][free] + sum_{j>i} M[i][pivot_j] * x[pivot_j]).
        let basis: Vec<Vec<u64>> = free_cols
            .iter()
            .map(|&f| {
                let mut x = vec![0u64; cols];
                x[f] = 1;
                for i in (0..rank).rev() {
                    let row = &self.data[i * cols..(i + 1) * cols];
                    let mut acc = row[f] as u128;
                    for (j, &pc) in pivot_cols.iter().enumerate().skip(i + 1) {
                        let _ = j;
                        if pc > f {
                            break; // x[pc] is zero beyond the free column
                        }
                        if x[pc] != 0 {
                            acc += row[pc] as u128 * x[pc] as u128 % p as u128;
                        }
                    }
                    let s = (acc % p as u128) as u64;
                    x[pivot_cols[i]] = if s == 0 { 0 } else { p - s };
                }
                x
            })
            .collect();

        NullspaceModP {
            p,
            pivot_cols,
            basis,
        }
    }
}

#[cfg(feature = "parallel")]
fn eliminate_rows(lower: &mut [u64], prow: &[u64], col: usize, p: u64) {
    use rayon::prelude::*;
    let cols = prow.len();
    lower.par_chunks_mut(cols).for_each(|row| {
        eliminate_one(row, prow, col, p);
    });
}

#[cfg(not(feature = "parallel"))]
fn eliminate_rows(lower: &mut [u64], prow: &[u64], col: usize, p: u64) {
    let cols = prow.len();
    for row in lower.chunks_mut(cols) {
        eliminate_one(row, prow, col, p);
    }
}

#[inline]
fn eliminate_one(row: &mut [u64], prow: &[u64], col: usize, p: u64) {
    let f = row[col];
    if f == 0 {
        return;
    }
    // row += (p - f) * prow, entrywise mod p
    let sm = ShoupMul::new(p - f, p);
    for (r, &q) in row[col..].iter_mut().zip(&prow[col..]) {
        let add = sm.mul(q);
        let mut s = *r + add; // both < p < 2^62, no overflow
        if s >= p {
            s -= p;
        }
        *r = s;
    }
}

/// Combine `(r1 mod m1)` with `(r2 mod p2)` into the residue mod `m1 * p2`.
pub fn crt_combine(r1: &BigInt, m1: &BigInt, r2: u64, p2: u64) -> BigInt {
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod p2)
    let m1_mod = bigint_mod_u64(m1, p2);
    let inv = inv_mod_u64(m1_mod, p2);
    let r1_mod = bigint_mod_u64(r1, p2);
    let delta = (r2 + p2 - r1_mod) % p2;
    let t = mul_mod_u64(delta, inv, p2);
    r1 + m1 * BigInt::from(t)
}

/// Balanced rational reconstruction: the unique `n/d` with
/// `|n|, d <= sqrt((m-1)/2)`, `gcd(n, d) = 1`, `gcd(d, m) = 1`, and
/// `n = r d (mod m)` — if it exists.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = ((m - BigInt::one()) / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = r.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    if !num.gcd(&den).is_one() {
        return None;
    }
    if !den.gcd(m).is_one() {
        return None;
    }
    Some((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_stream_is_prime_and_descending() {
        let ps: Vec<u64> = prime_stream(0).take(5).collect();
        for w in ps.windows(2) {
            assert!(w[0] > w[1]);
        }
        for &p in &ps {
            assert!(is_prime_u64(p));
            assert!(p > 1 << 61);
        }
        // skipping is consistent with taking
        assert_eq!(prime_stream(2).next(), ps.get(2).copied());
    }

    #[test]
    fn miller_rabin_small() {
        let primes = [2u64, 3, 5, 7, 97, 561 + 2, 4611686018427387847];
        for p in primes {
            assert!(is_prime_u64(p), "{p}");
        }
        for c in [1u64, 4, 561, 25326001, 3215031751] {
            assert!(!is_prime_u64(c), "{c}");
        }
    }

    #[test]
    fn shoup_matches_naive() {
        let p = prime_stream(0).next().unwrap();
        let cases = [(3u64, 5u64), (p - 1, p - 1), (1 << 40, 123456789)];
        for (a, w) in cases {
            let sm = ShoupMul::new(w % p, p);
            assert_eq!(sm.mul(a % p), mul_mod_u64(a % p, w % p, p));
        }
    }

    #[test]
    fn nullspace_known_kernel() {
        // rows are (1, 2, 3) and (2, 4, 6): kernel is 2-dimensional; with
        // canonical normalization the basis is { (p-2, 1, 0), (p-3, 0, 1) }.
        let p = 101;
        let mut m = MatrixModP::zero(p, 2, 3);
        m.row_mut(0).copy_from_slice(&[1, 2, 3]);
        m.row_mut(1).copy_from_slice(&[2, 4, 6]);
        let ns = m.nullspace();
        assert_eq!(ns.pivot_cols, vec![0]);
        assert_eq!(ns.basis.len(), 2);
        assert_eq!(ns.basis[0], vec![99, 1, 0]);
        assert_eq!(ns.basis[1], vec![98, 0, 1]);
    }

    #[test]
    fn nullspace_vector_annihilates_rows() {
        // small random-ish system with a planted kernel vector
        let p = prime_stream(0).next().unwrap();
        let planted: Vec<u64> = vec![5, 1, 0, 3];
        let raw_rows: Vec<Vec<u64>> = vec![
            vec![1, 2, 7, 9],
            vec![4, 4, 1, 2],
            vec![9, 0, 3, 5],
        ];
        // append a column making each row orthogonal to `planted`:
        // row . planted = 0  =>  choose last entry accordingly (planted[3]=3)
        let inv3 = inv_mod_u64(3, p);
        let mut m = MatrixModP::zero(p, 3, 4);
        for (i, r) in raw_rows.iter().enumerate() {
            let dot = (0..3).fold(0u64, |acc, j| {
                (acc + mul_mod_u64(r[j], planted[j], p)) % p
            });
            let last = mul_mod_u64((p - dot) % p, inv3, p);
            let mut row = r[..3].to_vec();
            row.push(last);
            m.row_mut(i).copy_from_slice(&row);
        }
        let saved = m.data.clone();
        let ns = m.nullspace();
        assert_eq!(ns.nullity(), 1);
        let v = &ns.basis[0];
        // every original row annihilates the basis vector
        for r in 0..3 {
            let dot = (0..4).fold(0u64, |acc, c| {
                (acc + mul_mod_u64(saved[r * 4 + c], v[c], p)) % p
            });
            assert_eq!(dot, 0, "row {r}");
        }
        // planted and v must be proportional
        let scale = mul_mod_u64(planted[1], inv_mod_u64(v[1], p), p);
        for j in 0..4 {
            assert_eq!(mul_mod_u64(v[j], scale, p), planted[j] % p);
        }
    }

    #[test]
    fn crt_and_reconstruction_roundtrip() {
        // reconstruct -22/7 from residues mod two primes
        let p1 = prime_stream(0).next().unwrap();
        let p2 = prime_stream(1).next().unwrap();
        let target_num = BigInt::from(-22);
        let target_den = BigInt::from(7);
        let res = |p: u64| {
            let d_inv = inv_mod_u64(7, p);
            let n = bigint_mod_u64(&target_num, p);
            mul_mod_u64(n, d_inv, p)
        };
        let mut r = BigInt::from(res(p1));
        let mut m = BigInt::from(p1);
        r = crt_combine(&r, &m, res(p2), p2);
        m *= BigInt::from(p2);
        let (n, d) = rational_reconstruct(&r, &m).unwrap();
        assert_eq!(n, target_num);
        assert_eq!(d, target_den);
    }

    #[test]
    fn reconstruction_fails_when_modulus_too_small() {
        // numerator too large for one small modulus
        let m = BigInt::from(1009);
        let r = BigInt::from(123456 % 1009);
        // all candidates with |n|, d <= sqrt(504) are wrong for 123456 unless
        // it happens to reduce; just require consistency of the contract:
        if let Some((n, d)) = rational_reconstruct(&r, &m) {
            assert_eq!((n - r * d).mod_floor(&m), BigInt::zero());
        }
    }
}

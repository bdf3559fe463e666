//! Integer polynomials in the index variables and their rational pairs.
//!
//! These are the coefficients of pure recurrences: polynomials in
//! `(m1, ..., mk)` (or in `n` for the diagonal), with arbitrary-precision
//! integer coefficients. Not homogeneous, unlike [`crate::poly`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer polynomial over `num_vars` index variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPolynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// Graded-lex-descending comparison key: higher total degree first, then
/// lexicographically larger exponent first.
fn graded_lex_desc(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let (ta, tb) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
    tb.cmp(&ta).then_with(|| b.cmp(a))
}

impl IndexPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        IndexPolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    /// The variable `x_i` (0-based).
    pub fn variable(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars);
        let mut e = vec![0u32; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars);
        p.terms.insert(e, BigInt::one());
        p
    }

    /// A linear polynomial `c0 + c1 x1 + ... + ck xk`.
    pub fn linear(coeffs_with_constant: &[i64]) -> Self {
        let num_vars = coeffs_with_constant.len() - 1;
        let mut p = Self::constant(num_vars, BigInt::from(coeffs_with_constant[0]));
        for (i, &c) in coeffs_with_constant[1..].iter().enumerate() {
            p.add_term(
                {
                    let mut e = vec![0u32; num_vars];
                    e[i] = 1;
                    e
                },
                BigInt::from(c),
            );
        }
        p
    }

    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars);
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Max total degree, or 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms sorted graded-lex descending (the canonical order).
    pub fn terms_graded(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| graded_lex_desc(a.0, b.0));
        ts
    }

    /// Leading coefficient under graded-lex descending order; zero for the
    /// zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms_graded()
            .first()
            .map(|(_, c)| (*c).clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient by `d` (must be exact).
    pub fn div_scalar_exact(&self, d: &BigInt) -> Self {
        assert!(!d.is_zero());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (q, r) = c.div_rem(d);
                assert!(r.is_zero(), "inexact scalar division");
                (e.clone(), q)
            })
            .collect();
        IndexPolynomial {
            num_vars: self.num_vars,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        IndexPolynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Exact evaluation at a non-negative integer point.
    pub fn eval(&self, point: &[u32]) -> BigInt {
        assert_eq!(point.len(), self.num_vars);
        // power tables, one per variable
        let max_pow: Vec<u32> = (0..self.num_vars)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let pows: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&max_pow)
            .map(|(&x, &mp)| {
                let mut v = Vec::with_capacity(mp as usize + 1);
                v.push(BigInt::one());
                for j in 1..=mp {
                    let next = &v[j as usize - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &p) in e.iter().enumerate() {
                if p > 0 {
                    t *= &pows[i][p as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluation modulo a word-sized prime.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let mut t = crate::modular::bigint_mod_u64(c, p);
            for (i, &pw) in e.iter().enumerate() {
                let base = point[i] % p;
                for _ in 0..pw {
                    t = mulmod(t, base);
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    /// Degree in one variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Iterate raw terms (BTreeMap order, lex ascending).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }
}

impl fmt::Display for IndexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms_graded().iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let is_const = e.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const {
                write!(f, "{mag}")?;
            }
            for (v, &p) in e.iter().enumerate() {
                if p == 1 {
                    write!(f, "x{}", v + 1)?;
                } else if p > 1 {
                    write!(f, "x{}^{}", v + 1, p)?;
                }
            }
        }
        Ok(())
    }
}

/// Exact gcd of two integer polynomials, up to sign (result has positive
/// leading coefficient, or is zero when both inputs are zero).
///
/// Strategy: integer contents split off first; a cheap modular projection
/// certifies the coprime case (the common case here); otherwise a primitive
/// polynomial-remainder-sequence recursion computes the real gcd.
pub fn poly_gcd(a: &IndexPolynomial, b: &IndexPolynomial) -> IndexPolynomial {
    assert_eq!(a.num_vars(), b.num_vars());
    let v = a.num_vars();
    if a.is_zero() {
        return positive_lead(b.clone());
    }
    if b.is_zero() {
        return positive_lead(a.clone());
    }
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let pa = a.div_scalar_exact(&ca);
    let pb = b.div_scalar_exact(&cb);

    let pp = if pa.total_degree() == 0 || pb.total_degree() == 0 || certified_coprime(&pa, &pb) {
        IndexPolynomial::one(v)
    } else {
        positive_lead(heuristic_gcd(&pa, &pb))
    };
    pp.scale(&cg)
}

impl IndexPolynomial {
    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        IndexPolynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Exact polynomial division by a known divisor. Panics if the division
    /// is not exact (callers only divide by certified factors).
    pub fn div_exact(&self, d: &Self) -> Self {
        self.try_div_exact(d).expect("polynomial division not exact")
    }

    /// Division that returns `None` as soon as the divisor does not divide
    /// exactly (leading-term elimination under graded-lex order).
    pub fn try_div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        let v = self.num_vars;
        let mut rem = self.clone();
        let mut q = Self::zero(v);
        let d_terms = d.terms_graded();
        let (d_lead_e, d_lead_c) = (d_terms[0].0.clone(), d_terms[0].1.clone());
        drop(d_terms);
        while !rem.is_zero() {
            let r_terms = rem.terms_graded();
            let (r_lead_e, r_lead_c) = (r_terms[0].0.clone(), r_terms[0].1.clone());
            drop(r_terms);
            let mut e = Vec::with_capacity(v);
            for (r, dd) in r_lead_e.iter().zip(&d_lead_e) {
                e.push(r.checked_sub(*dd)?);
            }
            let (c, cr) = r_lead_c.div_rem(&d_lead_c);
            if !cr.is_zero() {
                return None;
            }
            let mono = IndexPolynomial::from_terms(v, vec![(e, c)]);
            rem = rem.sub(&mono.mul(d));
            q = q.add(&mono);
        }
        Some(q)
    }
}

fn positive_lead(p: IndexPolynomial) -> IndexPolynomial {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p
    }
}

/// Project both polynomials to univariate images in each variable in turn
/// (random values for the others, mod a 62-bit prime) and check the image
/// gcds are constant. If for every variable the images keep full degree and
/// are coprime, any common divisor has degree 0 in every variable, hence the
/// primitive parts are coprime. Degenerate projections fall through to the
/// expensive path.
fn certified_coprime(a: &IndexPolynomial, b: &IndexPolynomial) -> bool {
    const P: u64 = 4611686018427387847; // 2^62 - 57, prime
    let v = a.num_vars();
    let mut seed = 0x9e37_79b9_7f4a_7c15u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed % (P - 2) + 1
    };
    'vars: for var in 0..v {
        let da = a.degree_in(var);
        let db = b.degree_in(var);
        // a common divisor's degree in `var` is bounded by min(da, db)
        if da == 0 || db == 0 {
            continue;
        }
        for _attempt in 0..4 {
            let point: Vec<u64> = (0..v).map(|_| next()).collect();
            let img_a = univariate_image_mod(a, var, &point, P);
            let img_b = univariate_image_mod(b, var, &point, P);
            if img_a.len() as u32 != da + 1 || img_b.len() as u32 != db + 1 {
                continue; // leading coefficient vanished; retry
            }
            if univariate_gcd_degree_mod(&img_a, &img_b, P) == 0 {
                continue 'vars;
            } else {
                return false; // plausible common factor: compute for real
            }
        }
        return false; // could not certify this variable
    }
    true
}

/// Coefficient list (ascending degree) of the univariate image of `p` in
/// `var`, all other variables fixed to `point`, mod `q`.
fn univariate_image_mod(p: &IndexPolynomial, var: usize, point: &[u64], q: u64) -> Vec<u64> {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % q as u128) as u64;
    let deg = p.degree_in(var) as usize;
    let mut out = vec![0u64; deg + 1];
    for (e, c) in p.terms() {
        let mut t = crate::modular::bigint_mod_u64(c, q);
        for (i, &pw) in e.iter().enumerate() {
            if i == var {
                continue;
            }
            let base = point[i] % q;
            for _ in 0..pw {
                t = mulmod(t, base);
            }
        }
        out[e[var] as usize] = (out[e[var] as usize] + t) % q;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    if out == [0] {
        out.clear();
    }
    out
}

fn univariate_gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    while !b.is_empty() {
        // a mod b
        let inv = crate::modular::inv_mod_u64(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let f = mulmod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let s = mulmod(f, bc);
                let idx = off + i;
                a[idx] = (a[idx] + p - s) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Heuristic evaluation gcd (the classical integer-substitution method):
/// substitute a large integer for one variable, recurse down to integer
/// gcds, read the polynomial back off the balanced base-xi digits, and
/// certify by exact trial division. Retries with a larger substitution point
/// on failure; trial division makes the result unconditionally correct.
fn heuristic_gcd(a: &IndexPolynomial, b: &IndexPolynomial) -> IndexPolynomial {
    let v = a.num_vars();
    let var = match (0..v).find(|&i| a.degree_in(i) > 0 && b.degree_in(i) > 0) {
        Some(var) => var,
        // no shared variable: any common divisor is constant in every
        // variable, and the primitive parts have unit content
        None => return IndexPolynomial::one(v),
    };
    let mut xi: BigInt = (height(a).min(height(b)) + 1u32) * 2u32 + 29u32;
    for _ in 0..8 {
        let ia = substitute_int(a, var, &xi);
        let ib = substitute_int(b, var, &xi);
        let image = poly_gcd(&ia, &ib);
        let g = positive_lead(xi_adic_reconstruct(&image, var, &xi));
        if !g.is_zero() && a.try_div_exact(&g).is_some() && b.try_div_exact(&g).is_some() {
            return g;
        }
        xi = &xi * &xi * 2u32 + 1u32;
    }
    panic!("heuristic gcd did not stabilize after 8 substitution points");
}

fn height(p: &IndexPolynomial) -> BigInt {
    p.terms
        .values()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Evaluate one variable at an integer, keeping the others symbolic.
fn substitute_int(p: &IndexPolynomial, var: usize, xi: &BigInt) -> IndexPolynomial {
    let max_pow = p.degree_in(var);
    let mut pows = Vec::with_capacity(max_pow as usize + 1);
    pows.push(BigInt::one());
    for i in 1..=max_pow {
        let next = &pows[i as usize - 1] * xi;
        pows.push(next);
    }
    let mut out = IndexPolynomial::zero(p.num_vars);
    for (e, c) in &p.terms {
        let mut f = e.clone();
        let pw = f[var];
        f[var] = 0;
        out.add_term(f, c * &pows[pw as usize]);
    }
    out
}

/// Undo `substitute_int`: expand every coefficient in balanced base-xi
/// digits, digit i becoming the coefficient of `var^i`.
fn xi_adic_reconstruct(image: &IndexPolynomial, var: usize, xi: &BigInt) -> IndexPolynomial {
    let half = xi / 2u32;
    let mut out = IndexPolynomial::zero(image.num_vars);
    for (e, c) in &image.terms {
        let mut c = c.clone();
        let mut i = 0u32;
        while !c.is_zero() {
            let mut digit = c.mod_floor(xi);
            if digit > half {
                digit -= xi;
            }
            if !digit.is_zero() {
                let mut f = e.clone();
                f[var] = i;
                out.add_term(f, digit.clone());
            }
            c = (c - digit) / xi;
            i += 1;
        }
    }
    let content = out.content();
    if content.is_zero() || content.is_one() {
        out
    } else {
        out.div_scalar_exact(&content)
    }
}

/// A rational function `numerator / denominator` of index polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCoeff {
    pub numerator: IndexPolynomial,
    pub denominator: IndexPolynomial,
}

impl RationalCoeff {
    pub fn new(numerator: IndexPolynomial, denominator: IndexPolynomial) -> Self {
        assert!(!denominator.is_zero(), "denominator must not be zero");
        RationalCoeff {
            numerator,
            denominator,
        }
    }

    /// Canonical form: polynomial gcd removed, joint integer content 1,
    /// denominator's leading (graded-lex) coefficient positive. Idempotent.
    pub fn canonicalize(&self) -> Self {
        if self.numerator.is_zero() {
            return RationalCoeff {
                numerator: IndexPolynomial::zero(self.numerator.num_vars()),
                denominator: IndexPolynomial::one(self.denominator.num_vars()),
            };
        }
        let g = poly_gcd(&self.numerator, &self.denominator);
        let (mut num, mut den) = if g.total_degree() > 0 || !g.content().is_one() {
            (self.numerator.div_exact(&g), self.denominator.div_exact(&g))
        } else {
            (self.numerator.clone(), self.denominator.clone())
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() && !c.is_zero() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalCoeff {
            numerator: num,
            denominator: den,
        }
    }

    /// `(numerator degree, denominator degree)`.
    pub fn degrees(&self) -> (u32, u32) {
        (
            self.numerator.total_degree(),
            self.denominator.total_degree(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: usize, terms: &[(&[u32], i64)]) -> IndexPolynomial {
        IndexPolynomial::from_terms(
            v,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
    }

    #[test]
    fn arithmetic_and_eval() {
        // (x + y)(x - y) = x^2 - y^2
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let prod = a.mul(&b);
        assert_eq!(prod, p(2, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert_eq!(prod.eval(&[5, 3]), BigInt::from(16));
        assert_eq!(prod.eval_mod(&[5, 3], 97), 16);
    }

    #[test]
    fn content_and_scalar_division() {
        let a = p(1, &[(&[1], 6), (&[0], -9)]);
        assert_eq!(a.content(), BigInt::from(3));
        let b = a.div_scalar_exact(&BigInt::from(3));
        assert_eq!(b, p(1, &[(&[1], 2), (&[0], -3)]));
    }

    #[test]
    fn gcd_with_common_factor() {
        // gcd((x+1)(x+2), (x+1)(x+3)) = x+1
        let f = p(1, &[(&[2], 1), (&[1], 3), (&[0], 2)]);
        let g = p(1, &[(&[2], 1), (&[1], 4), (&[0], 3)]);
        assert_eq!(poly_gcd(&f, &g), p(1, &[(&[1], 1), (&[0], 1)]));
    }

    #[test]
    fn gcd_coprime_multivariate() {
        let f = p(3, &[(&[2, 1, 0], 4), (&[0, 0, 1], 7)]);
        let g = p(3, &[(&[1, 1, 1], 3), (&[0, 2, 0], -5), (&[0, 0, 0], 1)]);
        assert_eq!(poly_gcd(&f, &g), IndexPolynomial::one(3));
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        // gcd((x+y) * x, (x+y) * y) = x + y
        let fac = p(2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let f = fac.mul(&p(2, &[(&[1, 0], 1)]));
        let g = fac.mul(&p(2, &[(&[0, 1], 1)]));
        assert_eq!(poly_gcd(&f, &g), fac);
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = p(2, &[(&[2, 0], 3), (&[1, 1], -2), (&[0, 0], 5)]);
        let b = p(2, &[(&[1, 1], 7), (&[0, 1], 1), (&[0, 0], -4)]);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), b);
        assert_eq!(prod.div_exact(&b), a);
    }

    #[test]
    fn canonicalize_content_example() {
        // (2 m1 + 2) / (2 m1) -> (m1 + 1) / m1
        let r = RationalCoeff::new(p(1, &[(&[1], 2), (&[0], 2)]), p(1, &[(&[1], 2)]));
        let c = r.canonicalize();
        assert_eq!(c.numerator, p(1, &[(&[1], 1), (&[0], 1)]));
        assert_eq!(c.denominator, p(1, &[(&[1], 1)]));
        // idempotent
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn canonicalize_sign_convention() {
        let r = RationalCoeff::new(p(1, &[(&[1], 1)]), p(1, &[(&[1], -1), (&[0], 2)]));
        let c = r.canonicalize();
        assert!(c.denominator.leading_coeff() > BigInt::zero());
        assert_eq!(c.numerator, p(1, &[(&[1], -1)]));
    }

    #[test]
    fn canonicalize_removes_polynomial_factor() {
        let fac = p(2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        let num = fac.mul(&p(2, &[(&[1, 0], 3)]));
        let den = fac.mul(&p(2, &[(&[0, 1], 1), (&[0, 0], 1)]));
        let c = RationalCoeff::new(num, den).canonicalize();
        assert_eq!(c.numerator, p(2, &[(&[1, 0], 3)]));
        assert_eq!(c.denominator, p(2, &[(&[0, 1], 1), (&[0, 0], 1)]));
    }

    #[test]
    fn display_reads_naturally() {
        let a = p(2, &[(&[2, 0], 1), (&[0, 1], -3), (&[0, 0], 1)]);
        assert_eq!(a.to_string(), "x1^2 - 3x2 + 1");
    }
}

//! Polynomials over the prime field 𝔽_p and their factorization.
//!
//! Factorization runs squarefree decomposition, distinct-degree splitting and
//! Cantor–Zassenhaus equal-degree splitting. The random choices inside the equal-degree
//! step come from a seeded generator and the output is put in canonical order, so the
//! result is a pure function of `(poly, p)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::fmt;

use super::poly::IntPolynomial;
use super::primes::{is_prime, mod_inverse, mul_mod};
use crate::error::{Error, Result};

/// Polynomial over 𝔽_p with coefficients in `[0, p)`, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(self.leading(), self.p).expect("p prime");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        FpPoly::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).copied().unwrap_or(0);
                    let b = other.coeffs.get(k).copied().unwrap_or(0);
                    (a + b) % self.p
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).copied().unwrap_or(0);
                    let b = other.coeffs.get(k).copied().unwrap_or(0);
                    (a + self.p - b) % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        FpPoly::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, divisor: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let inv = mod_inverse(divisor.leading(), self.p).expect("p prime");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mul_mod(rem[k], inv, self.p);
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let t = mul_mod(c, d, self.p);
                rem[k - dd + j] = (rem[k - dd + j] + self.p - t) % self.p;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (FpPoly::new(self.p, quot), FpPoly::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &FpPoly) -> FpPoly {
        self.div_rem(divisor).1
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Bezout coefficients `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = mod_inverse(r0.leading(), p).expect("p prime");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mul_mod(c, k as u64 % self.p, self.p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &FpPoly) -> FpPoly {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// `self(inner) mod modulus`.
    pub fn compose_mod(&self, inner: &FpPoly, modulus: &FpPoly) -> FpPoly {
        let inner = inner.rem(modulus);
        self.coeffs.iter().rev().fold(FpPoly::zero(self.p), |acc, &c| {
            acc.mul(&inner)
                .add(&FpPoly::new(self.p, vec![c]))
                .rem(modulus)
        })
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }

    /// Lift to ℤ[x] with coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| c.into()).collect())
    }
}

/// Canonical order: ascending coefficient vectors compared lexicographically.
pub fn canonical_cmp(a: &FpPoly, b: &FpPoly) -> Ordering {
    a.coeffs.cmp(&b.coeffs)
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.lift(), self.p)
    }
}

/// Irreducible monic factors with multiplicities, in canonical order.
pub fn factor_mod_p(poly: &IntPolynomial, p: u64) -> Result<Vec<(FpPoly, usize)>> {
    if !is_prime(p) {
        return Err(Error::arg(format!("{p} is not prime")));
    }
    if p > u32::MAX as u64 {
        return Err(Error::arg(format!("prime {p} exceeds the supported word size")));
    }
    let reduced = poly.reduce_mod(p);
    if reduced.is_zero() {
        return Err(Error::Degenerate(format!("{poly} vanishes mod {p}")));
    }
    Ok(factor_fp(&reduced))
}

/// Factorization of a nonzero polynomial already living over 𝔽_p.
pub fn factor_fp(poly: &FpPoly) -> Vec<(FpPoly, usize)> {
    let f = poly.monic();
    let mut out: Vec<(FpPoly, usize)> = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ f.p);
    for (part, mult) in squarefree_decomposition(&f) {
        for (deg, block) in distinct_degree(&part) {
            for factor in equal_degree(&block, deg, &mut rng) {
                out.push((factor, mult));
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
    out
}

fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let fp = f.derivative();
    let mut c = f.gcd(&fp);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() && w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c.monic().pth_root();
        for (fac, m) in squarefree_decomposition(&root) {
            out.push((fac, m * p as usize));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut x_pow = x.clone();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            break;
        }
        d += 1;
        x_pow = x_pow.pow_mod(p as u128, &rest);
        let g = rest.gcd(&x_pow.sub(&x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).0;
            x_pow = x_pow.rem(&rest);
            out.push((d, g));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((deg, rest.monic()));
    }
    out
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let candidate = if p == 2 {
            // trace map 𝔽_{2^d} → 𝔽_2
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let exp = ((p as u128).pow(d as u32) - 1) / 2;
            a.pow_mod(exp, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&candidate);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g).0;
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.monic(), d, rng));
            return out;
        }
    }
}

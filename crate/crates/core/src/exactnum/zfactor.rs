//! Factorization of small-degree integer polynomials over ℚ.
//!
//! Degree information from several good primes usually settles irreducibility at once.
//! When it does not (every biquadratic field, for example, splits into quadratics at
//! every unramified prime), the factorization mod a good prime is Hensel-lifted and
//! recombined by exhaustive subset search, which is cheap at degree ≤ 12.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use super::fp::{factor_fp, FpPoly};
use super::poly::IntPolynomial;
use super::primes::is_prime;
use super::rational::bigint_mod;
use crate::error::{Error, Result};

/// Largest degree accepted by the irreducibility certificate.
pub const MAX_DEGREE: usize = 12;

const DEGREE_SET_PRIMES: usize = 8;

/// Whether `f` is irreducible over ℚ. Constants are not irreducible.
pub fn is_irreducible_over_q(f: &IntPolynomial) -> Result<bool> {
    let deg = f.degree().ok_or_else(|| Error::arg("zero polynomial"))?;
    if deg > MAX_DEGREE {
        return Err(Error::arg(format!(
            "degree {deg} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    if deg == 0 {
        return Ok(false);
    }
    Ok(factor_over_q(f)?.len() == 1)
}

/// Irreducible factors over ℚ (primitive, positive leading coefficient), with repetition,
/// sorted by degree then coefficients.
pub fn factor_over_q(f: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let deg = f.degree().ok_or_else(|| Error::arg("zero polynomial"))?;
    if deg > MAX_DEGREE {
        return Err(Error::arg(format!(
            "degree {deg} exceeds the supported maximum {MAX_DEGREE}"
        )));
    }
    let f = f.primitive_part();
    if deg == 0 {
        return Ok(Vec::new());
    }
    let g = f.to_q().gcd(&f.derivative().to_q()).clear_denominators();
    let squarefree = f
        .exact_div(&g)
        .ok_or_else(|| Error::internal("gcd does not divide"))?
        .primitive_part();
    let mut out = Vec::new();
    for fac in factor_squarefree(&squarefree)? {
        let mut rest = f.clone();
        while let Some(q) = rest.exact_div(&fac) {
            out.push(fac.clone());
            rest = q;
        }
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(out)
}

fn factor_squarefree(f: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![f.primitive_part()]);
    }
    let lc = f.leading().expect("nonzero").clone();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut possible: BTreeSet<usize> = (0..=deg).collect();
    let mut used = 0;
    let mut p = 1u64;
    while used < DEGREE_SET_PRIMES && p < 10_000 {
        p += 1;
        if !is_prime(p) || bigint_mod(&lc, p) == 0 {
            continue;
        }
        let reduced = f.reduce_mod(p);
        if !reduced.gcd(&reduced.derivative()).is_one() {
            continue;
        }
        let factors: Vec<FpPoly> = factor_fp(&reduced).into_iter().map(|(g, _)| g).collect();
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for g in &factors {
            let d = g.degree().unwrap();
            let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(shifted);
        }
        possible = possible.intersection(&sums).copied().collect();
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        used += 1;
        if possible.len() == 2 {
            return Ok(vec![f.primitive_part()]);
        }
    }
    let (p, factors) = best.ok_or_else(|| Error::internal("no good prime found"))?;
    Ok(zassenhaus(f, p, factors))
}

fn zassenhaus(f: &IntPolynomial, p: u64, factors: Vec<FpPoly>) -> Vec<IntPolynomial> {
    let deg = f.degree().unwrap();
    let lc = f.leading().unwrap().abs();
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << deg) * (norm_sq.sqrt() + 1u32) * &lc;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= &bound * 2u32 {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, p, k, &factors);

    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut pool: Vec<Vec<BigInt>> = lifted;
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut found = None;
        for subset in subsets(pool.len(), size) {
            let lc_rest = rest.leading().unwrap().clone();
            let mut prod = vec![lc_rest.clone()];
            for &i in &subset {
                prod = mul_mod(&prod, &pool[i], &pk);
            }
            let candidate =
                IntPolynomial::new(prod.iter().map(|c| symmetric(c, &pk)).collect()).primitive_part();
            if let Some(q) = rest.exact_div(&candidate) {
                found = Some((subset, candidate, q));
                break;
            }
        }
        match found {
            Some((subset, candidate, q)) => {
                out.push(candidate);
                rest = q.primitive_part();
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    out.push(rest.primitive_part());
    out
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2u32 > *m {
        r - m
    } else {
        r
    }
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(start: usize, n: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, size, current, out);
            current.pop();
        }
    }
    go(0, n, size, &mut current, &mut out);
    out
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|k| (a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).mod_floor(m))
            .collect(),
    )
}

fn to_fp(a: &[BigInt], p: u64) -> FpPoly {
    FpPoly::new(p, a.iter().map(|c| bigint_mod(c, p)).collect())
}

fn from_fp(a: &FpPoly) -> Vec<BigInt> {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Monic lifts mod `p^k` of the monic factorization of `lc(f)^{-1} f`.
fn hensel_lift(f: &IntPolynomial, p: u64, k: u32, factors: &[FpPoly]) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    let lc = f.leading().unwrap();
    let lc_inv = lc
        .modpow(&(&pk / &pb * (&pb - 1u32) - 1u32), &pk)
        .mod_floor(&pk);
    let monic: Vec<BigInt> = f.coeffs().iter().map(|c| (c * &lc_inv).mod_floor(&pk)).collect();

    let mut out = Vec::new();
    let mut target = monic;
    for (idx, g) in factors.iter().enumerate() {
        if idx + 1 == factors.len() {
            out.push(target.clone());
            break;
        }
        let rest = factors[idx + 1..]
            .iter()
            .fold(FpPoly::one(p), |acc, h| acc.mul(h));
        let (lg, lh) = lift_pair(&target, g, &rest, p, k);
        out.push(lg);
        target = lh;
    }
    out
}

/// Lift `target ≡ g·h (mod p)` with `g`, `h` monic and coprime to a factorization mod `p^k`.
fn lift_pair(target: &[BigInt], g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let pb = BigInt::from(p);
    let (_, s, t) = g.ext_gcd(h);
    let mut gz = from_fp(g);
    let mut hz = from_fp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let diff = sub_mod(target, &mul_mod(&gz, &hz, &next), &next);
        let e = to_fp(&diff.iter().map(|c| c / &pj).collect::<Vec<_>>(), p);
        let (q, r) = t.mul(&e).div_rem(g);
        let dh = s.mul(&e).add(&q.mul(h));
        gz = add_scaled(&gz, &from_fp(&r), &pj, &next);
        hz = add_scaled(&hz, &from_fp(&dh), &pj, &next);
        pj = next;
    }
    (gz, hz)
}

fn add_scaled(a: &[BigInt], b: &[BigInt], scale: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero) * scale).mod_floor(m))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn irreducible_examples() {
        assert!(is_irreducible_over_q(&poly(&[1, 0, 1])).unwrap());
        assert!(is_irreducible_over_q(&poly(&[-1, -2, 1, 1])).unwrap());
        assert!(is_irreducible_over_q(&poly(&[-2, 0, 0, 1])).unwrap());
        // x^4 + 1 is reducible mod every prime but irreducible over ℚ
        assert!(is_irreducible_over_q(&poly(&[1, 0, 0, 0, 1])).unwrap());
        // ℚ(√2, √3): x^4 - 10x^2 + 1
        assert!(is_irreducible_over_q(&poly(&[1, 0, -10, 0, 1])).unwrap());
    }

    #[test]
    fn reducible_examples() {
        assert!(!is_irreducible_over_q(&poly(&[-1, 0, 1])).unwrap());
        assert!(!is_irreducible_over_q(&poly(&[0, 0, 1])).unwrap());
        // (x^2 + 1)(x^2 + 2) has no rational roots
        assert!(!is_irreducible_over_q(&poly(&[2, 0, 3, 0, 1])).unwrap());
        // (2x^2 + 3x - 1)(3x^3 - x + 5)
        let a = poly(&[-1, 3, 2]);
        let b = poly(&[5, -1, 0, 3]);
        let f = &a * &b;
        assert!(!is_irreducible_over_q(&f).unwrap());
        let mut factors = factor_over_q(&f).unwrap();
        factors.sort_by_key(|g| g.degree());
        assert_eq!(factors, vec![a, b]);
    }

    #[test]
    fn repeated_factors_are_reported() {
        let a = poly(&[1, 1]);
        let b = poly(&[1, 0, 1]);
        let f = &(&a * &a) * &b;
        assert_eq!(factor_over_q(&f).unwrap(), vec![a.clone(), a, b]);
    }

    #[test]
    fn degree_cap() {
        let mut c = vec![0i64; 14];
        c[0] = 1;
        c[13] = 1;
        assert!(matches!(
            is_irreducible_over_q(&poly(&c)),
            Err(Error::InvalidArgument(_))
        ));
    }
}

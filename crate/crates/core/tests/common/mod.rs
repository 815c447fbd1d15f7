//! Independent oracles shared by the integration tests. Nothing here calls into the
//! library's linear algebra or factoring code.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use stargate::exactnum::Rational;

pub type Mat = Vec<Vec<Rational>>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Rational::zero(); c]; r]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn apply(a: &Mat, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn power(a: &Mat, k: usize) -> Mat {
    (0..k).fold(identity(a.len()), |acc, _| mul(&acc, a))
}

/// Rank by Gaussian elimination on a copy.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Mat = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// `span(b) ⊆ span(a)` for lists of vectors.
pub fn contained(b: &[Vec<Rational>], a: &[Vec<Rational>]) -> bool {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    rank(&all) == rank(a)
}

pub fn jordan(sizes: &[usize]) -> Mat {
    let mu: usize = sizes.iter().sum();
    let mut m = zeros(mu, mu);
    let mut start = 0;
    for &s in sizes {
        for i in start..start + s - 1 {
            m[i][i + 1] = Rational::one();
        }
        start += s;
    }
    m
}

/// All partitions of `n`, parts in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let k = rng.gen_range(1..=left);
        parts.push(k);
        left -= k;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// A random integer matrix of determinant ±1 together with its inverse.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> (Mat, Mat) {
    let mut p = identity(n);
    let mut inv = identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            return (vec![vec![q(-1)]], vec![vec![q(-1)]]);
        }
        return (p, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = q(rng.gen_range(-2..=2));
        // P ← E P with E = I + c e_i e_jᵀ; P⁻¹ ← P⁻¹ E⁻¹
        for k in 0..n {
            let v = &p[j][k] * &c;
            p[i][k] += v;
            let w = &inv[k][i] * &c;
            inv[k][j] -= w;
        }
    }
    (p, inv)
}

/// `J_μ = [[0, -I], [I, 0]]`.
pub fn standard_j(mu: usize) -> Mat {
    let g = mu / 2;
    let mut j = zeros(mu, mu);
    for i in 0..g {
        j[i][g + i] = q(-1);
        j[g + i][i] = q(1);
    }
    j
}

/// `ᵗB J B` for the matrix `B` with the given columns.
pub fn gram(columns: &[Vec<Rational>]) -> Mat {
    let mu = columns.len();
    let b = transpose(&columns.to_vec());
    mul(&mul(&transpose(&b), &standard_j(mu)), &b)
}

pub fn is_symplectic(m: &Mat) -> bool {
    let j = standard_j(m.len());
    mul(&mul(&transpose(m), &j), m) == j
}

/// One elementary symplectic generator: a symmetric shear above or below the diagonal, or
/// `diag(A, A⁻ᵀ)` for an elementary `A`.
pub fn elementary_symplectic(rng: &mut ChaCha8Rng, mu: usize) -> Mat {
    let g = mu / 2;
    let mut m = identity(mu);
    let c = q(*[-2i64, -1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap());
    let (a, b) = (rng.gen_range(0..g), rng.gen_range(0..g));
    match rng.gen_range(0..3) {
        0 => {
            m[a][g + b] += &c;
            if a != b {
                m[b][g + a] += &c;
            }
        }
        1 => {
            m[g + a][b] += &c;
            if a != b {
                m[g + b][a] += &c;
            }
        }
        _ => {
            if a != b {
                // A = I + c e_a e_bᵀ, A⁻ᵀ = I - c e_b e_aᵀ
                m[a][b] += &c;
                m[g + b][g + a] -= &c;
            } else {
                m[a][a] = q(-1);
                m[g + a][g + a] = q(-1);
            }
        }
    }
    m
}

pub fn symplectic_word(rng: &mut ChaCha8Rng, mu: usize, len: usize) -> Mat {
    (0..len).fold(identity(mu), |acc, _| mul(&acc, &elementary_symplectic(rng, mu)))
}

pub fn column(m: &Mat, j: usize) -> Vec<Rational> {
    m.iter().map(|row| row[j].clone()).collect()
}

// ---- polynomials over 𝔽_p as ascending coefficient vectors ----

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Quotient of `a` by the monic `d` when the division is exact.
fn exact_div(a: &[u64], d: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r = a.to_vec();
    let (n, m) = (a.len(), d.len());
    if n < m {
        return None;
    }
    let mut quo = vec![0u64; n - m + 1];
    for k in (0..=n - m).rev() {
        let c = r[k + m - 1];
        quo[k] = c;
        if c != 0 {
            for (i, &di) in d.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * di % p) % p;
            }
        }
    }
    if r.iter().all(|&x| x == 0) {
        Some(quo)
    } else {
        None
    }
}

/// Reduction of integer coefficients mod `p`, made monic.
pub fn reduce_monic(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let v: Vec<u64> = coeffs
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            u64::try_from(r).unwrap()
        })
        .collect();
    let v = trim(v);
    let lead = inv_mod(*v.last().unwrap(), p);
    v.iter().map(|&c| c * lead % p).collect()
}

/// Factorization of a polynomial of degree ≤ 5 by trial division with every monic
/// polynomial of degree 1 and 2; returns sorted `(degree, multiplicity)` pairs.
pub fn brute_factor_degrees(coeffs: &[BigInt], p: u64) -> Vec<(usize, usize)> {
    let mut f = reduce_monic(coeffs, p);
    assert!(f.len() <= 6, "trial division only covers degree ≤ 5");
    let mut out = Vec::new();
    for deg in 1..=2usize {
        let count = (p as usize).pow(deg as u32);
        for idx in 0..count {
            let mut d: Vec<u64> = (0..deg).map(|k| (idx / (p as usize).pow(k as u32)) as u64 % p).collect();
            d.push(1);
            let mut mult = 0;
            while f.len() > deg {
                match exact_div(&f, &d, p) {
                    Some(quo) => {
                        f = quo;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                out.push((deg, mult));
            }
        }
    }
    if f.len() > 1 {
        // no factor of degree ≤ 2 is left and the degree is at most 5
        out.push((f.len() - 1, 1));
    }
    out.sort_unstable();
    out
}

/// Real roots of a square-free integer polynomial, counted by Descartes' rule of signs on
/// bisected intervals of `(-B, B)`.
pub fn descartes_real_roots(coeffs: &[BigInt]) -> usize {
    let lead = coeffs.last().unwrap().abs();
    let max = coeffs.iter().map(|c| c.abs()).max().unwrap();
    // Cauchy: |root| < 1 + max/|lead| ≤ 2^k
    let bound = Rational::one() + Rational::new(max, lead);
    let mut b = Rational::one();
    while b <= bound {
        b *= q(2);
    }
    let poly: Vec<Rational> = coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let at = |x: &Rational| poly.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c);
    let lo = -b.clone();
    let mut roots = isolate(&poly, &lo, &b);
    if at(&b).is_zero() {
        roots += 1;
    }
    roots
}

/// Roots in `[a, b)`.
fn isolate(poly: &[Rational], a: &Rational, b: &Rational) -> usize {
    let at = |x: &Rational| poly.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c);
    // substitute x = (a + b t)/(1 + t) and count sign variations of (1+t)^n p(...)
    let n = poly.len() - 1;
    let mut acc = vec![Rational::zero(); n + 1];
    for (k, c) in poly.iter().enumerate() {
        // c·(a + b t)^k (1 + t)^{n-k}
        let mut term = vec![c.clone()];
        for _ in 0..k {
            term = poly_mul(&term, &[a.clone(), b.clone()]);
        }
        for _ in 0..n - k {
            term = poly_mul(&term, &[Rational::one(), Rational::one()]);
        }
        for (i, t) in term.into_iter().enumerate() {
            acc[i] += t;
        }
    }
    let signs: Vec<bool> = acc.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    let variations = signs.windows(2).filter(|w| w[0] != w[1]).count();
    let root_at_a = usize::from(at(a).is_zero());
    match variations {
        0 => root_at_a,
        1 => 1 + root_at_a,
        _ => {
            let mid = (a + b) / q(2);
            isolate(poly, a, &mid) + isolate(poly, &mid, b)
        }
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

//! Cyclic totally real fields from Gaussian periods, their CM extensions `F₀(√-q)` with two
//! designated split primes, and the membership tests built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::albert::{divides_none, validate_albert, AlbertDescriptor, AlbertType};
use crate::error::{Error, Result};
use crate::exactnum::primes::{is_prime, primitive_root, primes_up_to, pow_mod};
use crate::exactnum::rational::{serde_rational_vec, bigint_mod};
use crate::exactnum::{
    resultant, IntPolynomial, NumberField, NumberFieldSpec, QPolynomial, Rational, RationalMatrix,
};
use crate::starcheck::PointDescriptor;

pub const DEFAULT_PRECISION_BITS: u32 = 200;

/// Search limit of [`find_prime_mod`].
pub const PRIME_SEARCH_LIMIT: u64 = 1_000_000;

/// Smallest prime `p ≡ 1 (mod 2β)`.
pub fn find_prime_mod(beta: usize) -> Result<u64> {
    if beta == 0 {
        return Err(Error::arg("β must be at least 1"));
    }
    let m = 2 * beta as u64;
    let mut p = m + 1;
    while p <= PRIME_SEARCH_LIMIT {
        if is_prime(p) {
            return Ok(p);
        }
        p += m;
    }
    Err(Error::NotFound(format!(
        "no prime ≡ 1 mod {m} below {PRIME_SEARCH_LIMIT}"
    )))
}

/// Fixed-point reals scaled by `2^bits`.
struct Fixed {
    bits: usize,
    one: BigInt,
}

impl Fixed {
    fn new(bits: usize) -> Self {
        Fixed {
            bits,
            one: BigInt::one() << bits,
        }
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    /// `atan(1/n)`.
    fn atan_inv(&self, n: u64) -> BigInt {
        let n = BigInt::from(n);
        let n2 = &n * &n;
        let mut power = &self.one / &n;
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &n2;
            k += 1;
        }
        sum
    }

    fn pi(&self) -> BigInt {
        self.atan_inv(5) * 16 - self.atan_inv(239) * 4
    }

    /// `cos θ` for `0 ≤ θ ≤ π`.
    fn cos(&self, theta: &BigInt) -> BigInt {
        let t2 = self.mul(theta, theta);
        let mut term = self.one.clone();
        let mut sum = self.one.clone();
        let mut k = 0u64;
        while !term.is_zero() {
            term = -self.mul(&term, &t2) / BigInt::from((2 * k + 1) * (2 * k + 2));
            sum += &term;
            k += 1;
        }
        sum
    }
}

/// Exponents of the index-β subgroup `H` of `(ℤ/p)^×` and its cosets `g^k H`, `k < β`.
fn period_cosets(p: u64, beta: usize) -> Vec<Vec<u64>> {
    let g = primitive_root(p);
    let order = (p - 1) / beta as u64;
    (0..beta as u64)
        .map(|k| {
            (0..order)
                .map(|j| pow_mod(g, k + beta as u64 * j, p))
                .collect()
        })
        .collect()
}

/// `Π (X - η_k)` evaluated numerically and rounded, `None` when a coefficient is not
/// within `2^-(bits/2)` of an integer.
fn numeric_period_polynomial(p: u64, cosets: &[Vec<u64>], bits: usize) -> Option<IntPolynomial> {
    let work = bits + 64;
    let fx = Fixed::new(work);
    let two_pi = fx.pi() * 2;
    let cos_at = |a: u64| {
        let a = a.min(p - a);
        fx.cos(&(&two_pi * BigInt::from(a) / BigInt::from(p)))
    };
    let mut poly = vec![fx.one.clone()];
    for coset in cosets {
        let eta: BigInt = coset.iter().map(|&a| cos_at(a)).sum();
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= fx.mul(&eta, c);
        }
        poly = next;
    }
    let tolerance = BigInt::one() << (work - bits / 2);
    let half = BigInt::one() << (work - 1);
    let mut coeffs = Vec::with_capacity(poly.len());
    for c in &poly {
        let rounded = (c + &half).div_floor(&fx.one);
        if (c - &rounded * &fx.one).abs() > tolerance {
            return None;
        }
        coeffs.push(rounded);
    }
    Some(IntPolynomial::new(coeffs))
}

/// Elements of `ℤ[x]/(x^p - 1)`; an element maps to zero in `ℤ[ζ_p]` iff its coefficients are all
/// equal.
fn vanishes_at_period(f: &IntPolynomial, p: u64, coset: &[u64]) -> bool {
    let p = p as usize;
    let mut acc = vec![BigInt::zero(); p];
    for c in f.coeffs().iter().rev() {
        let mut next = vec![BigInt::zero(); p];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &e in coset {
                next[(i + e as usize) % p] += a;
            }
        }
        next[0] += c;
        acc = next;
    }
    acc.iter().all(|a| a == &acc[0])
}

/// Checks that `f` is the minimal polynomial of the Gaussian periods of index β modulo `p`.
fn verify_period_polynomial(f: &IntPolynomial, p: u64, beta: usize, cosets: &[Vec<u64>]) -> Result<NumberField> {
    let field = NumberField::new(f.clone())?;
    if field.degree() != beta {
        return Err(Error::internal(format!("degree {} instead of {beta}", field.degree())));
    }
    if !field.is_totally_real() {
        return Err(Error::internal(format!("{f} is not totally real")));
    }
    let mut disc = field.discriminant().abs();
    let pb = BigInt::from(p);
    while !disc.is_zero() && (&disc % &pb).is_zero() {
        disc /= &pb;
    }
    if !disc.is_one() {
        return Err(Error::internal(format!("discriminant of {f} has prime factors other than {p}")));
    }
    if !vanishes_at_period(f, p, &cosets[0]) {
        return Err(Error::internal(format!("{f} does not vanish at the Gaussian period")));
    }
    Ok(field)
}

/// Degree-β subfield of `ℚ(ζ_p + ζ_p⁻¹)`, generated by a Gaussian period.
pub fn gaussian_period_field(p: u64, beta: usize) -> Result<NumberField> {
    gaussian_period_field_with_precision(p, beta, DEFAULT_PRECISION_BITS)
}

/// As [`gaussian_period_field`], starting at `bits` of working precision and doubling once.
pub fn gaussian_period_field_with_precision(p: u64, beta: usize, bits: u32) -> Result<NumberField> {
    if beta == 0 || !is_prime(p) || !(p - 1).is_multiple_of(2 * beta as u64) {
        return Err(Error::arg(format!("need a prime p ≡ 1 mod 2β, got p = {p}, β = {beta}")));
    }
    if bits < 16 {
        return Err(Error::arg("precision must be at least 16 bits"));
    }
    let cosets = period_cosets(p, beta);
    let mut last_err = Error::internal("period polynomial not attempted");
    for b in [bits as usize, 2 * bits as usize] {
        match numeric_period_polynomial(p, &cosets, b) {
            None => last_err = Error::internal(format!("period coefficients not integral at {b} bits")),
            Some(f) => match verify_period_polynomial(&f, p, beta, &cosets) {
                Ok(field) => return Ok(field),
                Err(e) => last_err = e,
            },
        }
    }
    Err(last_err)
}

/// Certified primes `l ≤ bound` with a single unramified place over them.
pub fn inert_primes(f0: &NumberField, bound: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for l in primes_up_to(bound) {
        let split = f0.splitting_type(l)?;
        if split.certified
            && split.places.len() == 1
            && split.places[0].ramification_index == 1
            && split.places[0].residue_degree == f0.degree()
        {
            out.push(l);
        }
    }
    Ok(out)
}

/// The quadratic generator adjoined to `F₀`: `δ = (1 + √-q)/2` when `q ≡ 3 (mod 4)`,
/// `δ = √-q` otherwise.
fn delta_poly(q: u64) -> IntPolynomial {
    if q % 4 == 3 {
        IntPolynomial::new(vec![BigInt::from((q + 1) / 4), BigInt::from(-1), BigInt::one()])
    } else {
        IntPolynomial::new(vec![BigInt::from(q), BigInt::zero(), BigInt::one()])
    }
}

/// `h(x - a·y)` as a polynomial in `y` for an integer `x`.
fn shifted(h: &IntPolynomial, x: i64, a: i64) -> IntPolynomial {
    h.compose(&IntPolynomial::from_i64(&[x, -a]))
}

/// Minimal polynomial of `b·δ` from that of `δ`: `b^deg h(z/b)`.
fn scaled_root_poly(h: &IntPolynomial, b: i64) -> IntPolynomial {
    let deg = h.degree().unwrap();
    let coeffs = h
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c * BigInt::from(b).pow((deg - k) as u32))
        .collect();
    IntPolynomial::new(coeffs)
}

/// `Res_y(f₀(y), h_b(x - a·y))`, the characteristic polynomial of `a·θ + b·δ`, by evaluation
/// at integers and interpolation.
fn compositum_poly(f0: &IntPolynomial, h: &IntPolynomial, a: i64, b: i64) -> Result<IntPolynomial> {
    let hb = scaled_root_poly(h, b);
    let deg = f0.degree().unwrap() * h.degree().unwrap();
    let points: Vec<i64> = (0..=deg as i64).collect();
    let values: Vec<Rational> = points
        .iter()
        .map(|&x| Rational::from_integer(resultant(f0, &shifted(&hb, x, a))))
        .collect();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|&x| {
            (0..=deg)
                .map(|k| Rational::from_integer(BigInt::from(x).pow(k as u32)))
                .collect()
        })
        .collect();
    let coeffs = RationalMatrix::from_rows(rows)?
        .solve(&values)
        .ok_or_else(|| Error::internal("interpolation system is singular"))?;
    let poly = QPolynomial::new(coeffs)
        .to_int()
        .ok_or_else(|| Error::internal("resultant interpolation is not integral"))?;
    let lead = poly.leading().cloned().unwrap_or_else(BigInt::zero);
    if lead.abs() != BigInt::one() {
        return Err(Error::internal("compositum polynomial is not monic"));
    }
    Ok(if lead.is_negative() { -&poly } else { poly })
}

type BiquadElt = (QPolynomial, QPolynomial);

/// Arithmetic in `ℚ[y, z]/(f₀(y), h(z))`, elements `(c₀(y), c₁(y))` meaning `c₀ + c₁ z`.
struct Biquad<'a> {
    f0: QPolynomial,
    h: &'a IntPolynomial,
}

impl Biquad<'_> {
    fn mul(&self, a: &BiquadElt, b: &BiquadElt) -> BiquadElt {
        // z² = -h₁ z - h₀
        let h0 = Rational::from_integer(self.h.coeffs()[0].clone());
        let h1 = Rational::from_integer(self.h.coeffs()[1].clone());
        let zz = &a.1 * &b.1;
        let c0 = &(&a.0 * &b.0) - &zz.scale(&h0);
        let c1 = &(&(&a.0 * &b.1) + &(&a.1 * &b.0)) - &zz.scale(&h1);
        (c0.rem(&self.f0), c1.rem(&self.f0))
    }

    /// Coordinates in the basis `y^i`, `y^i z`.
    fn coords(&self, a: &BiquadElt, beta: usize) -> Vec<Rational> {
        (0..beta).map(|i| a.0.coeff(i)).chain((0..beta).map(|i| a.1.coeff(i))).collect()
    }
}

/// `θ` written as a polynomial in `γ = a·θ + b·δ`.
fn theta_in_gamma(f0: &IntPolynomial, h: &IntPolynomial, a: i64, b: i64) -> Result<QPolynomial> {
    let beta = f0.degree().unwrap();
    let ring = Biquad { f0: f0.to_q(), h };
    let gamma = (
        QPolynomial::x().scale(&Rational::from_integer(a.into())),
        QPolynomial::constant(Rational::from_integer(b.into())),
    );
    let mut power = (QPolynomial::one(), QPolynomial::zero());
    let mut columns = Vec::with_capacity(2 * beta);
    for _ in 0..2 * beta {
        columns.push(ring.coords(&power, beta));
        power = ring.mul(&power, &gamma);
    }
    let m = RationalMatrix::from_columns(2 * beta, &columns);
    let theta = ring.coords(&(QPolynomial::x(), QPolynomial::zero()), beta);
    let c = m
        .solve(&theta)
        .ok_or_else(|| Error::internal("the generator does not generate the compositum"))?;
    Ok(QPolynomial::new(c))
}

/// The CM field `F = F₀(√-q)` with its generator `a·θ + b·δ` and complex conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmExtension {
    pub q: u64,
    pub generator: (i64, i64),
    pub field: NumberField,
    /// Complex conjugation as the image of the generator.
    pub sigma: QPolynomial,
}

/// Generator coefficients `(a, b)` tried in order by [`cm_extension_avoiding`].
pub fn generator_candidates() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for s in 2..=7i64 {
        for a in 1..s {
            out.push((a, s - a));
        }
    }
    out
}

/// `F₀(√-q)` generated by `a·θ + b·δ`; fails when that element does not generate a CM field
/// of degree `2β`.
pub fn cm_extension(f0: &NumberField, q: u64, generator: (i64, i64)) -> Result<CmExtension> {
    if !is_prime(q) {
        return Err(Error::arg(format!("{q} is not prime")));
    }
    let (a, b) = generator;
    if a == 0 || b == 0 {
        return Err(Error::arg("generator coefficients must be nonzero"));
    }
    let h = delta_poly(q);
    let g = compositum_poly(f0.min_poly(), &h, a, b)?;
    let field = match NumberField::new(g) {
        Ok(f) => f,
        Err(Error::InvalidArgument(msg)) => return Err(Error::internal(msg)),
        Err(e) => return Err(e),
    };
    if field.degree() != 2 * f0.degree() || field.real_embedding_count() != 0 {
        return Err(Error::internal("compositum is not a CM field of degree 2β"));
    }
    // σ fixes θ and sends δ to c - δ, so σ(γ) = 2aθ + bc - γ
    let theta = theta_in_gamma(f0.min_poly(), &h, a, b)?;
    let c = if q % 4 == 3 { b } else { 0 };
    let sigma = (&(&theta.scale(&Rational::from_integer((2 * a).into()))
        + &QPolynomial::constant(Rational::from_integer(c.into())))
        - &QPolynomial::x())
        .rem(&field.min_poly().to_q());
    field.check_involution(&sigma)?;
    Ok(CmExtension {
        q,
        generator,
        field,
        sigma,
    })
}

/// The first candidate generator whose minimal polynomial has discriminant prime to `avoid`.
pub fn cm_extension_avoiding(f0: &NumberField, q: u64, avoid: &[u64]) -> Result<CmExtension> {
    for generator in generator_candidates() {
        let cm = match cm_extension(f0, q, generator) {
            Ok(cm) => cm,
            Err(Error::Internal(_)) => continue,
            Err(e) => return Err(e),
        };
        if avoid.iter().all(|&l| cm.field.is_certified_prime(l)) {
            return Ok(cm);
        }
    }
    Err(Error::NotFound(format!(
        "no candidate generator of F₀(√-{q}) has discriminant prime to {avoid:?}"
    )))
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// Number of monic irreducible polynomials of degree `k` over `𝔽_l`.
pub fn irreducible_count(l: u64, k: usize) -> u128 {
    let total: i128 = (1..=k)
        .filter(|d| k.is_multiple_of(*d))
        .map(|d| mobius(d) as i128 * (l as i128).pow((k / d) as u32))
        .sum();
    (total / k as i128) as u128
}

/// Whether `l` splits in `F` into exactly two certified places of degree `β`, swapped by σ.
fn splits_in_two(cm: &CmExtension, l: u64, beta: usize) -> Result<bool> {
    let split = cm.field.splitting_type(l)?;
    let shape_ok = split.certified
        && split.places.len() == 2
        && split
            .places
            .iter()
            .all(|w| w.ramification_index == 1 && w.residue_degree == beta);
    if !shape_ok {
        return Ok(false);
    }
    let action = cm.field.conjugation_action_on_places(&cm.sigma, l)?;
    Ok(action.permutation == vec![1, 0])
}

/// Whether two places of degree β over `l` can be told apart by factoring one polynomial mod
/// `l`, which needs two distinct irreducible factors of degree β over `𝔽_l`.
pub fn separable_by_polynomial(l: u64, beta: usize) -> bool {
    irreducible_count(l, beta) >= 2
}

/// Smallest prime `q ≤ bound` outside `{l₁, l₂, p}` for which both `l_j` split in `F₀(√-q)`
/// into two places of degree `β` exchanged by complex conjugation.
pub fn choose_q(f0: &NumberField, p: u64, l1: u64, l2: u64, bound: u64) -> Result<CmExtension> {
    if l1 == l2 {
        return Err(Error::pre("the two inert primes must be distinct"));
    }
    let beta = f0.degree();
    for l in [l1, l2] {
        let split = f0.splitting_type(l)?;
        if !(split.certified && split.is_inert() && split.places[0].residue_degree == beta) {
            return Err(Error::pre(format!("{l} is not inert in F₀")));
        }
        if !separable_by_polynomial(l, beta) {
            return Err(Error::pre(format!(
                "two places of degree {beta} over {l} cannot be certified by factoring modulo {l}"
            )));
        }
    }
    for q in primes_up_to(bound) {
        if q == l1 || q == l2 || q == p || bigint_mod(f0.discriminant(), q) == 0 {
            continue;
        }
        let cm = match cm_extension_avoiding(f0, q, &[l1, l2]) {
            Ok(cm) => cm,
            Err(Error::NotFound(_)) => continue,
            Err(e) => return Err(e),
        };
        if splits_in_two(&cm, l1, beta)? && splits_in_two(&cm, l2, beta)? {
            return Ok(cm);
        }
    }
    Err(Error::NotFound(format!("no suitable q ≤ {bound}")))
}

/// One of the four places `w_{j,i}`; `partner` is the index of `σ(w)` over the same prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignatedPlace {
    pub prime: u64,
    pub place: usize,
    pub partner: usize,
    pub local_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForgeRecipe {
    pub beta: usize,
    pub p: u64,
    pub l1: u64,
    pub l2: u64,
    pub q: u64,
    /// `(a, b)` with `F` generated by `a·θ + b·δ`.
    pub generator: (i64, i64),
    pub f0: NumberFieldSpec,
    pub f: NumberFieldSpec,
    /// Complex conjugation of `F` as the image of its generator.
    #[serde(with = "serde_rational_vec")]
    pub sigma: Vec<Rational>,
    pub designated_places: Vec<DesignatedPlace>,
}

impl ForgeRecipe {
    pub fn cm_field(&self) -> Result<NumberField> {
        NumberField::from_spec(&self.f)
    }

    pub fn base_field(&self) -> Result<NumberField> {
        NumberField::from_spec(&self.f0)
    }

    /// `F` is cyclic over ℚ exactly when β is odd.
    pub fn cm_field_is_cyclic(&self) -> bool {
        self.beta % 2 == 1
    }
}

/// Knobs for [`forge`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForgeOptions {
    pub precision_bits: u32,
    pub inert_bound: u64,
    pub q_bound: u64,
}

impl Default for ForgeOptions {
    fn default() -> Self {
        ForgeOptions {
            precision_bits: DEFAULT_PRECISION_BITS,
            inert_bound: 1000,
            q_bound: 1000,
        }
    }
}

/// The full construction for β: `p`, `F₀`, the two smallest inert primes, `q` and the
/// designated places.
pub fn forge(beta: usize, opts: ForgeOptions) -> Result<ForgeRecipe> {
    let p = find_prime_mod(beta)?;
    let f0 = gaussian_period_field_with_precision(p, beta, opts.precision_bits)?;
    let beta = f0.degree();
    let inert: Vec<u64> = inert_primes(&f0, opts.inert_bound)?
        .into_iter()
        .filter(|&l| l != p && separable_by_polynomial(l, beta))
        .collect();
    if inert.len() < 2 {
        return Err(Error::NotFound(format!(
            "fewer than two inert primes below {}",
            opts.inert_bound
        )));
    }
    forge_from(&f0, p, inert[0], inert[1], opts)
}

/// The construction with prescribed inert primes.
pub fn forge_from(f0: &NumberField, p: u64, l1: u64, l2: u64, opts: ForgeOptions) -> Result<ForgeRecipe> {
    let beta = f0.degree();
    let cm = choose_q(f0, p, l1, l2, opts.q_bound)?;
    let mut designated = Vec::with_capacity(4);
    for l in [l1, l2] {
        let action = cm.field.conjugation_action_on_places(&cm.sigma, l)?;
        let split = cm.field.splitting_type(l)?;
        for (w, &partner) in action.permutation.iter().enumerate() {
            designated.push(DesignatedPlace {
                prime: l,
                place: w,
                partner,
                local_degree: split.places[w].local_degree(),
            });
        }
    }
    Ok(ForgeRecipe {
        beta,
        p,
        l1,
        l2,
        q: cm.q,
        generator: cm.generator,
        f0: f0.to_spec(),
        f: cm.field.to_spec(),
        sigma: cm.sigma.coeffs().to_vec(),
        designated_places: designated,
    })
}

fn same_center(desc: &AlbertDescriptor, recipe: &ForgeRecipe) -> Result<()> {
    if desc.center.min_poly().coeffs() != recipe.f.min_poly.as_slice() {
        return Err(Error::arg(format!(
            "center {} is not the forged field",
            desc.center.min_poly()
        )));
    }
    Ok(())
}

/// Membership of `D` in the set of central division algebras over the forged `F` with
/// `[D:F] = d²` and non-integral invariants at all four designated places.
pub fn d_iv_membership(desc: &AlbertDescriptor, recipe: &ForgeRecipe, d: usize) -> Result<bool> {
    same_center(desc, recipe)?;
    Ok(desc.degree_d == d
        && desc.albert_type == AlbertType::IV
        && recipe
            .designated_places
            .iter()
            .all(|w| !desc.inv_at(w.prime, w.place).is_zero())
        && validate_albert(desc).is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corollary1Report {
    pub summand: usize,
    pub in_d_iv: bool,
    /// `2β ≥ dim V_k / h`.
    pub dimension_ok: bool,
    pub divisor: usize,
    pub divisibility_ok: bool,
    pub member: bool,
}

/// The corollary's sufficient test for a point whose `k`-th summand lives over the forged field.
pub fn corollary1_check(point: &PointDescriptor, recipe: &ForgeRecipe, k: usize) -> Result<Corollary1Report> {
    let s = point
        .algebra
        .summands
        .get(k)
        .ok_or_else(|| Error::arg(format!("no summand {k}")))?;
    let d = s.algebra.degree_d;
    let in_d_iv = d_iv_membership(&s.algebra, recipe, d)?;
    let h = point.h();
    let dimension_ok = 2 * recipe.beta * h >= s.dim_v;
    let (m, beta) = (s.multiplicity, recipe.beta);
    let divisor = match d {
        1 => m * beta,
        2 => 4 * beta * m,
        _ => m * d * beta,
    };
    let divisibility_ok = divides_none(divisor, &point.profile.positive_dims());
    Ok(Corollary1Report {
        summand: k,
        in_d_iv,
        dimension_ok,
        divisor,
        divisibility_ok,
        member: in_d_iv && dimension_ok && divisibility_ok,
    })
}

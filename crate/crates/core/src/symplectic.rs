//! The standard symplectic form on ℚ^μ, Riemann relations with a formal scalar,
//! symplectic bases adapted to isotropic data and to labeled splittings, and the ideal of
//! trivial quadratic relations.
//!
//! `J_μ = [[0, -I], [I, 0]]` and the pairing is `⟨v, w⟩ = vᵀ J_μ⁻¹ w`, so that the standard
//! basis `e_1..e_g, f_1..f_g` (with `f_i = e_{g+i}`) satisfies `⟨e_i, f_j⟩ = δ_ij`.
//! A list of vectors `b_1..b_μ` is a symplectic basis exactly when the matrix `B` with these
//! columns satisfies `Bᵀ J_μ B = J_μ`.

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, RationalField};
use crate::exactnum::{Rational, RationalMatrix, Subspace, Vector};

fn check_even(mu: usize) -> Result<usize> {
    if mu == 0 || mu % 2 == 1 {
        return Err(Error::arg(format!("symplectic dimension must be positive and even, got {mu}")));
    }
    Ok(mu / 2)
}

/// `J_μ = [[0, -I], [I, 0]]`.
pub fn standard_form(mu: usize) -> Result<RationalMatrix> {
    let g = check_even(mu)?;
    let mut j = RationalMatrix::zeros(mu, mu);
    for i in 0..g {
        j[(i, g + i)] = -Rational::one();
        j[(g + i, i)] = Rational::one();
    }
    Ok(j)
}

/// `⟨v, w⟩ = vᵀ J⁻¹ w = Σ_i v_i w_{g+i} - v_{g+i} w_i`.
pub fn pairing(v: &[Rational], w: &[Rational]) -> Rational {
    let g = v.len() / 2;
    let mut acc = Rational::zero();
    for i in 0..g {
        if !v[i].is_zero() && !w[g + i].is_zero() {
            acc += &v[i] * &w[g + i];
        }
        if !v[g + i].is_zero() && !w[i].is_zero() {
            acc -= &v[g + i] * &w[i];
        }
    }
    acc
}

/// `Bᵀ J B` for the matrix `B` whose columns are `basis`.
pub fn gram_matrix(basis: &[Vector]) -> Result<RationalMatrix> {
    let mu = basis.len();
    let j = standard_form(mu)?;
    let b = RationalMatrix::from_columns(mu, basis);
    Ok(&(&b.transpose() * &j) * &b)
}

pub fn is_isotropic(vectors: &[Vector]) -> bool {
    vectors
        .iter()
        .enumerate()
        .all(|(i, v)| vectors[i + 1..].iter().all(|w| pairing(v, w).is_zero()))
}

/// Laurent polynomial in the formal variable λ with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i32, Rational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c·λ^k`.
    pub fn monomial(k: i32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut out = Laurent::zero();
        for (k, c) in terms {
            out = &out + &Laurent::monomial(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i32, Rational> {
        &self.terms
    }
}

impl std::ops::Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            let entry = terms.entry(*k).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        Laurent { terms }
    }
}

impl std::ops::Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out = &out + &Laurent::monomial(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format_rational(c),
                _ => format!("{}·λ^{k}", format_rational(c)),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// JSON entry: a rational, or an object mapping λ-exponents to rational coefficients.
impl Serialize for Laurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.terms.keys().all(|&k| k == 0) {
            let c = self.terms.get(&0).cloned().unwrap_or_else(Rational::zero);
            return RationalField(c).serialize(s);
        }
        let map: BTreeMap<String, RationalField> = self
            .terms
            .iter()
            .map(|(k, c)| (k.to_string(), RationalField(c.clone())))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Scalar(RationalField),
            Terms(BTreeMap<String, RationalField>),
        }
        match Raw::deserialize(d)? {
            Raw::Scalar(RationalField(c)) => Ok(Laurent::constant(c)),
            Raw::Terms(map) => {
                let mut terms = Vec::with_capacity(map.len());
                for (k, RationalField(c)) in map {
                    let exp: i32 = k
                        .parse()
                        .map_err(|_| de::Error::custom(format!("λ-exponent {k:?} is not an integer")))?;
                    terms.push((exp, c));
                }
                Ok(Laurent::from_terms(terms))
            }
        }
    }
}

/// Square matrix over `ℚ[λ, λ⁻¹]`, λ standing for `(2πi)^{-n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Laurent>>", into = "Vec<Vec<Laurent>>")]
pub struct ScalarMatrix {
    size: usize,
    entries: Vec<Laurent>,
}

impl TryFrom<Vec<Vec<Laurent>>> for ScalarMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Laurent>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::arg("scalar matrix must be square"));
        }
        Ok(ScalarMatrix {
            size: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }
}

impl From<ScalarMatrix> for Vec<Vec<Laurent>> {
    fn from(m: ScalarMatrix) -> Self {
        m.entries.chunks(m.size.max(1)).map(<[Laurent]>::to_vec).collect()
    }
}

impl ScalarMatrix {
    pub fn from_rational(m: &RationalMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::arg("scalar matrix must be square"));
        }
        Ok(ScalarMatrix {
            size: m.rows(),
            entries: m
                .to_rows()
                .into_iter()
                .flatten()
                .map(Laurent::constant)
                .collect(),
        })
    }

    /// `λ^k · m`.
    pub fn scaled(m: &RationalMatrix, k: i32) -> Result<Self> {
        let mut out = Self::from_rational(m)?;
        for e in &mut out.entries {
            *e = &*e * &Laurent::monomial(k, Rational::one());
        }
        Ok(out)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i * self.size + j]
    }

    fn mul(&self, rhs: &ScalarMatrix) -> ScalarMatrix {
        let n = self.size;
        let mut entries = vec![Laurent::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] = &entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        ScalarMatrix { size: n, entries }
    }

    fn transpose(&self) -> ScalarMatrix {
        let n = self.size;
        let mut entries = vec![Laurent::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j).clone();
            }
        }
        ScalarMatrix { size: n, entries }
    }

    /// `ᵗM J_μ M`.
    fn riemann_form(&self) -> Result<ScalarMatrix> {
        let j = ScalarMatrix::from_rational(&standard_form(self.size)?)?;
        Ok(self.transpose().mul(&j).mul(self))
    }
}

/// Whether `ᵗM J_μ M = λ^power J_μ` identically in λ.
pub fn riemann_check(m: &ScalarMatrix, mu: usize, power: i32) -> Result<bool> {
    check_even(mu)?;
    if m.size() != mu {
        return Err(Error::arg(format!(
            "matrix has size {} but μ = {mu}",
            m.size()
        )));
    }
    let lhs = m.riemann_form()?;
    let rhs = ScalarMatrix::scaled(&standard_form(mu)?, power)?;
    Ok(lhs == rhs)
}

/// The scalar `c` with `ᵗM J_μ M = c·J_μ`, when one exists.
pub fn riemann_multiplier(m: &ScalarMatrix) -> Result<Option<Laurent>> {
    let mu = m.size();
    let g = check_even(mu)?;
    let lhs = m.riemann_form()?;
    let c = lhs.get(g, 0).clone();
    let expected = ScalarMatrix::from_rational(&standard_form(mu)?)?;
    for i in 0..mu {
        for j in 0..mu {
            if *lhs.get(i, j) != expected.get(i, j) * &c {
                return Ok(None);
            }
        }
    }
    Ok(Some(c))
}

/// `e_1..e_g, f_1..f_g` with `⟨e_i, f_j⟩ = δ_ij` and all other pairings zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticBasis {
    #[serde(with = "vector_list")]
    pub e: Vec<Vector>,
    #[serde(with = "vector_list")]
    pub f: Vec<Vector>,
}

impl SymplecticBasis {
    /// Columns in the order `e_1..e_g, f_1..f_g`.
    pub fn vectors(&self) -> Vec<Vector> {
        self.e.iter().chain(&self.f).cloned().collect()
    }

    pub fn gram(&self) -> Result<RationalMatrix> {
        gram_matrix(&self.vectors())
    }

    pub fn is_standard_gram(&self) -> bool {
        let mu = self.e.len() + self.f.len();
        match (self.gram(), standard_form(mu)) {
            (Ok(g), Ok(j)) => g == j,
            _ => false,
        }
    }
}

fn add_scaled(v: &mut [Rational], c: &Rational, w: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in v.iter_mut().zip(w) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// Projection onto the symplectic complement of the hyperbolic pairs `(e_i, f_i)`.
fn project_out(u: &[Rational], e: &[Vector], f: &[Vector]) -> Vector {
    let mut out = u.to_vec();
    for (a, b) in e.iter().zip(f) {
        let along_a = pairing(b, u);
        let along_b = -pairing(a, u);
        add_scaled(&mut out, &along_a, a);
        add_scaled(&mut out, &along_b, b);
    }
    out
}

/// Completes hyperbolic pairs to a basis of the span of `pool` plus the pairs, by symplectic
/// Gram–Schmidt on the projections of `pool`.
fn complete_within(e: &mut Vec<Vector>, f: &mut Vec<Vector>, pool: &[Vector]) {
    let mut rest: Vec<Vector> = pool
        .iter()
        .map(|u| project_out(u, e, f))
        .filter(|u| u.iter().any(|x| !x.is_zero()))
        .collect();
    while let Some(a) = rest.first().cloned() {
        let partner = rest.iter().position(|u| !pairing(&a, u).is_zero());
        let Some(idx) = partner else {
            // `a` pairs trivially with everything left; the pool does not span a symplectic space
            rest.remove(0);
            continue;
        };
        let c = pairing(&a, &rest[idx]);
        let b: Vector = rest[idx].iter().map(|x| x / &c).collect();
        let new_e = vec![a.clone()];
        let new_f = vec![b.clone()];
        rest = rest
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != 0 && i != idx)
            .map(|(_, u)| project_out(u, &new_e, &new_f))
            .filter(|u| u.iter().any(|x| !x.is_zero()))
            .collect();
        e.push(a);
        f.push(b);
    }
}

fn standard_basis(mu: usize) -> Vec<Vector> {
    RationalMatrix::identity(mu).to_rows()
}

/// Returns the index of a vector lying in the span of the earlier ones.
fn first_dependent(vectors: &[Vector], mu: usize) -> Option<usize> {
    let mut span = Subspace::zero(mu);
    for (i, v) in vectors.iter().enumerate() {
        let next = span.sum(&Subspace::span(mu, std::slice::from_ref(v)));
        if next.dim() == span.dim() {
            return Some(i);
        }
        span = next;
    }
    None
}

fn check_vectors(vectors: &[Vector], mu: usize) -> Result<()> {
    if let Some(v) = vectors.iter().find(|v| v.len() != mu) {
        return Err(Error::arg(format!(
            "vector of length {} in a space of dimension {mu}",
            v.len()
        )));
    }
    Ok(())
}

fn isotropy_witness(vectors: &[Vector]) -> Option<(usize, usize)> {
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            if !pairing(&vectors[i], &vectors[j]).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Extends independent isotropic vectors `v_1..v_k` to a symplectic basis with `e_i = v_i`.
pub fn extend_isotropic(vectors: &[Vector], mu: usize) -> Result<SymplecticBasis> {
    let g = check_even(mu)?;
    check_vectors(vectors, mu)?;
    if vectors.len() > g {
        return Err(Error::pre(format!(
            "{} vectors cannot be isotropic in dimension {mu}",
            vectors.len()
        )));
    }
    if let Some(i) = first_dependent(vectors, mu) {
        return Err(Error::pre(format!(
            "vector {i} lies in the span of the preceding vectors"
        )));
    }
    if let Some((i, j)) = isotropy_witness(vectors) {
        return Err(Error::pre(format!(
            "vectors {i} and {j} pair to {}",
            format_rational(&pairing(&vectors[i], &vectors[j]))
        )));
    }
    let k = vectors.len();
    // f'_j with ⟨v_i, f'_j⟩ = δ_ij: rows of the system are v_iᵀ J⁻¹
    let rows: Vec<Vector> = vectors
        .iter()
        .map(|v| {
            let mut r = vec![Rational::zero(); mu];
            for i in 0..g {
                r[g + i] = v[i].clone();
                r[i] = -v[g + i].clone();
            }
            r
        })
        .collect();
    let system = RationalMatrix::from_rows(rows).expect("rectangular");
    let mut e: Vec<Vector> = Vec::with_capacity(g);
    let mut f: Vec<Vector> = Vec::with_capacity(g);
    for j in 0..k {
        let rhs: Vector = (0..k)
            .map(|i| if i == j { Rational::one() } else { Rational::zero() })
            .collect();
        let mut fj = system
            .solve(&rhs)
            .ok_or_else(|| Error::internal("dual system is inconsistent"))?;
        // make ⟨f_i, f_j⟩ = 0 for i < j by adding multiples of e_i
        for i in 0..j {
            let c = pairing(&f[i], &fj);
            add_scaled(&mut fj, &c, &vectors[i]);
        }
        e.push(vectors[j].clone());
        f.push(fj);
    }
    complete_within(&mut e, &mut f, &standard_basis(mu));
    let basis = SymplecticBasis { e, f };
    if basis.e.len() != g || !basis.is_standard_gram() {
        return Err(Error::internal("symplectic completion failed"));
    }
    Ok(basis)
}

/// How a block of a labeled splitting pairs with the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockPairing {
    SelfPaired,
    PairedWith(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub label: String,
    #[serde(with = "vector_list")]
    pub basis: Vec<Vector>,
    pub pairing: BlockPairing,
}

pub mod vector_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vector], s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<RationalField>> = v
            .iter()
            .map(|r| r.iter().cloned().map(RationalField).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vector>, D::Error> {
        let rows: Vec<Vec<RationalField>> = Vec::deserialize(d)?;
        Ok(rows
            .into_iter()
            .map(|r| r.into_iter().map(|RationalField(x)| x).collect())
            .collect())
    }
}

/// Decomposition of ℚ^μ into labeled blocks: symplectic blocks paired with themselves and
/// pairs of isotropic blocks `(σ, σ̄)` in duality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSplitting {
    pub mu: usize,
    pub blocks: Vec<Block>,
}

impl LabeledSplitting {
    fn block(&self, label: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.label == label)
    }

    /// Every violated structural requirement, empty when the splitting is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        if check_even(self.mu).is_err() {
            problems.push(format!("dimension {} is not positive and even", self.mu));
            return problems;
        }
        let mut labels = BTreeSet::new();
        for b in &self.blocks {
            if !labels.insert(b.label.as_str()) {
                problems.push(format!("label {} used twice", b.label));
            }
            if b.basis.iter().any(|v| v.len() != self.mu) {
                problems.push(format!("block {} has vectors of the wrong length", b.label));
                return problems;
            }
        }
        let all: Vec<Vector> = self.blocks.iter().flat_map(|b| b.basis.clone()).collect();
        if all.len() != self.mu || Subspace::span(self.mu, &all).dim() != self.mu {
            problems.push("blocks do not form a direct sum decomposition of the space".into());
        }
        for b in &self.blocks {
            match &b.pairing {
                BlockPairing::SelfPaired => {
                    if !pairing_matrix(&b.basis, &b.basis).inverse().is_some() {
                        problems.push(format!("self-paired block {} is not symplectic", b.label));
                    }
                }
                BlockPairing::PairedWith(other) => {
                    if !is_isotropic(&b.basis) {
                        problems.push(format!("paired block {} is not isotropic", b.label));
                    }
                    match self.block(other) {
                        None => problems.push(format!("block {} pairs with unknown label {other}", b.label)),
                        Some(partner) => {
                            if partner.pairing != BlockPairing::PairedWith(b.label.clone()) {
                                problems.push(format!(
                                    "blocks {} and {other} do not name each other",
                                    b.label
                                ));
                            } else if partner.basis.len() != b.basis.len()
                                || pairing_matrix(&b.basis, &partner.basis).inverse().is_none()
                            {
                                problems.push(format!(
                                    "blocks {} and {other} are not in perfect duality",
                                    b.label
                                ));
                            }
                        }
                    }
                }
            }
        }
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                if a.pairing == BlockPairing::PairedWith(b.label.clone()) {
                    continue;
                }
                let orthogonal = a
                    .basis
                    .iter()
                    .all(|v| b.basis.iter().all(|w| pairing(v, w).is_zero()));
                if !orthogonal {
                    problems.push(format!(
                        "blocks {} and {} are not skew-orthogonal",
                        a.label, b.label
                    ));
                }
            }
        }
        problems
    }

    /// Components of `v` in each block, in block order.
    fn components(&self, v: &[Rational]) -> Result<Vec<Vector>> {
        let all: Vec<Vector> = self.blocks.iter().flat_map(|b| b.basis.clone()).collect();
        let m = RationalMatrix::from_columns(self.mu, &all);
        let coords = m
            .solve(v)
            .ok_or_else(|| Error::internal("blocks do not span the space"))?;
        let mut out = Vec::with_capacity(self.blocks.len());
        let mut offset = 0;
        for b in &self.blocks {
            let mut comp = vec![Rational::zero(); self.mu];
            for (c, w) in coords[offset..offset + b.basis.len()].iter().zip(&b.basis) {
                add_scaled(&mut comp, c, w);
            }
            offset += b.basis.len();
            out.push(comp);
        }
        Ok(out)
    }
}

/// `P_ij = ⟨a_i, b_j⟩`.
fn pairing_matrix(a: &[Vector], b: &[Vector]) -> RationalMatrix {
    let rows: Vec<Vector> = a
        .iter()
        .map(|v| b.iter().map(|w| pairing(v, w)).collect())
        .collect();
    if rows.is_empty() {
        return RationalMatrix::zeros(0, 0);
    }
    RationalMatrix::from_rows(rows).expect("rectangular")
}

/// Vectors of `partner` dual to `basis`: `⟨basis_i, out_j⟩ = δ_ij`.
fn dual_in(basis: &[Vector], partner: &[Vector], mu: usize) -> Result<Vec<Vector>> {
    let p = pairing_matrix(basis, partner);
    let c = p
        .inverse()
        .ok_or_else(|| Error::pre("vectors are not in perfect duality with the partner block"))?;
    Ok((0..basis.len())
        .map(|j| {
            let mut v = vec![Rational::zero(); mu];
            for (m, w) in partner.iter().enumerate() {
                add_scaled(&mut v, &c[(m, j)], w);
            }
            v
        })
        .collect())
}

fn validated(split: &LabeledSplitting) -> Result<()> {
    let problems = split.validate();
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::arg(format!("invalid splitting: {}", problems.join("; "))))
    }
}

fn paired_block<'a>(split: &'a LabeledSplitting, tau: &str) -> Result<(&'a Block, &'a Block)> {
    let block = split
        .block(tau)
        .ok_or_else(|| Error::arg(format!("no block labeled {tau}")))?;
    let BlockPairing::PairedWith(bar) = &block.pairing else {
        return Err(Error::arg(format!("block {tau} is self-paired")));
    };
    let partner = split.block(bar).expect("validated splitting");
    Ok((block, partner))
}

/// A symplectic basis `e, f` with `e_j = γ_j` and `f_j ∈ Ŵ_τ` for `j ≤ h`.
pub fn labeled_basis(split: &LabeledSplitting, gamma: &[Vector], tau: &str) -> Result<SymplecticBasis> {
    validated(split)?;
    let mu = split.mu;
    check_vectors(gamma, mu)?;
    let (tau_block, bar_block) = paired_block(split, tau)?;
    let h = gamma.len();
    if tau_block.basis.len() != h {
        return Err(Error::arg(format!(
            "block {tau} has dimension {} but {h} vectors were given",
            tau_block.basis.len()
        )));
    }
    if let Some((i, j)) = isotropy_witness(gamma) {
        return Err(Error::pre(format!("γ_{i} and γ_{j} are not orthogonal")));
    }
    let bar_index = split
        .blocks
        .iter()
        .position(|b| b.label == bar_block.label)
        .expect("present");
    let comps: Vec<Vector> = gamma
        .iter()
        .map(|g| split.components(g).map(|c| c[bar_index].clone()))
        .collect::<Result<_>>()?;
    if Subspace::span(mu, &comps).dim() < h {
        return Err(Error::pre(format!(
            "the components of γ in block {} are linearly dependent, so a linear relation exists instead",
            bar_block.label
        )));
    }
    // only the Ŵ_τ̄ components pair with Ŵ_τ, so the dual of the components is dual to γ
    let f_tau = dual_in(&comps, &tau_block.basis, mu)?;
    let mut e = gamma.to_vec();
    let mut f = f_tau;
    complete_within(&mut e, &mut f, &standard_basis(mu));
    let basis = SymplecticBasis { e, f };
    if basis.e.len() != mu / 2 || !basis.is_standard_gram() {
        return Err(Error::internal("labeled symplectic completion failed"));
    }
    Ok(basis)
}

/// Symplectic basis built block by block; `e_labels[i]`, `f_labels[i]` name the block holding
/// `e_i`, `f_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledBasis {
    pub basis: SymplecticBasis,
    pub e_labels: Vec<String>,
    pub f_labels: Vec<String>,
}

fn push_pair(
    a: &Block,
    b: &Block,
    mu: usize,
    e: &mut Vec<Vector>,
    f: &mut Vec<Vector>,
    e_labels: &mut Vec<String>,
    f_labels: &mut Vec<String>,
) -> Result<()> {
    let dual = dual_in(&a.basis, &b.basis, mu)?;
    for (x, y) in a.basis.iter().zip(dual) {
        e.push(x.clone());
        f.push(y);
        e_labels.push(a.label.clone());
        f_labels.push(b.label.clone());
    }
    Ok(())
}

/// Basis whose `e` span a Lagrangian assembled from the blocks, with no `e_i` in `Ŵ_τ`,
/// `f_1..f_h ∈ Ŵ_τ` (`h = dim Ŵ_τ`) and every other `f_i` outside `Ŵ_τ`.
pub fn dual_labeled_basis(split: &LabeledSplitting, tau: &str) -> Result<LabeledBasis> {
    validated(split)?;
    let mu = split.mu;
    let (tau_block, bar_block) = paired_block(split, tau)?;
    let mut e = Vec::new();
    let mut f = Vec::new();
    let mut e_labels = Vec::new();
    let mut f_labels = Vec::new();

    push_pair(bar_block, tau_block, mu, &mut e, &mut f, &mut e_labels, &mut f_labels)?;
    let mut done: BTreeSet<&str> = BTreeSet::from([tau_block.label.as_str(), bar_block.label.as_str()]);
    for b in &split.blocks {
        if done.contains(b.label.as_str()) {
            continue;
        }
        match &b.pairing {
            BlockPairing::PairedWith(other) => {
                let partner = split.block(other).expect("validated");
                push_pair(b, partner, mu, &mut e, &mut f, &mut e_labels, &mut f_labels)?;
                done.insert(other.as_str());
            }
            BlockPairing::SelfPaired => {
                let mut be = Vec::new();
                let mut bf = Vec::new();
                complete_within(&mut be, &mut bf, &b.basis);
                for (x, y) in be.into_iter().zip(bf) {
                    e.push(x);
                    f.push(y);
                    e_labels.push(b.label.clone());
                    f_labels.push(b.label.clone());
                }
            }
        }
        done.insert(b.label.as_str());
    }
    let basis = SymplecticBasis { e, f };
    if basis.e.len() != mu / 2 || !basis.is_standard_gram() {
        return Err(Error::internal("block-by-block basis is not symplectic"));
    }
    Ok(LabeledBasis {
        basis,
        e_labels,
        f_labels,
    })
}

/// Variable `x_{row,col}` of a μ×h matrix, 1-based.
pub type Var = (usize, usize);

/// Polynomial of degree ≤ 2 in the entries of a μ×h matrix of indeterminates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuadraticRelation {
    /// Monomial (sorted variable list of length 0..=2) to coefficient.
    terms: BTreeMap<Vec<Var>, Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    vars: Vec<Var>,
    coeff: RationalField,
}

impl Serialize for QuadraticRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<RawTerm> = self
            .terms
            .iter()
            .map(|(vars, c)| RawTerm {
                vars: vars.clone(),
                coeff: RationalField(c.clone()),
            })
            .collect();
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticRelation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<RawTerm> = Vec::deserialize(d)?;
        let mut rel = QuadraticRelation::default();
        for t in raw {
            if t.vars.len() > 2 {
                return Err(de::Error::custom("monomials of degree above 2 are not supported"));
            }
            rel.add_term(t.vars, t.coeff.0);
        }
        Ok(rel)
    }
}

impl QuadraticRelation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, mut vars: Vec<Var>, c: Rational) {
        vars.sort_unstable();
        let entry = self.terms.entry(vars.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&vars);
        }
    }

    pub fn term(vars: Vec<Var>, c: Rational) -> Self {
        let mut r = Self::zero();
        r.add_term(vars, c);
        r
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Var>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the highest monomial, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let degrees: BTreeSet<usize> = self.terms.keys().map(Vec::len).collect();
        degrees.len() <= 1
    }

    pub fn add(&self, other: &QuadraticRelation) -> QuadraticRelation {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> QuadraticRelation {
        let mut out = QuadraticRelation::zero();
        for (v, x) in &self.terms {
            out.add_term(v.clone(), x * c);
        }
        out
    }
}

impl fmt::Display for QuadraticRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(vars, c)| {
                let mono: Vec<String> = vars.iter().map(|(r, c)| format!("x{r}_{c}")).collect();
                format!("{}·{}", format_rational(c), mono.join("·"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `ᵗb_i J_μ b_j`, flagged when identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub i: usize,
    pub j: usize,
    pub relation: QuadraticRelation,
    pub identically_zero: bool,
}

/// `{ ᵗb_i J_μ b_j : 1 ≤ i ≤ j ≤ h }` where `b_i` is the i-th column of a μ×h matrix.
pub fn trivial_ideal_generators(mu: usize, h: usize) -> Result<Vec<Generator>> {
    let g = check_even(mu)?;
    if h == 0 || h > g {
        return Err(Error::arg(format!("need 1 ≤ h ≤ μ/2, got h = {h}, μ = {mu}")));
    }
    let mut out = Vec::new();
    for i in 1..=h {
        for j in i..=h {
            let mut rel = QuadraticRelation::zero();
            for r in 1..=g {
                // J_{r,g+r} = -1, J_{g+r,r} = 1
                rel.add_term(vec![(r, i), (g + r, j)], -Rational::one());
                rel.add_term(vec![(g + r, i), (r, j)], Rational::one());
            }
            out.push(Generator {
                i,
                j,
                identically_zero: rel.is_zero(),
                relation: rel,
            });
        }
    }
    Ok(out)
}

fn monomial_space_dim(mu: usize, h: usize) -> usize {
    let n = mu * h;
    n * (n + 1) / 2
}

/// Coordinates of a quadric in the monomial basis `x_a x_b`, `a ≤ b`, variables flattened
/// row by row.
fn coefficient_vector(rel: &QuadraticRelation, mu: usize, h: usize) -> Vector {
    let n = mu * h;
    let flat = |(r, c): Var| (r - 1) * h + (c - 1);
    let mut v = vec![Rational::zero(); monomial_space_dim(mu, h)];
    for (vars, c) in &rel.terms {
        let (a, b) = (flat(vars[0]), flat(vars[1]));
        // pairs (a', b') with a' < a come first, n - a' of them each
        let offset = a * n - a * a.saturating_sub(1) / 2;
        v[offset + (b - a)] = c.clone();
    }
    v
}

/// Whether `rel` lies in the ideal generated by the trivial relations.
pub fn is_trivial_relation(rel: &QuadraticRelation, mu: usize, h: usize) -> Result<bool> {
    let gens = trivial_ideal_generators(mu, h)?;
    for vars in rel.terms.keys() {
        if let Some(&(r, c)) = vars.iter().find(|&&(r, c)| r == 0 || r > mu || c == 0 || c > h) {
            return Err(Error::arg(format!(
                "variable x{r}_{c} outside the {mu}×{h} matrix"
            )));
        }
    }
    if !rel.is_homogeneous() {
        return Err(Error::arg("relation is not homogeneous"));
    }
    match rel.degree() {
        None => Ok(true),
        Some(0) | Some(1) => Ok(false),
        Some(_) => {
            let span: Vec<Vector> = gens
                .iter()
                .filter(|g| !g.identically_zero)
                .map(|g| coefficient_vector(&g.relation, mu, h))
                .collect();
            let dim = monomial_space_dim(mu, h);
            let space = Subspace::span(dim, &span);
            Ok(space.contains(&coefficient_vector(rel, mu, h)))
        }
    }
}

//! Nilpotent operators and their weight monodromy filtrations.
//!
//! The filtration centered at `n` is computed from kernels and images of powers of `N`
//! and then checked against its two defining properties, so a bookkeeping mistake in the
//! formula surfaces as an internal error instead of a wrong profile.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, RationalMatrix, Subspace};

/// Square matrix `N` over ℚ with `N^μ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOperator {
    matrix: RationalMatrix,
    /// Least `k` with `N^k = 0`.
    nilpotency: usize,
}

impl NilpotentOperator {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::arg(format!(
                "operator must be square, got {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let mu = matrix.rows();
        let mut power = RationalMatrix::identity(mu);
        for k in 0..=mu {
            if power.is_zero() {
                return Ok(NilpotentOperator {
                    matrix,
                    nilpotency: k,
                });
            }
            power = &power * &matrix;
        }
        Err(Error::arg("matrix is not nilpotent"))
    }

    pub fn zero(mu: usize) -> Self {
        NilpotentOperator {
            matrix: RationalMatrix::zeros(mu, mu),
            nilpotency: if mu == 0 { 0 } else { 1 },
        }
    }

    /// Direct sum of Jordan blocks `J_k` (ones on the superdiagonal) of the given sizes.
    pub fn from_jordan_type(sizes: &[usize]) -> Self {
        let mu: usize = sizes.iter().sum();
        let mut m = RationalMatrix::zeros(mu, mu);
        let mut start = 0;
        for &k in sizes {
            for i in start..start + k.saturating_sub(1) {
                m[(i, i + 1)] = Rational::from_integer(1.into());
            }
            start += k;
        }
        NilpotentOperator::new(m).expect("Jordan blocks are nilpotent")
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `rank N^k` for `k = 0..=nilpotency`.
    pub fn power_ranks(&self) -> Vec<usize> {
        let mut ranks = Vec::with_capacity(self.nilpotency + 1);
        let mut power = RationalMatrix::identity(self.size());
        for _ in 0..=self.nilpotency {
            ranks.push(power.rank());
            power = &power * &self.matrix;
        }
        ranks
    }

    /// Jordan block sizes, largest first.
    pub fn jordan_type(&self) -> Vec<usize> {
        let r = self.power_ranks();
        // blocks of size ≥ k: r[k-1] - r[k]
        let at_least: Vec<usize> = (1..r.len()).map(|k| r[k - 1] - r[k]).collect();
        let mut sizes = Vec::new();
        for k in (1..=at_least.len()).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            sizes.extend(std::iter::repeat_n(k, exactly));
        }
        sizes
    }

    /// `P · aN · P⁻¹`.
    pub fn conjugate_scaled(&self, p: &RationalMatrix, a: &Rational) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::arg("conjugating matrix is singular"))?;
        if a.is_zero() {
            return Err(Error::arg("scaling factor must be nonzero"));
        }
        let m = &(&(p * &self.matrix.scale(a)) * &inv);
        NilpotentOperator::new(m.clone())
    }
}

impl Serialize for NilpotentOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NilpotentOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = RationalMatrix::deserialize(d)?;
        NilpotentOperator::new(m).map_err(serde::de::Error::custom)
    }
}

/// Center `n` with graded dimensions `h_0, ..., h_{2n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct FiltrationProfile {
    n: usize,
    dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    n: usize,
    dims: Vec<usize>,
}

impl TryFrom<RawProfile> for FiltrationProfile {
    type Error = Error;
    fn try_from(raw: RawProfile) -> Result<Self> {
        FiltrationProfile::new(raw.n, raw.dims)
    }
}

impl From<FiltrationProfile> for RawProfile {
    fn from(p: FiltrationProfile) -> Self {
        RawProfile { n: p.n, dims: p.dims }
    }
}

impl FiltrationProfile {
    /// Checks length `2n + 1` and the symmetry `h_{n+i} = h_{n-i}`.
    pub fn new(n: usize, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != 2 * n + 1 {
            return Err(Error::arg(format!(
                "profile centered at {n} needs {} entries, got {}",
                2 * n + 1,
                dims.len()
            )));
        }
        for i in 1..=n {
            if dims[n + i] != dims[n - i] {
                return Err(Error::arg(format!(
                    "profile is not symmetric: h_{} = {} but h_{} = {}",
                    n + i,
                    dims[n + i],
                    n - i,
                    dims[n - i]
                )));
            }
        }
        Ok(FiltrationProfile { n, dims })
    }

    pub fn center(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mu(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `h = h_0 = dim W_0`.
    pub fn h(&self) -> usize {
        self.dims[0]
    }

    pub fn h_max(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    /// The nonzero graded dimensions, in index order.
    pub fn positive_dims(&self) -> Vec<usize> {
        self.dims.iter().copied().filter(|&d| d > 0).collect()
    }

    fn dim_at(&self, idx: usize) -> i64 {
        self.dims.get(idx).map_or(0, |&d| d as i64)
    }

    /// `b_k = h_{n+k-1} - h_{n+k+1}` for `k = 1..=n+1`: the number of Jordan blocks of size `k`
    /// of any operator realizing the profile.
    pub fn block_counts(&self) -> Vec<(usize, i64)> {
        (1..=self.n + 1)
            .map(|k| (k, self.dim_at(self.n + k - 1) - self.dim_at(self.n + k + 1)))
            .collect()
    }

    /// Whether some nilpotent operator has this profile.
    pub fn is_realizable(&self) -> bool {
        self.block_counts().iter().all(|&(_, b)| b >= 0)
    }

    /// Jordan type (largest first) realizing the profile.
    pub fn jordan_type(&self) -> Result<Vec<usize>> {
        if !self.is_realizable() {
            return Err(self.unrealizable_error());
        }
        let mut sizes = Vec::new();
        for (k, b) in self.block_counts().into_iter().rev() {
            sizes.extend(std::iter::repeat_n(k, b as usize));
        }
        Ok(sizes)
    }

    fn unrealizable_error(&self) -> Error {
        let (k, b) = self
            .block_counts()
            .into_iter()
            .find(|&(_, b)| b < 0)
            .expect("called on an unrealizable profile");
        Error::arg(format!(
            "profile {:?} is not realized by any nilpotent operator (block count b_{k} = {b})",
            self.dims
        ))
    }
}

/// `dim im N` for any `N` realizing the profile: `μ - h_n - h_{n+1}`.
pub fn dim_im_from_profile(profile: &FiltrationProfile) -> Result<usize> {
    if !profile.is_realizable() {
        return Err(profile.unrealizable_error());
    }
    let n = profile.n;
    let blocks = profile.dims[n] + profile.dims.get(n + 1).copied().unwrap_or(0);
    Ok(profile.mu() - blocks)
}

/// Ascending chain `W_0 ⊆ ... ⊆ W_{2n}` with its profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltration {
    pub center: usize,
    pub subspaces: Vec<Subspace>,
    pub profile: FiltrationProfile,
}

impl WeightFiltration {
    fn get(&self, i: i64) -> Subspace {
        let mu = self.subspaces[0].ambient();
        if i < 0 {
            Subspace::zero(mu)
        } else if i as usize >= self.subspaces.len() {
            Subspace::full(mu)
        } else {
            self.subspaces[i as usize].clone()
        }
    }

    /// Checks every defining property of the weight filtration of `op` centered at `n`;
    /// returns a description of the first failure.
    pub fn verify(&self, op: &NilpotentOperator) -> std::result::Result<(), String> {
        let n = self.center as i64;
        let mu = op.size();
        let top = 2 * n;
        if self.get(top).dim() != mu {
            return Err(format!("W_{top} is not the whole space"));
        }
        for i in 1..=top {
            if !self.get(i - 1).is_subspace_of(&self.get(i)) {
                return Err(format!("W_{} is not contained in W_{i}", i - 1));
            }
        }
        for i in 0..=top {
            if !self.get(i).map(op.matrix()).is_subspace_of(&self.get(i - 2)) {
                return Err(format!("N·W_{i} is not contained in W_{}", i - 2));
            }
        }
        for i in 1..=n {
            let power = op.matrix().pow(i as usize);
            let source = self.get(n + i);
            let target_below = self.get(n - i - 1);
            let gr_source = source.dim() - self.get(n + i - 1).dim();
            let gr_target = self.get(n - i).dim() - target_below.dim();
            if gr_source != gr_target {
                return Err(format!(
                    "gr_{} and gr_{} have different dimensions",
                    n + i,
                    n - i
                ));
            }
            if !source.map(&power).is_subspace_of(&self.get(n - i)) {
                return Err(format!("N^{i}·W_{} is not contained in W_{}", n + i, n - i));
            }
            // injectivity on gr: {v ∈ W_{n+i} : N^i v ∈ W_{n-i-1}} must be W_{n+i-1}
            let preimage = preimage_within(&source, &power, &target_below);
            if preimage.dim() != self.get(n + i - 1).dim() {
                return Err(format!(
                    "N^{i} does not induce an isomorphism gr_{} → gr_{}",
                    n + i,
                    n - i
                ));
            }
        }
        Ok(())
    }
}

/// `{v ∈ source : m·v ∈ target}`.
fn preimage_within(source: &Subspace, m: &RationalMatrix, target: &Subspace) -> Subspace {
    let mu = source.ambient();
    let images: Vec<Vec<Rational>> = source.basis().iter().map(|v| m.mul_vec(v)).collect();
    let mut cols = images;
    cols.extend(
        target
            .basis()
            .iter()
            .map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    let system = RationalMatrix::from_columns(m.rows(), &cols);
    let k = source.dim();
    let vectors: Vec<Vec<Rational>> = system
        .kernel()
        .into_iter()
        .map(|coef| {
            let mut v = vec![Rational::zero(); mu];
            for (c, b) in coef[..k].iter().zip(source.basis()) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            v
        })
        .collect();
    Subspace::span(mu, &vectors)
}

/// The weight monodromy filtration of `op` centered at `n`.
pub fn weight_filtration(op: &NilpotentOperator, n: usize) -> Result<WeightFiltration> {
    if op.nilpotency_degree() > n + 1 {
        return Err(Error::pre(format!(
            "N^{} ≠ 0 but the filtration centered at {n} needs N^{} = 0",
            n + 1,
            n + 1
        )));
    }
    let mu = op.size();
    let nil = op.nilpotency_degree();
    let mut powers = vec![RationalMatrix::identity(mu)];
    for k in 1..=(2 * n + 2).max(nil) {
        powers.push(&powers[k - 1] * op.matrix());
    }
    let kernel = |k: usize| {
        if k >= nil {
            Subspace::full(mu)
        } else {
            powers[k].kernel_space()
        }
    };
    let image = |k: usize| {
        if k >= nil {
            Subspace::zero(mu)
        } else {
            powers[k].image()
        }
    };
    let mut subspaces = Vec::with_capacity(2 * n + 1);
    for idx in 0..=2 * n {
        let i = idx as i64 - n as i64;
        let mut w = Subspace::zero(mu);
        let start = (-i).max(0) as usize;
        for j in start..nil.max(1) {
            let k = (i + j as i64 + 1) as usize;
            w = w.sum(&kernel(k).intersection(&image(j)));
        }
        subspaces.push(w);
    }
    let mut dims = Vec::with_capacity(2 * n + 1);
    for idx in 0..=2 * n {
        let below = if idx == 0 { 0 } else { subspaces[idx - 1].dim() };
        dims.push(subspaces[idx].dim() - below);
    }
    let profile = FiltrationProfile::new(n, dims)
        .map_err(|e| Error::internal(format!("computed profile is invalid: {e}")))?;
    let filtration = WeightFiltration {
        center: n,
        subspaces,
        profile,
    };
    filtration
        .verify(op)
        .map_err(|e| Error::internal(format!("computed filtration fails its axioms: {e}")))?;
    Ok(filtration)
}

/// Whether the profile of `op` equals that of `P·aN·P⁻¹`.
pub fn profile_invariance_check(
    op: &NilpotentOperator,
    p: &RationalMatrix,
    a: &Rational,
    n: usize,
) -> Result<bool> {
    let other = op.conjugate_scaled(p, a)?;
    Ok(weight_filtration(op, n)?.profile == weight_filtration(&other, n)?.profile)
}

/// `Q_L · N · Q_R = N_red` with `Q_L`, `Q_R` unipotent upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentReduction {
    pub q_left: RationalMatrix,
    pub q_right: RationalMatrix,
    pub reduced: RationalMatrix,
}

/// Reduces a strictly upper triangular `N` to a matrix with at most one nonzero entry in
/// every row and column, using only unipotent upper triangular row and column operations.
pub fn nilpotent_reduce(n: &RationalMatrix) -> Result<NilpotentReduction> {
    if !n.is_strictly_upper_triangular() {
        return Err(Error::pre("operator is not strictly upper triangular"));
    }
    let mu = n.rows();
    let mut m = n.clone();
    let mut ql = RationalMatrix::identity(mu);
    let mut qr = RationalMatrix::identity(mu);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for i in (0..mu).rev() {
        // clear entries sitting in pivot columns of lower rows: row_i -= c·row_r
        for &(r, c) in &pivots {
            if m[(i, c)].is_zero() {
                continue;
            }
            let factor = &m[(i, c)] / &m[(r, c)];
            for j in 0..mu {
                if !m[(r, j)].is_zero() {
                    let v = &m[(i, j)] - &factor * &m[(r, j)];
                    m[(i, j)] = v;
                }
                if !ql[(r, j)].is_zero() {
                    let v = &ql[(i, j)] - &factor * &ql[(r, j)];
                    ql[(i, j)] = v;
                }
            }
        }
        let Some(c) = (0..mu).find(|&j| !m[(i, j)].is_zero()) else {
            continue;
        };
        // clear the rest of row i: col_j -= t·col_c for j > c
        for j in c + 1..mu {
            if m[(i, j)].is_zero() {
                continue;
            }
            let factor = &m[(i, j)] / &m[(i, c)];
            for r in 0..mu {
                if !m[(r, c)].is_zero() {
                    let v = &m[(r, j)] - &factor * &m[(r, c)];
                    m[(r, j)] = v;
                }
                if !qr[(r, c)].is_zero() {
                    let v = &qr[(r, j)] - &factor * &qr[(r, c)];
                    qr[(r, j)] = v;
                }
            }
        }
        pivots.push((i, c));
    }
    Ok(NilpotentReduction {
        q_left: ql,
        q_right: qr,
        reduced: m,
    })
}

/// Outcome of comparing the torus in the centralizer of `N` against `μ - rank N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusBound {
    pub bound: usize,
    pub centralizer_torus_dim: usize,
    pub centralizer_dim: usize,
    pub ok: bool,
}

/// Largest size accepted by [`torus_bound_check`].
pub const TORUS_CHECK_MAX: usize = 8;

pub fn torus_bound_check(op: &NilpotentOperator) -> Result<TorusBound> {
    let mu = op.size();
    if mu > TORUS_CHECK_MAX {
        return Err(Error::pre(format!(
            "torus check supports μ ≤ {TORUS_CHECK_MAX}, got {mu}"
        )));
    }
    let sizes = op.jordan_type();
    let centralizer_dim = centralizer_dimension(op.matrix());
    let expected: usize = sizes
        .iter()
        .flat_map(|&a| sizes.iter().map(move |&b| a.min(b)))
        .sum();
    if centralizer_dim != expected {
        return Err(Error::internal(format!(
            "centralizer has dimension {centralizer_dim}, Jordan type {sizes:?} predicts {expected}"
        )));
    }
    let bound = mu - op.rank();
    let torus = sizes.len();
    Ok(TorusBound {
        bound,
        centralizer_torus_dim: torus,
        centralizer_dim,
        ok: torus <= bound,
    })
}

/// `dim {X : NX = XN}` by solving the μ²-dimensional linear system.
fn centralizer_dimension(n: &RationalMatrix) -> usize {
    let mu = n.rows();
    let mut system = RationalMatrix::zeros(mu * mu, mu * mu);
    // (NX - XN)_{ij} = Σ_k N_ik X_kj - X_ik N_kj, unknown X_ab at column a·μ + b
    for i in 0..mu {
        for j in 0..mu {
            let row = i * mu + j;
            for k in 0..mu {
                if !n[(i, k)].is_zero() {
                    system[(row, k * mu + j)] += &n[(i, k)];
                }
                if !n[(k, j)].is_zero() {
                    system[(row, i * mu + k)] -= &n[(k, j)];
                }
            }
        }
    }
    mu * mu - system.rank()
}

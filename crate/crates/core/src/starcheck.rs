//! The arithmetic conditions ⋆₁–⋆₇ on a point descriptor, the remedy inequalities, proximity
//! exclusion and Σ-membership.
//!
//! Sets of primes that are infinite in general are enumerated up to a scan bound; a negative
//! answer for them is [`Verdict::NotEstablished`] unless no local degree could ever satisfy
//! the defining predicate, in which case it is [`Verdict::Fails`]. Sets driven by non-zero
//! invariants are finite and computed exactly. Divisibility tests `∤ h_j ∀j` range over
//! the positive graded dimensions only.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::albert::{divides_none, max_comm_semisimple_dim, AlbertType, HodgeAlgebra, SummandSpec};
use crate::error::{Error, Result};
use crate::exactnum::primes::{is_prime, primes_up_to};
use crate::exactnum::RationalMatrix;
use crate::filtration::{dim_im_from_profile, weight_filtration, FiltrationProfile, NilpotentOperator};
use crate::gseries::{height_template, HeightTemplate};
use num_traits::Zero;

pub const DEFAULT_PRIME_BOUND: u64 = 1000;

/// JSON form of a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub mu: usize,
    pub n: usize,
    pub profile: FiltrationProfile,
    pub algebra: Vec<SummandSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<RationalMatrix>,
}

/// Dimension, fibre dimension, filtration profile and Hodge endomorphism algebra of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointDescriptor {
    pub mu: usize,
    pub n: usize,
    pub profile: FiltrationProfile,
    pub algebra: HodgeAlgebra,
    pub matrix: Option<NilpotentOperator>,
    warnings: Vec<String>,
}

impl PointDescriptor {
    pub fn new(
        mu: usize,
        n: usize,
        profile: FiltrationProfile,
        algebra: HodgeAlgebra,
        matrix: Option<NilpotentOperator>,
    ) -> Result<Self> {
        if profile.mu() != mu {
            return Err(Error::arg(format!(
                "profile dimensions sum to {} but μ = {mu}",
                profile.mu()
            )));
        }
        if profile.center() != n {
            return Err(Error::arg(format!(
                "profile has center {} but the point has n = {n}",
                profile.center()
            )));
        }
        let check = algebra.check(mu);
        if !check.errors.is_empty() {
            return Err(Error::arg(format!("invalid algebra: {}", check.errors.join("; "))));
        }
        let mut warnings = check.warnings;
        if let Some(op) = &matrix {
            if op.size() != mu {
                return Err(Error::arg(format!("matrix has size {} but μ = {mu}", op.size())));
            }
            let computed = weight_filtration(op, n)?.profile;
            if computed != profile {
                return Err(Error::arg(format!(
                    "declared profile {:?} differs from the profile {:?} of the matrix",
                    profile.dims(),
                    computed.dims()
                )));
            }
        }
        if !profile.is_realizable() {
            warnings.push(format!(
                "profile {:?} is not the profile of any nilpotent operator; ⋆₁ is not applicable",
                profile.dims()
            ));
        }
        Ok(PointDescriptor {
            mu,
            n,
            profile,
            algebra,
            matrix,
            warnings,
        })
    }

    pub fn from_spec(spec: &PointSpec) -> Result<Self> {
        let algebra = HodgeAlgebra::from_specs(&spec.algebra)?;
        let matrix = spec.matrix.clone().map(NilpotentOperator::new).transpose()?;
        PointDescriptor::new(spec.mu, spec.n, spec.profile.clone(), algebra, matrix)
    }

    pub fn to_spec(&self) -> PointSpec {
        PointSpec {
            mu: self.mu,
            n: self.n,
            profile: self.profile.clone(),
            algebra: self.algebra.to_specs(),
            matrix: self.matrix.as_ref().map(|m| m.matrix().clone()),
        }
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `h = dim W_0`.
    pub fn h(&self) -> usize {
        self.profile.h()
    }

    /// CM points: every summand a CM field and `Σ m_i f_i = μ`.
    pub fn is_cm_point(&self) -> bool {
        crate::albert::is_cm_algebra(&self.algebra, self.mu)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    /// False within the scan bound; a larger bound might still succeed.
    NotEstablished,
    /// False for every bound.
    Fails,
    /// No summand of the required shape, or the input data does not support the test.
    NotApplicable,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    /// Combines per-summand verdicts: "there exists i".
    fn any(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts
            .into_iter()
            .min()
            .unwrap_or(Verdict::NotApplicable)
    }
}

/// Witness primes of one summand for one condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandWitnesses {
    pub summand: usize,
    pub primes: Vec<u64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarOutcome {
    pub verdict: Verdict,
    pub witnesses: Vec<SummandWitnesses>,
}

impl StarOutcome {
    fn from_summands(witnesses: Vec<SummandWitnesses>) -> Self {
        StarOutcome {
            verdict: Verdict::any(witnesses.iter().map(|w| w.verdict)),
            witnesses,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    /// Witness primes of summands meeting the threshold.
    fn holding_primes(&self) -> Vec<&SummandWitnesses> {
        self.witnesses.iter().filter(|w| w.verdict.holds()).collect()
    }
}

/// Local data of one center at one prime.
#[derive(Clone, Debug)]
struct PrimeData {
    prime: u64,
    certified: bool,
    /// `(local degree, inv_w ∈ ℤ)` per place.
    places: Vec<(usize, bool)>,
}

/// Splitting data of every summand's center at every prime up to the bound.
struct Scan {
    bound: u64,
    per_summand: Vec<Vec<PrimeData>>,
}

fn prime_data(point: &PointDescriptor, i: usize, l: u64) -> Result<PrimeData> {
    let alg = &point.algebra.summands[i].algebra;
    let split = alg.center.splitting_type(l)?;
    Ok(PrimeData {
        prime: l,
        certified: split.certified,
        places: split
            .places
            .iter()
            .enumerate()
            .map(|(w, p)| (p.local_degree(), alg.inv_at(l, w).is_zero()))
            .collect(),
    })
}

impl Scan {
    fn new(point: &PointDescriptor, bound: u64) -> Result<Self> {
        let primes = primes_up_to(bound);
        let per_summand = (0..point.algebra.summands.len())
            .map(|i| {
                primes
                    .par_iter()
                    .map(|&l| prime_data(point, i, l))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Scan { bound, per_summand })
    }

    fn skipped(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self
            .per_summand
            .iter()
            .flatten()
            .filter(|d| !d.certified)
            .map(|d| d.prime)
            .collect();
        set.into_iter().collect()
    }

    /// Certified primes of summand `i` with some place satisfying `pred(local degree, inv ∈ ℤ)`.
    fn select(&self, i: usize, pred: impl Fn(usize, bool) -> bool + Sync) -> Vec<u64> {
        self.per_summand[i]
            .par_iter()
            .filter(|d| d.certified && d.places.iter().any(|&(deg, integral)| pred(deg, integral)))
            .map(|d| d.prime)
            .collect()
    }
}

fn threshold(primes: &[u64], impossible: bool) -> Verdict {
    if primes.len() >= 2 {
        Verdict::Holds
    } else if impossible {
        Verdict::Fails
    } else {
        Verdict::NotEstablished
    }
}

/// ⋆₁: `Σ m_i f_i > μ - dim im N`.
pub fn check_star1(point: &PointDescriptor) -> Verdict {
    match dim_im_from_profile(&point.profile) {
        Err(_) => Verdict::NotApplicable,
        Ok(dim_im) => {
            if max_comm_semisimple_dim(&point.algebra) + dim_im > point.mu {
                Verdict::Holds
            } else {
                Verdict::Fails
            }
        }
    }
}

fn check_bound(bound: u64) -> Result<()> {
    if bound < 2 {
        return Err(Error::arg(format!("prime bound must be at least 2, got {bound}")));
    }
    Ok(())
}

fn star2(point: &PointDescriptor, scan: &Scan) -> StarOutcome {
    let h_max = point.profile.h_max();
    let out = point
        .algebra
        .summands
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let m = s.multiplicity;
            let primes = scan.select(i, |deg, _| deg * m > h_max);
            let impossible = s.algebra.center_degree() * m <= h_max;
            SummandWitnesses {
                summand: i,
                verdict: threshold(&primes, impossible),
                primes,
            }
        })
        .collect();
    StarOutcome::from_summands(out)
}

/// Invariant-driven primes of summand `i`: `{l : ∃ w | l, inv_w ∉ ℤ}`, all certified.
fn ramified(point: &PointDescriptor, i: usize) -> Vec<u64> {
    point.algebra.summands[i].algebra.ramified_primes()
}

fn star3(point: &PointDescriptor) -> Result<StarOutcome> {
    let h_max = point.profile.h_max();
    let mut out = Vec::new();
    for (i, s) in point.algebra.summands.iter().enumerate() {
        let mut primes = Vec::new();
        let mut uncertain = false;
        for l in ramified(point, i) {
            let split = s.algebra.center.splitting_type(l)?;
            if !split.certified {
                uncertain = true;
            } else if split.is_totally_split() {
                primes.push(l);
            }
        }
        let verdict = if s.algebra.degree_d * s.multiplicity < h_max {
            Verdict::Fails
        } else if primes.len() >= 2 {
            Verdict::Holds
        } else if uncertain {
            Verdict::NotEstablished
        } else {
            Verdict::Fails
        };
        out.push(SummandWitnesses {
            summand: i,
            primes,
            verdict,
        });
    }
    Ok(StarOutcome::from_summands(out))
}

/// `m·4·[F_w:ℚ_l]`, the ⋆₄ divisor at a place where the quaternion algebra stays division.
pub fn star4_divisor(m: usize, local_degree: usize) -> usize {
    4 * m * local_degree
}

/// `m·2·[F_w:ℚ_l]`, the ⋆₅ divisor at a place where the quaternion algebra splits.
pub fn star5_divisor(m: usize, local_degree: usize) -> usize {
    2 * m * local_degree
}

/// `m·d·[F_w:ℚ_l]`.
pub fn star7_divisor(m: usize, d: usize, local_degree: usize) -> usize {
    m * d * local_degree
}

fn star4(point: &PointDescriptor) -> Result<StarOutcome> {
    let dims = point.profile.positive_dims();
    let mut out = Vec::new();
    for (i, s) in point.algebra.summands.iter().enumerate() {
        if !s.algebra.is_quaternion() {
            continue;
        }
        let m = s.multiplicity;
        let mut primes = Vec::new();
        for l in ramified(point, i) {
            let data = prime_data(point, i, l)?;
            let hit = data
                .places
                .iter()
                .any(|&(deg, integral)| !integral && divides_none(star4_divisor(m, deg), &dims));
            if data.certified && hit {
                primes.push(l);
            }
        }
        out.push(SummandWitnesses {
            summand: i,
            verdict: threshold(&primes, true),
            primes,
        });
    }
    Ok(StarOutcome::from_summands(out))
}

/// Whether some local degree `t ≤ f` makes `divisor(t)` divide none of `dims`.
fn some_degree_escapes(f: usize, dims: &[usize], divisor: impl Fn(usize) -> usize) -> bool {
    (1..=f).any(|t| divides_none(divisor(t), dims))
}

fn star5(point: &PointDescriptor, scan: &Scan) -> StarOutcome {
    let dims = point.profile.positive_dims();
    let out = point
        .algebra
        .summands
        .iter()
        .enumerate()
        .filter(|(_, s)| s.algebra.is_quaternion())
        .map(|(i, s)| {
            let m = s.multiplicity;
            let f = s.algebra.center_degree();
            // for a cyclic center the set is infinite exactly when m·2·f divides no h_j
            let impossible = if s.algebra.center_cyclic {
                !divides_none(star5_divisor(m, f), &dims)
            } else {
                !some_degree_escapes(f, &dims, |t| star5_divisor(m, t))
            };
            if impossible {
                return SummandWitnesses {
                    summand: i,
                    primes: Vec::new(),
                    verdict: Verdict::Fails,
                };
            }
            let primes = scan.select(i, |deg, integral| {
                integral && divides_none(star5_divisor(m, deg), &dims)
            });
            SummandWitnesses {
                summand: i,
                verdict: threshold(&primes, false),
                primes,
            }
        })
        .collect();
    StarOutcome::from_summands(out)
}

fn star6(s4: &StarOutcome, s5: &StarOutcome) -> StarOutcome {
    let out = s4
        .witnesses
        .iter()
        .zip(&s5.witnesses)
        .map(|(r, s)| {
            let union: BTreeSet<u64> = r.primes.iter().chain(&s.primes).copied().collect();
            let primes: Vec<u64> = union.into_iter().collect();
            let impossible = r.verdict == Verdict::Fails && s.verdict == Verdict::Fails;
            SummandWitnesses {
                summand: r.summand,
                verdict: threshold(&primes, impossible),
                primes,
            }
        })
        .collect();
    StarOutcome::from_summands(out)
}

fn star7(point: &PointDescriptor, scan: &Scan) -> StarOutcome {
    let dims = point.profile.positive_dims();
    let out = point
        .algebra
        .summands
        .iter()
        .enumerate()
        .filter(|(_, s)| s.algebra.albert_type == AlbertType::IV)
        .map(|(i, s)| {
            let (m, d) = (s.multiplicity, s.algebra.degree_d);
            let impossible =
                !some_degree_escapes(s.algebra.center_degree(), &dims, |t| star7_divisor(m, d, t));
            let primes = scan.select(i, |deg, _| divides_none(star7_divisor(m, d, deg), &dims));
            SummandWitnesses {
                summand: i,
                verdict: threshold(&primes, impossible),
                primes,
            }
        })
        .collect();
    StarOutcome::from_summands(out)
}

/// The sharpened ⋆₇ test with divisor `m·r·d'²·[F_w:ℚ_l]`; advisory only.
fn star7_sharp(point: &PointDescriptor, scan: &Scan) -> Result<StarOutcome> {
    let dims = point.profile.positive_dims();
    let mut out = Vec::new();
    for (i, s) in point.algebra.summands.iter().enumerate() {
        if s.algebra.albert_type != AlbertType::IV {
            continue;
        }
        let m = s.multiplicity;
        let mut primes = Vec::new();
        for data in &scan.per_summand[i] {
            if !data.certified {
                continue;
            }
            let ls = crate::albert::local_structure(&s.algebra, data.prime)?;
            if ls.places.iter().any(|p| divides_none(p.sharp_divisor(m), &dims)) {
                primes.push(data.prime);
            }
        }
        out.push(SummandWitnesses {
            summand: i,
            verdict: threshold(&primes, false),
            primes,
        });
    }
    Ok(StarOutcome::from_summands(out))
}

fn star_outcomes(point: &PointDescriptor, bound: u64) -> Result<(BTreeMap<u8, StarOutcome>, Scan)> {
    check_bound(bound)?;
    let scan = Scan::new(point, bound)?;
    let s4 = star4(point)?;
    let s5 = star5(point, &scan);
    let s6 = star6(&s4, &s5);
    let mut map = BTreeMap::new();
    map.insert(
        1,
        StarOutcome {
            verdict: check_star1(point),
            witnesses: Vec::new(),
        },
    );
    map.insert(2, star2(point, &scan));
    map.insert(3, star3(point)?);
    map.insert(4, s4);
    map.insert(5, s5);
    map.insert(6, s6);
    map.insert(7, star7(point, &scan));
    Ok((map, scan))
}

pub fn check_star2(point: &PointDescriptor, bound: u64) -> Result<StarOutcome> {
    check_bound(bound)?;
    Ok(star2(point, &Scan::new(point, bound)?))
}

pub fn check_star3(point: &PointDescriptor, bound: u64) -> Result<StarOutcome> {
    check_bound(bound)?;
    star3(point)
}

pub fn check_star4(point: &PointDescriptor, bound: u64) -> Result<StarOutcome> {
    check_bound(bound)?;
    star4(point)
}

pub fn check_star5(point: &PointDescriptor, bound: u64) -> Result<StarOutcome> {
    check_bound(bound)?;
    Ok(star5(point, &Scan::new(point, bound)?))
}

pub fn check_star6(point: &PointDescriptor, bound: u64) -> Result<StarOutcome> {
    let (mut map, _) = star_outcomes(point, bound)?;
    Ok(map.remove(&6).expect("present"))
}

pub fn check_star7(point: &PointDescriptor, bound: u64) -> Result<StarOutcome> {
    check_bound(bound)?;
    Ok(star7(point, &Scan::new(point, bound)?))
}

/// The two remedy inequalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Remedy {
    /// `h > dim V_j / f_j` for some `j`.
    pub cond2: bool,
    /// `h ≥ min dim V_i / f_i` over the type-IV summands.
    pub cond3: bool,
}

pub fn remedy_conditions(point: &PointDescriptor) -> Remedy {
    let h = point.h();
    let summands = &point.algebra.summands;
    Remedy {
        cond2: summands
            .iter()
            .any(|s| h * s.algebra.center_degree() > s.dim_v),
        cond3: summands
            .iter()
            .filter(|s| s.algebra.albert_type == AlbertType::IV)
            .any(|s| h * s.algebra.center_degree() >= s.dim_v),
    }
}

/// A condition holding through a witness prime different from `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExclusionWitness {
    pub condition: u8,
    pub summand: Option<usize>,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProximityReport {
    pub p: u64,
    pub excluded: bool,
    pub via: Vec<ExclusionWitness>,
}

fn exclusion_from(outcomes: &BTreeMap<u8, StarOutcome>, p: u64) -> ProximityReport {
    let mut via = Vec::new();
    for (&k, outcome) in outcomes {
        if !outcome.holds() {
            continue;
        }
        if k == 1 {
            via.push(ExclusionWitness {
                condition: 1,
                summand: None,
                primes: Vec::new(),
            });
            continue;
        }
        for w in outcome.holding_primes() {
            let primes: Vec<u64> = w.primes.iter().copied().filter(|&l| l != p).collect();
            if !primes.is_empty() {
                via.push(ExclusionWitness {
                    condition: k,
                    summand: Some(w.summand),
                    primes,
                });
            }
        }
    }
    ProximityReport {
        p,
        excluded: !via.is_empty(),
        via,
    }
}

/// Whether the point is kept away from the degeneration at places over `p`.
pub fn proximity_exclusion(point: &PointDescriptor, p: u64, bound: u64) -> Result<ProximityReport> {
    if !is_prime(p) {
        return Err(Error::arg(format!("{p} is not prime")));
    }
    let (outcomes, _) = star_outcomes(point, bound)?;
    Ok(exclusion_from(&outcomes, p))
}

/// Full evaluation of a point. `star` and `witnesses` are keyed by the condition index.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarReport {
    pub star: BTreeMap<String, bool>,
    pub verdicts: BTreeMap<String, Verdict>,
    pub witnesses: BTreeMap<String, Vec<SummandWitnesses>>,
    pub star7_sharp: StarOutcome,
    pub remedy: Remedy,
    pub cm_point: bool,
    pub sigma_member: bool,
    pub skipped_primes: Vec<u64>,
    pub bound: u64,
    pub height_template: HeightTemplate,
    pub warnings: Vec<String>,
}

impl StarReport {
    pub fn any_star(&self) -> bool {
        self.star.values().any(|&b| b)
    }

    pub fn verdict(&self, k: u8) -> Verdict {
        self.verdicts[&k.to_string()]
    }

    pub fn witness_primes(&self, k: u8) -> Vec<u64> {
        let set: BTreeSet<u64> = self.witnesses[&k.to_string()]
            .iter()
            .flat_map(|w| w.primes.iter().copied())
            .collect();
        set.into_iter().collect()
    }
}

/// Some ⋆ condition together with one of the remedy inequalities.
pub fn sigma_membership(point: &PointDescriptor, bound: u64) -> Result<StarReport> {
    let (outcomes, scan) = star_outcomes(point, bound)?;
    let remedy = remedy_conditions(point);
    let any = outcomes.values().any(StarOutcome::holds);
    let star7_sharp = star7_sharp(point, &scan)?;
    let mut star = BTreeMap::new();
    let mut verdicts = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for (k, o) in outcomes {
        star.insert(k.to_string(), o.holds());
        verdicts.insert(k.to_string(), o.verdict);
        if k != 1 {
            witnesses.insert(k.to_string(), o.witnesses);
        }
    }
    Ok(StarReport {
        star,
        verdicts,
        witnesses,
        star7_sharp,
        remedy,
        cm_point: point.is_cm_point(),
        sigma_member: any && (remedy.cond2 || remedy.cond3),
        skipped_primes: scan.skipped(),
        bound: scan.bound,
        height_template: height_template(point.mu)?,
        warnings: point.warnings().to_vec(),
    })
}

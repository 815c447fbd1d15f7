//! Truncated power series: denominator growth, radius estimates, v-adic closeness and the
//! height-bound formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{format_rational, serde_rational, RationalField};
use crate::exactnum::Rational;

/// Least order accepted by [`g_series_candidate`].
pub const MIN_CANDIDATE_ORDER: usize = 10;

/// `a_0 + a_1 x + ... + a_N x^N` with `N ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries", into = "RawSeries")]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    coeffs: Vec<RationalField>,
}

impl TryFrom<RawSeries> for TruncatedSeries {
    type Error = Error;
    fn try_from(raw: RawSeries) -> Result<Self> {
        TruncatedSeries::new(raw.coeffs.into_iter().map(|c| c.0).collect())
    }
}

impl From<TruncatedSeries> for RawSeries {
    fn from(s: TruncatedSeries) -> Self {
        RawSeries {
            coeffs: s.coeffs.into_iter().map(RationalField).collect(),
        }
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::arg("a truncated series needs at least the coefficients a_0, a_1"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The series cut down to `a_0..a_order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::arg(format!(
                "cannot truncate a series of order {} to order {order}",
                self.order()
            )));
        }
        TruncatedSeries::new(self.coeffs[..=order].to_vec())
    }
}

/// `d_n = lcm(den a_0, ..., den a_n)`, the least integers with `d_n a_m ∈ ℤ` for `m ≤ n`.
pub fn denominator_sequence(y: &TruncatedSeries) -> Vec<BigInt> {
    let mut d = BigInt::one();
    y.coeffs
        .iter()
        .map(|a| {
            d = d.lcm(a.denom());
            d.clone()
        })
        .collect()
}

/// `⌊x^{1/n}⌋` for `x ≥ 0`.
fn int_root(x: &BigInt, n: u32) -> BigInt {
    x.nth_root(n)
}

/// Bits of the dyadic grid used for `c_estimate`.
const ESTIMATE_BITS: u32 = 20;

/// Closed interval `[lower, upper]` of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(with = "serde_rational")]
    pub lower: Rational,
    #[serde(with = "serde_rational")]
    pub upper: Rational,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lower + &self.upper) / Rational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Enclosure of `max_{1≤n≤N} d_n^{1/n}` on a dyadic grid, from exact integer roots.
fn c_estimate(d_seq: &[BigInt]) -> Interval {
    let scale = BigInt::one() << ESTIMATE_BITS;
    let denom = Rational::from_integer(scale.clone());
    let mut lower = Rational::zero();
    let mut upper = Rational::zero();
    for (n, d) in d_seq.iter().enumerate().skip(1) {
        let n = n as u32;
        // ⌊2^b d^{1/n}⌋ = ⌊(d 2^{bn})^{1/n}⌋
        let shifted: BigInt = d << (ESTIMATE_BITS as usize * n as usize);
        let r = int_root(&shifted, n);
        let exact = r.pow(n) == shifted;
        let lo = Rational::from_integer(r.clone()) / &denom;
        let hi = Rational::from_integer(if exact { r } else { r + 1 }) / &denom;
        if lo > lower {
            lower = lo;
        }
        if hi > upper {
            upper = hi;
        }
    }
    Interval { lower, upper }
}

/// Natural log of a positive big integer as a float, exact in exponent range.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_abs(a: &Rational) -> f64 {
    ln_big(&a.numer().abs()) - ln_big(a.denom())
}

/// Archimedean radius by the root test over the upper half of the coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusEstimate {
    /// `None` when every coefficient in the window vanishes.
    pub radius: Option<f64>,
    pub window: (usize, usize),
    pub certified: bool,
}

pub fn archimedean_radius(y: &TruncatedSeries) -> RadiusEstimate {
    let n = y.order();
    let start = (n / 2).max(1);
    let growth = (start..=n)
        .filter(|&k| !y.coeffs[k].is_zero())
        .map(|k| ln_abs(&y.coeffs[k]) / k as f64)
        .fold(None, |acc: Option<f64>, g| Some(acc.map_or(g, |a| a.max(g))));
    RadiusEstimate {
        radius: growth.map(|g| (-g).exp()),
        window: (start, n),
        certified: false,
    }
}

/// `v_l` of a nonzero rational.
pub fn valuation(a: &Rational, l: u64) -> i64 {
    let l = BigInt::from(l);
    let count = |x: &BigInt| {
        let mut x = x.abs();
        let mut k = 0i64;
        while !x.is_zero() && (&x % &l).is_zero() {
            x /= &l;
            k += 1;
        }
        k
    };
    count(a.numer()) - count(a.denom())
}

/// `min v_l(a_n)/n` over the upper half of the coefficients; the l-adic radius estimate is
/// `l^{slope}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeEstimate {
    pub prime: u64,
    #[serde(with = "crate::gseries::opt_rational")]
    pub slope: Option<Rational>,
    pub radius: Option<f64>,
    pub certified: bool,
}

pub(crate) mod opt_rational {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&format_rational(x)),
            None => s.serialize_none(),
        }
    }
}

pub fn finite_slope(y: &TruncatedSeries, l: u64) -> Result<SlopeEstimate> {
    if !crate::exactnum::primes::is_prime(l) {
        return Err(Error::arg(format!("{l} is not prime")));
    }
    let n = y.order();
    let start = (n / 2).max(1);
    let slope = (start..=n)
        .filter(|&k| !y.coeffs[k].is_zero())
        .map(|k| Rational::new(BigInt::from(valuation(&y.coeffs[k], l)), BigInt::from(k)))
        .min();
    let radius = slope
        .as_ref()
        .and_then(|s| s.to_f64())
        .map(|s| (l as f64).powf(s));
    Ok(SlopeEstimate {
        prime: l,
        slope,
        radius,
        certified: false,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthDiagnostics {
    pub order: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub d_seq: Vec<BigInt>,
    pub c_estimate: Interval,
    /// Least `n ≥ 1` with `d_n > cap^n`.
    pub first_violation: Option<usize>,
    pub archimedean: RadiusEstimate,
    pub finite: Vec<SlopeEstimate>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateReport {
    pub accepted: bool,
    #[serde(with = "serde_rational")]
    pub cap: Rational,
    pub diagnostics: GrowthDiagnostics,
}

/// Least `n ≥ 1` with `d_n > cap^n`, comparing `d_n·q^n` with `p^n` for `cap = p/q`.
fn first_exceeding(d_seq: &[BigInt], cap: &Rational) -> Option<usize> {
    let (p, q) = (cap.numer(), cap.denom());
    let mut pn = BigInt::one();
    let mut qn = BigInt::one();
    for (n, d) in d_seq.iter().enumerate().skip(1) {
        pn *= p;
        qn *= q;
        if d * &qn > pn {
            return Some(n);
        }
    }
    None
}

/// Accepts when `d_n ≤ cap^n` for `1 ≤ n ≤ N`; finite slopes are estimated at the primes
/// below 1000 dividing `d_N`.
pub fn g_series_candidate(y: &TruncatedSeries, cap: &Rational) -> Result<CandidateReport> {
    if y.order() < MIN_CANDIDATE_ORDER {
        return Err(Error::pre(format!(
            "order {} is below the minimum {MIN_CANDIDATE_ORDER} for a growth test",
            y.order()
        )));
    }
    if !cap.is_positive() {
        return Err(Error::arg("cap must be positive"));
    }
    let d_seq = denominator_sequence(y);
    let first_violation = first_exceeding(&d_seq, cap);
    let last = d_seq.last().expect("order ≥ 1").clone();
    let finite = small_prime_divisors(&last)
        .into_iter()
        .map(|l| finite_slope(y, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(CandidateReport {
        accepted: first_violation.is_none(),
        cap: cap.clone(),
        diagnostics: GrowthDiagnostics {
            order: y.order(),
            c_estimate: c_estimate(&d_seq),
            d_seq,
            first_violation,
            archimedean: archimedean_radius(y),
            finite,
        },
    })
}

/// Prime divisors of `x` below 1000.
fn small_prime_divisors(x: &BigInt) -> Vec<u64> {
    crate::exactnum::primes::primes_up_to(1000)
        .into_iter()
        .filter(|&l| (x % BigInt::from(l)).is_zero())
        .collect()
}

/// Places with `|ξ|_v < min(1, R_v)`, by index.
pub fn v_adic_closeness(xi_abs: &[Rational], radii: &[Rational]) -> Result<Vec<usize>> {
    if xi_abs.len() != radii.len() {
        return Err(Error::arg(format!(
            "{} absolute values but {} radii",
            xi_abs.len(),
            radii.len()
        )));
    }
    if xi_abs.iter().chain(radii).any(Signed::is_negative) {
        return Err(Error::arg("absolute values and radii must be non-negative"));
    }
    let one = Rational::one();
    Ok(xi_abs
        .iter()
        .zip(radii)
        .enumerate()
        .filter(|(_, (x, r))| *x < &one && x < r)
        .map(|(i, _)| i)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightBoundInput {
    #[serde(with = "serde_rational")]
    pub c1: Rational,
    #[serde(with = "serde_rational")]
    pub c2: Rational,
    pub delta: u64,
    pub m: u32,
}

/// `2 atanh(z) = Σ 2 z^{2i+1}/(2i+1)` enclosed for `0 ≤ z ≤ 1/3`, truncation error below `tol`.
fn two_atanh(z: &Rational, tol: &Rational) -> Interval {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let one = Rational::one();
    let mut k = 0u64;
    loop {
        sum += &power * Rational::new(BigInt::from(2), BigInt::from(2 * k + 1));
        power *= &z2;
        k += 1;
        // tail ≤ 2 z^{2k+1} / ((2k+1)(1 - z²))
        let tail = &power * Rational::new(BigInt::from(2), BigInt::from(2 * k + 1)) / (&one - &z2);
        if &tail < tol {
            return Interval {
                upper: &sum + tail,
                lower: sum,
            };
        }
    }
}

/// Outward rounding to the dyadic grid `2^-bits`.
fn round_out(iv: Interval, bits: usize) -> Interval {
    let scale = BigInt::one() << bits;
    let down = |x: &Rational| Rational::new((x * Rational::from_integer(scale.clone())).floor().to_integer(), scale.clone());
    let up = |x: &Rational| Rational::new((x * Rational::from_integer(scale.clone())).ceil().to_integer(), scale.clone());
    Interval {
        lower: down(&iv.lower),
        upper: up(&iv.upper),
    }
}

/// Certified enclosure of `ln δ` of width below `10^-15`.
pub fn ln_interval(delta: u64) -> Result<Interval> {
    if delta == 0 {
        return Err(Error::arg("ln is undefined at 0"));
    }
    if delta == 1 {
        return Ok(Interval {
            lower: Rational::zero(),
            upper: Rational::zero(),
        });
    }
    let tol = Rational::new(BigInt::one(), BigInt::from(10u64).pow(20));
    // δ = 2^k·y with 1 ≤ y < 2, ln y = 2 atanh((y-1)/(y+1)), ln 2 = 2 atanh(1/3)
    let k = 63 - delta.leading_zeros() as i64;
    let y = Rational::new(BigInt::from(delta), BigInt::one() << k);
    let one = Rational::one();
    let z = (&y - &one) / (&y + &one);
    let ln_y = two_atanh(&z, &tol);
    let ln2 = two_atanh(&Rational::new(BigInt::one(), BigInt::from(3)), &tol);
    let kq = Rational::from_integer(BigInt::from(k));
    Ok(round_out(
        Interval {
            lower: &kq * &ln2.lower + &ln_y.lower,
            upper: &kq * &ln2.upper + &ln_y.upper,
        },
        80,
    ))
}

/// `c₁ δ^{3(m-1)} (ln δ + 1)`, or `c₂ δ^m (ln δ + 1)` when `strong`, as a rational enclosure.
pub fn hasse_height_bound(input: &HeightBoundInput, strong: bool) -> Result<Interval> {
    if input.delta == 0 || input.m == 0 {
        return Err(Error::arg("δ and m must be at least 1"));
    }
    if !input.c1.is_positive() || !input.c2.is_positive() {
        return Err(Error::arg("c₁ and c₂ must be positive"));
    }
    let (c, exp) = if strong {
        (&input.c2, input.m)
    } else {
        (&input.c1, 3 * (input.m - 1))
    };
    let factor = c * Rational::from_integer(BigInt::from(input.delta).pow(exp));
    let ln = ln_interval(input.delta)?;
    let one = Rational::one();
    Ok(Interval {
        lower: &factor * (&ln.lower + &one),
        upper: &factor * (&ln.upper + &one),
    })
}

/// `⌈(6.31 μ²)^{μ²}⌉`, exact while it stays below `10^EXACT_LOG10_LIMIT`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InflationBound {
    Exact(#[serde(serialize_with = "serialize_bigint")] BigInt),
    Log10(f64),
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub const EXACT_LOG10_LIMIT: f64 = 12.0;

impl InflationBound {
    pub fn log10(&self) -> f64 {
        match self {
            InflationBound::Exact(v) => ln_big(v) / std::f64::consts::LN_10,
            InflationBound::Log10(x) => *x,
        }
    }
}

pub fn degree_inflation_bound(mu: usize) -> Result<InflationBound> {
    if mu == 0 {
        return Err(Error::arg("μ must be at least 1"));
    }
    let mu2 = u32::try_from(mu * mu).map_err(|_| Error::arg("μ too large"))?;
    let base = Rational::new(BigInt::from(631u64 * (mu * mu) as u64), BigInt::from(100));
    let log10 = mu2 as f64 * base.to_f64().unwrap().log10();
    if log10 >= EXACT_LOG10_LIMIT {
        return Ok(InflationBound::Log10(log10));
    }
    let value = num_traits::pow(base, mu2 as usize);
    Ok(InflationBound::Exact(value.ceil().to_integer()))
}

/// Height-bound formulas attached to a point, with the constants left symbolic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightTemplate {
    pub formula: &'static str,
    pub strong_formula: &'static str,
    pub degree_inflation: InflationBound,
}

pub fn height_template(mu: usize) -> Result<HeightTemplate> {
    Ok(HeightTemplate {
        formula: "c1 * delta^(3(m-1)) * (ln delta + 1)",
        strong_formula: "c2 * delta^m * (ln delta + 1)",
        degree_inflation: degree_inflation_bound(mu)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn geometric(n: usize) -> TruncatedSeries {
        TruncatedSeries::new(vec![int(1); n + 1]).unwrap()
    }

    fn log1p(n: usize) -> TruncatedSeries {
        let mut c = vec![int(0)];
        for k in 1..=n as i64 {
            c.push(rat(if k % 2 == 1 { 1 } else { -1 }, k));
        }
        TruncatedSeries::new(c).unwrap()
    }

    #[test]
    fn denominators() {
        assert!(denominator_sequence(&geometric(10)).iter().all(|d| d.is_one()));
        assert_eq!(denominator_sequence(&log1p(10))[10], BigInt::from(2520));
    }

    #[test]
    fn candidate_examples() {
        let r = g_series_candidate(&geometric(40), &int(2)).unwrap();
        assert!(r.accepted);
        assert!(r.diagnostics.c_estimate.contains(&int(1)));
        assert!(g_series_candidate(&log1p(40), &int(3)).unwrap().accepted);
        assert!(matches!(
            g_series_candidate(&geometric(5), &int(2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn closeness() {
        assert_eq!(v_adic_closeness(&[rat(1, 2)], &[int(1)]).unwrap(), vec![0]);
        assert!(v_adic_closeness(&[int(2)], &[int(5)]).unwrap().is_empty());
        assert!(v_adic_closeness(&[rat(1, 2)], &[rat(1, 3)]).unwrap().is_empty());
        assert!(v_adic_closeness(&[rat(1, 2)], &[]).is_err());
    }

    #[test]
    fn ln_enclosures() {
        for d in [2u64, 3, 10, 1000, 12345] {
            let iv = ln_interval(d).unwrap();
            assert!(iv.width() < rat(1, 1_000_000_000_000));
            assert!((iv.midpoint_f64() - (d as f64).ln()).abs() < 1e-13);
        }
    }

    #[test]
    fn hasse_examples() {
        let input = HeightBoundInput {
            c1: int(1),
            c2: int(1),
            delta: 1,
            m: 2,
        };
        let b = hasse_height_bound(&input, false).unwrap();
        assert_eq!(b.lower, int(1));
        let input = HeightBoundInput { delta: 10, ..input };
        let b = hasse_height_bound(&input, false).unwrap();
        assert!(b.lower > rat(3_302_585_092, 1_000_000) && b.upper < rat(3_302_585_093, 1_000_000));
        let s = hasse_height_bound(&input, true).unwrap();
        assert!((s.midpoint_f64() - 330.2585092994046).abs() < 1e-10);
    }

    #[test]
    fn inflation_examples() {
        assert_eq!(degree_inflation_bound(1).unwrap(), InflationBound::Exact(BigInt::from(7)));
        assert!(matches!(degree_inflation_bound(3).unwrap(), InflationBound::Log10(_)));
        let l = degree_inflation_bound(3).unwrap().log10();
        assert!((l - 9.0 * 56.79f64.log10()).abs() < 1e-9);
    }
}

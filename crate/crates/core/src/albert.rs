//! Descriptors of division algebras with positive involution (Albert types I–IV),
//! their local invariants, and obstructions to embedding them into matrix algebras.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::primes::is_prime;
use crate::exactnum::rational::{format_rational, frac_mod_one, serde_rational_vec};
use crate::exactnum::{NumberField, NumberFieldSpec, QPolynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AlbertType {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for AlbertType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AlbertType::I => "I",
            AlbertType::II => "II",
            AlbertType::III => "III",
            AlbertType::IV => "IV",
        };
        f.write_str(s)
    }
}

/// Declared behavior of a quaternion algebra at the real places of its center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Archimedean {
    Split,
    Ramified,
}

/// Hasse invariant at one finite place, as an element of ℚ/ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariant {
    pub prime: u64,
    /// Index of the place in the canonical order of factors of the minimal polynomial mod `prime`.
    pub place: usize,
    pub inv: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalInvariantSpec {
    pub prime: u64,
    pub place: usize,
    pub num: i64,
    pub den: i64,
}

/// JSON form of an [`AlbertDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlbertSpec {
    pub albert_type: AlbertType,
    pub center: NumberFieldSpec,
    pub degree_d: usize,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "option_rational_vec"
    )]
    pub cm_conjugation: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariants: Vec<LocalInvariantSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub archimedean: Option<Archimedean>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub center_cyclic: bool,
}

mod option_rational_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Option<Vec<Rational>>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) => serde_rational_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        serde_rational_vec::deserialize(d).map(Some)
    }
}

/// A division algebra `D` with center `F`, `[D:F] = d²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbertDescriptor {
    pub albert_type: AlbertType,
    pub center: NumberField,
    pub degree_d: usize,
    pub invariants: Vec<LocalInvariant>,
    pub cm_conjugation: Option<QPolynomial>,
    pub archimedean: Option<Archimedean>,
    /// Declared by the user: the center is a cyclic extension of ℚ.
    pub center_cyclic: bool,
}

impl AlbertDescriptor {
    pub fn from_spec(spec: &AlbertSpec) -> Result<Self> {
        let center = NumberField::from_spec(&spec.center)?;
        let mut invariants = Vec::with_capacity(spec.invariants.len());
        for inv in &spec.invariants {
            if inv.den <= 0 {
                return Err(Error::arg(format!(
                    "invariant at ({}, {}) has non-positive denominator {}",
                    inv.prime, inv.place, inv.den
                )));
            }
            invariants.push(LocalInvariant {
                prime: inv.prime,
                place: inv.place,
                inv: frac_mod_one(&Rational::new(inv.num.into(), inv.den.into())),
            });
        }
        Ok(AlbertDescriptor {
            albert_type: spec.albert_type,
            center,
            degree_d: spec.degree_d,
            invariants,
            cm_conjugation: spec.cm_conjugation.clone().map(QPolynomial::new),
            archimedean: spec.archimedean,
            center_cyclic: spec.center_cyclic,
        })
    }

    pub fn to_spec(&self) -> AlbertSpec {
        AlbertSpec {
            albert_type: self.albert_type,
            center: self.center.to_spec(),
            degree_d: self.degree_d,
            cm_conjugation: self.cm_conjugation.as_ref().map(|s| s.coeffs().to_vec()),
            invariants: self
                .invariants
                .iter()
                .map(|i| LocalInvariantSpec {
                    prime: i.prime,
                    place: i.place,
                    num: i64::try_from(i.inv.numer()).unwrap_or(0),
                    den: i64::try_from(i.inv.denom()).unwrap_or(1),
                })
                .collect(),
            archimedean: self.archimedean,
            center_cyclic: self.center_cyclic,
        }
    }

    /// `f = [F:ℚ]`.
    pub fn center_degree(&self) -> usize {
        self.center.degree()
    }

    pub fn is_quaternion(&self) -> bool {
        self.degree_d == 2
    }

    /// `inv_w(D)` in `[0, 1)`; places absent from the list carry invariant 0.
    pub fn inv_at(&self, prime: u64, place: usize) -> Rational {
        self.invariants
            .iter()
            .find(|i| i.prime == prime && i.place == place)
            .map(|i| i.inv.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Primes at which some listed invariant is non-integral, ascending.
    pub fn ramified_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = self
            .invariants
            .iter()
            .filter(|i| !i.inv.is_zero())
            .map(|i| i.prime)
            .collect();
        primes.sort_unstable();
        primes.dedup();
        primes
    }
}

/// One failed consistency rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub message: String,
}

impl Violation {
    fn new(rule: &'static str, message: impl Into<String>) -> Self {
        Violation {
            rule,
            message: message.into(),
        }
    }
}

/// All violations of Albert's classification rules and of invariant consistency.
pub fn validate_albert(desc: &AlbertDescriptor) -> Vec<Violation> {
    let mut out = Vec::new();
    let f = desc.center_degree();
    let real = desc.center.real_embedding_count();
    let d = desc.degree_d;
    if d == 0 {
        out.push(Violation::new("degree", "degree d must be positive"));
    }
    match desc.albert_type {
        AlbertType::I => {
            if d != 1 {
                out.push(Violation::new("degree", format!("type I requires d = 1, got {d}")));
            }
            if real != f {
                out.push(Violation::new(
                    "center",
                    format!("type I requires a totally real center, {real} of {f} embeddings are real"),
                ));
            }
        }
        AlbertType::II | AlbertType::III => {
            if d != 2 {
                out.push(Violation::new(
                    "degree",
                    format!("type {} requires d = 2, got {d}", desc.albert_type),
                ));
            }
            if real != f {
                out.push(Violation::new(
                    "center",
                    format!(
                        "type {} requires a totally real center, {real} of {f} embeddings are real",
                        desc.albert_type
                    ),
                ));
            }
            let expected = if desc.albert_type == AlbertType::II {
                Archimedean::Split
            } else {
                Archimedean::Ramified
            };
            if desc.archimedean.is_some_and(|a| a != expected) {
                out.push(Violation::new(
                    "archimedean",
                    format!(
                        "type {} requires the algebra to be {} at every real place",
                        desc.albert_type,
                        if expected == Archimedean::Split { "split" } else { "ramified" }
                    ),
                ));
            }
        }
        AlbertType::IV => {
            if real != 0 {
                out.push(Violation::new(
                    "center",
                    format!("type IV requires a totally imaginary center, {real} embeddings are real"),
                ));
            }
            match &desc.cm_conjugation {
                None => out.push(Violation::new(
                    "conjugation",
                    "type IV requires the complex conjugation σ",
                )),
                Some(sigma) => {
                    if let Err(e) = desc.center.check_involution(sigma) {
                        out.push(Violation::new("conjugation", e.to_string()));
                    } else if f > 0 && sigma.rem(&desc.center.min_poly().to_q()) == QPolynomial::x().rem(&desc.center.min_poly().to_q()) {
                        out.push(Violation::new(
                            "conjugation",
                            "σ is the identity, so its fixed field is not of index 2",
                        ));
                    }
                }
            }
        }
    }
    if f % 2 == 1 && desc.albert_type == AlbertType::IV {
        out.push(Violation::new(
            "center",
            format!("a CM center has even degree, got {f}"),
        ));
    }
    check_invariant_list(desc, &mut out);
    out
}

fn check_invariant_list(desc: &AlbertDescriptor, out: &mut Vec<Violation>) {
    let d = BigInt::from(desc.degree_d.max(1));
    let mut seen = BTreeMap::new();
    for inv in &desc.invariants {
        if seen.insert((inv.prime, inv.place), ()).is_some() {
            out.push(Violation::new(
                "invariants",
                format!("invariant at place {} over {} listed twice", inv.place, inv.prime),
            ));
        }
        if !d.is_multiple_of(inv.inv.denom()) {
            out.push(Violation::new(
                "invariants",
                format!(
                    "invariant {} at place {} over {} has denominator not dividing d = {}",
                    format_rational(&inv.inv),
                    inv.place,
                    inv.prime,
                    desc.degree_d
                ),
            ));
        }
    }
    let mut primes: Vec<u64> = desc.invariants.iter().map(|i| i.prime).collect();
    primes.sort_unstable();
    primes.dedup();
    for l in primes {
        if !is_prime(l) {
            out.push(Violation::new("invariants", format!("{l} is not prime")));
            continue;
        }
        let split = match desc.center.splitting_type(l) {
            Ok(s) => s,
            Err(e) => {
                out.push(Violation::new("invariants", e.to_string()));
                continue;
            }
        };
        if !split.certified {
            out.push(Violation::new(
                "invariants",
                format!("places over {l} cannot be certified: {l} divides the polynomial discriminant"),
            ));
            continue;
        }
        let listed: Vec<&LocalInvariant> = desc.invariants.iter().filter(|i| i.prime == l).collect();
        if let Some(bad) = listed.iter().find(|i| i.place >= split.places.len()) {
            out.push(Violation::new(
                "invariants",
                format!(
                    "place index {} over {l} out of range ({} places)",
                    bad.place,
                    split.places.len()
                ),
            ));
            continue;
        }
        if desc.albert_type != AlbertType::IV {
            continue;
        }
        let Some(sigma) = &desc.cm_conjugation else {
            continue;
        };
        let action = match desc.center.conjugation_action_on_places(sigma, l) {
            Ok(a) => a,
            Err(_) => continue, // reported by the conjugation rule
        };
        for (w, &sw) in action.permutation.iter().enumerate() {
            let a = desc.inv_at(l, w);
            if sw == w {
                if !a.is_zero() {
                    out.push(Violation::new(
                        "fixed-place",
                        format!(
                            "nonzero invariant {} at σ-fixed place {w} over {l}",
                            format_rational(&a)
                        ),
                    ));
                }
            } else if w < sw {
                let b = desc.inv_at(l, sw);
                if !frac_mod_one(&(&a + &b)).is_zero() {
                    out.push(Violation::new(
                        "conjugate-pair",
                        format!(
                            "inv at places {w} and {sw} over {l} sum to {} ≠ 0 mod 1",
                            format_rational(&frac_mod_one(&(&a + &b)))
                        ),
                    ));
                }
            }
        }
    }
}

/// One simple factor `M_m(D)` acting on `V^m` with `dim V = dim_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub multiplicity: usize,
    pub dim_v: usize,
    pub algebra: AlbertDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    pub multiplicity: usize,
    pub dim_v: usize,
    pub algebra: AlbertSpec,
}

/// `D_s = ⊕ M_{m_i}(D_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeAlgebra {
    pub summands: Vec<Summand>,
}

/// Errors and warnings from checking a [`HodgeAlgebra`] against `μ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraCheck {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl HodgeAlgebra {
    pub fn from_specs(specs: &[SummandSpec]) -> Result<Self> {
        let summands = specs
            .iter()
            .map(|s| {
                Ok(Summand {
                    multiplicity: s.multiplicity,
                    dim_v: s.dim_v,
                    algebra: AlbertDescriptor::from_spec(&s.algebra)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HodgeAlgebra { summands })
    }

    pub fn to_specs(&self) -> Vec<SummandSpec> {
        self.summands
            .iter()
            .map(|s| SummandSpec {
                multiplicity: s.multiplicity,
                dim_v: s.dim_v,
                algebra: s.algebra.to_spec(),
            })
            .collect()
    }

    /// `Σ m_i · dim V_i`.
    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity * s.dim_v).sum()
    }

    pub fn check(&self, mu: usize) -> AlgebraCheck {
        let mut check = AlgebraCheck::default();
        if self.summands.is_empty() {
            check.errors.push("algebra has no summands".into());
        }
        if self.total_dim() != mu {
            check.errors.push(format!(
                "Σ m_i·dim V_i = {} does not equal μ = {mu}",
                self.total_dim()
            ));
        }
        for (i, s) in self.summands.iter().enumerate() {
            let f = s.algebra.center_degree();
            let d = s.algebra.degree_d;
            if s.multiplicity == 0 || s.dim_v == 0 {
                check
                    .errors
                    .push(format!("summand {i}: multiplicity and dim V must be positive"));
                continue;
            }
            if s.dim_v % f != 0 {
                check.errors.push(format!(
                    "summand {i}: center degree {f} does not divide dim V = {}",
                    s.dim_v
                ));
            } else if s.dim_v % (d * d * f) != 0 {
                check.warnings.push(format!(
                    "summand {i}: d²·f = {} does not divide dim V = {}",
                    d * d * f,
                    s.dim_v
                ));
            }
            for v in validate_albert(&s.algebra) {
                check.errors.push(format!("summand {i}: {}", v.message));
            }
        }
        check
    }
}

/// `Σ m_i f_i`, the dimension of a maximal commutative semisimple subalgebra.
pub fn max_comm_semisimple_dim(alg: &HodgeAlgebra) -> usize {
    alg.summands
        .iter()
        .map(|s| s.multiplicity * s.algebra.center_degree())
        .sum()
}

/// CM detection: `Σ m_i f_i = μ` and every summand is a CM field (type IV with `d = 1`).
pub fn is_cm_algebra(alg: &HodgeAlgebra, mu: usize) -> bool {
    max_comm_semisimple_dim(alg) == mu
        && alg
            .summands
            .iter()
            .all(|s| s.algebra.albert_type == AlbertType::IV && s.algebra.degree_d == 1)
}

/// `D ⊗_F F_w ≅ M_r(D')` with `[D':F_w] = d'²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalStructure {
    pub prime: u64,
    pub place: usize,
    pub local_degree: usize,
    pub r: usize,
    pub d_prime: usize,
}

impl LocalStructure {
    /// Builds the structure from the local invariant, checking that `d'` divides `d`.
    pub fn from_invariant(
        prime: u64,
        place: usize,
        local_degree: usize,
        d: usize,
        inv: &Rational,
    ) -> Result<Self> {
        let den = frac_mod_one(inv).denom().clone();
        let d_prime = usize::try_from(&den).map_err(|_| Error::arg("invariant denominator too large"))?;
        if d_prime == 0 || !d.is_multiple_of(d_prime) {
            return Err(Error::arg(format!(
                "local index {d_prime} does not divide d = {d}"
            )));
        }
        Ok(LocalStructure {
            prime,
            place,
            local_degree,
            r: d / d_prime,
            d_prime,
        })
    }

    /// `r·d'²·[F_w:ℚ_l]`, the dimension over `ℚ_l` of the simple module of `D ⊗ F_w` times `r`.
    pub fn sharp_divisor(&self, m: usize) -> usize {
        m * self.r * self.d_prime * self.d_prime * self.local_degree
    }
}

/// Local structures at every place over `l`; empty with `certified = false` when the
/// places over `l` are not certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalStructures {
    pub prime: u64,
    pub certified: bool,
    pub places: Vec<LocalStructure>,
}

pub fn local_structure(desc: &AlbertDescriptor, l: u64) -> Result<LocalStructures> {
    let split = desc.center.splitting_type(l)?;
    if !split.certified {
        return Ok(LocalStructures {
            prime: l,
            certified: false,
            places: Vec::new(),
        });
    }
    let places = split
        .places
        .iter()
        .enumerate()
        .map(|(w, place)| {
            LocalStructure::from_invariant(l, w, place.local_degree(), desc.degree_d, &desc.inv_at(l, w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalStructures {
        prime: l,
        certified: true,
        places,
    })
}

/// Outcome of testing whether `M_m(D ⊗ F_w)` can embed unitally into some `M_{h_j}(ℚ_l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EmbeddingCheck {
    /// `divisor | dims[j]` for the least such `j`.
    NotObstructed { j: usize, divisor: usize },
    /// `divisor` divides none of the dimensions.
    Obstructed { divisor: usize, dims: Vec<usize> },
}

impl EmbeddingCheck {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, EmbeddingCheck::Obstructed { .. })
    }
}

pub fn embedding_obstruction(m: usize, ls: &LocalStructure, dims: &[usize]) -> Result<EmbeddingCheck> {
    if dims.is_empty() {
        return Err(Error::Degenerate("no graded dimensions given".into()));
    }
    if dims.contains(&0) {
        return Err(Error::pre("graded dimensions must be strictly positive"));
    }
    let divisor = ls.sharp_divisor(m);
    Ok(match dims.iter().position(|&h| h % divisor == 0) {
        Some(j) => EmbeddingCheck::NotObstructed { j, divisor },
        None => EmbeddingCheck::Obstructed {
            divisor,
            dims: dims.to_vec(),
        },
    })
}

/// Whether `divisor` divides no entry of `dims` (all entries assumed positive).
pub(crate) fn divides_none(divisor: usize, dims: &[usize]) -> bool {
    dims.iter().all(|&h| h % divisor != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};
    use crate::exactnum::IntPolynomial;

    fn gaussian_iv(invariants: Vec<LocalInvariant>) -> AlbertDescriptor {
        AlbertDescriptor {
            albert_type: AlbertType::IV,
            center: NumberField::new(IntPolynomial::from_i64(&[1, 0, 1])).unwrap(),
            degree_d: 2,
            invariants,
            cm_conjugation: Some(QPolynomial::new(vec![int(0), int(-1)])),
            archimedean: None,
            center_cyclic: true,
        }
    }

    fn inv(prime: u64, place: usize, v: Rational) -> LocalInvariant {
        LocalInvariant { prime, place, inv: v }
    }

    #[test]
    fn swapped_places_sum_to_zero() {
        let d = gaussian_iv(vec![inv(5, 0, rat(1, 2)), inv(5, 1, rat(1, 2))]);
        assert!(validate_albert(&d).is_empty());
    }

    #[test]
    fn fixed_place_must_be_split() {
        let d = gaussian_iv(vec![inv(3, 0, rat(1, 2))]);
        let v = validate_albert(&d);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, "fixed-place");
    }

    #[test]
    fn unbalanced_pair() {
        let d = gaussian_iv(vec![inv(5, 0, rat(1, 2))]);
        assert_eq!(validate_albert(&d)[0].rule, "conjugate-pair");
    }

    #[test]
    fn type_one_real_quadratic() {
        let d = AlbertDescriptor {
            albert_type: AlbertType::I,
            center: NumberField::new(IntPolynomial::from_i64(&[-5, 0, 1])).unwrap(),
            degree_d: 1,
            invariants: vec![],
            cm_conjugation: None,
            archimedean: None,
            center_cyclic: false,
        };
        assert!(validate_albert(&d).is_empty());
        let mut bad = d.clone();
        bad.degree_d = 2;
        assert!(!validate_albert(&bad).is_empty());
    }

    #[test]
    fn local_structures() {
        let q = LocalStructure::from_invariant(3, 0, 1, 2, &rat(1, 2)).unwrap();
        assert_eq!((q.r, q.d_prime), (1, 2));
        let s = LocalStructure::from_invariant(3, 0, 1, 2, &int(0)).unwrap();
        assert_eq!((s.r, s.d_prime), (2, 1));
        let f = LocalStructure::from_invariant(3, 0, 1, 4, &rat(1, 2)).unwrap();
        assert_eq!((f.r, f.d_prime), (2, 2));
        assert!(LocalStructure::from_invariant(3, 0, 1, 2, &rat(1, 3)).is_err());
    }

    #[test]
    fn local_structure_skips_uncertified() {
        let d = gaussian_iv(vec![]);
        let ls = local_structure(&d, 2).unwrap();
        assert!(!ls.certified && ls.places.is_empty());
        let ls = local_structure(&gaussian_iv(vec![inv(5, 0, rat(1, 2)), inv(5, 1, rat(1, 2))]), 5).unwrap();
        assert_eq!(ls.places.len(), 2);
        assert!(ls.places.iter().all(|p| p.d_prime == 2 && p.local_degree == 1));
    }

    #[test]
    fn embedding_examples() {
        let ramified = LocalStructure { prime: 3, place: 0, local_degree: 1, r: 1, d_prime: 2 };
        assert_eq!(
            embedding_obstruction(1, &ramified, &[4, 4, 4, 4]).unwrap(),
            EmbeddingCheck::NotObstructed { j: 0, divisor: 4 }
        );
        assert!(embedding_obstruction(1, &ramified, &[2, 2]).unwrap().is_obstructed());
        let split = LocalStructure { prime: 3, place: 0, local_degree: 1, r: 2, d_prime: 1 };
        assert_eq!(
            embedding_obstruction(1, &split, &[4]).unwrap(),
            EmbeddingCheck::NotObstructed { j: 0, divisor: 2 }
        );
        assert!(matches!(embedding_obstruction(1, &split, &[]), Err(Error::Degenerate(_))));
        assert!(matches!(embedding_obstruction(1, &split, &[0, 4]), Err(Error::Precondition(_))));
    }

    #[test]
    fn commutative_dimension() {
        let summand = |m: usize, poly: &[i64], d: usize, t: AlbertType| Summand {
            multiplicity: m,
            dim_v: 16,
            algebra: AlbertDescriptor {
                albert_type: t,
                center: NumberField::new(IntPolynomial::from_i64(poly)).unwrap(),
                degree_d: d,
                invariants: vec![],
                cm_conjugation: None,
                archimedean: None,
                center_cyclic: false,
            },
        };
        let two = HodgeAlgebra {
            summands: vec![
                summand(2, &[1, 0, 1], 1, AlbertType::IV),
                summand(1, &[-1, -2, 1, 1], 1, AlbertType::I),
            ],
        };
        assert_eq!(max_comm_semisimple_dim(&two), 7);
        let q = HodgeAlgebra { summands: vec![summand(1, &[0, 1], 1, AlbertType::I)] };
        assert!(!is_cm_algebra(&q, 16));
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{"albert_type":"IV","center":{"min_poly":[1,0,1]},"degree_d":2,
            "cm_conjugation":[0,-1],"invariants":[{"prime":5,"place":0,"num":1,"den":2},
            {"prime":5,"place":1,"num":-1,"den":2}]}"#;
        let spec: AlbertSpec = serde_json::from_str(text).unwrap();
        let desc = AlbertDescriptor::from_spec(&spec).unwrap();
        assert_eq!(desc.inv_at(5, 1), rat(1, 2));
        assert_eq!(desc.inv_at(13, 0), int(0));
        assert!(validate_albert(&desc).is_empty());
        assert_eq!(desc.ramified_primes(), vec![5]);
    }
}

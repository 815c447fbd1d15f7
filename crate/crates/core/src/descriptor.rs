//! The versioned JSON descriptor shared by every command, and the evaluations run on each
//! of its sections.

use serde::{Deserialize, Serialize};

use crate::albert::{AlbertDescriptor, AlbertType, HodgeAlgebra, LocalInvariant, Summand};
use crate::error::{Error, Result};
use crate::exactnum::rational::{rat, serde_rational_vec, RationalField};
use crate::exactnum::{NumberField, QPolynomial, RationalMatrix, Vector};
use crate::fieldforge::{corollary1_check, forge, Corollary1Report, ForgeOptions, ForgeRecipe};
use crate::filtration::{
    nilpotent_reduce, torus_bound_check, weight_filtration, FiltrationProfile, NilpotentOperator,
    TorusBound, TORUS_CHECK_MAX,
};
use crate::gseries::{
    g_series_candidate, hasse_height_bound, height_template, CandidateReport, HeightBoundInput,
    HeightTemplate, Interval, TruncatedSeries,
};
use crate::starcheck::{check_star4, sigma_membership, PointDescriptor, PointSpec, StarReport, Verdict};
use crate::symplectic::{
    dual_labeled_basis, extend_isotropic, is_trivial_relation, labeled_basis, riemann_check,
    riemann_multiplier, vector_list, LabeledBasis, LabeledSplitting, Laurent, QuadraticRelation,
    ScalarMatrix, SymplecticBasis,
};

pub const SCHEMA_VERSION: u32 = 1;

/// A nilpotent operator and the center of its weight filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationInput {
    pub n: usize,
    pub matrix: RationalMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledInput {
    pub splitting: LabeledSplitting,
    pub tau: String,
    #[serde(default, with = "vector_list", skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiemannInput {
    pub matrix: ScalarMatrix,
    #[serde(default)]
    pub power: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationsInput {
    pub h: usize,
    pub relations: Vec<QuadraticRelation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticInput {
    pub mu: usize,
    #[serde(default, with = "option_vectors", skip_serializing_if = "Option::is_none")]
    pub isotropic: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labeled: Option<LabeledInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub riemann: Option<RiemannInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationsInput>,
}

mod option_vectors {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Vector>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => vector_list::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Vector>>, D::Error> {
        vector_list::deserialize(d).map(Some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesInput {
    #[serde(with = "serde_rational_vec")]
    pub coeffs: Vec<crate::exactnum::Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<RationalField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<HeightBoundInput>,
}

/// Top-level document. Every section is optional; each command reads the one it needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<SymplecticInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<ForgeRecipe>,
}

impl Descriptor {
    pub fn empty() -> Self {
        Descriptor {
            schema: SCHEMA_VERSION,
            point: None,
            filtration: None,
            symplectic: None,
            series: None,
            recipe: None,
        }
    }

    pub fn check_version(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::arg(format!(
                "unsupported schema version {}, expected {SCHEMA_VERSION}",
                self.schema
            )));
        }
        Ok(())
    }

    fn section<'a, T>(value: &'a Option<T>, name: &str) -> Result<&'a T> {
        value
            .as_ref()
            .ok_or_else(|| Error::arg(format!("descriptor has no \"{name}\" section")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarCheckReport {
    pub mu: usize,
    pub n: usize,
    pub h: usize,
    pub profile: FiltrationProfile,
    #[serde(flatten)]
    pub report: StarReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub corollary1: Vec<Corollary1Report>,
}

/// Σ-membership of the point, and the corollary test for every summand over the recipe's field.
pub fn run_star_check(desc: &Descriptor, bound: u64) -> Result<StarCheckReport> {
    desc.check_version()?;
    let point = PointDescriptor::from_spec(Descriptor::section(&desc.point, "point")?)?;
    let report = sigma_membership(&point, bound)?;
    let mut corollary1 = Vec::new();
    if let Some(recipe) = &desc.recipe {
        for (k, s) in point.algebra.summands.iter().enumerate() {
            if s.algebra.center.min_poly().coeffs() == recipe.f.min_poly.as_slice() {
                corollary1.push(corollary1_check(&point, recipe, k)?);
            }
        }
    }
    Ok(StarCheckReport {
        mu: point.mu,
        n: point.n,
        h: point.h(),
        profile: point.profile.clone(),
        report,
        corollary1,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiltrationReport {
    pub mu: usize,
    pub n: usize,
    pub rank: usize,
    pub jordan_type: Vec<usize>,
    pub profile: FiltrationProfile,
    pub realizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusBound>,
    /// Positions of the nonzero entries of the reduced form, when `N` is strictly upper triangular.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_support: Option<Vec<(usize, usize)>>,
}

pub fn run_filtration(desc: &Descriptor) -> Result<FiltrationReport> {
    desc.check_version()?;
    let input = Descriptor::section(&desc.filtration, "filtration")?;
    let op = NilpotentOperator::new(input.matrix.clone())?;
    let wf = weight_filtration(&op, input.n)?;
    if let Err(msg) = wf.verify(&op) {
        return Err(Error::internal(format!("weight filtration fails its axioms: {msg}")));
    }
    let torus = if op.size() <= TORUS_CHECK_MAX {
        Some(torus_bound_check(&op)?)
    } else {
        None
    };
    let reduced_support = if input.matrix.is_strictly_upper_triangular() {
        Some(nilpotent_reduce(&input.matrix)?.reduced.support())
    } else {
        None
    };
    Ok(FiltrationReport {
        mu: op.size(),
        n: input.n,
        rank: op.rank(),
        jordan_type: op.jordan_type(),
        realizable: wf.profile.is_realizable(),
        profile: wf.profile,
        torus,
        reduced_support,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RiemannReport {
    pub power: i32,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<Laurent>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationVerdict {
    pub index: usize,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymplecticReport {
    pub mu: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended: Option<SymplecticBasis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labeled: Option<SymplecticBasis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_labeled: Option<LabeledBasis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub riemann: Option<RiemannReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationVerdict>,
}

pub fn run_symplectic(desc: &Descriptor) -> Result<SymplecticReport> {
    desc.check_version()?;
    let input = Descriptor::section(&desc.symplectic, "symplectic")?;
    let mu = input.mu;
    let extended = input
        .isotropic
        .as_ref()
        .map(|v| extend_isotropic(v, mu))
        .transpose()?;
    let (labeled, dual_labeled) = match &input.labeled {
        Some(l) => {
            if l.splitting.mu != mu {
                return Err(Error::arg(format!(
                    "splitting has μ = {} but the section has μ = {mu}",
                    l.splitting.mu
                )));
            }
            (
                Some(labeled_basis(&l.splitting, &l.gamma, &l.tau)?),
                Some(dual_labeled_basis(&l.splitting, &l.tau)?),
            )
        }
        None => (None, None),
    };
    let riemann = input
        .riemann
        .as_ref()
        .map(|r| -> Result<RiemannReport> {
            Ok(RiemannReport {
                power: r.power,
                holds: riemann_check(&r.matrix, mu, r.power)?,
                multiplier: riemann_multiplier(&r.matrix)?,
            })
        })
        .transpose()?;
    let relations = match &input.relations {
        Some(r) => r
            .relations
            .iter()
            .enumerate()
            .map(|(index, rel)| {
                Ok(RelationVerdict {
                    index,
                    trivial: is_trivial_relation(rel, mu, r.h)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    Ok(SymplecticReport {
        mu,
        extended,
        labeled,
        dual_labeled,
        riemann,
        relations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeightReport {
    pub input: HeightBoundInput,
    pub strong: bool,
    pub bound: Interval,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesReport {
    pub candidate: CandidateReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<HeightReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub template: Option<HeightTemplate>,
}

/// Options that override the series section: truncation order, cap and the strong bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesOptions {
    pub order: Option<usize>,
    pub cap: Option<crate::exactnum::Rational>,
    pub strong: bool,
}

pub fn run_series(desc: &Descriptor, opts: &SeriesOptions) -> Result<SeriesReport> {
    desc.check_version()?;
    let input = Descriptor::section(&desc.series, "series")?;
    let mut series = TruncatedSeries::new(input.coeffs.clone())?;
    if let Some(order) = opts.order {
        series = series.truncate(order)?;
    }
    let cap = opts
        .cap
        .clone()
        .or_else(|| input.cap.clone().map(|c| c.0))
        .ok_or_else(|| Error::arg("no cap given for the growth test"))?;
    let candidate = g_series_candidate(&series, &cap)?;
    let height = input
        .height
        .as_ref()
        .map(|h| -> Result<HeightReport> {
            let bound = hasse_height_bound(h, opts.strong)?;
            Ok(HeightReport {
                input: h.clone(),
                strong: opts.strong,
                approx: bound.midpoint_f64(),
                bound,
            })
        })
        .transpose()?;
    let template = match &desc.point {
        Some(p) => Some(height_template(p.mu)?),
        None => None,
    };
    Ok(SeriesReport {
        candidate,
        height,
        template,
    })
}

/// Profile of the worked example: μ = 16, n = 3, `h = h_0 = 4`.
pub const EXAMPLE_PROFILE: [usize; 7] = [4, 0, 4, 0, 4, 0, 4];
/// The excluded variant, where `W_3 ≠ W_0` and a graded piece of dimension 8 appears.
pub const EXAMPLE_ALT_PROFILE: [usize; 7] = [4, 0, 0, 8, 0, 0, 4];

/// A type IV quaternion algebra over the recipe's CM field, invariant 1/2 at each designated
/// place and 0 elsewhere.
pub fn designated_quaternion(recipe: &ForgeRecipe) -> Result<AlbertDescriptor> {
    let invariants = recipe
        .designated_places
        .iter()
        .map(|w| LocalInvariant {
            prime: w.prime,
            place: w.place,
            inv: rat(1, 2),
        })
        .collect();
    Ok(AlbertDescriptor {
        albert_type: AlbertType::IV,
        center: NumberField::from_spec(&recipe.f)?,
        degree_d: 2,
        invariants,
        cm_conjugation: Some(QPolynomial::new(recipe.sigma.clone())),
        archimedean: None,
        center_cyclic: recipe.cm_field_is_cyclic(),
    })
}

/// The worked-example point for the given profile: one summand `M_1(D)` with `dim V = 16`.
pub fn example_point(recipe: &ForgeRecipe, dims: &[usize]) -> Result<PointDescriptor> {
    let profile = FiltrationProfile::new(3, dims.to_vec())?;
    let algebra = HodgeAlgebra {
        summands: vec![Summand {
            multiplicity: 1,
            dim_v: 16,
            algebra: designated_quaternion(recipe)?,
        }],
    };
    PointDescriptor::new(16, 3, profile, algebra, None)
}

/// The worked-example descriptor, forged from scratch for β = 2.
pub fn example_descriptor(opts: ForgeOptions) -> Result<Descriptor> {
    let recipe = forge(2, opts)?;
    let point = example_point(&recipe, &EXAMPLE_PROFILE)?;
    Ok(Descriptor {
        point: Some(point.to_spec()),
        recipe: Some(recipe),
        ..Descriptor::empty()
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlternativeReport {
    pub profile: FiltrationProfile,
    pub star4: bool,
    pub star4_verdict: Verdict,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleReport {
    pub descriptor: Descriptor,
    pub evaluation: StarCheckReport,
    pub alternative: AlternativeReport,
}

/// Regenerates the worked example and evaluates both the example and its excluded variant.
pub fn run_example(opts: ForgeOptions, bound: u64) -> Result<ExampleReport> {
    let descriptor = example_descriptor(opts)?;
    let evaluation = run_star_check(&descriptor, bound)?;
    let recipe = descriptor.recipe.as_ref().expect("example has a recipe");
    let alt = example_point(recipe, &EXAMPLE_ALT_PROFILE)?;
    let star4 = check_star4(&alt, bound)?;
    Ok(ExampleReport {
        alternative: AlternativeReport {
            profile: alt.profile.clone(),
            star4: star4.holds(),
            star4_verdict: star4.verdict,
            warnings: alt.warnings().to_vec(),
        },
        descriptor,
        evaluation,
    })
}

//! Number fields given by a monic irreducible integer polynomial, their prime splitting,
//! and the action of an involution on the places above a prime.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::fp::{factor_mod_p, FpPoly};
use super::poly::{discriminant, IntPolynomial, QPolynomial};
use super::primes::is_prime;
use super::rational::{bigint_mod, serde_bigint_vec};
use super::sturm::real_root_count;
use super::zfactor::{is_irreducible_over_q, MAX_DEGREE};
use crate::error::{Error, Result};

/// ℚ[x]/(min_poly) with `min_poly` monic and irreducible, certified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    min_poly: IntPolynomial,
    disc: BigInt,
}

/// JSON form `{"min_poly": [c0, ..., cd]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberFieldSpec {
    #[serde(with = "serde_bigint_vec")]
    pub min_poly: Vec<BigInt>,
}

impl NumberField {
    pub fn new(min_poly: IntPolynomial) -> Result<Self> {
        let deg = min_poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::arg("minimal polynomial must have positive degree"))?;
        if deg > MAX_DEGREE {
            return Err(Error::arg(format!(
                "field degree {deg} exceeds the supported maximum {MAX_DEGREE}"
            )));
        }
        if !min_poly.is_monic() {
            return Err(Error::arg(format!("{min_poly} is not monic")));
        }
        if !is_irreducible_over_q(&min_poly)? {
            return Err(Error::arg(format!("{min_poly} is reducible over ℚ")));
        }
        let disc = discriminant(&min_poly);
        Ok(NumberField { min_poly, disc })
    }

    pub fn rationals() -> Self {
        NumberField::new(IntPolynomial::from_i64(&[0, 1])).expect("x is irreducible")
    }

    pub fn from_spec(spec: &NumberFieldSpec) -> Result<Self> {
        NumberField::new(IntPolynomial::new(spec.min_poly.clone()))
    }

    pub fn to_spec(&self) -> NumberFieldSpec {
        NumberFieldSpec {
            min_poly: self.min_poly.coeffs().to_vec(),
        }
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn real_embedding_count(&self) -> usize {
        real_root_count(&self.min_poly)
    }

    pub fn is_totally_real(&self) -> bool {
        self.real_embedding_count() == self.degree()
    }

    pub fn is_totally_imaginary(&self) -> bool {
        self.real_embedding_count() == 0
    }

    /// Whether `l` divides the polynomial discriminant, so that factor data may not
    /// reflect the prime ideal factorization.
    pub fn is_certified_prime(&self, l: u64) -> bool {
        bigint_mod(&self.disc, l) != 0
    }

    /// Factorization pattern of `l` read off from `min_poly mod l`.
    pub fn splitting_type(&self, l: u64) -> Result<SplittingType> {
        if !is_prime(l) {
            return Err(Error::arg(format!("{l} is not prime")));
        }
        let places = factor_mod_p(&self.min_poly, l)?
            .into_iter()
            .map(|(factor, mult)| Place {
                residue_degree: factor.degree().unwrap(),
                ramification_index: mult,
                factor,
            })
            .collect();
        Ok(SplittingType {
            prime: l,
            places,
            certified: self.is_certified_prime(l),
        })
    }

    /// Checks that `sigma` (the image of the generator) defines a field automorphism of
    /// order dividing 2.
    pub fn check_involution(&self, sigma: &QPolynomial) -> Result<()> {
        let modulus = self.min_poly.to_q();
        let image = self.min_poly.to_q().compose_mod(sigma, &modulus);
        if !image.is_zero() {
            return Err(Error::arg(format!(
                "σ(α) = {sigma} is not a root of {}",
                self.min_poly
            )));
        }
        let twice = sigma.compose_mod(sigma, &modulus);
        if twice != QPolynomial::x().rem(&modulus) {
            return Err(Error::arg(format!("σ = {sigma} does not square to the identity")));
        }
        Ok(())
    }

    /// Permutation of the places over `l` induced by the involution `sigma`.
    pub fn conjugation_action_on_places(&self, sigma: &QPolynomial, l: u64) -> Result<PlaceAction> {
        self.check_involution(sigma)?;
        let split = self.splitting_type(l)?;
        let sigma_mod = sigma.reduce_mod(l).ok_or_else(|| {
            Error::Degenerate(format!("σ has a denominator divisible by {l}"))
        })?;
        let mut permutation = Vec::with_capacity(split.places.len());
        for w in &split.places {
            let image = split
                .places
                .iter()
                .position(|g| g.factor.compose_mod(&sigma_mod, &w.factor).is_zero())
                .ok_or_else(|| {
                    Error::internal(format!("no place over {l} receives the image of {}", w.factor))
                })?;
            permutation.push(image);
        }
        let involutive = permutation
            .iter()
            .enumerate()
            .all(|(i, &j)| permutation[j] == i);
        if !involutive {
            return Err(Error::internal(format!(
                "σ acts on places over {l} by a non-involutive permutation"
            )));
        }
        Ok(PlaceAction {
            prime: l,
            permutation,
            certified: split.certified,
        })
    }
}

/// One place over `l`: residue degree, ramification index and its factor mod `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub residue_degree: usize,
    pub ramification_index: usize,
    pub factor: FpPoly,
}

impl Place {
    pub fn local_degree(&self) -> usize {
        self.residue_degree * self.ramification_index
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingType {
    pub prime: u64,
    pub places: Vec<Place>,
    pub certified: bool,
}

impl SplittingType {
    pub fn is_totally_split(&self) -> bool {
        self.places.iter().all(|w| w.local_degree() == 1)
    }

    pub fn is_inert(&self) -> bool {
        self.places.len() == 1 && self.places[0].ramification_index == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceAction {
    pub prime: u64,
    pub permutation: Vec<usize>,
    pub certified: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(IntPolynomial::from_i64(c)).unwrap()
    }

    fn neg_x() -> QPolynomial {
        QPolynomial::new(vec![int(0), int(-1)])
    }

    #[test]
    fn splitting_examples() {
        let k = field(&[1, 0, 1]);
        let s5 = k.splitting_type(5).unwrap();
        assert!(s5.certified);
        assert_eq!(s5.places.len(), 2);
        assert!(s5.places.iter().all(|w| w.residue_degree == 1 && w.ramification_index == 1));

        let s2 = k.splitting_type(2).unwrap();
        assert!(!s2.certified);
        assert_eq!(s2.places.len(), 1);
        assert_eq!((s2.places[0].residue_degree, s2.places[0].ramification_index), (1, 2));

        let q = NumberField::rationals();
        let s = q.splitting_type(7).unwrap();
        assert_eq!(s.places.len(), 1);
        assert_eq!(s.places[0].local_degree(), 1);
        assert!(k.splitting_type(9).is_err());
    }

    #[test]
    fn construction_rejects_bad_polynomials() {
        assert!(NumberField::new(IntPolynomial::from_i64(&[-1, 0, 1])).is_err());
        assert!(NumberField::new(IntPolynomial::from_i64(&[1, 0, 2])).is_err());
        assert!(NumberField::new(IntPolynomial::from_i64(&[3])).is_err());
    }

    #[test]
    fn real_embeddings() {
        assert_eq!(field(&[-5, 0, 1]).real_embedding_count(), 2);
        assert_eq!(field(&[1, 0, 1]).real_embedding_count(), 0);
        assert_eq!(field(&[-1, -2, 1, 1]).real_embedding_count(), 3);
    }

    #[test]
    fn conjugation_examples() {
        let k = field(&[1, 0, 1]);
        let a5 = k.conjugation_action_on_places(&neg_x(), 5).unwrap();
        assert_eq!(a5.permutation, vec![1, 0]);
        let a3 = k.conjugation_action_on_places(&neg_x(), 3).unwrap();
        assert_eq!(a3.permutation, vec![0]);
        let id = k.conjugation_action_on_places(&QPolynomial::x(), 13).unwrap();
        assert_eq!(id.permutation, vec![0, 1]);
    }

    #[test]
    fn non_automorphism_rejected() {
        let k = field(&[1, 0, 1]);
        let bad = QPolynomial::new(vec![int(1), int(-1)]);
        assert!(matches!(
            k.conjugation_action_on_places(&bad, 5),
            Err(Error::InvalidArgument(_))
        ));
    }
}

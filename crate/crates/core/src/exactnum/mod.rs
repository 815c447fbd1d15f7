//! Exact arithmetic over ℚ, ℤ[x], 𝔽_p[x] and small number fields.

pub mod fp;
pub mod linalg;
pub mod numfield;
pub mod poly;
pub mod primes;
pub mod rational;
pub mod sturm;
pub mod zfactor;

pub use fp::{factor_mod_p, FpPoly};
pub use linalg::{RationalMatrix, Subspace, Vector};
pub use numfield::{NumberField, NumberFieldSpec, Place, PlaceAction, SplittingType};
pub use poly::{discriminant, resultant, IntPolynomial, QPolynomial};
pub use rational::{parse_rational, Rational};
pub use sturm::real_root_count;
pub use zfactor::{factor_over_q, is_irreducible_over_q};

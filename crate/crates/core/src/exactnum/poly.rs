//! Dense univariate polynomials over ℤ and ℚ.
//!
//! Coefficients are stored in ascending degree order; the representation is canonical
//! (no trailing zeros, the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::fp::FpPoly;
use super::rational::{bigint_mod, format_rational, rational_mod, Rational};

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
            acc * x + Rational::from_integer(c.clone())
        })
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_q(&self) -> QPolynomial {
        QPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        FpPoly::new(p, self.coeffs.iter().map(|c| bigint_mod(c, p)).collect())
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &IntPolynomial) -> IntPolynomial {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, c| {
                &(&acc * other) + &IntPolynomial::new(vec![c.clone()])
            })
    }

    /// Exact division over ℤ, `None` when `divisor` does not divide `self` in ℤ[x].
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = self.to_q().div_rem(&divisor.to_q());
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        write_terms(f, &terms)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[Rational]) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        let abs = c.abs();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let show_coeff = k == 0 || !abs.is_one();
        if show_coeff {
            f.write_str(&format_rational(&abs))?;
        }
        match k {
            0 => {}
            1 => f.write_str("x")?,
            _ => write!(f, "x^{k}")?,
        }
    }
    Ok(())
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_default();
                    let b = rhs.coeffs.get(k).cloned().unwrap_or_default();
                    a + b
                })
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

/// Polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<Rational>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        QPolynomial::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &QPolynomial) -> (QPolynomial, QPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPolynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * d;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (QPolynomial::new(quot), QPolynomial::new(rem))
    }

    pub fn rem(&self, divisor: &QPolynomial) -> QPolynomial {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &QPolynomial) -> QPolynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self(inner(x)) mod modulus`.
    pub fn compose_mod(&self, inner: &QPolynomial, modulus: &QPolynomial) -> QPolynomial {
        let inner = inner.rem(modulus);
        self.coeffs
            .iter()
            .rev()
            .fold(QPolynomial::zero(), |acc, c| {
                (&(&acc * &inner) + &QPolynomial::constant(c.clone())).rem(modulus)
            })
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPolynomial> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPolynomial::new(
                self.coeffs.iter().map(|c| c.to_integer()).collect(),
            ))
        } else {
            None
        }
    }

    /// Primitive integer polynomial proportional to `self` (positive leading coefficient).
    pub fn clear_denominators(&self) -> IntPolynomial {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }

    /// Reduction mod `p`; `None` when a denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<FpPoly> {
        let coeffs: Option<Vec<u64>> = self.coeffs.iter().map(|c| rational_mod(c, p)).collect();
        coeffs.map(|c| FpPoly::new(p, c))
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPolynomial::new(out)
    }
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two nonzero integer polynomials via the Sylvester matrix.
pub fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> BigInt {
    let (da, db) = match (a.degree(), b.degree()) {
        (Some(da), Some(db)) => (da, db),
        _ => return BigInt::zero(),
    };
    let n = da + db;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for row in 0..db {
        for (k, c) in a.coeffs().iter().rev().enumerate() {
            m[row][row + k] = c.clone();
        }
    }
    for row in 0..da {
        for (k, c) in b.coeffs().iter().rev().enumerate() {
            m[db + row][row + k] = c.clone();
        }
    }
    bareiss_determinant(m)
}

/// Discriminant `(-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPolynomial) -> BigInt {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return BigInt::zero(),
    };
    if d == 1 {
        return BigInt::one();
    }
    let res = resultant(f, &f.derivative());
    let lc = f.leading().expect("nonzero").clone();
    let value = res / lc;
    if (d * (d - 1) / 2) % 2 == 1 {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    #[test]
    fn canonical_form_and_display() {
        let p = IntPolynomial::from_i64(&[-1, 1, 1, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "x^2 + x - 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        let q = QPolynomial::new(vec![rat(1, 2), int(0), int(-3)]);
        assert_eq!(q.to_string(), "-3x^2 + 1/2");
    }

    #[test]
    fn division_and_gcd() {
        let a = IntPolynomial::from_i64(&[-1, 0, 1]).to_q();
        let b = IntPolynomial::from_i64(&[1, 1]).to_q();
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, IntPolynomial::from_i64(&[-1, 1]).to_q());
        assert!(r.is_zero());
        let c = IntPolynomial::from_i64(&[1, 2, 1]).to_q();
        assert_eq!(a.gcd(&c), b);
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&IntPolynomial::from_i64(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&IntPolynomial::from_i64(&[-1, 1, 1])), BigInt::from(5));
        assert_eq!(
            discriminant(&IntPolynomial::from_i64(&[-1, -2, 1, 1])),
            BigInt::from(49)
        );
        // x^3 - 2: -27 * 4 = -108
        assert_eq!(discriminant(&IntPolynomial::from_i64(&[-2, 0, 0, 1])), BigInt::from(-108));
    }

    #[test]
    fn composition() {
        let f = IntPolynomial::from_i64(&[1, 0, 1]);
        let g = IntPolynomial::from_i64(&[0, -1]);
        assert_eq!(f.compose(&g), f);
        let h = IntPolynomial::from_i64(&[1, 1]);
        assert_eq!(f.compose(&h), IntPolynomial::from_i64(&[2, 2, 1]));
    }
}

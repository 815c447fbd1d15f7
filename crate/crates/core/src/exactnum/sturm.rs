//! Real root counting by Sturm sequences in exact arithmetic.

use num_traits::{One, Signed, Zero};

use super::poly::{IntPolynomial, QPolynomial};

fn sturm_sequence(f: &QPolynomial) -> Vec<QPolynomial> {
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-super::Rational::one()));
    }
    seq
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let nonzero: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_at_infinity(p: &QPolynomial, positive: bool) -> i8 {
    let lc = p.leading().expect("nonzero");
    let deg = p.degree().unwrap();
    let mut s: i8 = if lc.is_positive() { 1 } else { -1 };
    if !positive && deg % 2 == 1 {
        s = -s;
    }
    s
}

/// Number of distinct real roots of a nonzero polynomial.
pub fn real_root_count(f: &IntPolynomial) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&f.to_q());
    let minus = sign_changes(seq.iter().map(|p| sign_at_infinity(p, false)));
    let plus = sign_changes(seq.iter().map(|p| sign_at_infinity(p, true)));
    minus - plus
}

/// Distinct real roots in the half-open interval `(a, b]`.
pub fn real_roots_in(f: &IntPolynomial, a: &super::Rational, b: &super::Rational) -> usize {
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&f.to_q());
    let at = |x: &super::Rational| {
        sign_changes(seq.iter().map(|p| {
            let v = p.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        }))
    };
    at(a).saturating_sub(at(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::int;

    #[test]
    fn examples() {
        assert_eq!(real_root_count(&IntPolynomial::from_i64(&[-5, 0, 1])), 2);
        assert_eq!(real_root_count(&IntPolynomial::from_i64(&[1, 0, 1])), 0);
        assert_eq!(real_root_count(&IntPolynomial::from_i64(&[-1, -2, 1, 1])), 3);
        assert_eq!(real_root_count(&IntPolynomial::from_i64(&[-2, 0, 0, 1])), 1);
        // (x - 1)^2 (x + 2): distinct roots only
        assert_eq!(real_root_count(&IntPolynomial::from_i64(&[2, -3, 0, 1])), 2);
    }

    #[test]
    fn interval_counts() {
        let f = IntPolynomial::from_i64(&[-1, -2, 1, 1]);
        assert_eq!(real_roots_in(&f, &int(0), &int(2)), 1);
        assert_eq!(real_roots_in(&f, &int(-3), &int(0)), 2);
    }
}

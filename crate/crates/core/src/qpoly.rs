//! Polynomials in `q` with arbitrary-precision integer coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `coeffs[i]` is the coefficient of `q^i`. Canonical form has no trailing
/// zero coefficient; the zero polynomial is the empty sequence.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

/// Division left a nonzero remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InexactDivision {
    pub remainder: QPolynomial,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// `c * q^e`.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_counts(counts: &[usize]) -> Self {
        Self::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn at_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .sum()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The polynomial `p(q^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// The polynomial `p(q^(1/2))`, defined when only even powers occur.
    pub fn halve_exponents(&self) -> Option<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(
            self.coeffs.iter().step_by(2).cloned().collect(),
        ))
    }

    /// Long division; `Ok((quotient, remainder))` when every step divides the
    /// leading coefficient exactly.
    pub fn div_rem(&self, divisor: &QPolynomial) -> Option<(QPolynomial, QPolynomial)> {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "division by the zero polynomial");
        let lead = &divisor.coeffs[dlen - 1];
        let mut rem = self.coeffs.clone();
        if rem.len() < dlen {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * d;
            }
            quot[shift] = q;
        }
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact division; fails when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &QPolynomial) -> Result<QPolynomial, InexactDivision> {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            Some((_, r)) => Err(InexactDivision { remainder: r }),
            None => Err(InexactDivision {
                remainder: self.clone(),
            }),
        }
    }

    /// Divides every coefficient by `n`; `None` if some coefficient is not a multiple.
    pub fn div_scalar_exact(&self, n: &BigInt) -> Option<QPolynomial> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(Self::from_coeffs(coeffs))
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// True iff the coefficients read the same reversed and weakly rise then weakly fall.
    pub fn is_symmetric_unimodal(&self) -> bool {
        if !self.is_palindromic() {
            return false;
        }
        let c = &self.coeffs;
        let mut i = 1;
        while i < c.len() && c[i - 1] <= c[i] {
            i += 1;
        }
        while i < c.len() && c[i - 1] >= c[i] {
            i += 1;
        }
        i >= c.len()
    }

    /// Coefficients as `u64`, when they are all nonnegative and fit.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(u64::try_from).map(Result::ok).collect()
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QPolynomial {
            type Output = QPolynomial;
            fn $m(self, rhs: QPolynomial) -> QPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `1 - q^m`
fn one_minus_q_pow(m: usize) -> QPolynomial {
    &QPolynomial::one() - &QPolynomial::monomial(1, m)
}

/// The Gaussian binomial `[k+l choose k]_q`, the rank generating function
/// of partitions fitting in a `k x l` rectangle.
pub fn q_binomial(k: usize, l: usize) -> QPolynomial {
    // row[j] = [i choose j]_q, Pascal recurrence [i,j] = [i-1,j-1] + q^j [i-1,j]
    let n = k + l;
    let mut row: Vec<QPolynomial> = vec![QPolynomial::one()];
    for i in 1..=n {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i {
            let left = if j >= 1 { row[j - 1].clone() } else { QPolynomial::zero() };
            let right = if j < i { row[j].shift(j) } else { QPolynomial::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The MacMahon box generating function for plane partitions in an
/// `r x c x t` box, counted by volume.
///
/// Panics if the product of denominators does not divide the product of
/// numerators, which would be a bug.
pub fn macmahon(r: usize, c: usize, t: usize) -> QPolynomial {
    let mut num = QPolynomial::one();
    let mut den = QPolynomial::one();
    for i in 1..=r {
        for j in 1..=c {
            num = &num * &one_minus_q_pow(r + t + j - i);
            den = &den * &one_minus_q_pow(r + c + 1 - j - i);
        }
    }
    match num.div_exact(&den) {
        Ok(q) => q,
        Err(e) => panic!("MacMahon quotient for ({r},{c},{t}) left remainder {}", e.remainder),
    }
}

pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Orbit generating function of the cyclic group `C_n` on subsets of `[n]`:
/// `(1/n) sum_{d | n} phi(d) (1 + q^d)^(n/d)`.
pub fn cyclic_orbit_polynomial(n: usize) -> QPolynomial {
    assert!(n >= 1, "C_0 is not defined");
    let mut sum = QPolynomial::zero();
    for d in divisors(n) {
        let term = (&QPolynomial::one() + &QPolynomial::monomial(1, d)).pow((n / d) as u32);
        let phi = QPolynomial::constant(euler_phi(d) as i64);
        sum = &sum + &(&phi * &term);
    }
    sum.div_scalar_exact(&BigInt::from(n))
        .unwrap_or_else(|| panic!("Burnside sum for C_{n} is not divisible by {n}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    /// Brute force: partitions in a k x l box counted by size.
    fn partitions_by_size(k: usize, l: usize) -> Vec<i64> {
        fn rec(k: usize, max: usize, size: usize, out: &mut Vec<i64>) {
            if k == 0 {
                out[size] += 1;
                return;
            }
            for part in 0..=max {
                rec(k - 1, part, size + part, out);
            }
        }
        let mut out = vec![0; k * l + 1];
        rec(k, l, 0, &mut out);
        out
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(QPolynomial::zero().degree(), None);
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(0, 5), QPolynomial::one());
        assert_eq!(q_binomial(2, 2), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(2, 2).at_minus_one(), BigInt::from(2));
    }

    #[test]
    fn q_binomial_matches_partition_count() {
        for k in 0..=6 {
            for l in 0..=6 {
                assert_eq!(q_binomial(k, l), p(&partitions_by_size(k, l)), "({k},{l})");
            }
        }
    }

    #[test]
    fn macmahon_examples() {
        assert_eq!(macmahon(1, 1, 1), p(&[1, 1]));
        assert_eq!(macmahon(2, 2, 2).at_one(), BigInt::from(20));
        assert_eq!(macmahon(2, 2, 2).at_minus_one(), BigInt::from(4));
        // t = 1 reduces to the rectangle
        assert_eq!(macmahon(3, 2, 1), q_binomial(3, 2));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_orbit_polynomial(1), p(&[1, 1]));
        assert_eq!(cyclic_orbit_polynomial(4), p(&[1, 1, 2, 1, 1]));
        assert_eq!(cyclic_orbit_polynomial(4).at_minus_one(), BigInt::from(2));
    }

    #[test]
    fn closed_form_at_minus_one_for_n_above_two() {
        for n in 3..=30usize {
            let closed: usize = divisors(n)
                .into_iter()
                .filter(|d| d % 2 == 0)
                .map(|d| euler_phi(d) << (n / d))
                .sum::<usize>()
                / n;
            assert_eq!(cyclic_orbit_polynomial(n).at_minus_one(), BigInt::from(closed));
        }
    }

    #[test]
    fn symmetric_unimodal_examples() {
        assert!(p(&[1, 1, 2, 1, 1]).is_symmetric_unimodal());
        assert!(!p(&[1, 0, 0, 1]).is_symmetric_unimodal());
        assert!(p(&[1]).is_symmetric_unimodal());
        assert!(!p(&[1, 2, 1, 2, 1]).is_symmetric_unimodal());
    }

    #[test]
    fn division() {
        let a = p(&[1, 2, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])).unwrap(), p(&[1, 1]));
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_err());
        assert!(p(&[1, 1]).div_exact(&p(&[0, 2])).is_err());
    }

    #[test]
    fn halving() {
        assert_eq!(p(&[1, 0, 1]).halve_exponents(), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 1]).halve_exponents(), None);
        assert_eq!(p(&[1, 1]).substitute_power(2), p(&[1, 0, 1]));
    }

    #[test]
    fn display() {
        extern crate std;
        use std::string::ToString;
        assert_eq!(p(&[1, 1, 2, 1, 1]).to_string(), "1 + q + 2q^2 + q^3 + q^4");
        assert_eq!(p(&[0, -1, 3]).to_string(), "-q + 3q^2");
        assert_eq!(QPolynomial::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn q_binomial_symmetric(k in 0usize..9, l in 0usize..9) {
            let a = q_binomial(k, l);
            prop_assert_eq!(&a, &q_binomial(l, k));
            prop_assert!(a.is_palindromic());
            prop_assert_eq!(a.degree(), Some(k * l));
        }

        #[test]
        fn mul_then_div_roundtrip(a in proptest::collection::vec(-9i64..9, 0..8), b in proptest::collection::vec(-9i64..9, 1..6)) {
            let b = p(&b);
            prop_assume!(!b.is_zero());
            let a = p(&a);
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }
    }
}

//! Exact sparse multivariate polynomials in `p_1..p_N` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::shapes::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars), BigInt::one())
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::monomial(Monomial::one(nvars), BigInt::from(c))
    }

    /// The variable `p_k`, 1-indexed.
    pub fn var(nvars: usize, k: usize) -> Self {
        Self::monomial(Monomial::var(nvars, k), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let nvars = m.exponents.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Evaluates at an integer point.
    pub fn eval(&self, point: &[i64]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (e, &x) in m.exponents.iter().zip(point) {
                term *= BigInt::from(x).pow(*e);
            }
            total += term;
        }
        total
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SparsePolynomial {
            nvars: self.nvars.max(rhs.nvars),
            terms: acc,
        }
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Determinant of a square polynomial matrix by cofactor expansion along the first row.
pub fn poly_det(m: &[Vec<SparsePolynomial>], nvars: usize) -> SparsePolynomial {
    let n = m.len();
    if n == 0 {
        return SparsePolynomial::one(nvars);
    }
    let cols: Vec<usize> = (0..n).collect();
    det_minor(m, 0, &cols, nvars)
}

fn det_minor(m: &[Vec<SparsePolynomial>], row: usize, cols: &[usize], nvars: usize) -> SparsePolynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut total = SparsePolynomial::zero(nvars);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_minor(m, row + 1, &rest, nvars);
        if minor.is_zero() {
            continue;
        }
        let term = &m[row][c] * &minor;
        total = if k % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_exactly() {
        let p1 = SparsePolynomial::var(2, 1);
        let p2 = SparsePolynomial::var(2, 2);
        let s = &p1 + &p2;
        let d = &s - &p2;
        assert_eq!(d, p1);
        let sq = &s * &s;
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.eval(&[2, 3]), BigInt::from(25));
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.to_string(), "p2^2 + 2*p1*p2 + p1^2");
    }

    #[test]
    fn polynomial_determinant() {
        let one = SparsePolynomial::one(2);
        let p1 = SparsePolynomial::var(2, 1);
        let p2 = SparsePolynomial::var(2, 2);
        let m = vec![vec![p1.clone(), one.clone()], vec![p2.clone(), p1.clone()]];
        let d = poly_det(&m, 2);
        assert_eq!(d, &(&p1 * &p1) - &p2);
        assert!(poly_det(&[], 2).is_one());
    }
}

//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponent = Vec<u32>;

/// Graded lexicographic comparison: total degree first, then lexicographic.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A polynomial in `num_vars` variables, stored as a map from exponent vector
/// to nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    num_vars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultivariatePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        MultivariatePolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(e, Rational::one());
        p
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::Contract(format!(
                    "exponent of length {} in a polynomial of {num_vars} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        MultivariatePolynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::Contract(format!(
                "polynomials in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    /// Exact product. Fails if the variable counts differ.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.num_vars);
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl<'a> Mul<&'a MultivariatePolynomial> for &'a MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    /// Panics on a variable-count mismatch; use [`MultivariatePolynomial::try_mul`] to handle it.
    fn mul(self, rhs: &'a MultivariatePolynomial) -> MultivariatePolynomial {
        self.try_mul(rhs).expect("variable counts must agree")
    }
}

impl<'a> Add<&'a MultivariatePolynomial> for &'a MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    fn add(self, rhs: &'a MultivariatePolynomial) -> MultivariatePolynomial {
        self.try_add(rhs).expect("variable counts must agree")
    }
}

impl<'a> Sub<&'a MultivariatePolynomial> for &'a MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    fn sub(self, rhs: &'a MultivariatePolynomial) -> MultivariatePolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    fn neg(self) -> MultivariatePolynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        for (k, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{p}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Coefficient matrix of a list of polynomials.
///
/// Row `i` holds the coefficients of `polys[i]`; columns are the union of
/// occurring monomials in graded lexicographic order. The rank of the result is
/// the dimension of the rational span of the polynomials.
pub fn polys_to_matrix(polys: &[MultivariatePolynomial]) -> Result<Matrix> {
    let Some(first) = polys.first() else {
        return Ok(Matrix::zeros(0, 0));
    };
    if let Some(bad) = polys.iter().find(|p| p.num_vars != first.num_vars) {
        return Err(Error::Contract(format!(
            "polynomials in {} and {} variables",
            first.num_vars, bad.num_vars
        )));
    }
    let support: BTreeSet<&Exponent> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    let mut columns: Vec<&Exponent> = support.into_iter().collect();
    columns.sort_by(|a, b| grlex(a, b));
    let index: BTreeMap<&Exponent, usize> =
        columns.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut m = Matrix::zeros(polys.len(), columns.len());
    for (r, p) in polys.iter().enumerate() {
        for (e, c) in &p.terms {
            m[(r, index[e])] = c.clone();
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, rat};
    use proptest::prelude::*;

    fn x(i: usize) -> MultivariatePolynomial {
        MultivariatePolynomial::var(3, i)
    }

    fn small_poly() -> impl Strategy<Value = MultivariatePolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 2), -3i64..4), 0..5)
            .prop_map(|ts| {
                MultivariatePolynomial::from_terms(2, ts.into_iter().map(|(e, c)| (e, rat(c))))
                    .unwrap()
            })
    }

    #[test]
    fn products() {
        let xy = &x(0) * &x(1);
        assert_eq!(xy.num_terms(), 1);
        assert_eq!(xy.coefficient(&[1, 1, 0]), rat(1));

        let sq = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let expected = &x(0).pow(2) - &x(1).pow(2);
        assert_eq!(sq, expected);

        let vandermonde = &(&(&x(0) - &x(1)) * &(&x(1) - &x(2))) * &(&x(0) - &x(2));
        assert_eq!(vandermonde.num_terms(), 6);
        assert_eq!(vandermonde.degree(), Some(3));
    }

    #[test]
    fn mismatched_variables() {
        let a = MultivariatePolynomial::var(2, 0);
        let b = MultivariatePolynomial::var(3, 0);
        assert!(matches!(a.try_mul(&b), Err(Error::Contract(_))));
        assert!(polys_to_matrix(&[a, b]).is_err());
    }

    #[test]
    fn span_ranks() {
        let x = MultivariatePolynomial::var(2, 0);
        let y = MultivariatePolynomial::var(2, 1);
        let m = polys_to_matrix(&[x.clone(), y.clone(), &x + &y]).unwrap();
        assert_eq!(rank(&m), 2);
        let x2 = x.pow(2);
        let m = polys_to_matrix(&[x2.clone(), x2.clone(), x2]).unwrap();
        assert_eq!(rank(&m), 1);
        let m = polys_to_matrix(&[]).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 0));
        assert_eq!(rank(&m), 0);
    }

    #[test]
    fn columns_in_grlex_order() {
        let p = MultivariatePolynomial::from_terms(
            2,
            [(vec![0, 2], rat(1)), (vec![1, 0], rat(2)), (vec![2, 0], rat(3))],
        )
        .unwrap();
        let m = polys_to_matrix(&[p]).unwrap();
        assert_eq!(m.row(0), &[rat(2), rat(1), rat(3)]);
    }

    #[test]
    fn derivative_and_eval() {
        let p = &x(0).pow(3) * &x(1);
        assert_eq!(p.partial(0), (&x(0).pow(2) * &x(1)).scale(&rat(3)));
        assert!(p.partial(2).is_zero());
        assert_eq!(p.eval(&[rat(2), rat(5), rat(7)]), rat(40));
    }

    proptest! {
        #[test]
        fn mul_commutes(a in small_poly(), b in small_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn mul_associates(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn mul_distributes(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}

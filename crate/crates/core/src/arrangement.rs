//! Finite sets of linear forms and the central hyperplane arrangements they define.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Matrix, Rational};
use crate::poly::MultivariatePolynomial;

/// A nonzero linear form on `V`, given by its coordinates in the basis `x_1, ..., x_l` of `V*`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if linalg::is_zero_vector(&coeffs) {
            return Err(Error::ZeroForm { index: 0 });
        }
        Ok(LinearForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        LinearForm::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Value of the form at a vector of `V`.
    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(v)
            .fold(rat(0), |acc, (a, b)| acc + a * b)
    }

    pub fn to_polynomial(&self) -> MultivariatePolynomial {
        MultivariatePolynomial::linear(&self.coeffs)
    }

    /// Scaled copy whose first nonzero coordinate is 1.
    pub fn normalized(&self) -> Vec<Rational> {
        linalg::normalize_leading(&self.coeffs).expect("forms are nonzero")
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An ordered, validated set `Δ` of pairwise non-proportional nonzero forms on an
/// `l`-dimensional space. The order of `forms` is the linear order used for
/// broken circuits.
#[derive(Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<LinearForm>,
    names: Option<Vec<String>>,
}

impl Arrangement {
    /// Validates and wraps `forms`. Error indices are 0-based positions in `forms`.
    pub fn new(dim: usize, forms: Vec<Vec<Rational>>) -> Result<Self> {
        if dim < 1 {
            return Err(Error::Contract("ambient dimension must be at least 1".into()));
        }
        let mut checked: Vec<LinearForm> = Vec::with_capacity(forms.len());
        let mut normals: Vec<Vec<Rational>> = Vec::with_capacity(forms.len());
        for (index, coeffs) in forms.into_iter().enumerate() {
            if coeffs.len() != dim {
                return Err(Error::Contract(format!(
                    "form {index} has {} coefficients, expected {dim}",
                    coeffs.len()
                )));
            }
            let form = LinearForm::new(coeffs).map_err(|_| Error::ZeroForm { index })?;
            let normal = form.normalized();
            if let Some(first) = normals.iter().position(|n| *n == normal) {
                return Err(Error::ProportionalForms {
                    first,
                    second: index,
                });
            }
            normals.push(normal);
            checked.push(form);
        }
        Ok(Arrangement {
            dim,
            forms: checked,
            names: None,
        })
    }

    pub fn from_i64(dim: usize, forms: &[&[i64]]) -> Result<Self> {
        Arrangement::new(
            dim,
            forms
                .iter()
                .map(|f| f.iter().map(|&c| rat(c)).collect())
                .collect(),
        )
    }

    /// Attaches labels, one per form.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.forms.len() {
            return Err(Error::Contract(format!(
                "{} names for {} forms",
                names.len(),
                self.forms.len()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn form(&self, i: usize) -> &LinearForm {
        &self.forms[i]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Label of form `i`: its name if one was given, otherwise `a{i+1}`.
    pub fn label(&self, i: usize) -> String {
        match &self.names {
            Some(n) => n[i].clone(),
            None => format!("a{}", i + 1),
        }
    }

    /// Matrix whose rows are the selected forms.
    pub fn form_matrix(&self, indices: &[usize]) -> Matrix {
        if indices.is_empty() {
            return Matrix::zeros(0, self.dim);
        }
        let rows = indices
            .iter()
            .map(|&i| self.forms[i].coeffs.clone())
            .collect();
        Matrix::from_rows(rows).expect("forms share the ambient dimension")
    }

    /// Rank of the selected forms (repeats allowed).
    pub fn rank_of(&self, indices: &[usize]) -> usize {
        linalg::rank(&self.form_matrix(indices))
    }

    /// True when the selected forms are pairwise distinct and linearly independent.
    pub fn is_independent(&self, indices: &[usize]) -> bool {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == indices.len() && self.rank_of(indices) == indices.len()
    }

    /// Rank of the whole arrangement.
    pub fn rank(&self) -> usize {
        self.rank_of(&(0..self.len()).collect::<Vec<_>>())
    }

    /// Indices of every form lying in the span of the selected ones, i.e. every
    /// form vanishing on their common zero set. Sorted, without repeats.
    pub fn closure(&self, indices: &[usize]) -> Vec<usize> {
        let base = self.rank_of(indices);
        let mut with = indices.to_vec();
        (0..self.len())
            .filter(|&j| {
                if indices.contains(&j) {
                    return true;
                }
                with.push(j);
                let r = self.rank_of(&with);
                with.pop();
                r == base
            })
            .collect()
    }

    /// Basis of the common zero set `V(ε)` of the selected forms, as vectors in `V`.
    pub fn common_kernel(&self, indices: &[usize]) -> Vec<Vec<Rational>> {
        if indices.is_empty() {
            return (0..self.dim)
                .map(|i| (0..self.dim).map(|j| rat(i64::from(i == j))).collect())
                .collect();
        }
        linalg::nullspace(&self.form_matrix(indices))
    }

    /// Reorders the forms: position `k` of the result holds form `order[k]` (0-based).
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if order.len() != self.len() {
            return Err(Error::Contract(format!(
                "order has {} entries for {} forms",
                order.len(),
                self.len()
            )));
        }
        for &i in order {
            if i >= self.len() || seen[i] {
                return Err(Error::Contract(format!(
                    "order {order:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(Arrangement {
            dim: self.dim,
            forms: order.iter().map(|&i| self.forms[i].clone()).collect(),
            names: self
                .names
                .as_ref()
                .map(|n| order.iter().map(|&i| n[i].clone()).collect()),
        })
    }

    /// The defining polynomial `∏ α` over all forms.
    pub fn defining_polynomial(&self) -> MultivariatePolynomial {
        self.forms
            .iter()
            .fold(MultivariatePolynomial::one(self.dim), |acc, f| {
                &acc * &f.to_polynomial()
            })
    }

    /// Serializes in the plain-text arrangement file format read by
    /// [`crate::cli::parse_arrangement`]. Names are not written.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.dim);
        for f in &self.forms {
            let parts: Vec<String> = f.coeffs.iter().map(ToString::to_string).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("dim", &self.dim)
            .field("forms", &self.forms)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid3() -> Arrangement {
        Arrangement::from_i64(3, &[&[1, -1, 0], &[0, 1, -1], &[1, 0, -1]]).unwrap()
    }

    #[test]
    fn valid_arrangements() {
        let a = braid3();
        assert_eq!(a.len(), 3);
        assert_eq!(a.rank(), 2);
        let empty = Arrangement::new(2, vec![]).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.rank(), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Arrangement::from_i64(2, &[&[1, 0], &[2, 0]]).unwrap_err(),
            Error::ProportionalForms { first: 0, second: 1 }
        );
        assert_eq!(
            Arrangement::from_i64(2, &[&[1, 0], &[0, 0]]).unwrap_err(),
            Error::ZeroForm { index: 1 }
        );
        assert!(matches!(
            Arrangement::new(0, vec![]),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            Arrangement::from_i64(2, &[&[1, 0, 0]]),
            Err(Error::Contract(_))
        ));
        // negative multiples are proportional too
        assert!(matches!(
            Arrangement::from_i64(2, &[&[0, 3], &[1, 1], &[0, -1]]),
            Err(Error::ProportionalForms { first: 0, second: 2 })
        ));
    }

    #[test]
    fn closure_and_kernel() {
        let a = braid3();
        assert_eq!(a.closure(&[0]), vec![0]);
        assert_eq!(a.closure(&[1, 2]), vec![0, 1, 2]);
        let k = a.common_kernel(&[0, 1]);
        assert_eq!(k.len(), 1);
        for f in a.forms() {
            assert_eq!(f.eval(&k[0]), rat(0));
        }
        assert_eq!(a.common_kernel(&[]).len(), 3);
    }

    #[test]
    fn independence_rejects_repeats() {
        let a = braid3();
        assert!(a.is_independent(&[0, 1]));
        assert!(!a.is_independent(&[0, 0]));
        assert!(!a.is_independent(&[0, 1, 2]));
        assert!(a.is_independent(&[]));
    }

    #[test]
    fn permutation() {
        let a = braid3();
        let p = a.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.form(0), a.form(2));
        assert!(a.permuted(&[0, 0, 1]).is_err());
        assert!(a.permuted(&[0, 1]).is_err());
    }

    #[test]
    fn defining_polynomial_degree() {
        let q = braid3().defining_polynomial();
        assert_eq!(q.degree(), Some(3));
        assert_eq!(q.num_terms(), 6);
    }
}

//! Poincaré series of the reciprocal algebra `C(Δ)`.
//!
//! The series is obtained from the Poincaré polynomial by the substitution
//! `t -> t/(1-t)`. Each power expands in closed form,
//! `(t/(1-t))^k = Σ_{p≥k} C(p-1, k-1) t^p`, so everything stays in exact
//! integer arithmetic. Closed forms for free and generic arrangements are
//! provided for comparison.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lattice::poincare_polynomial;
use crate::linalg::rat;

/// Default truncation degree for series output.
pub const DEFAULT_DEGREE: usize = 10;

/// Integer polynomial in one variable, `coeffs[k]` being the coefficient of `t^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariatePolynomial {
    coeffs: Vec<BigInt>,
}

impl UnivariatePolynomial {
    /// Trailing zeros are trimmed; the zero polynomial is `[0]`.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Value at `t = 1`.
    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A power series known up to and including degree `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Keeps exactly `order + 1` coefficients, padding with zeros.
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, p: usize) -> &BigInt {
        &self.coeffs[p]
    }

    /// Product of a polynomial with `(1-t)^{-m}`, truncated at `order`.
    pub fn over_one_minus_t(numerator: &UnivariatePolynomial, m: usize, order: usize) -> Self {
        // (1-t)^{-m} = Σ C(p+m-1, m-1) t^p
        let coeffs = (0..=order)
            .map(|p| {
                (0..=p.min(numerator.degree()))
                    .map(|i| {
                        let q = p - i;
                        let c = if m == 0 {
                            BigInt::from(u8::from(q == 0))
                        } else {
                            binomial(q + m - 1, m - 1)
                        };
                        numerator.coeff(i) * c
                    })
                    .sum()
            })
            .collect();
        TruncatedSeries::new(coeffs, order)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Binomial coefficient over the integers; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Binomial coefficient with an integer (possibly negative) upper argument,
/// `C(n, k) = n(n-1)...(n-k+1)/k!`.
pub fn binomial_signed(n: i64, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i as i64) / BigInt::from(i + 1);
    }
    acc
}

/// Substitutes `t/(1-t)` into a polynomial and expands to degree `order`.
pub fn substitute_t_over_one_minus_t(poly: &UnivariatePolynomial, order: usize) -> TruncatedSeries {
    let coeffs = (0..=order)
        .map(|p| {
            if p == 0 {
                return poly.coeff(0);
            }
            (1..=p.min(poly.degree()))
                .map(|k| poly.coeff(k) * binomial(p - 1, k - 1))
                .sum()
        })
        .collect();
    TruncatedSeries::new(coeffs, order)
}

/// Graded dimensions of `C(Δ)` up to degree `order`, from the Poincaré polynomial.
pub fn series_of_c(arr: &Arrangement, order: usize) -> TruncatedSeries {
    substitute_t_over_one_minus_t(&poincare_polynomial(arr), order)
}

/// `(1-t)^{-l} ∏ (1 + (d_i - 1) t)` for a free arrangement with the given exponents.
pub fn free_poincare_series(exponents: &[i64], order: usize) -> TruncatedSeries {
    let numerator = exponents
        .iter()
        .fold(UnivariatePolynomial::from_i64(&[1]), |acc, &d| {
            acc.mul(&UnivariatePolynomial::from_i64(&[1, d - 1]))
        });
    TruncatedSeries::over_one_minus_t(&numerator, exponents.len(), order)
}

/// Poincaré polynomial `∏ (1 + d_i t)` of a free arrangement.
pub fn free_poincare_polynomial(exponents: &[i64]) -> UnivariatePolynomial {
    exponents
        .iter()
        .fold(UnivariatePolynomial::from_i64(&[1]), |acc, &d| {
            acc.mul(&UnivariatePolynomial::from_i64(&[1, d]))
        })
}

/// `(1-t)^{-l} Σ_{i<l} C(n-l+i-1, i) t^i` for a generic arrangement of `n` forms in `l` variables.
pub fn generic_series(n: usize, dim: usize, order: usize) -> Result<TruncatedSeries> {
    if dim < 1 || n < dim {
        return Err(Error::NotGeneric { n, dim });
    }
    let numerator = UnivariatePolynomial::new(
        (0..dim)
            .map(|i| binomial_signed(n as i64 - dim as i64 + i as i64 - 1, i))
            .collect(),
    );
    Ok(TruncatedSeries::over_one_minus_t(&numerator, dim, order))
}

/// Poincaré polynomial of a generic arrangement, `(1+t) Σ_{i<l} C(n-1, i) t^i`.
pub fn generic_poincare_polynomial(n: usize, dim: usize) -> Result<UnivariatePolynomial> {
    if dim < 1 || n < dim {
        return Err(Error::NotGeneric { n, dim });
    }
    let sum = UnivariatePolynomial::new((0..dim).map(|i| binomial(n - 1, i)).collect());
    Ok(UnivariatePolynomial::from_i64(&[1, 1]).mul(&sum))
}

/// Built-in arrangement families, written `braid:l`, `boolean:l`, `generic:n,l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFamily {
    /// `x_i - x_j` for `i < j`, ordered by `j - i` and then by `i`.
    Braid(usize),
    /// The coordinate forms `x_1, ..., x_l`.
    Boolean(usize),
    /// Moment-curve forms `Σ_j i^{j-1} x_j` for `i = 1..n`; any `l` of them are independent.
    Generic { n: usize, dim: usize },
}

impl BuiltinFamily {
    pub fn build(&self) -> Result<Arrangement> {
        match *self {
            BuiltinFamily::Braid(l) => {
                if l < 1 {
                    return Err(Error::Contract("braid needs l >= 1".into()));
                }
                let mut forms = Vec::new();
                for gap in 1..l {
                    for i in 0..l - gap {
                        let mut f = vec![rat(0); l];
                        f[i] = rat(1);
                        f[i + gap] = rat(-1);
                        forms.push(f);
                    }
                }
                Arrangement::new(l, forms)
            }
            BuiltinFamily::Boolean(l) => {
                if l < 1 {
                    return Err(Error::Contract("boolean needs l >= 1".into()));
                }
                let forms = (0..l)
                    .map(|i| (0..l).map(|j| rat(i64::from(i == j))).collect())
                    .collect();
                Arrangement::new(l, forms)
            }
            BuiltinFamily::Generic { n, dim } => {
                if dim < 1 || n < dim {
                    return Err(Error::Contract(format!(
                        "generic needs n >= l >= 1 (got n = {n}, l = {dim})"
                    )));
                }
                let forms = (1..=n as i64)
                    .map(|i| (0..dim as u32).map(|j| rat(i.pow(j))).collect())
                    .collect();
                Arrangement::new(dim, forms)
            }
        }
    }

    /// Exponents when the family is known to be free.
    pub fn exponents(&self) -> Option<Vec<i64>> {
        match *self {
            BuiltinFamily::Braid(l) => Some((0..l as i64).collect()),
            BuiltinFamily::Boolean(l) => Some(vec![1; l]),
            BuiltinFamily::Generic { .. } => None,
        }
    }
}

impl FromStr for BuiltinFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Contract(format!("unknown builtin family {s:?}"));
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let family = match (name, nums.as_slice()) {
            ("braid", &[l]) => BuiltinFamily::Braid(l),
            ("boolean", &[l]) => BuiltinFamily::Boolean(l),
            ("generic", &[n, dim]) => BuiltinFamily::Generic { n, dim },
            _ => return Err(bad()),
        };
        if family.build().is_err() {
            return Err(Error::Contract(format!("invalid parameters in {s:?}")));
        }
        Ok(family)
    }
}

impl fmt::Display for BuiltinFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinFamily::Braid(l) => write!(f, "braid:{l}"),
            BuiltinFamily::Boolean(l) => write!(f, "boolean:{l}"),
            BuiltinFamily::Generic { n, dim } => write!(f, "generic:{n},{dim}"),
        }
    }
}

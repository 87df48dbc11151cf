//! Brute-force graded dimensions of `C(Δ)` and its pieces.
//!
//! A degree-`p` element `1/∏ε` is represented by its numerator over the common
//! denominator `(∏Δ)^p`, namely `∏_i α_i^{p - m_i}` where `m_i` is the
//! multiplicity of `α_i` in `ε`. Spans of such elements are then ranks of
//! polynomial coefficient matrices.

mod decompose;
mod verify;

pub use decompose::{Decomposition, OperatorTerm};
pub use verify::{Check, Clause, DegreeRow, GradedReport};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{self, Rational};
use crate::poly::{polys_to_matrix, MultivariatePolynomial};
use crate::series::binomial;

/// Default cap on `rows × worst-case columns` of any oracle matrix.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A multiset of form indices, standing for `1/∏ε`. Sorted; repeats allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReciprocalTuple {
    indices: Vec<usize>,
}

impl ReciprocalTuple {
    /// Sorts `indices`; order does not matter since the product commutes.
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        ReciprocalTuple { indices }
    }

    /// The degree-zero element `1`.
    pub fn unit() -> Self {
        ReciprocalTuple { indices: Vec::new() }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    pub fn has_repeat(&self) -> bool {
        self.indices.windows(2).any(|w| w[0] == w[1])
    }

    fn multiplicity(&self, i: usize) -> usize {
        self.indices.iter().filter(|&&j| j == i).count()
    }

    fn with(&self, i: usize) -> Self {
        let mut v = self.indices.clone();
        let pos = v.partition_point(|&j| j <= i);
        v.insert(pos, i);
        ReciprocalTuple { indices: v }
    }
}

impl fmt::Debug for ReciprocalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Written 1-based, e.g. `1/(a1 a2^2)` is `(1,2,2)`.
impl fmt::Display for ReciprocalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Which degree-`p` tuples to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleFilter {
    All,
    /// Distinct and linearly independent.
    Independent,
    /// Linearly dependent, including everything with a repeat.
    Dependent,
    /// Tuples with `V(ε)` equal to the flat with this id.
    Flat(usize),
}

/// A rational linear combination of reciprocals of a fixed degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    degree: usize,
    terms: BTreeMap<ReciprocalTuple, Rational>,
}

impl Element {
    pub fn zero(degree: usize) -> Self {
        Element {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn reciprocal(t: ReciprocalTuple) -> Self {
        let degree = t.degree();
        Element {
            degree,
            terms: BTreeMap::from([(t, Rational::one())]),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ReciprocalTuple, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, t: ReciprocalTuple, c: Rational) {
        debug_assert_eq!(t.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self + c * other`; degrees must match.
    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        assert_eq!(self.degree, other.degree, "degrees must agree");
        for (t, v) in &other.terms {
            self.add_term(t.clone(), v * c);
        }
    }

    /// Directional derivative along `v ∈ V`:
    /// `∂_v (1/∏ε) = -Σ_{α ∈ ε} α(v) / (α ∏ε)`, summing over ε with multiplicity.
    pub fn derivative(&self, arr: &Arrangement, v: &[Rational]) -> Element {
        let mut out = Element::zero(self.degree + 1);
        for (t, c) in &self.terms {
            let mut distinct = t.indices.clone();
            distinct.dedup();
            for i in distinct {
                let m = Rational::from_integer(t.multiplicity(i).into());
                let a = arr.form(i).eval(v);
                out.add_term(t.with(i), -(c * a * m));
            }
        }
        out
    }
}

/// Exact-linear-algebra oracle for one arrangement.
#[derive(Debug, Clone)]
pub struct Oracle {
    arr: Arrangement,
    lattice: Lattice,
    budget: u128,
}

impl Oracle {
    pub fn new(arr: Arrangement) -> Self {
        let lattice = Lattice::new(&arr);
        Oracle {
            arr,
            lattice,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    /// `C(n+p-1, p) · C(l + p(n-1), l)`: tuple count times a bound on the monomial count.
    pub fn estimate(&self, p: usize) -> u128 {
        let n = self.arr.len();
        let l = self.arr.dim();
        let rows = if p == 0 {
            num_bigint::BigInt::one()
        } else {
            binomial(n + p - 1, p)
        };
        let cols = binomial(l + p * n.saturating_sub(1), l);
        u128::try_from(rows * cols).unwrap_or(u128::MAX)
    }

    /// Fails with [`Error::TooLarge`] when degree `p` exceeds the budget.
    pub fn guard(&self, p: usize) -> Result<()> {
        let estimate = self.estimate(p);
        if estimate > self.budget {
            return Err(Error::TooLarge {
                estimate,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// All size-`p` multisets of form indices passing `filter`, in lexicographic order.
    pub fn tuples(&self, p: usize, filter: TupleFilter) -> Vec<ReciprocalTuple> {
        let n = self.arr.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(p);
        fn go(
            n: usize,
            p: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<ReciprocalTuple>,
        ) {
            if cur.len() == p {
                out.push(ReciprocalTuple {
                    indices: cur.clone(),
                });
                return;
            }
            let start = cur.last().copied().unwrap_or(0);
            for i in start..n {
                cur.push(i);
                go(n, p, cur, out);
                cur.pop();
            }
        }
        go(n, p, &mut cur, &mut out);
        out.retain(|t| self.passes(t, filter));
        out
    }

    fn passes(&self, t: &ReciprocalTuple, filter: TupleFilter) -> bool {
        match filter {
            TupleFilter::All => true,
            TupleFilter::Independent => self.arr.is_independent(&t.indices),
            TupleFilter::Dependent => !self.arr.is_independent(&t.indices),
            TupleFilter::Flat(id) => self.lattice.flat_of(&self.arr, &t.indices).id == id,
        }
    }

    /// `(∏Δ)^p / ∏ε` for a degree-`p` tuple, built as `∏_i α_i^{p - m_i}`.
    pub fn numerator(&self, t: &ReciprocalTuple) -> MultivariatePolynomial {
        let p = t.degree();
        (0..self.arr.len()).fold(MultivariatePolynomial::one(self.arr.dim()), |acc, i| {
            let k = p - t.multiplicity(i);
            if k == 0 {
                acc
            } else {
                &acc * &self.arr.form(i).to_polynomial().pow(k as u32)
            }
        })
    }

    /// Numerator of an element over `(∏Δ)^degree`.
    pub fn element_numerator(&self, e: &Element) -> MultivariatePolynomial {
        e.terms
            .iter()
            .fold(MultivariatePolynomial::zero(self.arr.dim()), |acc, (t, c)| {
                &acc + &self.numerator(t).scale(c)
            })
    }

    /// Dimension of the span of the given elements.
    pub fn span_dim(&self, elements: &[Element]) -> usize {
        let polys: Vec<MultivariatePolynomial> =
            elements.iter().map(|e| self.element_numerator(e)).collect();
        linalg::rank(&polys_to_matrix(&polys).expect("same variable count"))
    }

    fn reciprocals(&self, p: usize, filter: TupleFilter) -> Vec<Element> {
        self.tuples(p, filter)
            .into_iter()
            .map(Element::reciprocal)
            .collect()
    }

    /// `dim C(Δ)_p`.
    pub fn dim_c(&self, p: usize) -> Result<usize> {
        self.guard(p)?;
        Ok(self.span_dim(&self.reciprocals(p, TupleFilter::All)))
    }

    /// `dim AO(Δ)_p`: span of reciprocals of independent tuples.
    pub fn dim_ao(&self, p: usize) -> Result<usize> {
        self.guard(p)?;
        Ok(self.span_dim(&self.reciprocals(p, TupleFilter::Independent)))
    }

    /// `dim J(Δ)_p`: span of reciprocals of dependent tuples.
    pub fn dim_j(&self, p: usize) -> Result<usize> {
        self.guard(p)?;
        Ok(self.span_dim(&self.reciprocals(p, TupleFilter::Dependent)))
    }

    /// `dim C_X(Δ)_p` for the flat with id `flat`.
    pub fn dim_cx(&self, flat: usize, p: usize) -> Result<usize> {
        self.guard(p)?;
        Ok(self.span_dim(&self.reciprocals(p, TupleFilter::Flat(flat))))
    }

    /// First-order coordinate derivatives of every degree-`(p-1)` reciprocal.
    /// They span the degree-`p` part of `∂(V)_+ C(Δ)`.
    pub fn derivative_spanning_set(&self, p: usize) -> Vec<Element> {
        if p == 0 {
            return Vec::new();
        }
        let l = self.arr.dim();
        let lower = self.reciprocals(p - 1, TupleFilter::All);
        let mut out = Vec::new();
        for e in &lower {
            for i in 0..l {
                let dir: Vec<Rational> = (0..l).map(|j| linalg::rat(i64::from(i == j))).collect();
                let d = e.derivative(&self.arr, &dir);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// `dim (∂(V)_+ C(Δ))_p`; zero at `p = 0`.
    pub fn dim_del_plus_c(&self, p: usize) -> Result<usize> {
        self.guard(p)?;
        Ok(self.span_dim(&self.derivative_spanning_set(p)))
    }

    /// Reciprocals of the degree-`p` nbc sets, ordered by flat.
    pub fn nbc_elements(&self, p: usize) -> Vec<Element> {
        crate::matroid::nbc_sets(&self.arr, &self.lattice)
            .into_values()
            .flatten()
            .filter(|s| s.indices.len() == p)
            .map(|s| Element::reciprocal(ReciprocalTuple::new(s.indices)))
            .collect()
    }
}

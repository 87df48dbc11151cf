//! Unique expansion of an element of `C(Δ)` over the nbc basis with
//! differential-operator coefficients.
//!
//! Each nbc reciprocal `φ_j` on a flat `X` of codimension `c` is paired with
//! every monomial operator of degree `p - c` in `c` directions transverse to
//! `X`. Those directions are dual to the first `c` independent forms of `Δ_X`
//! (lowest indices first). The coefficient of every resulting element is then
//! found by an exact linear solve on numerator polynomials.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{Element, Oracle, ReciprocalTuple};
use crate::error::{Error, Result};
use crate::linalg::{self, rat, Matrix, Rational};
use crate::matroid;
use crate::poly::{polys_to_matrix, MultivariatePolynomial};

/// One nonzero term `c · ∂^{e}(φ_j)` of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTerm {
    /// Position of `φ_j` in the global nbc list (ordered by flat id, then nbc order).
    pub basis_index: usize,
    pub flat: usize,
    /// nbc set of `φ_j`, 0-based.
    pub nbc: Vec<usize>,
    /// Exponent of each transverse direction of `flat`.
    pub exponents: Vec<u32>,
    pub coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub target: ReciprocalTuple,
    /// Transverse directions per flat id, for every flat that received operators.
    pub directions: BTreeMap<usize, Vec<Vec<Rational>>>,
    pub terms: Vec<OperatorTerm>,
    /// Degree-zero operator coefficients on the top flat, one per top nbc set.
    /// Present only when `Δ` spans `V*`; all zero unless the target has degree `l`.
    pub residue: Option<Vec<(Vec<usize>, Rational)>>,
}

impl Decomposition {
    /// Rebuilds `Σ_j θ_j(φ_j)` as an element of `C(Δ)`.
    pub fn expand(&self, oracle: &Oracle) -> Element {
        let mut out = Element::zero(self.target.degree());
        for t in &self.terms {
            let phi = Element::reciprocal(ReciprocalTuple::new(t.nbc.clone()));
            let applied = apply_monomial(oracle, &phi, &self.directions[&t.flat], &t.exponents);
            out.add_scaled(&applied, &t.coefficient);
        }
        out
    }

    /// Whether the expansion, cleared to the common denominator, equals the target.
    pub fn reproduces_target(&self, oracle: &Oracle) -> bool {
        oracle.element_numerator(&self.expand(oracle))
            == oracle.numerator(&self.target)
    }
}

fn apply_monomial(
    oracle: &Oracle,
    phi: &Element,
    directions: &[Vec<Rational>],
    exponents: &[u32],
) -> Element {
    let mut e = phi.clone();
    for (dir, &k) in directions.iter().zip(exponents) {
        for _ in 0..k {
            e = e.derivative(oracle.arrangement(), dir);
        }
    }
    e
}

/// Exponent vectors of length `vars` summing to `degree`, in lexicographic order.
fn monomials(vars: usize, degree: usize) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if degree == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(vars - 1, degree - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

impl Oracle {
    /// Vectors `v_1, ..., v_c` with `β_k(v_m) = δ_km`, where `β_1, ..., β_c` are
    /// the first independent forms (by index) supported on the flat.
    pub fn transverse_directions(&self, flat: usize) -> Vec<Vec<Rational>> {
        let f = self.lattice().flat(flat);
        let arr = self.arrangement();
        let mut chosen: Vec<usize> = Vec::new();
        for &i in &f.support {
            chosen.push(i);
            if arr.rank_of(&chosen) < chosen.len() {
                chosen.pop();
            }
            if chosen.len() == f.codim {
                break;
            }
        }
        let b = arr.form_matrix(&chosen);
        (0..chosen.len())
            .map(|m| {
                let rhs: Vec<Rational> = (0..chosen.len()).map(|k| rat(i64::from(k == m))).collect();
                linalg::solve(&b, &rhs)
                    .expect("rhs sized to the chosen forms")
                    .expect("independent forms give a consistent system")
                    .particular
            })
            .collect()
    }

    /// Writes `1/∏target` uniquely as `Σ_j θ_j(φ_j)` over the nbc basis.
    pub fn decompose(&self, target: &ReciprocalTuple) -> Result<Decomposition> {
        let p = target.degree();
        self.guard(p)?;
        if let Some(&bad) = target.indices().iter().find(|&&i| i >= self.arrangement().len()) {
            return Err(Error::Contract(format!(
                "tuple index {} out of range for {} forms",
                bad + 1,
                self.arrangement().len()
            )));
        }
        let nbc = matroid::nbc_sets(self.arrangement(), self.lattice());

        let mut directions = BTreeMap::new();
        // one unknown per (nbc set, operator monomial), coefficient filled in after solving
        let mut unknowns: Vec<(OperatorTerm, Element)> = Vec::new();
        let mut basis_index = 0;
        for (&flat, sets) in &nbc {
            let codim = self.lattice().flat(flat).codim;
            if codim > p {
                basis_index += sets.len();
                continue;
            }
            let dirs = self.transverse_directions(flat);
            let monos = monomials(codim, p - codim);
            for s in sets {
                let phi = Element::reciprocal(ReciprocalTuple::new(s.indices.clone()));
                for m in &monos {
                    let e = apply_monomial(self, &phi, &dirs, m);
                    let term = OperatorTerm {
                        basis_index,
                        flat,
                        nbc: s.indices.clone(),
                        exponents: m.clone(),
                        coefficient: Rational::zero(),
                    };
                    unknowns.push((term, e));
                }
                basis_index += 1;
            }
            directions.insert(flat, dirs);
        }

        let mut polys: Vec<MultivariatePolynomial> =
            unknowns.iter().map(|(_, e)| self.element_numerator(e)).collect();
        polys.push(self.numerator(target));
        let rows = polys_to_matrix(&polys)?;
        let k = unknowns.len();
        let system = Matrix::from_rows((0..k).map(|i| rows.row(i).to_vec()).collect())?;
        let (a, b) = if k == 0 {
            (Matrix::zeros(rows.cols(), 0), rows.row(0).to_vec())
        } else {
            (system.transpose(), rows.row(k).to_vec())
        };
        let solution = linalg::solve(&a, &b)?.ok_or(Error::Inconsistent)?;
        if !solution.nullspace.is_empty() {
            return Err(Error::AmbiguousDecomposition {
                nullity: solution.nullspace.len(),
            });
        }

        let terms: Vec<OperatorTerm> = unknowns
            .into_iter()
            .zip(solution.particular)
            .filter(|(_, c)| !c.is_zero())
            .map(|((term, _), coefficient)| OperatorTerm { coefficient, ..term })
            .collect();

        let arr = self.arrangement();
        let residue = (arr.rank() == arr.dim()).then(|| {
            let top = self.lattice().top().id;
            nbc[&top]
                .iter()
                .map(|s| {
                    let c = terms
                        .iter()
                        .find(|t| t.flat == top && t.nbc == s.indices && t.exponents.iter().all(|&e| e == 0))
                        .map_or_else(Rational::zero, |t| t.coefficient.clone());
                    (s.indices.clone(), c)
                })
                .collect()
        });

        Ok(Decomposition {
            target: target.clone(),
            directions,
            terms,
            residue,
        })
    }
}

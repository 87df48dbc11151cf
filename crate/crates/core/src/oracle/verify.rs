//! Degree-by-degree verification of the structure theorems for `C(Δ)`.

use std::fmt;

use num_bigint::BigInt;

use super::{Element, Oracle, TupleFilter};
use crate::error::Result;
use crate::matroid;
use crate::series::{binomial, series_of_c};

/// Which structural statement a [`Check`] tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// `dim ∂₊C_p + dim AO_p = dim C_p`.
    DirectSumDimension,
    /// The two spanning sets together span `C_p`.
    DirectSumSpans,
    /// `J_p` and `(∂₊C)_p` have the same row space.
    IdealEqualsDerivatives,
    /// nbc reciprocals of degree `p` are a basis of `AO_p`.
    NbcBasis,
    /// `Σ_X dim C_{X,p} = dim C_p`.
    FlatDecomposition,
    /// `dim C_{X,p} = |μ(X)| C(p-1, codim X - 1)`.
    FreeModuleRank,
    /// `dim C_p` equals the Poincaré-series coefficient.
    SeriesAgreement,
    /// `dim AO_p` equals the Poincaré-polynomial coefficient.
    AomotoPoincare,
    /// `|nbc_X| = (−1)^{codim X} μ(X)`.
    NbcCount,
}

impl Clause {
    pub fn name(&self) -> &'static str {
        match self {
            Clause::DirectSumDimension => "direct-sum-dimension",
            Clause::DirectSumSpans => "direct-sum-spans",
            Clause::IdealEqualsDerivatives => "ideal-equals-derivatives",
            Clause::NbcBasis => "nbc-basis",
            Clause::FlatDecomposition => "flat-decomposition",
            Clause::FreeModuleRank => "free-module-rank",
            Clause::SeriesAgreement => "series-agreement",
            Clause::AomotoPoincare => "aomoto-poincare",
            Clause::NbcCount => "nbc-count",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub degree: Option<usize>,
    pub clause: Clause,
    pub flat: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

/// Oracle dimensions at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeRow {
    pub degree: usize,
    pub dim_c: usize,
    pub dim_ao: usize,
    pub dim_j: usize,
    pub dim_del_plus_c: usize,
    /// `dim C_{X,p}` indexed by flat id.
    pub per_flat: Vec<usize>,
}

/// Per-degree dimensions plus every check performed, ordered by degree then flat.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedReport {
    pub rows: Vec<DegreeRow>,
    pub checks: Vec<Check>,
}

impl GradedReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn check(&mut self, degree: Option<usize>, clause: Clause, flat: Option<usize>, lhs: usize, rhs: usize) {
        self.checks.push(Check {
            degree,
            clause,
            flat,
            passed: lhs == rhs,
            detail: format!("{lhs} = {rhs}"),
        });
    }

    fn row_mut(&mut self, p: usize) -> &mut DegreeRow {
        if let Some(i) = self.rows.iter().position(|r| r.degree == p) {
            return &mut self.rows[i];
        }
        self.rows.push(DegreeRow {
            degree: p,
            ..DegreeRow::default()
        });
        self.rows.sort_by_key(|r| r.degree);
        let i = self.rows.iter().position(|r| r.degree == p).expect("just inserted");
        &mut self.rows[i]
    }

    /// Appends another report's checks and merges its rows, keeping nonzero fields.
    pub fn merge(&mut self, other: GradedReport) {
        for r in other.rows {
            let row = self.row_mut(r.degree);
            row.dim_c = row.dim_c.max(r.dim_c);
            row.dim_ao = row.dim_ao.max(r.dim_ao);
            row.dim_j = row.dim_j.max(r.dim_j);
            row.dim_del_plus_c = row.dim_del_plus_c.max(r.dim_del_plus_c);
            if row.per_flat.is_empty() {
                row.per_flat = r.per_flat;
            }
        }
        self.checks.extend(other.checks);
        self.checks
            .sort_by_key(|c| (c.degree.map_or(0, |d| d + 1), c.flat, c.clause));
    }
}

fn small(v: &BigInt) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

impl Oracle {
    /// Generating set, direct sum and ideal statements at every degree up to
    /// `max_degree`. Minimality of the generators follows from the direct sum.
    pub fn verify_generators(&self, max_degree: usize) -> Result<GradedReport> {
        let mut report = GradedReport::default();
        for p in 0..=max_degree {
            self.guard(p)?;
            let all = self.reciprocals(p, TupleFilter::All);
            let ind = self.reciprocals(p, TupleFilter::Independent);
            let dep = self.reciprocals(p, TupleFilter::Dependent);
            let der = self.derivative_spanning_set(p);
            let nbc = self.nbc_elements(p);

            let dim_c = self.span_dim(&all);
            let dim_ao = self.span_dim(&ind);
            let dim_j = self.span_dim(&dep);
            let dim_d = self.span_dim(&der);
            let union = |a: &[Element], b: &[Element]| {
                let mut v = a.to_vec();
                v.extend_from_slice(b);
                self.span_dim(&v)
            };

            let d = Some(p);
            report.check(d, Clause::DirectSumDimension, None, dim_d + dim_ao, dim_c);
            report.check(d, Clause::DirectSumSpans, None, union(&der, &ind), dim_c);
            let joint = union(&dep, &der);
            report.checks.push(Check {
                degree: d,
                clause: Clause::IdealEqualsDerivatives,
                flat: None,
                passed: joint == dim_j && joint == dim_d,
                detail: format!("rank J = {dim_j}, rank ∂₊C = {dim_d}, rank of union = {joint}"),
            });
            let nbc_rank = self.span_dim(&nbc);
            report.checks.push(Check {
                degree: d,
                clause: Clause::NbcBasis,
                flat: None,
                passed: nbc_rank == nbc.len() && nbc_rank == dim_ao,
                detail: format!("{} nbc sets of rank {nbc_rank}, dim AO = {dim_ao}", nbc.len()),
            });
            let row = report.row_mut(p);
            row.dim_c = dim_c;
            row.dim_ao = dim_ao;
            row.dim_j = dim_j;
            row.dim_del_plus_c = dim_d;
        }
        Ok(report)
    }

    /// Splitting of `C_p` over the flats, and the rank of each flat piece as a
    /// free module over the operators transverse to the flat.
    pub fn verify_flat_decomposition(&self, max_degree: usize) -> Result<GradedReport> {
        let mut report = GradedReport::default();
        let lat = self.lattice();
        for p in 0..=max_degree {
            self.guard(p)?;
            let dim_c = self.span_dim(&self.reciprocals(p, TupleFilter::All));
            let per_flat: Vec<usize> = lat
                .flats()
                .iter()
                .map(|f| self.span_dim(&self.reciprocals(p, TupleFilter::Flat(f.id))))
                .collect();
            for (f, &dim) in lat.flats().iter().zip(&per_flat) {
                let mu = small(&num_traits::Signed::abs(lat.mobius(f.id)));
                let expected = match (f.codim, p) {
                    (0, 0) => mu,
                    (0, _) => 0,
                    (c, p) if p < c => 0,
                    (c, p) => mu * small(&binomial(p - 1, c - 1)),
                };
                report.check(Some(p), Clause::FreeModuleRank, Some(f.id), dim, expected);
            }
            report.check(
                Some(p),
                Clause::FlatDecomposition,
                None,
                per_flat.iter().sum(),
                dim_c,
            );
            let row = report.row_mut(p);
            row.dim_c = dim_c;
            row.per_flat = per_flat;
        }
        Ok(report)
    }

    /// Oracle dimensions against the combinatorial formulas: `dim C_p` against
    /// the Poincaré series and `dim AO_p` against the Poincaré polynomial.
    pub fn verify_series(&self, max_degree: usize) -> Result<GradedReport> {
        let mut report = GradedReport::default();
        let series = series_of_c(self.arrangement(), max_degree);
        let poly = self.lattice().poincare_polynomial();
        for p in 0..=max_degree {
            let dim_c = self.dim_c(p)?;
            let dim_ao = self.dim_ao(p)?;
            report.check(Some(p), Clause::SeriesAgreement, None, dim_c, small(series.coeff(p)));
            report.check(Some(p), Clause::AomotoPoincare, None, dim_ao, small(&poly.coeff(p)));
            let row = report.row_mut(p);
            row.dim_c = dim_c;
            row.dim_ao = dim_ao;
        }
        Ok(report)
    }

    /// nbc counts per flat against the Möbius function (degree-independent).
    pub fn verify_nbc_counts(&self) -> GradedReport {
        let table = matroid::check_nbc_count(self.arrangement(), self.lattice());
        let checks = table
            .rows
            .iter()
            .map(|r| Check {
                degree: None,
                clause: Clause::NbcCount,
                flat: Some(r.flat),
                passed: r.passed,
                detail: format!("|nbc| = {}, mu = {}", r.nbc_count, r.mobius),
            })
            .collect();
        GradedReport {
            rows: Vec::new(),
            checks,
        }
    }

    /// Every check above, merged into one report.
    pub fn verify_all(&self, max_degree: usize) -> Result<GradedReport> {
        let mut report = self.verify_nbc_counts();
        report.merge(self.verify_generators(max_degree)?);
        report.merge(self.verify_flat_decomposition(max_degree)?);
        report.merge(self.verify_series(max_degree)?);
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::series::BuiltinFamily;

    fn oracle(s: &str) -> Oracle {
        Oracle::new(s.parse::<BuiltinFamily>().unwrap().build().unwrap())
    }

    fn dims(r: &GradedReport) -> Vec<usize> {
        r.rows.iter().map(|r| r.dim_c).collect()
    }

    #[test]
    fn generators_examples() {
        let r = oracle("braid:3").verify_generators(4).unwrap();
        assert!(r.all_passed(), "{:?}", r.first_failure());
        assert_eq!(dims(&r), vec![1, 3, 5, 7, 9]);

        let r = oracle("boolean:2").verify_generators(3).unwrap();
        assert!(r.all_passed());
        assert_eq!(dims(&r), vec![1, 2, 3, 4]);

        let r = oracle("generic:4,2").verify_generators(3).unwrap();
        assert!(r.all_passed());
        assert_eq!(dims(&r), vec![1, 4, 7, 10]);
    }

    #[test]
    fn decomposition_examples() {
        let o = oracle("braid:3");
        let r = o.verify_flat_decomposition(2).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.rows[2].per_flat, vec![0, 1, 1, 1, 2]);

        let r = oracle("boolean:2").verify_flat_decomposition(2).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.rows[2].per_flat, vec![0, 1, 1, 1]);

        let empty = Oracle::new(Arrangement::new(2, vec![]).unwrap());
        let r = empty.verify_flat_decomposition(0).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.rows[0].per_flat, vec![1]);
    }

    #[test]
    fn full_report_is_ordered() {
        let r = oracle("braid:3").verify_all(3).unwrap();
        assert!(r.all_passed());
        let keys: Vec<_> = r
            .checks
            .iter()
            .map(|c| (c.degree.map_or(0, |d| d + 1), c.flat, c.clause))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.rows[3].dim_del_plus_c, 7);
    }

    #[test]
    fn failing_checks_are_reported() {
        let mut r = GradedReport::default();
        r.check(Some(2), Clause::SeriesAgreement, None, 4, 5);
        assert!(!r.all_passed());
        assert_eq!(r.first_failure().unwrap().detail, "4 = 5");
    }
}

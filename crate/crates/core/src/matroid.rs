//! Circuits, broken circuits and nbc (no-broken-circuit) sets of the vector
//! configuration `Δ`.
//!
//! A broken circuit is a circuit with its smallest index removed; "smallest" is
//! taken in the input order of the arrangement. nbc sets are the increasing
//! tuples containing no broken circuit. The nbc sets whose common zero set is a
//! flat `X` have `|μ(X)|` elements, so they index a basis of the part of the
//! Aomoto space living on `X`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arrangement::Arrangement;
use crate::lattice::Lattice;

/// A minimal linearly dependent set of forms, as sorted indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Circuit {
    pub indices: Vec<usize>,
}

/// An increasing independent tuple with no broken circuit, and the flat it cuts out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcSet {
    pub indices: Vec<usize>,
    pub flat: usize,
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

/// All circuits of `Δ`, ordered by size and then lexicographically.
///
/// A subset is a circuit iff it is dependent while every subset obtained by
/// dropping one element is independent. Circuits have at most `rank + 1 <= l + 1` elements.
pub fn circuits(arr: &Arrangement) -> Vec<Circuit> {
    let mut out = Vec::new();
    let max = (arr.rank() + 1).min(arr.len());
    for k in 1..=max {
        for_each_subset(arr.len(), k, &mut |s| {
            if arr.rank_of(s) != k - 1 {
                return;
            }
            let minimal = (0..k).all(|drop| {
                let sub: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != drop)
                    .map(|(_, &i)| i)
                    .collect();
                arr.rank_of(&sub) == k - 1
            });
            if minimal {
                out.push(Circuit { indices: s.to_vec() });
            }
        });
    }
    out
}

/// Broken circuits: each circuit minus its least element, deduplicated and sorted.
pub fn broken_circuits(arr: &Arrangement) -> Vec<Vec<usize>> {
    let mut bc: Vec<Vec<usize>> = circuits(arr)
        .into_iter()
        .map(|c| c.indices[1..].to_vec())
        .collect();
    bc.sort();
    bc.dedup();
    bc
}

fn contains_sorted(haystack: &[usize], needle: &[usize]) -> bool {
    needle.iter().all(|i| haystack.binary_search(i).is_ok())
}

/// All nbc sets, grouped by flat id. Every flat gets an entry (possibly empty);
/// `V` holds the empty tuple.
///
/// Tuples are grown depth-first in increasing index order and pruned as soon as
/// they become dependent or contain a broken circuit.
pub fn nbc_sets(arr: &Arrangement, lat: &Lattice) -> BTreeMap<usize, Vec<NbcSet>> {
    let broken = broken_circuits(arr);
    let mut out: BTreeMap<usize, Vec<NbcSet>> = (0..lat.len()).map(|i| (i, Vec::new())).collect();

    fn grow(
        arr: &Arrangement,
        lat: &Lattice,
        broken: &[Vec<usize>],
        cur: &mut Vec<usize>,
        out: &mut BTreeMap<usize, Vec<NbcSet>>,
    ) {
        let flat = lat.flat_of(arr, cur).id;
        out.get_mut(&flat).expect("flat ids are dense").push(NbcSet {
            indices: cur.clone(),
            flat,
        });
        let start = cur.last().map_or(0, |&i| i + 1);
        for i in start..arr.len() {
            cur.push(i);
            // only broken circuits ending in i can be new
            let has_bc = broken
                .iter()
                .any(|b| b.last() == Some(&i) && contains_sorted(cur, b));
            if !has_bc && arr.rank_of(cur) == cur.len() {
                grow(arr, lat, broken, cur, out);
            }
            cur.pop();
        }
    }

    grow(arr, lat, &broken, &mut Vec::new(), &mut out);
    out
}

/// One row of [`check_nbc_count`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcCountRow {
    pub flat: usize,
    pub codim: usize,
    pub mobius: BigInt,
    pub nbc_count: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbcCountReport {
    pub rows: Vec<NbcCountRow>,
}

impl NbcCountReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn first_failure(&self) -> Option<&NbcCountRow> {
        self.rows.iter().find(|r| !r.passed)
    }

    /// Number of nbc sets of each cardinality.
    pub fn counts_by_codim(&self) -> Vec<usize> {
        let max = self.rows.iter().map(|r| r.codim).max().unwrap_or(0);
        let mut out = vec![0; max + 1];
        for r in &self.rows {
            out[r.codim] += r.nbc_count;
        }
        out
    }
}

/// Compares `|nbc_X|` with `(−1)^{codim X} μ(X)` for every flat.
pub fn check_nbc_count(arr: &Arrangement, lat: &Lattice) -> NbcCountReport {
    let nbc = nbc_sets(arr, lat);
    let rows = lat
        .flats()
        .iter()
        .map(|f| {
            let mobius = lat.mobius(f.id).clone();
            let nbc_count = nbc[&f.id].len();
            NbcCountRow {
                flat: f.id,
                codim: f.codim,
                passed: mobius.abs() == BigInt::from(nbc_count)
                    && (f.codim % 2 == 0) != mobius.is_negative(),
                mobius,
                nbc_count,
            }
        })
        .collect();
    NbcCountReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::BuiltinFamily;

    fn braid3() -> Arrangement {
        BuiltinFamily::Braid(3).build().unwrap()
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(
            circuits(&braid3()),
            vec![Circuit { indices: vec![0, 1, 2] }]
        );
        assert!(circuits(&BuiltinFamily::Boolean(2).build().unwrap()).is_empty());
        let generic = BuiltinFamily::Generic { n: 4, dim: 2 }.build().unwrap();
        let c: Vec<Vec<usize>> = circuits(&generic).into_iter().map(|c| c.indices).collect();
        assert_eq!(c, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn broken_circuit_examples() {
        assert_eq!(broken_circuits(&braid3()), vec![vec![1, 2]]);
        assert!(broken_circuits(&BuiltinFamily::Boolean(2).build().unwrap()).is_empty());
        let generic = BuiltinFamily::Generic { n: 4, dim: 2 }.build().unwrap();
        assert_eq!(
            broken_circuits(&generic),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn braid3_nbc() {
        let arr = braid3();
        let lat = Lattice::new(&arr);
        let nbc = nbc_sets(&arr, &lat);
        let top: Vec<Vec<usize>> = nbc[&lat.top().id].iter().map(|s| s.indices.clone()).collect();
        assert_eq!(top, vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(nbc[&0].len(), 1);
        assert!(nbc[&0][0].indices.is_empty());
        for f in lat.flats().iter().filter(|f| f.codim == 1) {
            assert_eq!(nbc[&f.id].len(), 1);
            assert_eq!(nbc[&f.id][0].indices, f.support);
        }
    }

    #[test]
    fn count_reports() {
        let cases = [
            (braid3(), vec![1, 1, 1, 1, 2]),
            (BuiltinFamily::Boolean(2).build().unwrap(), vec![1, 1, 1, 1]),
            (Arrangement::new(3, vec![]).unwrap(), vec![1]),
        ];
        for (arr, expected) in cases {
            let lat = Lattice::new(&arr);
            let report = check_nbc_count(&arr, &lat);
            assert!(report.all_passed());
            let counts: Vec<usize> = report.rows.iter().map(|r| r.nbc_count).collect();
            assert_eq!(counts, expected);
        }
    }

    #[test]
    fn nbc_sets_are_independent_and_unbroken() {
        let arrs = [
            BuiltinFamily::Braid(4).build().unwrap(),
            BuiltinFamily::Generic { n: 5, dim: 3 }.build().unwrap(),
        ];
        for arr in arrs {
            let lat = Lattice::new(&arr);
            let bc = broken_circuits(&arr);
            for (flat, sets) in nbc_sets(&arr, &lat) {
                for s in sets {
                    assert!(arr.is_independent(&s.indices));
                    assert_eq!(s.indices.len(), lat.flat(flat).codim);
                    assert!(bc.iter().all(|b| !contains_sorted(&s.indices, b)));
                }
            }
        }
    }

    #[test]
    fn counts_independent_of_order() {
        let arr = BuiltinFamily::Braid(4).build().unwrap();
        let base = check_nbc_count(&arr, &Lattice::new(&arr));
        for order in [[5, 4, 3, 2, 1, 0], [2, 0, 5, 1, 4, 3], [1, 3, 5, 0, 2, 4]] {
            let p = arr.permuted(&order).unwrap();
            let report = check_nbc_count(&p, &Lattice::new(&p));
            assert!(report.all_passed());
            assert_eq!(report.counts_by_codim(), base.counts_by_codim());
        }
    }
}

//! Intersection lattice, Möbius function and Poincaré polynomial.
//!
//! Flats are identified by their closed support: the set of forms vanishing on
//! the flat. Two flats are equal iff their supports are, and `X <= Y` (reverse
//! inclusion of subspaces) iff `support(X) ⊆ support(Y)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::Arrangement;
use crate::linalg::Rational;
use crate::series::UnivariatePolynomial;

/// An element `X` of the intersection lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub id: usize,
    /// Sorted indices `i` with `X ⊆ ker(α_i)`.
    pub support: Vec<usize>,
    pub codim: usize,
    /// Basis of `X` as a subspace of `V`.
    pub subspace_basis: Vec<Vec<Rational>>,
}

impl Flat {
    pub fn is_below(&self, other: &Flat) -> bool {
        self.support.iter().all(|i| other.support.binary_search(i).is_ok())
    }

    /// True if form `i` vanishes on this flat.
    pub fn contains_form(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }
}

/// The intersection lattice `L(Δ)` with Möbius values.
///
/// `flats[0]` is `V`; flats are sorted by codimension, then by support.
#[derive(Debug, Clone)]
pub struct Lattice {
    flats: Vec<Flat>,
    mobius: Vec<BigInt>,
}

impl Lattice {
    /// Builds the lattice level by level: each flat of codimension `k` is met
    /// with every hyperplane not containing it and the result is closed.
    pub fn new(arr: &Arrangement) -> Self {
        let mut levels: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::from([Vec::new()])];
        loop {
            let current = levels.last().expect("nonempty");
            let mut next = BTreeSet::new();
            for support in current {
                for i in 0..arr.len() {
                    if support.binary_search(&i).is_err() {
                        let mut s = support.clone();
                        s.push(i);
                        next.insert(arr.closure(&s));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let flats: Vec<Flat> = levels
            .into_iter()
            .enumerate()
            .flat_map(|(codim, level)| level.into_iter().map(move |s| (codim, s)))
            .enumerate()
            .map(|(id, (codim, support))| Flat {
                id,
                codim,
                subspace_basis: arr.common_kernel(&support),
                support,
            })
            .collect();
        let mut lattice = Lattice {
            mobius: vec![BigInt::zero(); flats.len()],
            flats,
        };
        lattice.compute_mobius();
        lattice
    }

    /// Fills `mobius` from `μ(V) = 1` and `Σ_{Y ≤ X} μ(Y) = 0` for `X > V`.
    fn compute_mobius(&mut self) {
        for x in 0..self.flats.len() {
            if x == 0 {
                self.mobius[0] = BigInt::one();
                continue;
            }
            let below: BigInt = (0..x)
                .filter(|&y| self.flats[y].is_below(&self.flats[x]))
                .map(|y| self.mobius[y].clone())
                .sum();
            self.mobius[x] = -below;
        }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn mobius(&self, id: usize) -> &BigInt {
        &self.mobius[id]
    }

    pub fn mobius_values(&self) -> &[BigInt] {
        &self.mobius
    }

    /// `X ≤ Y` in the reverse-inclusion order.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.flats[x].is_below(&self.flats[y])
    }

    /// Flat with the given closed support.
    pub fn find(&self, support: &[usize]) -> Option<&Flat> {
        self.flats.iter().find(|f| f.support == support)
    }

    /// Flat `V(ε)` for an arbitrary selection of forms (repeats allowed).
    pub fn flat_of(&self, arr: &Arrangement, indices: &[usize]) -> &Flat {
        let mut distinct = indices.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        self.find(&arr.closure(&distinct))
            .expect("closures of form sets are flats")
    }

    /// The flat of largest codimension (the intersection of all hyperplanes).
    pub fn top(&self) -> &Flat {
        self.flats.last().expect("V is always present")
    }

    pub fn rank(&self) -> usize {
        self.top().codim
    }

    /// `Σ_X μ(X) (−t)^{codim X}`.
    pub fn poincare_polynomial(&self) -> UnivariatePolynomial {
        let mut coeffs = vec![BigInt::zero(); self.rank() + 1];
        for (f, mu) in self.flats.iter().zip(&self.mobius) {
            if f.codim % 2 == 0 {
                coeffs[f.codim] += mu;
            } else {
                coeffs[f.codim] -= mu;
            }
        }
        UnivariatePolynomial::new(coeffs)
    }
}

/// Poincaré polynomial of `A(Δ)`, building the lattice internally.
pub fn poincare_polynomial(arr: &Arrangement) -> UnivariatePolynomial {
    Lattice::new(arr).poincare_polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::BuiltinFamily;
    use num_traits::Signed;

    fn braid(l: usize) -> Arrangement {
        BuiltinFamily::Braid(l).build().unwrap()
    }

    fn coeffs(p: &UnivariatePolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    fn suite() -> Vec<Arrangement> {
        vec![
            braid(3),
            braid(4),
            BuiltinFamily::Boolean(3).build().unwrap(),
            BuiltinFamily::Generic { n: 5, dim: 3 }.build().unwrap(),
            Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, 1, 1]])
                .unwrap(),
        ]
    }

    #[test]
    fn braid3_flats() {
        let lat = Lattice::new(&braid(3));
        assert_eq!(lat.len(), 5);
        let codims: Vec<usize> = lat.flats().iter().map(|f| f.codim).collect();
        assert_eq!(codims, vec![0, 1, 1, 1, 2]);
        assert_eq!(lat.top().support, vec![0, 1, 2]);
        assert_eq!(lat.top().subspace_basis.len(), 1);
        assert_eq!(lat.mobius(lat.top().id), &BigInt::from(2));
        assert_eq!(coeffs(&lat.poincare_polynomial()), vec![1, 3, 2]);
    }

    #[test]
    fn small_cases() {
        let one = Arrangement::from_i64(2, &[&[1, 0]]).unwrap();
        assert_eq!(Lattice::new(&one).len(), 2);

        let boolean = BuiltinFamily::Boolean(2).build().unwrap();
        let lat = Lattice::new(&boolean);
        assert_eq!(lat.len(), 4);
        assert_eq!(lat.mobius(3), &BigInt::from(1));
        assert_eq!(coeffs(&lat.poincare_polynomial()), vec![1, 2, 1]);

        let empty = Arrangement::new(2, vec![]).unwrap();
        let lat = Lattice::new(&empty);
        assert_eq!(lat.len(), 1);
        assert_eq!(coeffs(&lat.poincare_polynomial()), vec![1]);
    }

    #[test]
    fn mobius_recursion_and_signs() {
        for arr in suite() {
            let lat = Lattice::new(&arr);
            assert!(lat.mobius(0).is_one());
            for x in lat.flats().iter().skip(1) {
                let total: BigInt = lat
                    .flats()
                    .iter()
                    .filter(|y| lat.le(y.id, x.id))
                    .map(|y| lat.mobius(y.id).clone())
                    .sum();
                assert!(total.is_zero());
                let signed = if x.codim % 2 == 0 {
                    lat.mobius(x.id).clone()
                } else {
                    -lat.mobius(x.id)
                };
                assert!(signed.is_positive(), "flat {:?}", x.support);
                if x.codim == 1 {
                    assert_eq!(lat.mobius(x.id), &BigInt::from(-1));
                }
            }
        }
    }

    #[test]
    fn supports_are_closed() {
        for arr in suite() {
            let lat = Lattice::new(&arr);
            for x in lat.flats() {
                assert_eq!(arr.rank_of(&x.support), x.codim);
                assert_eq!(x.subspace_basis.len(), arr.dim() - x.codim);
                for (i, form) in arr.forms().iter().enumerate() {
                    let vanishes = x
                        .subspace_basis
                        .iter()
                        .all(|v| form.eval(v).is_zero());
                    assert_eq!(vanishes, x.contains_form(i));
                }
            }
        }
    }

    #[test]
    fn braid_factorization() {
        assert_eq!(coeffs(&poincare_polynomial(&braid(3))), vec![1, 3, 2]);
        // (1 + t)(1 + 2t)(1 + 3t)
        assert_eq!(coeffs(&poincare_polynomial(&braid(4))), vec![1, 6, 11, 6]);
    }
}

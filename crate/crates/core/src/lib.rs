//! Combinatorics of rational hyperplane arrangements and of the algebra
//! generated by reciprocals of their defining forms.
//!
//! Given an ordered set `Δ` of pairwise non-proportional linear forms on an
//! `l`-dimensional rational space, the crate computes
//!
//! - the intersection lattice, its Möbius function and Poincaré polynomial ([`lattice`]),
//! - circuits, broken circuits and nbc sets per flat ([`matroid`]),
//! - the Poincaré series of the algebra `C(Δ)` spanned by products of
//!   reciprocals `1/α`, together with closed forms for free and generic
//!   arrangements ([`series`]),
//! - a brute-force exact oracle that recomputes graded dimensions of `C(Δ)` and
//!   its pieces from cleared-denominator numerators and checks the structure
//!   theorems against the combinatorics ([`oracle`]).
//!
//! ```
//! use arrangements::{series, BuiltinFamily};
//!
//! let braid = BuiltinFamily::Braid(3).build().unwrap();
//! let s = series::series_of_c(&braid, 4);
//! assert_eq!(s.to_string(), "1 3 5 7 9");
//! ```

pub mod arrangement;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod matroid;
pub mod oracle;
pub mod poly;
pub mod series;

pub use arrangement::{Arrangement, LinearForm};
pub use error::{Error, Result};
pub use lattice::{Flat, Lattice};
pub use linalg::{Matrix, Rational};
pub use matroid::{Circuit, NbcSet};
pub use oracle::{Element, Oracle, ReciprocalTuple, TupleFilter};
pub use poly::MultivariatePolynomial;
pub use series::{BuiltinFamily, TruncatedSeries, UnivariatePolynomial};

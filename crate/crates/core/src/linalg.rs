//! Exact linear algebra over the rationals.
//!
//! [`rank`] runs fraction-free, content-normalized elimination on an integer copy of the
//! matrix. [`solve`] uses rational Gauss-Jordan reduction since it has to
//! produce actual solution vectors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Contract(format!(
                "row {bad} has length {} but expected {cols}",
                rows[bad].len()
            )));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers, used heavily in tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Stacks `other` below `self`. Column counts must agree unless one side is empty.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows == 0 {
            return Ok(other.clone());
        }
        if other.rows == 0 {
            return Ok(self.clone());
        }
        if self.cols != other.cols {
            return Err(Error::Contract(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Multiplies the matrix by a column vector.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Contract(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Scales each row by the lcm of its denominators so every entry is an integer.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect()
        })
        .collect()
}

/// Exact rank over the rationals.
///
/// Rows are cleared to integers and reduced by fraction-free elimination. Each
/// updated row is divided by the gcd of its entries, which keeps coefficients
/// small, and rows whose entry in the pivot column is already zero are left
/// alone, so sparse inputs stay sparse.
pub fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    for row in a.iter_mut() {
        remove_content(row);
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // the shortest candidate row keeps fill-in down
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c + 1..].iter().filter(|v| !v.is_zero()).count())
        else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in rest.iter_mut().filter(|row| !row[c].is_zero()) {
            let g = pivot_row[c].gcd(&row[c]);
            let scale = &pivot_row[c] / &g;
            let lead = &row[c] / &g;
            if !scale.is_one() {
                for v in row[c + 1..].iter_mut() {
                    if !v.is_zero() {
                        *v *= &scale;
                    }
                }
            }
            for &j in &support {
                row[j] -= &lead * &pivot_row[j];
            }
            row[c] = BigInt::zero();
            remove_content(row);
        }
        r += 1;
    }
    r
}

/// Divides a row by the gcd of its entries.
fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Result of [`solve`] on a consistent system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// One particular solution (free variables set to zero).
    pub particular: Vec<Rational>,
    /// Basis of the nullspace of the coefficient matrix; empty when the solution is unique.
    pub nullspace: Vec<Vec<Rational>>,
}

/// Reduced row echelon form, returning pivot columns.
fn rref(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..a[i].len() {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `m x = rhs` exactly. Returns `Ok(None)` when the system is inconsistent.
pub fn solve(m: &Matrix, rhs: &[Rational]) -> Result<Option<Solution>> {
    if rhs.len() != m.rows {
        return Err(Error::Contract(format!(
            "rhs length {} does not match {} rows",
            rhs.len(),
            m.rows
        )));
    }
    let cols = m.cols;
    let mut aug: Vec<Vec<Rational>> = (0..m.rows)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, cols);
    // a pivot row whose coefficients vanish but rhs does not
    if aug
        .iter()
        .skip(pivots.len())
        .any(|row| !row[cols].is_zero())
    {
        return Ok(None);
    }
    let mut particular = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][f].clone();
            }
            v
        })
        .collect();
    Ok(Some(Solution {
        particular,
        nullspace,
    }))
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let zero = vec![Rational::zero(); m.rows];
    solve(m, &zero)
        .expect("rhs length matches by construction")
        .expect("homogeneous systems are consistent")
        .nullspace
}

/// True if all entries of `v` are zero.
pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides `v` by its first nonzero entry. Returns `None` for the zero vector.
pub fn normalize_leading(v: &[Rational]) -> Option<Vec<Rational>> {
    let lead = v.iter().find(|q| !q.is_zero())?;
    let lead = lead.clone();
    Some(v.iter().map(|q| q / &lead).collect())
}

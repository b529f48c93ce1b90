//! Dense exact linear algebra over the rationals.
//!
//! Matrices are row lists. Sizes here are tiny (graded pieces of Chow
//! rings), so plain Gauss-Jordan elimination is all that is needed.

use num_traits::{One, Zero};

use super::rational::Rational;

/// A matrix in reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(rows: Vec<Vec<Rational>>, ncols: usize) -> Self {
        let mut e = RowEchelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn empty(ncols: usize) -> Self {
        Self::new(Vec::new(), ncols)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminate the pivot columns of `v` against the stored rows.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols, "vector length");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Add a row, keeping the form reduced. Returns false if the row was
    /// already in the span.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    RowEchelon::new(rows.to_vec(), ncols).rank()
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows; one basis
/// vector per free column, in increasing column order.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let e = RowEchelon::new(rows.to_vec(), ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !e.pivots.contains(c)) {
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            x[p] = -row[free].clone();
        }
        out.push(x);
    }
    out
}

/// Coefficients `c` with `sum_i c_i * vectors[i] = target`, if any. When the
/// vectors are dependent the returned solution sets free coefficients to 0.
pub fn solve_combination(vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = target.len();
    let m = vectors.len();
    // augmented system: rows indexed by coordinates, columns by vectors
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let e = RowEchelon::new(rows, m + 1);
    if e.pivots.contains(&m) {
        return None;
    }
    let mut x = vec![Rational::zero(); m];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[m].clone();
    }
    Some(x)
}

pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        let (top, below) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in below {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &p;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

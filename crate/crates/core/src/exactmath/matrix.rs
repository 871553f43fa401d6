use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows<R: AsRef<[Rational]>>(cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn scale_row(&mut self, r: usize, by: &Rational) {
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = &*v * by;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows).map(|r| super::dot(self.row(r), v)).collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row, in order.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows.len() {
            break;
        }
        // largest magnitude keeps entries small; any nonzero works exactly
        let Some(best) = (pr..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .max_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()).then(b.cmp(&a)))
        else {
            continue;
        };
        rows.swap(pr, best);
        let inv = rows[pr][c].recip();
        for v in rows[pr].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[pr].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *v = &*v - &factor * p;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Exact rank by rational Gaussian elimination.
pub fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<Rational>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    rref(&mut rows, m.cols).len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Unique,
    AffineSubspace,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystemSolution {
    pub kind: SolutionKind,
    pub particular: Option<Vec<Rational>>,
    pub null_basis: Vec<Vec<Rational>>,
}

impl LinearSystemSolution {
    /// Dimension of the solution flat, `None` when infeasible.
    pub fn dimension(&self) -> Option<usize> {
        match self.kind {
            SolutionKind::Infeasible => None,
            _ => Some(self.null_basis.len()),
        }
    }
}

/// Solves `m · x = rhs` exactly, describing the full solution flat.
pub fn solve_affine(m: &Matrix, rhs: &[Rational]) -> Result<LinearSystemSolution> {
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let cols = m.cols;
    let mut aug: Vec<Vec<Rational>> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(LinearSystemSolution {
            kind: SolutionKind::Infeasible,
            particular: None,
            null_basis: Vec::new(),
        });
    }

    let mut particular = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][cols].clone();
    }

    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let null_basis: Vec<Vec<Rational>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][f].clone();
            }
            v
        })
        .collect();

    let kind = if null_basis.is_empty() {
        SolutionKind::Unique
    } else {
        SolutionKind::AffineSubspace
    };
    Ok(LinearSystemSolution {
        kind,
        particular: Some(particular),
        null_basis,
    })
}

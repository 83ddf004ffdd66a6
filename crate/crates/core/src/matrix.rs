//! Dense matrices over a [`FiniteField`].

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::FiniteField;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    field: Arc<FiniteField>,
}

impl core::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:?}", self.field)?;
        let rows: Vec<&[u32]> = self.entries.chunks(self.cols.max(1)).collect();
        write!(f, "{:?}", rows)
    }
}

impl Matrix {
    pub fn new(field: Arc<FiniteField>, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= field.order()) {
            return Err(Error::InvalidElement {
                element: bad as u64,
                order: field.order() as u64,
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            field,
        })
    }

    pub fn zeros(field: Arc<FiniteField>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(field: Arc<FiniteField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Decodes the row-major base-`q` integer `code`, first entry most
    /// significant.
    pub fn decode(field: Arc<FiniteField>, rows: usize, cols: usize, mut code: u64) -> Self {
        let q = field.order() as u64;
        let mut entries = vec![0; rows * cols];
        for slot in entries.iter_mut().rev() {
            *slot = (code % q) as u32;
            code /= q;
        }
        Matrix {
            rows,
            cols,
            entries,
            field,
        }
    }

    pub fn encode(&self) -> u64 {
        let q = self.field.order() as u64;
        self.entries.iter().fold(0, |acc, &x| acc * q + x as u64)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = out.get(i, j);
                    out.set(i, j, f.add(t, f.mul(a, other.get(l, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Pivots are taken leftmost first, scanning rows top-down for the
    /// first nonzero entry in each column.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.entries.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Idempotent `k x k` matrix whose column space is the row space of
    /// `basis`, which must be in reduced row echelon form with full rank.
    ///
    /// Built as `E^T S` where `S` selects the pivot columns of `E`; since
    /// `S E^T = I` the product is idempotent.
    pub fn projector_onto_rows(basis: &Matrix) -> Matrix {
        let (_, pivots) = basis.rref_with_pivots();
        debug_assert_eq!(pivots.len(), basis.rows);
        let k = basis.cols;
        let mut p = Matrix::zeros(basis.field.clone(), k, k);
        for (i, &pc) in pivots.iter().enumerate() {
            for row in 0..k {
                p.set(row, pc, basis.get(i, row));
            }
        }
        p
    }
}

/// All `d`-dimensional subspaces of `F_q^k`, each as its `d x k` reduced row
/// echelon basis, in canonical order (pivot sets lexicographic, then free
/// entries in base-`q` order).
pub fn subspaces(field: &Arc<FiniteField>, k: usize, d: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    if d > k {
        return out;
    }
    let q = field.order() as u64;
    for pivots in combinations(k, d) {
        // free slots: row i, column j > pivots[i], j not a pivot
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..k)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let count = q.pow(free.len() as u32);
        for mut code in 0..count {
            let mut m = Matrix::zeros(field.clone(), d, k);
            for (i, &pc) in pivots.iter().enumerate() {
                m.set(i, pc, 1);
            }
            for &(i, j) in free.iter().rev() {
                m.set(i, j, (code % q) as u32);
                code /= q;
            }
            out.push(m);
        }
    }
    out
}

/// `d`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Gaussian binomial coefficient `[n choose d]_q`.
pub fn gaussian_binomial(n: u32, d: u32, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

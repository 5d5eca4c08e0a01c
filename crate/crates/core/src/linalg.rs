//! Exact linear algebra over `Q(ζ_m)`.
//!
//! Dense matrices use fraction-free (Bareiss) elimination for ranks and
//! reduced row echelon form for kernels. [`SparseEchelon`] handles the large,
//! very sparse systems arising from Hochschild coboundary solves.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    /// Rank by fraction-free Gaussian elimination, pivoting on the first
    /// nonzero entry of each column.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let mut prev = Scalar::one();
        let mut pivot_row = 0;
        for c in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(p) = (pivot_row..self.rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(pivot_row, p);
            let pivot = m[pivot_row][c].clone();
            let prev_inv = prev.inv().expect("previous pivot is nonzero");
            for r in pivot_row + 1..self.rows {
                let factor = m[r][c].clone();
                if factor.is_zero() {
                    // still rescale to keep the fraction-free invariant
                    for j in c + 1..self.cols {
                        if !m[r][j].is_zero() {
                            m[r][j] = &(&pivot * &m[r][j]) * &prev_inv;
                        }
                    }
                    continue;
                }
                for j in c + 1..self.cols {
                    let a = &pivot * &m[r][j];
                    let b = &factor * &m[pivot_row][j];
                    m[r][j] = &(a - b) * &prev_inv;
                }
                m[r][c] = Scalar::zero();
            }
            prev = pivot;
            pivot_row += 1;
        }
        pivot_row
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("nonzero pivot");
            for j in c..self.cols {
                m[r][j] = &m[r][j] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..self.cols {
                        if !m[r][j].is_zero() {
                            let d = &f * &m[r][j];
                            m[i][j] -= &d;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    /// A basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref.data[r][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.data
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.data[r][c] = v.clone();
            }
        }
        m
    }
}

/// Given a spanning set `sub` of a subspace `B` and vectors `zs` spanning `Z ⊇ B`,
/// returns indices into `zs` whose classes form a basis of `Z / B`.
pub fn complement_indices(sub: &[Vec<Scalar>], zs: &[Vec<Scalar>]) -> Vec<usize> {
    let mut echelon = SparseEchelon::new();
    for v in sub {
        echelon.insert(dense_to_sparse(v));
    }
    zs.iter()
        .enumerate()
        .filter_map(|(i, z)| echelon.insert(dense_to_sparse(z)).then_some(i))
        .collect()
}

pub fn dense_to_sparse(v: &[Scalar]) -> BTreeMap<usize, Scalar> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Incrementally built row echelon form of sparse rows.
///
/// Each stored row is normalised to leading coefficient 1 and is keyed by its
/// leading column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots; returns the remainder.
    pub fn reduce(&self, mut row: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut floor = 0usize;
        loop {
            let Some((&lead, _)) = row.range(floor..).next() else { return row };
            match self.pivots.get(&lead) {
                None => floor = lead + 1,
                Some(p) => {
                    let f = row[&lead].clone();
                    for (c, v) in p {
                        let e = row.entry(*c).or_default();
                        *e -= &(&f * v);
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
            }
        }
    }

    /// Inserts `row`; returns whether it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, Scalar>) -> bool {
        // after reduction no entry sits on a pivot column, so the first key is a new lead
        let mut row = self.reduce(row);
        let Some((&lead, first)) = row.iter().next() else { return false };
        let inv = first.inv().expect("nonzero lead");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, row: BTreeMap<usize, Scalar>) -> bool {
        self.reduce(row).is_empty()
    }
}

//! Dense matrices over GF(p) and the elimination routines everything else
//! is built from.

use super::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u32>,
}

/// Subtract `f * src` from `dst` on the listed columns.
#[inline]
fn axpy_sparse(field: PrimeField, dst: &mut [u32], src: &[u32], nz: &[usize], f: u32) {
    let p = field.p() as u64;
    let nf = (p - f as u64) % p;
    for &k in nz {
        dst[k] = ((dst[k] as u64 + nf * src[k] as u64) % p) as u32;
    }
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, field, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        DenseMatrix { rows, cols, field, data }
    }

    /// Build from signed integer rows (reduced mod p).
    pub fn from_i64(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, nrows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u32) {
        let k = i * self.cols + j;
        self.data[k] = self.field.add(self.data[k], v);
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let p = self.field.p() as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        DenseMatrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            data: out.into_iter().map(|v| v as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (&a, &b) in self.row(i).iter().zip(v) {
                    if a != 0 && b != 0 {
                        s = (s + a as u64 * b as u64) % p;
                    }
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> DenseMatrix {
        let f = self.field;
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Copy `block` into self with its top-left corner at (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &DenseMatrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn hstack(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.field, self.rows, self.cols + other.cols);
        m.put_block(0, 0, self);
        m.put_block(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        DenseMatrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data }
    }

    /// Gaussian elimination in place. With `full` the result is in reduced row
    /// echelon form, otherwise only row echelon form. Returns pivot columns.
    fn eliminate(&mut self, full: bool, col_limit: usize) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut nz = Vec::with_capacity(cols);
        for c in 0..col_limit.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            nz.clear();
            for k in c..cols {
                let v = &mut self.data[r * cols + k];
                if *v != 0 {
                    *v = f.mul(*v, inv);
                    nz.push(k);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            for (i, row) in after.chunks_exact_mut(cols).enumerate() {
                let _ = i;
                let factor = row[c];
                if factor != 0 {
                    axpy_sparse(f, row, prow, &nz, factor);
                }
            }
            if full {
                for row in before.chunks_exact_mut(cols) {
                    let factor = row[c];
                    if factor != 0 {
                        axpy_sparse(f, row, prow, &nz, factor);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        let mut m = if self.rows > self.cols { self.transpose() } else { self.clone() };
        let lim = m.cols;
        m.eliminate(false, lim).len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let mut m = self.clone();
        let lim = m.cols;
        let piv = m.eliminate(true, lim);
        (m, piv)
    }

    /// Basis of the right kernel as a list of vectors.
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, piv) = self.rref();
        let mut is_piv = vec![usize::MAX; self.cols];
        for (i, &c) in piv.iter().enumerate() {
            is_piv[c] = i;
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_piv[free] != usize::MAX {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &c) in piv.iter().enumerate() {
                v[c] = f.neg(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_basis(&self) -> DenseMatrix {
        DenseMatrix::from_columns(self.field, self.cols, &self.kernel_vectors())
    }

    /// Some x with self·x = b, or None when inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "solve: rhs length");
        let aug = self.hstack(&DenseMatrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let mut m = aug;
        let piv = m.eliminate(true, self.cols + 1);
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &c) in piv.iter().enumerate() {
            x[c] = m.get(i, self.cols);
        }
        Some(x)
    }

    pub fn det(&self) -> u32 {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = 1u32;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for k in 0..n {
                    m.data.swap(pr * n + k, c * n + k);
                }
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor != 0 {
                    for k in c..n {
                        let v = f.sub(m.get(i, k), f.mul(factor, m.get(c, k)));
                        m.set(i, k, v);
                    }
                }
            }
        }
        det
    }
}

/// Incrementally maintained row echelon basis of a subspace of k^len.
/// Rows are kept triangular in insertion order, which is enough for
/// canonical reduction of vectors modulo the span.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: PrimeField,
    len: usize,
    rows: Vec<Vec<u32>>,
    nz: Vec<Vec<usize>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(field: PrimeField, len: usize) -> Self {
        RowEchelon { field, len, rows: Vec::new(), nz: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduce v modulo the span, in place.
    pub fn reduce(&self, v: &mut [u32]) {
        for ((row, nz), &c) in self.rows.iter().zip(&self.nz).zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                axpy_sparse(self.field, v, row, nz, f);
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert v; returns the normalized remainder if it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> Option<Vec<u32>> {
        debug_assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let c = w.iter().position(|&x| x != 0)?;
        let inv = self.field.inv(w[c]);
        for x in w.iter_mut() {
            if *x != 0 {
                *x = self.field.mul(*x, inv);
            }
        }
        let nz: Vec<usize> = (c..self.len).filter(|&k| w[k] != 0).collect();
        self.rows.push(w.clone());
        self.nz.push(nz);
        self.pivots.push(c);
        Some(w)
    }
}

/// Coordinates with respect to a fixed linearly independent family of
/// columns, via a stored left inverse.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    k: usize,
    n: usize,
    /// row operations E with E·B = [I; 0]
    e: DenseMatrix,
}

impl CoordinateSolver {
    /// `cols` must be linearly independent vectors of length n.
    pub fn new(field: PrimeField, n: usize, cols: &[Vec<u32>]) -> Self {
        let k = cols.len();
        let b = DenseMatrix::from_columns(field, n, cols);
        let mut aug = b.hstack(&DenseMatrix::identity(field, n));
        let piv = aug.eliminate(true, k);
        assert_eq!(piv.len(), k, "coordinate family is not independent");
        let mut e = DenseMatrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                e.set(i, j, aug.get(i, k + j));
            }
        }
        CoordinateSolver { k, n, e }
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// Coordinates of v, or None when v is outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.n);
        let w = self.e.mul_vec(v);
        if w[self.k..].iter().any(|&x| x != 0) {
            return None;
        }
        Some(w[..self.k].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_matrix(rng: &mut ChaCha8Rng, f: PrimeField, r: usize, c: usize) -> DenseMatrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..f.p())).collect();
        DenseMatrix::from_rows(f, r, c, data)
    }

    #[test]
    fn identity_and_zero_ranks() {
        let f = PrimeField::default();
        assert_eq!(DenseMatrix::identity(f, 3).rank(), 3);
        assert_eq!(DenseMatrix::zeros(f, 2, 3).rank(), 0);
        assert_eq!(DenseMatrix::zeros(f, 2, 3).kernel_vectors().len(), 3);
        assert_eq!(DenseMatrix::identity(f, 3).kernel_vectors().len(), 0);
    }

    #[test]
    fn kernel_of_random_wide_matrix() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = rand_matrix(&mut rng, f, 5, 8);
        assert_eq!(m.rank(), 5);
        let k = m.kernel_vectors();
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_cases() {
        let f = PrimeField::default();
        let b = vec![5, 7, 11];
        assert_eq!(DenseMatrix::identity(f, 3).solve(&b), Some(b.clone()));
        assert_eq!(DenseMatrix::zeros(f, 3, 3).solve(&b), None);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = rand_matrix(&mut rng, f, 6, 4);
        let x0: Vec<u32> = (0..4).map(|_| rng.gen_range(0..f.p())).collect();
        let rhs = a.mul_vec(&x0);
        let x = a.solve(&rhs).unwrap();
        assert_eq!(a.mul_vec(&x), rhs);
    }

    #[test]
    fn det_of_permutation() {
        let f = PrimeField::default();
        let m = DenseMatrix::from_i64(f, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), f.from_i64(-1));
    }

    #[test]
    fn echelon_membership() {
        let f = PrimeField::default();
        let mut e = RowEchelon::new(f, 3);
        assert!(e.insert(&[1, 2, 0]).is_some());
        assert!(e.insert(&[2, 4, 0]).is_none());
        assert!(e.contains(&[3, 6, 0]));
        assert!(!e.contains(&[0, 0, 1]));
    }

    #[test]
    fn coordinate_solver() {
        let f = PrimeField::default();
        let cols = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let s = CoordinateSolver::new(f, 3, &cols);
        assert_eq!(s.coords(&[2, 5, 3]), Some(vec![2, 3]));
        assert_eq!(s.coords(&[0, 0, 1]), None);
    }
}

//! Dense matrices, echelon forms and subspaces over GF(2^m).
//!
//! Matrices act on column vectors. Subspaces are stored by their reduced
//! row echelon basis, which makes equality and coordinates canonical.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use rand::Rng;

use crate::bitmat::BitMatrix;
use crate::field::{Fe, Field};
use crate::poly::{self, Poly};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
    field: Field,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:>3x}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Outcome of solving A x = b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solution(Vec<Fe>),
    /// y with y A = 0 and y b != 0
    Inconsistent(Vec<Fe>),
}

/// Reduced row echelon form in place on the first `pivot_cols` columns.
/// Returns pivot columns; rows beyond the rank are zero in those columns.
fn rref_in_place(f: &Field, data: &mut [Fe], rows: usize, cols: usize, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else { continue };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]);
        f.scale(&mut data[r * cols + c..(r + 1) * cols], inv);
        let (before, rest) = data.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let prow = &prow[c..];
        for i in 0..r {
            let x = before[i * cols + c];
            if x != 0 {
                f.axpy(&mut before[i * cols + c..(i + 1) * cols], prow, x);
            }
        }
        for i in 0..rows - r - 1 {
            let x = after[i * cols + c];
            if x != 0 {
                f.axpy(&mut after[i * cols + c..(i + 1) * cols], prow, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Matrix {
    pub fn zeros(f: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols], field: f.clone() }
    }

    pub fn identity(f: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(f: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data, field: f.clone() }
    }

    pub fn from_rows(f: &Field, cols: usize, rows: &[Vec<Fe>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data, field: f.clone() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(f: &Field, rows: usize, cols: &[Vec<Fe>]) -> Matrix {
        let mut m = Matrix::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i];
            }
        }
        m
    }

    pub fn random<R: Rng>(f: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let data = (0..rows * cols).map(|_| rng.gen_range(0..f.order()) as Fe).collect();
        Matrix { rows, cols, data, field: f.clone() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == (i == j) as Fe))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, b.rows, "matrix product shape");
        let f = &self.field;
        let mut c = Matrix::zeros(f, self.rows, b.cols);
        if b.cols == 0 {
            return c;
        }
        for i in 0..self.rows {
            let crow = &mut c.data[i * b.cols..(i + 1) * b.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    f.axpy(crow, &b.data[k * b.cols..(k + 1) * b.cols], a);
                }
            }
        }
        c
    }

    /// A v
    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    /// v^T A
    pub fn vec_mul(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                self.field.axpy(&mut out, self.row(i), c);
            }
        }
        out
    }

    pub fn add(&self, b: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        let data = self.data.iter().zip(&b.data).map(|(x, y)| x ^ y).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn add_assign(&mut self, b: &Matrix) {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        for (x, y) in self.data.iter_mut().zip(&b.data) {
            *x ^= y;
        }
    }

    /// self += c * b
    pub fn axpy(&mut self, c: Fe, b: &Matrix) {
        assert_eq!((self.rows, self.cols), (b.rows, b.cols));
        self.field.axpy(&mut self.data, &b.data, c);
    }

    pub fn scaled(&self, c: Fe) -> Matrix {
        let mut m = self.clone();
        m.field.clone().scale(&mut m.data, c);
        m
    }

    pub fn trace(&self) -> Fe {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| acc ^ self.get(i, i))
    }

    pub fn hstack(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.rows, b.rows);
        let cols = self.cols + b.cols;
        let mut m = Matrix::zeros(&self.field, self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(b.row(i));
        }
        m
    }

    pub fn vstack(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, b.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&b.data);
        Matrix { rows: self.rows + b.rows, cols: self.cols, data, field: self.field.clone() }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            m.row_mut(i).copy_from_slice(&self.row(r0 + i)[c0..c0 + cols]);
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            let c = self.cols;
            self.data[(r0 + i) * c + c0..(r0 + i) * c + c0 + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<Fe>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows(&self.field, self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        m
    }

    pub fn block_diag(f: &Field, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(f, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Canonical reduced row echelon form: (nonzero rows, pivot columns).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut data = self.data.clone();
        let pivots = rref_in_place(&self.field, &mut data, self.rows, self.cols, self.cols);
        data.truncate(pivots.len() * self.cols);
        (Matrix { rows: pivots.len(), cols: self.cols, data, field: self.field.clone() }, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.field.degree() == 1 && self.rows * self.cols >= 4096 {
            return BitMatrix::from_matrix(self).rank();
        }
        self.rref().1.len()
    }

    /// Basis of { x : A x = 0 }, one vector per free column, canonical.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        if self.field.degree() == 1 && self.rows * self.cols >= 4096 {
            return BitMatrix::from_matrix(self).kernel();
        }
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    /// Basis of { y : y A = 0 }.
    pub fn left_kernel(&self) -> Vec<Vec<Fe>> {
        self.transpose().kernel()
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::from_matrix(&self.transpose())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let mut data = aug.data;
        let pivots = rref_in_place(&self.field, &mut data, n, 2 * n, n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&data[i * 2 * n + n..(i + 1) * 2 * n]);
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solve A x = b, or certify inconsistency.
    pub fn solve(&self, b: &[Fe]) -> Solve {
        assert_eq!(b.len(), self.rows);
        let (m, n) = (self.rows, self.cols);
        let w = n + 1 + m;
        let mut data = vec![0; m * w];
        for i in 0..m {
            data[i * w..i * w + n].copy_from_slice(self.row(i));
            data[i * w + n] = b[i];
            data[i * w + n + 1 + i] = 1;
        }
        let pivots = rref_in_place(&self.field, &mut data, m, w, n);
        for i in pivots.len()..m {
            if data[i * w + n] != 0 {
                return Solve::Inconsistent(data[i * w + n + 1..(i + 1) * w].to_vec());
            }
        }
        let mut x = vec![0; n];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = data[i * w + n];
        }
        Solve::Solution(x)
    }

    /// Some X with A X = B.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let (m, n, k) = (self.rows, self.cols, b.cols);
        let aug = self.hstack(b);
        let mut data = aug.data;
        let w = n + k;
        let pivots = rref_in_place(&self.field, &mut data, m, w, n);
        for i in pivots.len()..m {
            if data[i * w + n..(i + 1) * w].iter().any(|&x| x != 0) {
                return None;
            }
        }
        let mut x = Matrix::zeros(&self.field, n, k);
        for (i, &p) in pivots.iter().enumerate() {
            x.row_mut(p).copy_from_slice(&data[i * w + n..(i + 1) * w]);
        }
        Some(x)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut r = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    pub fn eval_poly(&self, p: &[Fe]) -> Matrix {
        let n = self.rows;
        let mut acc = Matrix::zeros(&self.field, n, n);
        for &c in p.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.data[i * n + i] ^= c;
            }
        }
        acc
    }

    /// Minimal polynomial, monic, as lcm of local minimal polynomials of basis vectors.
    pub fn min_poly(&self) -> Poly {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut result: Poly = vec![1];
        let mut invariant = Echelon::new(f, n, false);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if invariant.contains(&e) {
                continue;
            }
            let mut krylov = Echelon::new(f, n, true);
            let mut v = e;
            let local = loop {
                match krylov.insert_tracked(&v) {
                    Tracked::New => {
                        invariant.insert(&v);
                        v = self.mul_vec(&v);
                    }
                    Tracked::Dependent(c) => {
                        let mut p: Poly = c;
                        p.push(1);
                        break p;
                    }
                }
            };
            let g = poly::gcd(f, &result, &local);
            result = poly::mul(f, &result, &poly::divrem(f, &local, &g).0);
            result = poly::monic(f, &result);
        }
        result
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        let mut p = self.clone();
        let mut k = 1;
        while k < self.rows {
            p = p.mul(&p);
            k *= 2;
        }
        p.is_zero()
    }

    /// Kronecker product.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(f, self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        m.set(i * b.rows + k, j * b.cols + l, f.mul(a, b.get(k, l)));
                    }
                }
            }
        }
        m
    }

    /// Entries mapped through a field embedding table.
    pub fn embed(&self, big: &Field, table: &[Fe]) -> Matrix {
        let data = self.data.iter().map(|&x| table[x as usize]).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: big.clone() }
    }
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vec<Fe>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r.get(i, free);
        }
        out.push(v);
    }
    out
}

/// Result of a tracked insertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tracked {
    New,
    /// coefficients over the previously inserted independent vectors
    Dependent(Vec<Fe>),
}

/// Incremental semi-echelon basis. Optionally tracks how each echelon row
/// combines the inserted vectors.
#[derive(Clone)]
pub struct Echelon {
    field: Field,
    n: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<Fe>>>,
}

impl Echelon {
    pub fn new(f: &Field, n: usize, track: bool) -> Echelon {
        Echelon { field: f.clone(), n, rows: Vec::new(), pivots: Vec::new(), track: track.then(Vec::new) }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        v
    }

    pub fn reduce_in_place(&self, v: &mut [Fe]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                self.field.axpy(v, row, c);
            }
        }
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds v; returns whether it was independent.
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        matches!(self.insert_tracked(v), Tracked::New)
    }

    pub fn insert_tracked(&mut self, v: &[Fe]) -> Tracked {
        assert_eq!(v.len(), self.n);
        let f = self.field.clone();
        let mut w = v.to_vec();
        let k = self.rows.len();
        let mut comb = self.track.as_ref().map(|_| vec![0 as Fe; k + 1]);
        for (idx, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = w[p];
            if c != 0 {
                f.axpy(&mut w, row, c);
                if let (Some(comb), Some(t)) = (comb.as_mut(), self.track.as_ref()) {
                    f.axpy(&mut comb[..t[idx].len()], &t[idx], c);
                }
            }
        }
        match w.iter().position(|&x| x != 0) {
            None => {
                let mut c = comb.unwrap_or_default();
                c.truncate(k);
                Tracked::Dependent(c)
            }
            Some(p) => {
                let inv = f.inv(w[p]);
                f.scale(&mut w, inv);
                if let (Some(mut comb), Some(t)) = (comb, self.track.as_mut()) {
                    comb[k] ^= 1;
                    f.scale(&mut comb, inv);
                    t.push(comb);
                }
                self.rows.push(w);
                self.pivots.push(p);
                Tracked::New
            }
        }
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace::from_rows(&self.field, self.n, &self.rows)
    }
}

/// Subspace of k^n given by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(f: &Field, n: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(f, 0, n), pivots: Vec::new() }
    }

    pub fn full(f: &Field, n: usize) -> Subspace {
        Subspace { basis: Matrix::identity(f, n), pivots: (0..n).collect() }
    }

    pub fn from_rows(f: &Field, n: usize, rows: &[Vec<Fe>]) -> Subspace {
        Subspace::from_matrix(&Matrix::from_rows(f, n, rows))
    }

    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols
    }
    /// Basis vectors as rows.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn basis_vecs(&self) -> Vec<Vec<Fe>> {
        self.basis.row_vecs()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                self.basis.field().axpy(&mut v, self.basis.row(i), c);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates in the RREF basis, if v lies in the subspace.
    pub fn coords(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Coordinates without the membership check.
    pub fn coords_unchecked(&self, v: &[Fe]) -> Vec<Fe> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_matrix(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        let stacked = self.basis.vstack(&other.basis);
        let rels = stacked.left_kernel();
        let vecs: Vec<Vec<Fe>> = rels.iter().map(|y| self.basis.vec_mul(&y[..self.dim()])).collect();
        Subspace::from_rows(f, self.ambient(), &vecs)
    }

    /// Standard basis vectors on the non-pivot columns; a canonical complement.
    pub fn complement(&self) -> Subspace {
        let n = self.ambient();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows: Vec<Vec<Fe>> = (0..n)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![0; n];
                v[c] = 1;
                v
            })
            .collect();
        Subspace::from_rows(self.field(), n, &rows)
    }

    /// Image of the subspace under a linear map (acting on columns).
    pub fn image(&self, a: &Matrix) -> Subspace {
        let rows: Vec<Vec<Fe>> = (0..self.dim()).map(|i| a.mul_vec(self.basis.row(i))).collect();
        Subspace::from_rows(self.field(), a.rows, &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(m: u32) -> Field {
        Field::new(m).unwrap()
    }

    fn rand_mat(f: &Field, r: usize, c: usize, seed: u64) -> Matrix {
        Matrix::random(f, r, c, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    // rank oracle over GF(2): count distinct vectors in the row span
    fn brute_rank_gf2(m: &Matrix) -> usize {
        let mut span = alloc::collections::BTreeSet::new();
        span.insert(vec![0u16; m.cols]);
        for i in 0..m.rows {
            let cur: Vec<Vec<u16>> = span.iter().cloned().collect();
            for v in cur {
                let w: Vec<u16> = v.iter().zip(m.row(i)).map(|(a, b)| a ^ b).collect();
                span.insert(w);
            }
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn rank_matches_span_count() {
        let f = gf(1);
        for seed in 0..30 {
            let m = rand_mat(&f, 5, 7, seed);
            assert_eq!(m.rank(), brute_rank_gf2(&m));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(4);
        let mut found = 0;
        for seed in 0..20 {
            let m = rand_mat(&f, 6, 6, seed);
            if let Some(inv) = m.inverse() {
                assert!(m.mul(&inv).is_identity());
                assert!(inv.mul(&m).is_identity());
                found += 1;
            } else {
                assert!(m.rank() < 6);
            }
        }
        assert!(found > 10);
    }

    #[test]
    fn inconsistent_system_certificate() {
        let f = gf(2);
        let a = Matrix::from_rows(&f, 2, &[vec![1, 2], vec![2, 3]]);
        // rows dependent: row2 = w * row1 (w*1 = 2, w*2 = 3)
        let b = vec![1, 1];
        match a.solve(&b) {
            Solve::Inconsistent(y) => {
                assert!(a.vec_mul(&y).iter().all(|&x| x == 0));
                assert_ne!(f.dot(&y, &b), 0);
            }
            Solve::Solution(_) => panic!("expected inconsistency"),
        }
    }

    #[test]
    fn min_poly_of_companion() {
        let f = gf(3);
        // companion matrix of x^3 + 5x + 2
        let mut c = Matrix::zeros(&f, 3, 3);
        c.set(1, 0, 1);
        c.set(2, 1, 1);
        c.set(0, 2, 2);
        c.set(1, 2, 5);
        assert_eq!(c.min_poly(), vec![2, 5, 0, 1]);
        assert!(c.eval_poly(&c.min_poly()).is_zero());
    }

    #[test]
    fn min_poly_block_diag_lcm() {
        let f = gf(2);
        let j = Matrix::from_rows(&f, 2, &[vec![1, 1], vec![0, 1]]);
        let d = Matrix::block_diag(&f, &[j.clone(), j, Matrix::identity(&f, 1)]);
        // (x+1)^2
        assert_eq!(d.min_poly(), vec![1, 0, 1]);
    }

    #[test]
    fn nilpotent_strictly_upper() {
        let f = gf(2);
        let mut m = rand_mat(&f, 6, 6, 3);
        for i in 0..6 {
            for j in 0..=i {
                m.set(i, j, 0);
            }
        }
        assert!(m.is_nilpotent());
        assert!(!Matrix::identity(&f, 3).is_nilpotent());
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated(seed in 0u64..500, r in 1usize..7, c in 1usize..7) {
            let f = gf(2);
            let m = rand_mat(&f, r, c, seed);
            let k = m.kernel();
            prop_assert_eq!(k.len() + m.rank(), c);
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_consistent(seed in 0u64..500) {
            let f = gf(3);
            let m = rand_mat(&f, 4, 6, seed);
            let x = rand_mat(&f, 6, 1, seed + 1).data;
            let b = m.mul_vec(&x);
            match m.solve(&b) {
                Solve::Solution(y) => prop_assert_eq!(m.mul_vec(&y), b),
                Solve::Inconsistent(_) => prop_assert!(false),
            }
        }

        #[test]
        fn intersection_dimension(seed in 0u64..300) {
            let f = gf(2);
            let a = Subspace::from_matrix(&rand_mat(&f, 3, 6, seed));
            let b = Subspace::from_matrix(&rand_mat(&f, 4, 6, seed + 7));
            let i = a.intersection(&b);
            prop_assert_eq!(a.dim() + b.dim(), a.sum(&b).dim() + i.dim());
            prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
        }

        #[test]
        fn echelon_tracking_reconstructs(seed in 0u64..300) {
            let f = gf(4);
            let vs = rand_mat(&f, 8, 5, seed).row_vecs();
            let mut e = Echelon::new(&f, 5, true);
            let mut basis: Vec<Vec<Fe>> = Vec::new();
            for v in &vs {
                match e.insert_tracked(v) {
                    Tracked::New => basis.push(v.clone()),
                    Tracked::Dependent(c) => {
                        let mut w = vec![0; 5];
                        for (ci, b) in c.iter().zip(&basis) { f.axpy(&mut w, b, *ci); }
                        prop_assert_eq!(&w, v);
                    }
                }
            }
        }
    }
}

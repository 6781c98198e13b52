//! Bit-packed matrices over GF(2).

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Fe;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, bits: vec![0; rows * words] }
    }

    /// Packs a matrix over GF(2).
    pub fn from_matrix(m: &Matrix) -> BitMatrix {
        assert_eq!(m.field().degree(), 1);
        let mut b = BitMatrix::zeros(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                if m.get(i, j) != 0 {
                    b.set(i, j, true);
                }
            }
        }
        b
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn xor_row(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for k in 0..self.words {
            self.bits.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Canonical kernel basis, same convention as the dense path.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0 as Fe; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m.get(i, free) as Fe;
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use proptest::prelude::*;
    use rand::SeedableRng;

    proptest! {
        #[test]
        fn packed_agrees_with_dense(seed in 0u64..400, r in 1usize..90, c in 1usize..140) {
            let f = Field::new(1).unwrap();
            let m = Matrix::random(&f, r, c, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let b = BitMatrix::from_matrix(&m);
            let (dense, pivots) = m.rref();
            prop_assert_eq!(b.rank(), dense.rows);
            let mut bb = b.clone();
            prop_assert_eq!(bb.rref(), pivots);
            prop_assert_eq!(b.kernel().len(), c - dense.rows);
            for v in b.kernel() {
                prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
            }
        }
    }
}

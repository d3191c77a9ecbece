use std::fmt;

use rand::Rng;

use super::bitvec::{words_for, BitVec, WORD_BITS};
use super::subspace::Subspace;
use crate::par;

/// Row updates fan out over threads only above this many payload words.
const PAR_ELIMINATION_WORDS: usize = 1 << 15;

/// Dense matrix over F2, rows packed into 64-bit words.
///
/// The payload holds `rows * ceil(cols / 64)` words; padding bits past `cols`
/// in each row are kept at zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            bits: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from `(row, col)` positions of its 1-entries. Repeated
    /// positions cancel.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize)>>(
        rows: usize,
        cols: usize,
        entries: I,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            m.flip(r, c);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            m.row_words_mut(i).copy_from_slice(row.words());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for i in col.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen::<bool>() {
                    m.set(r, c, true);
                }
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

    /// Raw packed payload, row-major.
    pub fn payload(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        (self.bits[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        let w = &mut self.bits[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) out of range");
        self.bits[r * self.stride + c / WORD_BITS] ^= 1u64 << (c % WORD_BITS);
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Positions of 1-entries in row-major order.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|r| self.row(r).ones().map(move |c| (r, c)).collect::<Vec<_>>())
            .collect()
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let mut acc = vec![0u64; rhs.stride];
            for k in self.row(r).ones() {
                for (a, b) in acc.iter_mut().zip(rhs.row_words(k)) {
                    *a ^= *b;
                }
            }
            out.row_words_mut(r).copy_from_slice(&acc);
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn add(&self, rhs: &F2Matrix) -> F2Matrix {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn add_assign(&mut self, rhs: &F2Matrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        for (a, b) in self.bits.iter_mut().zip(&rhs.bits) {
            *a ^= *b;
        }
    }

    /// Rows `rows` and columns `cols` selected by index, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    /// Contiguous block starting at `(row0, col0)`.
    pub fn block(&self, row0: usize, rows: usize, col0: usize, cols: usize) -> F2Matrix {
        let rs: Vec<usize> = (row0..row0 + rows).collect();
        let cs: Vec<usize> = (col0..col0 + cols).collect();
        self.select(&rs, &cs)
    }

    /// Xors `block` into this matrix with its top-left corner at `(row0, col0)`.
    pub fn xor_block(&mut self, row0: usize, col0: usize, block: &F2Matrix) {
        for (r, c) in block.entries() {
            self.flip(row0 + r, col0 + c);
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = F2Matrix::zeros(self.rows, self.cols + rhs.cols);
        out.xor_block(0, 0, self);
        out.xor_block(0, self.cols, rhs);
        out
    }

    /// Gauss-Jordan elimination in place, choosing pivots only among the first
    /// `pivot_limit` columns. Returns the pivot column of each of the leading
    /// `rank` rows. Pivots are always the topmost available row, so the result
    /// is deterministic.
    pub(crate) fn rref_in_place(&mut self, pivot_limit: usize) -> Vec<usize> {
        assert!(pivot_limit <= self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        let parallel = par::is_parallel() && self.bits.len() >= PAR_ELIMINATION_WORDS;
        for c in 0..pivot_limit {
            if r == self.rows {
                break;
            }
            let Some(found) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            if found != r {
                for w in 0..self.stride {
                    self.bits.swap(found * self.stride + w, r * self.stride + w);
                }
            }
            // Rows at or below `r` are zero left of `c`, so the pivot row is too.
            let w0 = c / WORD_BITS;
            let mask = 1u64 << (c % WORD_BITS);
            let pivot: Vec<u64> = self.row_words(r)[w0..].to_vec();
            let stride = self.stride;
            let update = |i: usize, row: &mut [u64]| {
                if i != r && row[w0] & mask != 0 {
                    for (a, b) in row[w0..].iter_mut().zip(&pivot) {
                        *a ^= *b;
                    }
                }
            };
            if parallel {
                par::for_each_row_mut(&mut self.bits, stride, update);
            } else {
                self.bits
                    .chunks_mut(stride)
                    .enumerate()
                    .for_each(|(i, row)| update(i, row));
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref_in_place(self.cols).len()
    }

    /// Null space `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<BitVec> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate() {
                    if rref.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.cols, basis)
    }

    /// Column span.
    pub fn image(&self) -> Subspace {
        let t = self.transpose();
        Subspace::span(self.rows, (0..t.rows).map(|r| t.row(r)))
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let mut aug = self.hstack(&F2Matrix::from_columns(self.rows, std::slice::from_ref(b)));
        let pivots = aug.rref_in_place(self.cols);
        if (pivots.len()..self.rows).any(|i| aug.get(i, self.cols)) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            if aug.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<F2Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = self.hstack(&F2Matrix::identity(n));
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Rank by brute force: size of the row span, enumerated.
    fn rank_by_span(m: &F2Matrix) -> usize {
        let mut seen = std::collections::HashSet::new();
        for mask in 0u32..(1 << m.rows()) {
            let mut v = BitVec::zeros(m.cols());
            for r in 0..m.rows() {
                if mask >> r & 1 == 1 {
                    v.xor_assign(&m.row(r));
                }
            }
            seen.insert(v);
        }
        seen.len().trailing_zeros() as usize
    }

    #[test]
    fn identity_and_all_ones_rank() {
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        let ones = F2Matrix::from_entries(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(ones.rank(), 1);
    }

    #[test]
    fn rank_matches_span_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = F2Matrix::random(rng.gen_range(1..9), rng.gen_range(1..80), &mut rng);
            assert_eq!(m.rank(), rank_by_span(&m));
        }
    }

    #[test]
    fn random_64_rank_equals_transpose_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(64);
        let m = F2Matrix::random(64, 64, &mut rng);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn zero_and_identity_kernels() {
        assert_eq!(F2Matrix::zeros(2, 4).kernel().dim(), 4);
        assert_eq!(F2Matrix::identity(3).kernel().dim(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let m = F2Matrix::random(rng.gen_range(1..20), rng.gen_range(1..90), &mut rng);
            let k = m.kernel();
            assert_eq!(k.dim() + m.rank(), m.cols());
            for v in k.basis() {
                assert!(m.mul_vec(v).is_zero());
            }
        }
    }

    #[test]
    fn images() {
        assert_eq!(F2Matrix::zeros(3, 3).image().dim(), 0);
        assert_eq!(F2Matrix::identity(5).image(), Subspace::full(5));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = F2Matrix::random(17, 9, &mut rng);
        let im = m.image();
        assert_eq!(im.dim(), m.rank());
        for j in 0..m.cols() {
            assert!(im.contains(&m.mul_vec(&BitVec::unit(9, j))));
        }
    }

    #[test]
    fn solve_cases() {
        let b = BitVec::from_indices(4, [0, 3]);
        assert_eq!(F2Matrix::identity(4).solve(&b), Some(b.clone()));
        assert_eq!(F2Matrix::zeros(4, 4).solve(&b), None);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let m = F2Matrix::random(rng.gen_range(1..40), rng.gen_range(1..40), &mut rng);
            let x0 = BitVec::from_bools(&(0..m.cols()).map(|_| rng.gen()).collect::<Vec<_>>());
            let b = m.mul_vec(&x0);
            let x = m.solve(&b).expect("constructed system is solvable");
            assert_eq!(m.mul_vec(&x), b);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut found = 0;
        while found < 10 {
            let m = F2Matrix::random(12, 12, &mut rng);
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv), F2Matrix::identity(12));
                found += 1;
            } else {
                assert!(m.rank() < 12);
            }
        }
    }

    #[test]
    fn large_elimination_agrees_with_small_path() {
        // 1800 x 1200 crosses the threaded row-update threshold.
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = F2Matrix::random(1800, 700, &mut rng);
        let b = F2Matrix::random(700, 1200, &mut rng);
        let m = a.mul(&b);
        assert!(m.payload().len() >= PAR_ELIMINATION_WORDS);
        let rank = m.rank();
        assert_eq!(rank, m.transpose().rank());
        assert!(rank <= 700);
    }
}

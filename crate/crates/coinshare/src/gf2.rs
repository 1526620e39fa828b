//! Dense linear algebra over GF(2).
//!
//! Everything downstream reduces to a handful of operations on bit matrices:
//! rank, reduced row echelon form, solving `Ax = y`, testing whether a vector
//! lies in a row space (and naming the witness rows), and nullspace bases.
//! Rows are packed 64 bits per word, least significant bit first, and every
//! row operation works on whole words.

use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A fixed-length vector over GF(2).
///
/// Unused high bits of the last word are kept at zero, so equality and
/// `is_zero` can compare words directly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones exactly at `positions`.
    pub fn from_ones(len: usize, positions: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(len);
        for &i in positions {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    ///
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A dense matrix over GF(2), rows packed as words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    row_words: usize,
    data: Vec<u64>,
}

/// Result of [`BitMatrix::row_reduce`]: `row_ops * original = reduced`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: BitMatrix,
    pub pivot_cols: Vec<usize>,
    pub row_ops: BitMatrix,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        let row_words = words_for(cols);
        BitMatrix {
            rows,
            cols,
            row_words,
            data: vec![0; rows * row_words],
        }
    }

    pub fn identity(n: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks equal-length rows into a matrix of width `cols`.
    ///
    /// # Panics
    ///
    /// Panics if a row's length differs from `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {r} has the wrong length");
            let base = r * m.row_words;
            m.data[base..base + m.row_words].copy_from_slice(row.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.data[r * self.row_words + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let mask = 1u64 << (c % WORD_BITS);
        let word = &mut self.data[r * self.row_words + c / WORD_BITS];
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        let base = r * self.row_words;
        BitVec {
            len: self.cols,
            words: self.data[base..base + self.row_words].to_vec(),
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let (s, d) = (src * self.row_words, dst * self.row_words);
        for i in 0..self.row_words {
            let w = self.data[s + i];
            self.data[d + i] ^= w;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a * self.row_words, b * self.row_words);
        for i in 0..self.row_words {
            self.data.swap(a + i, b + i);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// # Panics
    ///
    /// Panics unless `self.cols == rhs.rows`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in multiply");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_base = r * out.row_words;
            for j in 0..self.cols {
                if self.get(r, j) {
                    let rhs_base = j * rhs.row_words;
                    for w in 0..rhs.row_words {
                        out.data[out_base + w] ^= rhs.data[rhs_base + w];
                    }
                }
            }
        }
        out
    }

    /// # Panics
    ///
    /// Panics unless `v.len() == self.cols`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in multiply");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let base = r * self.row_words;
            let mut acc = 0u64;
            for (w, vw) in self.data[base..base + self.row_words].iter().zip(v.words()) {
                acc ^= w & vw;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Reduced row echelon form together with the matrix of row operations,
    /// so that `row_ops * self == reduced`. Pivot columns are ascending and
    /// pivot row `i` carries pivot column `pivot_cols[i]`.
    pub fn row_reduce(&self) -> Reduction {
        let mut reduced = self.clone();
        let mut row_ops = BitMatrix::identity(self.rows);
        let mut pivot_cols = Vec::new();
        let mut next_row = 0;
        for c in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let Some(pivot_row) = (next_row..self.rows).find(|&r| reduced.get(r, c)) else {
                continue;
            };
            reduced.swap_rows(next_row, pivot_row);
            row_ops.swap_rows(next_row, pivot_row);
            for r in 0..self.rows {
                if r != next_row && reduced.get(r, c) {
                    reduced.xor_row_into(next_row, r);
                    row_ops.xor_row_into(next_row, r);
                }
            }
            pivot_cols.push(c);
            next_row += 1;
        }
        Reduction {
            reduced,
            pivot_cols,
            row_ops,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().pivot_cols.len()
    }

    /// Solves `self * x = y`, fixing free variables to zero.
    ///
    /// Returns `None` when the system is inconsistent.
    pub fn solve(&self, y: &BitVec) -> Option<BitVec> {
        assert_eq!(y.len(), self.rows, "right-hand side has the wrong length");
        let Reduction {
            pivot_cols,
            row_ops,
            ..
        } = self.row_reduce();
        let yt = row_ops.mul_vec(y);
        for r in pivot_cols.len()..self.rows {
            if yt.get(r) {
                return None;
            }
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in pivot_cols.iter().enumerate() {
            if yt.get(r) {
                x.set(c, true);
            }
        }
        Some(x)
    }

    /// Tests whether `v` is a GF(2) combination of this matrix's rows.
    ///
    /// On success returns the witness row indices (ascending): XORing
    /// exactly those rows of `self` yields `v`. The witness comes from
    /// echelon back-substitution and is not guaranteed minimal.
    pub fn in_row_space(&self, v: &BitVec) -> Option<Vec<usize>> {
        assert_eq!(v.len(), self.cols, "vector has the wrong length");
        let Reduction {
            reduced,
            pivot_cols,
            row_ops,
        } = self.row_reduce();
        let mut acc = v.clone();
        let mut combination = BitVec::zeros(self.rows);
        for (r, &c) in pivot_cols.iter().enumerate() {
            if acc.get(c) {
                acc.xor_assign(&reduced.row(r));
                combination.xor_assign(&row_ops.row(r));
            }
        }
        if acc.is_zero() {
            Some(combination.ones().collect())
        } else {
            None
        }
    }

    /// A basis of `{x : self * x = 0}` with `cols - rank` vectors, one per
    /// free column, ascending.
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        let Reduction {
            reduced,
            pivot_cols,
            ..
        } = self.row_reduce();
        let mut basis = Vec::with_capacity(self.cols - pivot_cols.len());
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivot_cols.len() && pivot_cols[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivot_cols.iter().enumerate() {
                if reduced.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// An incremental echelon basis for growing row spaces one vector at a time.
///
/// Used where a matrix is scanned greedily and only independence or
/// membership matters, not witness rows.
pub struct Basis {
    cols: usize,
    // Sorted by pivot column; each row's pivot bit is the lowest set bit.
    rows: Vec<(usize, BitVec)>,
}

impl Basis {
    pub fn new(cols: usize) -> Basis {
        Basis { cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BitVec) -> BitVec {
        let mut acc = v.clone();
        for (pivot, row) in &self.rows {
            if acc.get(*pivot) {
                acc.xor_assign(row);
            }
        }
        acc
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols, "vector has the wrong length");
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanned space. Returns `false` (and leaves the basis
    /// unchanged) when `v` is already in the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols, "vector has the wrong length");
        let reduced = self.reduce(v);
        let Some(pivot) = reduced.ones().next() else {
            return false;
        };
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, reduced));
        true
    }
}

//! Dense binary linear algebra.
//!
//! Matrices are stored row-major with each row packed into `u64` words, least
//! significant bit first. Everything here works over GF(2): addition is XOR
//! and multiplication is AND.

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the dimension of any enumerated subspace (`2^25` vectors).
pub const DEFAULT_MAX_DIM: usize = 25;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// A packed binary vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = BitVec::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones at the given positions.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVec { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Indices of the nonzero positions, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    pub fn as_words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One line of `0`/`1` per row, separated by newlines.
impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Dense binary matrix, row-major and bit-packed.
///
/// Zero-row matrices are allowed (an empty nullspace basis is one); the column
/// count is always at least one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    /// All-zero matrix.
    ///
    /// # Panics
    ///
    /// Panics if `cols == 0`.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols >= 1, "a matrix needs at least one column");
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Stacks equal-length vectors as rows.
    ///
    /// # Panics
    ///
    /// Panics if the rows disagree in length or `cols == 0`.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            m.row_words_mut(i).copy_from_slice(r.as_words());
        }
        m
    }

    /// Parses rows written as strings of `0`/`1`; intended for tests and
    /// literals, panics on anything else.
    pub fn from_strs(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged literal");
            for (j, c) in r.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => panic!("unexpected character {other:?} in matrix literal"),
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn row_vecs(&self) -> Vec<BitVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_bools((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn row_weight(&self, i: usize) -> usize {
        popcount(self.row_words(i))
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// Row indices whose support contains column `j`.
    pub fn rows_containing(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j)).collect()
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        xor_into(a, b);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        assert!(self.rows >= 1, "cannot transpose a zero-row matrix");
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in BitVec::from_words(self.cols, self.row_words(i).to_vec()).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Syndrome `H·vᵀ`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        BitVec::from_bools((0..self.rows).map(|i| {
            self.row_words(i)
                .iter()
                .zip(v.as_words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 1
        }))
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = other.row_words(k).to_vec();
                    xor_into(out.row_words_mut(i), &src);
                }
            }
        }
        out
    }

    /// Keeps the listed columns, in the given order.
    ///
    /// # Panics
    ///
    /// Panics if `columns` is empty.
    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (nj, &j) in columns.iter().enumerate() {
                if self.get(i, j) {
                    out.set(i, nj, true);
                }
            }
        }
        out
    }

    /// Reduced row-echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&i| m.get(i, col)) else {
                continue;
            };
            m.swap_rows(p, next);
            for i in 0..m.rows {
                if i != next && m.get(i, col) {
                    m.xor_rows(i, next);
                }
            }
            pivots.push(col);
            next += 1;
        }
        Echelon { reduced: m, pivots }
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : H·vᵀ = 0}` as the rows of a `(cols − rank) × cols`
    /// matrix, one row per non-pivot column in ascending order.
    pub fn nullspace_basis(&self) -> BitMatrix {
        self.echelon().nullspace_basis()
    }

    /// The nonzero rows of the reduced echelon form: a basis of the row space.
    pub fn row_space_basis(&self) -> BitMatrix {
        let e = self.echelon();
        let r = e.pivots.len();
        let mut out = BitMatrix::zeros(r, self.cols);
        for i in 0..r {
            out.row_words_mut(i).copy_from_slice(e.reduced.row_words(i));
        }
        out
    }

    /// Solves `A·x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                aug.set(i, j, true);
            }
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (i, &p) in e.pivots.iter().enumerate() {
            if e.reduced.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                if !self.get(ia, ja) {
                    continue;
                }
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        if other.get(ib, jb) {
                            out.set(ia * other.rows + ib, ja * other.cols + jb, true);
                        }
                    }
                }
            }
        }
        out
    }

    /// Assembles `[[a, b], [c, d]]`; blocks in a row share a row count and
    /// blocks in a column share a column count.
    pub fn from_blocks(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, d: &BitMatrix) -> BitMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = BitMatrix::zeros(a.rows + c.rows, a.cols + b.cols);
        let place = |out: &mut BitMatrix, blk: &BitMatrix, r0: usize, c0: usize| {
            for i in 0..blk.rows {
                for j in blk.row(i).iter_ones() {
                    out.set(r0 + i, c0 + j, true);
                }
            }
        };
        place(&mut out, a, 0, 0);
        place(&mut out, b, 0, a.cols);
        place(&mut out, c, a.rows, 0);
        place(&mut out, d, a.rows, a.cols);
        out
    }

    /// Code dimension `cols − rank` of the code with this parity-check matrix.
    pub fn code_dimension(&self) -> usize {
        self.cols - self.rank()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: BitMatrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn nullspace_basis(&self) -> BitMatrix {
        let n = self.reduced.cols;
        let free = self.free_columns();
        let mut out = BitMatrix::zeros(free.len(), n);
        for (b, &f) in free.iter().enumerate() {
            out.set(b, f, true);
            for (i, &p) in self.pivots.iter().enumerate() {
                if self.reduced.get(i, f) {
                    out.set(b, p, true);
                }
            }
        }
        out
    }
}

/// All codewords of a linear code, in lexicographic order of the information
/// vector over the nullspace basis (first basis row most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordSet {
    pub length: usize,
    pub words: Vec<BitVec>,
}

impl CodewordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &BitVec) -> bool {
        self.words.contains(w)
    }
}

/// Minimum distance of a linear code; the zero code has no nonzero word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        Err(Error::DimensionTooLarge { dim, cap })
    } else {
        Ok(())
    }
}

/// Lists every codeword of the code with parity-check matrix `h`.
pub fn enumerate_codewords(h: &BitMatrix, max_dim: usize) -> Result<CodewordSet> {
    let basis = h.nullspace_basis();
    span(&basis, max_dim)
}

/// Every linear combination of the rows of `basis`, ordered by the
/// coefficient vector read as a binary number (row 0 most significant).
pub fn span(basis: &BitMatrix, max_dim: usize) -> Result<CodewordSet> {
    let k = basis.rows();
    check_cap(k, max_dim)?;
    let n = basis.cols();
    let stride = words_for(n);
    let mut words = Vec::with_capacity(1usize << k);
    for m in 0u64..(1u64 << k) {
        let mut w = vec![0u64; stride];
        for j in 0..k {
            if (m >> (k - 1 - j)) & 1 == 1 {
                xor_into(&mut w, basis.row_words(j));
            }
        }
        words.push(BitVec::from_words(n, w));
    }
    Ok(CodewordSet { length: n, words })
}

/// Visits every nonzero vector of the row space of `basis` in Gray-code
/// order. The visitor returns `false` to stop early.
pub(crate) fn for_each_nonzero_combination<F>(basis: &BitMatrix, max_dim: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[u64]) -> bool,
{
    let k = basis.rows();
    check_cap(k, max_dim)?;
    let mut cur = vec![0u64; words_for(basis.cols())];
    for m in 1u64..(1u64 << k) {
        let bit = m.trailing_zeros() as usize;
        xor_into(&mut cur, basis.row_words(bit));
        if !visit(&cur) {
            break;
        }
    }
    Ok(())
}

/// A weight every nonzero codeword must reach, from the columns alone:
/// 1 if some column is zero, 2 if columns repeat, otherwise 3.
fn column_lower_bound(h: &BitMatrix) -> usize {
    if h.rows() == 0 {
        return 1;
    }
    let cols: Vec<BitVec> = (0..h.cols()).map(|j| h.column(j)).collect();
    if cols.iter().any(BitVec::is_zero) {
        return 1;
    }
    let mut sorted = cols;
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        2
    } else {
        3
    }
}

/// Minimum distance by exhaustive enumeration, with the default cap.
pub fn min_distance(h: &BitMatrix) -> Result<Distance> {
    min_distance_capped(h, DEFAULT_MAX_DIM)
}

/// Minimum nonzero codeword weight by walking the whole code.
///
/// The walk stops early only once a word meets the weight every codeword is
/// known to reach, so the answer is always the true minimum.
pub fn min_distance_capped(h: &BitMatrix, max_dim: usize) -> Result<Distance> {
    let basis = h.nullspace_basis();
    if basis.rows() == 0 {
        return Ok(Distance::Infinite);
    }
    check_cap(basis.rows(), max_dim)?;
    let floor = column_lower_bound(h);
    let mut best = usize::MAX;
    for_each_nonzero_combination(&basis, max_dim, |w| {
        best = best.min(popcount(w));
        best > floor
    })?;
    Ok(Distance::Finite(best))
}

/// Free function form of [`BitMatrix::rank`].
pub fn rank(h: &BitMatrix) -> usize {
    h.rank()
}

/// Free function form of [`BitMatrix::nullspace_basis`].
pub fn nullspace_basis(h: &BitMatrix) -> BitMatrix {
    h.nullspace_basis()
}

/// Free function form of [`BitMatrix::kronecker`].
pub fn kronecker(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    a.kronecker(b)
}

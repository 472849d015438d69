//! Bit-packed linear algebra over the two-element field.
//!
//! Vectors pack 64 entries per `u64` word. Every elimination routine pivots on
//! the lowest available column index, so bases, kernels and particular
//! solutions are reproducible bit for bit across runs.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

const WORD: usize = 64;

fn word_count(dim: usize) -> usize {
    dim.div_ceil(WORD)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid bit character {0:?}; expected '0' or '1'")]
    InvalidBit(char),
    #[error("ragged matrix: row {row} has {found} columns, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("matrix is singular")]
    Singular,
}

// ============================================================================
// BitVec
// ============================================================================

/// A vector over F₂ of fixed dimension.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    dim: usize,
}

impl BitVec {
    #[must_use]
    pub fn zeros(dim: usize) -> Self {
        Self {
            words: vec![0; word_count(dim)],
            dim,
        }
    }

    /// The standard basis vector `e_i`.
    #[must_use]
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.set(i, true);
        v
    }

    #[must_use]
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from the indices of its nonzero entries.
    ///
    /// # Panics
    /// Panics if an index is out of range.
    #[must_use]
    pub fn from_ones(dim: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(dim);
        for i in ones {
            v.flip(i);
        }
        v
    }

    /// Low `dim` bits of `mask`, bit `i` of the mask becoming entry `i`.
    ///
    /// # Panics
    /// Panics if `dim > 64`.
    #[must_use]
    pub fn from_mask(dim: usize, mask: u64) -> Self {
        assert!(dim <= WORD, "from_mask supports at most 64 entries");
        let mut v = Self::zeros(dim);
        if dim > 0 {
            let keep = if dim == WORD { u64::MAX } else { (1u64 << dim) - 1 };
            v.words[0] = mask & keep;
        }
        v
    }

    /// The entries as a mask; only valid for `dim <= 64`.
    ///
    /// # Panics
    /// Panics if `dim > 64`.
    #[must_use]
    pub fn to_mask(&self) -> u64 {
        assert!(self.dim <= WORD, "to_mask supports at most 64 entries");
        self.words.first().copied().unwrap_or(0)
    }

    #[must_use]
    pub const fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "index {i} out of range (dim={})", self.dim);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim, "index {i} out of range (dim={})", self.dim);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.dim, "index {i} out of range (dim={})", self.dim);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest index with a nonzero entry.
    #[must_use]
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of nonzero entries in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(k * WORD + bit)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim, "xor of vectors with different dims");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// The standard dot product `Σ aᵢbᵢ` over F₂.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.dim, other.dim, "dot of vectors with different dims");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Copy with the dimension changed: truncated, or zero-padded at the end.
    #[must_use]
    pub fn resized(&self, dim: usize) -> Self {
        let mut v = Self::zeros(dim);
        for i in self.ones().take_while(|&i| i < dim) {
            v.set(i, true);
        }
        v
    }

    /// Concatenation `(self | other)`.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.resized(self.dim + other.dim);
        for i in other.ones() {
            v.set(self.dim + i, true);
        }
        v
    }

    /// Entries at the given positions, in that order.
    #[must_use]
    pub fn select(&self, positions: &[usize]) -> Self {
        let mut v = Self::zeros(positions.len());
        for (k, &p) in positions.iter().enumerate() {
            if self.get(p) {
                v.set(k, true);
            }
        }
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.dim).map(|i| self.get(i))
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

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(\"{self}\")")
    }
}

impl FromStr for BitVec {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Gf2Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bools(&bits))
    }
}

impl Serialize for BitVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&BitVec> for BitVec {
    fn add_assign(&mut self, rhs: &BitVec) {
        self.xor_assign(rhs);
    }
}

impl Add<&BitVec> for &BitVec {
    type Output = BitVec;

    fn add(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add<&BitVec> for BitVec {
    type Output = BitVec;

    fn add(mut self, rhs: &BitVec) -> BitVec {
        self.xor_assign(rhs);
        self
    }
}

// ============================================================================
// BitMat
// ============================================================================

/// A dense row-major matrix over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Output of [`BitMat::row_reduce`]: `transform · m = rref`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: BitMat,
    pub pivots: Vec<usize>,
    pub transform: BitMat,
}

impl RowReduction {
    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl BitMat {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
            cols: n,
        }
    }

    /// Builds a matrix from rows; all rows must share `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        for (row, r) in rows.iter().enumerate() {
            if r.dim() != cols {
                return Err(Gf2Error::RaggedRows {
                    row,
                    expected: cols,
                    found: r.dim(),
                });
            }
        }
        Ok(Self { rows, cols })
    }

    /// The matrix whose columns are the given vectors, each of dimension `rows`.
    pub fn from_cols(rows: usize, cols: &[BitVec]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.dim() != rows {
                return Err(Gf2Error::DimensionMismatch {
                    expected: rows,
                    found: c.dim(),
                });
            }
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    /// Parses rows of `0`/`1` characters, e.g. `["010", "101", "010"]`.
    pub fn from_bitstrings<S: AsRef<str>>(rows: &[S]) -> Result<Self, Gf2Error> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().parse::<BitVec>())
            .collect::<Result<Vec<_>, _>>()?;
        let cols = parsed.first().map_or(0, BitVec::dim);
        Self::from_rows(cols, parsed)
    }

    #[must_use]
    pub fn to_bitstrings(&self) -> Vec<String> {
        self.rows.iter().map(ToString::to_string).collect()
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub const fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn col(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    #[must_use]
    pub fn col_vectors(&self) -> Vec<BitVec> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    #[must_use]
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `m · v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.dim() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, Gf2Error> {
        if other.rows.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows.len(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(Self {
            rows,
            cols: other.cols,
        })
    }

    /// The bilinear form `uᵀ · self · v`.
    pub fn bilinear(&self, u: &BitVec, v: &BitVec) -> Result<bool, Gf2Error> {
        if u.dim() != self.rows.len() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows.len(),
                found: u.dim(),
            });
        }
        Ok(u.dot(&self.mul_vec(v)?))
    }

    /// `aᵀ · self · a`, the Gram matrix pulled back along `a`.
    pub fn congruence(&self, a: &Self) -> Result<Self, Gf2Error> {
        a.transpose().mul(&self.mul(a)?)
    }

    #[must_use]
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows(), self.cols),
            (other.rows(), other.cols),
            "matrix sum shape mismatch"
        );
        Self {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a + b).collect(),
            cols: self.cols,
        }
    }

    /// Reduced row-echelon form with the lowest-index pivot rule.
    #[must_use]
    pub fn row_reduce(&self) -> RowReduction {
        let n = self.rows.len();
        let mut rref = self.clone();
        let mut transform = Self::identity(n);
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == n {
                break;
            }
            let Some(found) = (next..n).find(|&r| rref.rows[r].get(col)) else {
                continue;
            };
            rref.rows.swap(next, found);
            transform.rows.swap(next, found);
            for r in 0..n {
                if r != next && rref.rows[r].get(col) {
                    let (pivot_row, pivot_t) = (rref.rows[next].clone(), transform.rows[next].clone());
                    rref.rows[r].xor_assign(&pivot_row);
                    transform.rows[r].xor_assign(&pivot_t);
                }
            }
            pivots.push(col);
            next += 1;
        }
        RowReduction {
            rref,
            pivots,
            transform,
        }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        // Echelon form without tracking the transform.
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot = rows[rank].clone();
            for r in rows.iter_mut().skip(rank + 1) {
                if r.get(col) {
                    r.xor_assign(&pivot);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// A basis of `{v : m·v = 0}`: one vector per free column, in increasing
    /// column order, with that free column set to 1.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let red = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (r, &p) in red.pivots.iter().enumerate() {
                    if red.rref.rows[r].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Particular solution of `m·x = b` with every free variable 0, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>, Gf2Error> {
        if b.dim() != self.rows.len() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows.len(),
                found: b.dim(),
            });
        }
        let red = self.row_reduce();
        let tb = red.transform.mul_vec(b)?;
        if (red.rank()..self.rows.len()).any(|r| tb.get(r)) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in red.pivots.iter().enumerate() {
            if tb.get(r) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows.len(),
                found: self.cols,
            });
        }
        let red = self.row_reduce();
        if red.rank() != self.cols {
            return Err(Gf2Error::Singular);
        }
        Ok(red.transform)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, Gf2Error> {
        if other.cols != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            rows,
            cols: self.cols,
        })
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter().map(ToString::to_string)).finish()
    }
}

impl fmt::Display for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Rank of the span of a list of vectors.
#[must_use]
pub fn span_rank(vectors: &[BitVec]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => BitMat {
            rows: vectors.to_vec(),
            cols: v.dim(),
        }
        .rank(),
    }
}

/// Echelon basis of the span of `vectors` (the nonzero rows of the RREF).
#[must_use]
pub fn span_basis(dim: usize, vectors: &[BitVec]) -> Vec<BitVec> {
    let m = BitMat {
        rows: vectors.to_vec(),
        cols: dim,
    };
    let red = m.row_reduce();
    red.rref.rows.into_iter().take(red.pivots.len()).collect()
}

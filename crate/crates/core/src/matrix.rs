//! Dense matrices over GF(2) with at most 64 rows.
//!
//! Columns are stored as `u64` words (bit `k` is row `k`), which is the
//! natural layout for syndrome work: a syndrome is a column vector and a
//! window combination is an XOR of columns.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub const MAX_ROWS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows > MAX_ROWS {
            return Err(Error::DegreeTooLarge(rows, MAX_ROWS));
        }
        Ok(Self { rows, cols: vec![0; cols] })
    }

    pub fn from_columns(rows: usize, cols: Vec<u64>) -> Result<Self> {
        if rows > MAX_ROWS {
            return Err(Error::DegreeTooLarge(rows, MAX_ROWS));
        }
        let mask = row_mask(rows);
        if cols.iter().any(|&c| c & !mask != 0) {
            return Err(Error::InvalidArgument("column has bits beyond the row count".into()));
        }
        Ok(Self { rows, cols })
    }

    /// Builds a matrix from row-major 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let r = rows.len();
        let n = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        let mut m = Self::zeros(r, n)?;
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.cols[j] |= 1u64 << i,
                    _ => return Err(Error::InvalidArgument(format!("entry {v} is not a bit"))),
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> u64 {
        self.cols[j]
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.cols[j] >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.cols[j] |= 1u64 << i;
        } else {
            self.cols[j] &= !(1u64 << i);
        }
    }

    /// Row `i` packed little-endian by column index into 64-bit words.
    pub fn row_words(&self, i: usize) -> Vec<u64> {
        let mut words = vec![0u64; self.cols().div_ceil(64)];
        for (j, &c) in self.cols.iter().enumerate() {
            if (c >> i) & 1 == 1 {
                words[j / 64] |= 1u64 << (j % 64);
            }
        }
        words
    }

    /// `H v` for a vector given by its support.
    pub fn mul_support<I: IntoIterator<Item = usize>>(&self, support: I) -> u64 {
        support.into_iter().fold(0u64, |acc, j| acc ^ self.cols[j])
    }

    /// Adds row `src` into row `dst`.
    pub fn add_row(&mut self, dst: usize, src: usize) {
        for c in &mut self.cols {
            let bit = (*c >> src) & 1;
            *c ^= bit << dst;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in &mut self.cols {
            let ba = (*c >> a) & 1;
            let bb = (*c >> b) & 1;
            if ba != bb {
                *c ^= (1u64 << a) | (1u64 << b);
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut basis = XorBasis::default();
        self.cols.iter().filter(|&&c| basis.insert(c)).count()
    }

    pub fn is_full_row_rank(&self) -> bool {
        self.rank() == self.rows
    }

    /// Square sub-matrix of the first `k` columns.
    pub fn leading_block(&self, k: usize) -> Result<Self> {
        if k > self.cols() {
            return Err(Error::InvalidArgument("block wider than matrix".into()));
        }
        Self::from_columns(self.rows, self.cols[..k].to_vec())
    }

    /// Columns permuted: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self { rows: self.rows, cols: perm.iter().map(|&p| self.cols[p]).collect() }
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<SquareInverse> {
        SquareInverse::new(self)
    }

    /// Basis of the right kernel `{v : H v = 0}`, each vector as a support bitmask
    /// over columns (requires at most 64 columns).
    pub fn kernel_basis(&self) -> Result<Vec<u64>> {
        let n = self.cols();
        if n > 64 {
            return Err(Error::InvalidArgument("kernel basis needs at most 64 columns".into()));
        }
        // Reduce [col_j | e_j] pairs: track which combination of columns yields each pivot.
        let mut pivots: Vec<(u64, u64)> = Vec::new();
        let mut kernel = Vec::new();
        for j in 0..n {
            let mut v = self.cols[j];
            let mut combo = 1u64 << j;
            for &(pv, pc) in &pivots {
                if v & (1u64 << (63 - pv.leading_zeros())) != 0 {
                    v ^= pv;
                    combo ^= pc;
                }
            }
            if v == 0 {
                kernel.push(combo);
            } else {
                // Keep pivots sorted by leading bit, descending, for single-pass reduction.
                let lead = 63 - v.leading_zeros();
                let pos = pivots.iter().position(|&(pv, _)| 63 - pv.leading_zeros() < lead).unwrap_or(pivots.len());
                pivots.insert(pos, (v, combo));
            }
        }
        Ok(kernel)
    }

    /// One hex row per line; row `i` is the integer with bit `j` equal to `H[i][j]`.
    pub fn to_hex_rows(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let words = self.row_words(i);
            let top = words.iter().rposition(|&w| w != 0);
            match top {
                None => out.push_str("0x0"),
                Some(t) => {
                    let _ = write!(out, "0x{:x}", words[t]);
                    for w in words[..t].iter().rev() {
                        let _ = write!(out, "{w:016x}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn row_mask(rows: usize) -> u64 {
    if rows >= 64 {
        u64::MAX
    } else {
        (1u64 << rows) - 1
    }
}

/// Incremental XOR basis (row echelon by leading bit).
#[derive(Debug, Clone)]
pub struct XorBasis {
    by_lead: [u64; 64],
    len: usize,
}

impl Default for XorBasis {
    fn default() -> Self {
        Self { by_lead: [0; 64], len: 0 }
    }
}

impl XorBasis {
    pub fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if self.by_lead[lead] == 0 {
                break;
            }
            v ^= self.by_lead[lead];
        }
        v
    }

    /// Inserts `v`; returns `true` when it was independent.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        self.by_lead[63 - v.leading_zeros() as usize] = v;
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Precomputed inverse of a square GF(2) matrix, stored as columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareInverse {
    size: usize,
    cols: Vec<u64>,
}

impl SquareInverse {
    pub fn new(a: &BinaryMatrix) -> Result<Self> {
        let k = a.rows();
        if a.cols() != k {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        // Gauss-Jordan on rows; row i as (a-part, identity-part) words.
        let mut rows: Vec<(u64, u64)> = (0..k)
            .map(|i| {
                let mut w = 0u64;
                for j in 0..k {
                    if a.get(i, j) {
                        w |= 1u64 << j;
                    }
                }
                (w, 1u64 << i)
            })
            .collect();
        for col in 0..k {
            let piv = (col..k).find(|&i| (rows[i].0 >> col) & 1 == 1).ok_or(Error::RankDeficient)?;
            rows.swap(col, piv);
            let (pa, pb) = rows[col];
            for i in 0..k {
                if i != col && (rows[i].0 >> col) & 1 == 1 {
                    rows[i].0 ^= pa;
                    rows[i].1 ^= pb;
                }
            }
        }
        // rows[i].1 is row i of the inverse; transpose into columns.
        let mut cols = vec![0u64; k];
        for (i, &(_, inv_row)) in rows.iter().enumerate() {
            for (j, c) in cols.iter_mut().enumerate() {
                if (inv_row >> j) & 1 == 1 {
                    *c |= 1u64 << i;
                }
            }
        }
        Ok(Self { size: k, cols })
    }

    /// `A^{-1} x`.
    pub fn apply(&self, x: u64) -> u64 {
        let mut out = 0u64;
        let mut x = x;
        while x != 0 {
            let j = x.trailing_zeros() as usize;
            out ^= self.cols[j];
            x &= x - 1;
        }
        out
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// Solves `A y = x` for an `r x r` system given as columns (bit `k` = row `k`).
pub fn solve_square(cols: &[u64], x: u64) -> Result<u64> {
    let a = BinaryMatrix::from_columns(cols.len(), cols.to_vec())?;
    Ok(a.inverse()?.apply(x))
}

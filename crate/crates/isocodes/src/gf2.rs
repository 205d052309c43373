//! Bit-packed linear algebra over GF(2).
//!
//! Vectors are stored little-endian in 64-bit words: coordinate `i` lives in
//! bit `i % 64` of word `i / 64`.  Coordinate 0 is the *leftmost* character of
//! the string form, so `"1000"` is the length-4 vector with a one in its first
//! coordinate.  The derived ordering compares coordinate 0 first, which makes
//! `BitVec` ordering agree with ordinary string ordering of the bit strings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("row length {got} does not match matrix width {want}")]
    RowWidth { got: usize, want: usize },
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The all-ones vector of the given length.
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// The standard basis vector with a single one at `pos`.
    pub fn unit(len: usize, pos: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(pos, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Number of ones.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Weight mod 2: the parity functional `p`.
    #[inline]
    pub fn parity(&self) -> bool {
        self.weight() % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Standard dot product mod 2.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc & 1 == 1
    }

    /// The alternating form `<u,v> = u.v + p(u)p(v)`.
    #[inline]
    pub fn alt_inner(&self, other: &BitVec) -> bool {
        self.dot(other) ^ (self.parity() & other.parity())
    }

    /// Coordinatewise (Boolean) product.
    pub fn pointwise(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "pointwise product length mismatch");
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    /// Adds the all-ones vector when the vector has odd weight; this is the
    /// transvection `v -> v + p(v) * ones`.
    pub fn transvect(&self) -> BitVec {
        if self.parity() {
            self.xor(&BitVec::ones(self.len))
        } else {
            self.clone()
        }
    }

    /// Indices of the ones, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let t = bits.trailing_zeros() as usize;
                out.push(wi * 64 + t);
                bits &= bits - 1;
            }
        }
        out
    }

    /// The vector as a single machine word; only valid for `len <= 64`.
    pub fn as_word(&self) -> u64 {
        assert!(self.len <= 64, "as_word requires length <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { !0 } else { (1u64 << len) - 1 };
        BitVec {
            len,
            words: if len == 0 { vec![] } else { vec![word & mask] },
        }
    }

    /// New vector reading off the listed coordinates in order.
    pub fn select(&self, coords: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(coords.len());
        for (j, &i) in coords.iter().enumerate() {
            if self.get(i) {
                v.set(j, true);
            }
        }
        v
    }

    /// New vector with coordinate `i` moved to position `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> BitVec {
        assert_eq!(perm.len(), self.len, "permutation length mismatch");
        let mut v = BitVec::zeros(self.len);
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let t = bits.trailing_zeros() as usize;
                v.set(perm[wi * 64 + t], true);
                bits &= bits - 1;
            }
        }
        v
    }

    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in 0..self.len {
            if self.get(i) {
                v.set(i, true);
            }
        }
        for i in 0..other.len {
            if other.get(i) {
                v.set(self.len + i, true);
            }
        }
        v
    }
}

impl Ord for BitVec {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len.cmp(&other.len) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let t = diff.trailing_zeros();
                // The vector with a 0 in the first differing coordinate sorts
                // first, matching string order of the printed form.
                return if (a >> t) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for BitVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => {
                    return Err(Gf2Error::Parse {
                        line: 0,
                        msg: format!("invalid bit character {c:?}"),
                    })
                }
            }
        }
        Ok(v)
    }
}

/// A matrix over GF(2) stored row-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(ncols: usize) -> Self {
        BitMatrix { ncols, rows: vec![] }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        for r in &rows {
            if r.len() != ncols {
                return Err(Gf2Error::RowWidth {
                    got: r.len(),
                    want: ncols,
                });
            }
        }
        Ok(BitMatrix { ncols, rows })
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            ncols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.ncols, "row width mismatch");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    /// Reduced row echelon form.  Zero rows are dropped; the returned pivot
    /// list gives the pivot column of each surviving row, ascending.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(sel) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, sel);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (
            BitMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel: all `v` with `row . v = 0` for every row.
    pub fn kernel(&self) -> BitMatrix {
        let (red, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.ncols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        for (f, &is_pivot) in pivot_set.iter().enumerate() {
            if is_pivot {
                continue;
            }
            let mut v = BitVec::unit(self.ncols, f);
            for (r, &p) in pivots.iter().enumerate() {
                if red.rows[r].get(f) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            ncols: self.ncols,
            rows: basis,
        }
    }

    /// Does `v` lie in the row space?
    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let (red, pivots) = self.rref();
        let mut rem = v.clone();
        for (r, &p) in pivots.iter().enumerate() {
            if rem.get(p) {
                rem.xor_assign(&red.rows[r]);
            }
        }
        rem.is_zero()
    }

    /// Matrix-vector product over GF(2): the column of row-by-`v` dots.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// New matrix reading off the listed columns in order, rowwise.
    pub fn select_columns(&self, coords: &[usize]) -> BitMatrix {
        BitMatrix {
            ncols: coords.len(),
            rows: self.rows.iter().map(|r| r.select(coords)).collect(),
        }
    }

    /// New matrix with column `i` moved to position `perm[i]`.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        BitMatrix {
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.permute(perm)).collect(),
        }
    }

    /// Rows of `other` appended below `self` (widths must agree).
    pub fn stack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.ncols, other.ncols, "stack width mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix {
            ncols: self.ncols,
            rows,
        }
    }
}

impl Ord for BitMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ncols, self.rows.len(), &self.rows).cmp(&(other.ncols, other.rows.len(), &other.rows))
    }
}

impl PartialOrd for BitMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[{}x{}]", self.rows.len(), self.ncols)?;
        for r in &self.rows {
            write!(f, " {r}")?;
        }
        Ok(())
    }
}

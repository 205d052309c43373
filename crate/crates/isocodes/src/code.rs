//! Binary linear codes and the predicates used throughout the crate.
//!
//! A [`LinearCode`] is a subspace of GF(2)^n, always stored with its generator
//! matrix in reduced row echelon form so that equal subspaces compare equal.
//!
//! Besides the ordinary dot-product dual, codes here carry a second dual taken
//! with respect to the alternating form `<u,v> = u.v + p(u)p(v)`, where `p` is
//! the parity (weight mod 2) functional.

use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};

/// Weight enumeration walks all `2^k` codewords; dimensions above this cap
/// are refused rather than silently taking minutes.
pub const ENUMERATION_CAP: usize = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension {dim} exceeds the enumeration cap {cap}")]
    EnumerationCap { dim: usize, cap: usize },
}

/// Type classification by weights: II when every even-weight word has weight
/// divisible by four, I otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CodeType {
    I,
    II,
}

impl std::fmt::Display for CodeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CodeType::I => f.write_str("I"),
            CodeType::II => f.write_str("II"),
        }
    }
}

#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    gens: BitMatrix,
    pivots: Vec<usize>,
    weights: OnceLock<Vec<u64>>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}
impl Eq for LinearCode {}

impl std::hash::Hash for LinearCode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

impl PartialOrd for LinearCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for LinearCode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.gens.cmp(&other.gens)
    }
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearCode[{},{}]{{", self.n, self.dim())?;
        for (i, r) in self.gens.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("}")
    }
}

impl LinearCode {
    /// Row space of `m`, canonicalized to rref.
    pub fn from_matrix(m: &BitMatrix) -> Self {
        let (gens, pivots) = m.rref();
        LinearCode {
            n: m.ncols(),
            gens,
            pivots,
            weights: OnceLock::new(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<BitVec>) -> Self {
        let m = BitMatrix::from_rows(n, rows).expect("row width mismatch");
        Self::from_matrix(&m)
    }

    pub fn from_row_strs(rows: &[&str]) -> Self {
        let parsed: Vec<BitVec> = rows.iter().map(|s| s.parse().unwrap()).collect();
        let n = parsed.first().map_or(0, |r| r.len());
        Self::from_rows(n, parsed)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_rows(n, vec![])
    }

    pub fn full_space(n: usize) -> Self {
        Self::from_matrix(&BitMatrix::identity(n))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gens.nrows()
    }

    pub fn generators(&self) -> &BitMatrix {
        &self.gens
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.gens.row_space_contains(v)
    }

    pub fn contains_ones(&self) -> bool {
        self.contains(&BitVec::ones(self.n))
    }

    /// Visits every codeword once (Gray-code order, starting at zero).
    pub fn for_each_codeword<F: FnMut(&BitVec)>(&self, mut f: F) -> Result<(), CodeError> {
        let k = self.dim();
        if k > ENUMERATION_CAP {
            return Err(CodeError::EnumerationCap {
                dim: k,
                cap: ENUMERATION_CAP,
            });
        }
        let mut cur = BitVec::zeros(self.n);
        f(&cur);
        for idx in 1u64..(1u64 << k) {
            let flip = idx.trailing_zeros() as usize;
            cur.xor_assign(self.gens.row(flip));
            f(&cur);
        }
        Ok(())
    }

    /// All codewords, unsorted (Gray-code order).
    pub fn codewords(&self) -> Result<Vec<BitVec>, CodeError> {
        let mut out = Vec::with_capacity(1usize << self.dim().min(ENUMERATION_CAP));
        self.for_each_codeword(|w| out.push(w.clone()))?;
        Ok(out)
    }

    /// Weight distribution `[A_0, ..., A_n]`, memoized after the first call.
    pub fn weight_distribution(&self) -> Result<&[u64], CodeError> {
        if let Some(d) = self.weights.get() {
            return Ok(d);
        }
        let mut dist = vec![0u64; self.n + 1];
        self.for_each_codeword(|w| dist[w.weight() as usize] += 1)?;
        Ok(self.weights.get_or_init(|| dist))
    }

    /// Smallest nonzero codeword weight; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<u32>, CodeError> {
        let dist = self.weight_distribution()?;
        Ok(dist
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w as u32))
    }

    /// Dual under the ordinary dot product.
    pub fn dual_dot(&self) -> LinearCode {
        LinearCode::from_matrix(&self.gens.kernel())
    }

    /// Dual under the alternating form.
    ///
    /// `<v,g> = v . (g + p(g)1)`, so this is the dot-kernel of the
    /// transvected generators.
    pub fn perp_alt(&self) -> LinearCode {
        let rows: Vec<BitVec> = self.gens.rows().iter().map(|g| g.transvect()).collect();
        let m = BitMatrix::from_rows(self.n, rows).expect("width preserved");
        LinearCode::from_matrix(&m.kernel())
    }

    /// The subcode of even-weight words (index 1 or 2).
    pub fn even_subcode(&self) -> LinearCode {
        let odd: Vec<usize> = (0..self.dim())
            .filter(|&i| self.gens.row(i).parity())
            .collect();
        let Some(&first_odd) = odd.first() else {
            return self.clone();
        };
        let mut rows = Vec::with_capacity(self.dim() - 1);
        for i in 0..self.dim() {
            if i == first_odd {
                continue;
            }
            let r = self.gens.row(i);
            if r.parity() {
                rows.push(r.xor(self.gens.row(first_odd)));
            } else {
                rows.push(r.clone());
            }
        }
        LinearCode::from_rows(self.n, rows)
    }

    /// Is every codeword of even weight?  (Equivalently: every generator.)
    pub fn is_even(&self) -> bool {
        self.gens.rows().iter().all(|g| !g.parity())
    }

    /// Self-orthogonal for the dot product: `u . v = 0` for all `u`, `v`.
    pub fn is_self_orthogonal_dot(&self) -> bool {
        let k = self.dim();
        (0..k).all(|i| (i..k).all(|j| !self.gens.row(i).dot(self.gens.row(j))))
    }

    /// Totally isotropic for the alternating form.
    pub fn is_totally_isotropic(&self) -> bool {
        let k = self.dim();
        // <g,g> = 0 automatically; generator pairs suffice by bilinearity.
        (0..k).all(|i| (i + 1..k).all(|j| !self.gens.row(i).alt_inner(self.gens.row(j))))
    }

    /// Maximal totally isotropic: dimension n/2 for even n; dimension
    /// (n+1)/2 and containing the all-ones vector for odd n.
    pub fn is_max_totally_isotropic(&self) -> bool {
        if !self.is_totally_isotropic() {
            return false;
        }
        if self.n % 2 == 0 {
            self.dim() == self.n / 2
        } else {
            self.dim() == (self.n + 1) / 2 && self.contains_ones()
        }
    }

    /// Even length and maximal totally isotropic.
    pub fn is_lagrangian(&self) -> bool {
        self.n % 2 == 0 && self.is_max_totally_isotropic()
    }

    /// A Lagrangian containing an odd-weight word.
    pub fn is_odd_lagrangian(&self) -> bool {
        self.is_lagrangian() && !self.is_even()
    }

    /// Classical self-duality: `C = C^perp` under the dot product.
    pub fn is_self_dual(&self) -> bool {
        self.n % 2 == 0 && self.dim() == self.n / 2 && self.is_self_orthogonal_dot()
    }

    /// Type I / Type II by the even-weight words.
    pub fn type_of(&self) -> Result<CodeType, CodeError> {
        let even = self.even_subcode();
        let dist = even.weight_distribution()?;
        let doubly = dist
            .iter()
            .enumerate()
            .all(|(w, &c)| c == 0 || w % 4 == 0);
        Ok(if doubly { CodeType::II } else { CodeType::I })
    }

    /// Image under the transvection `v -> v + p(v)1` (a code again, since the
    /// map is linear).
    pub fn transvect(&self) -> LinearCode {
        let rows: Vec<BitVec> = self.gens.rows().iter().map(|g| g.transvect()).collect();
        LinearCode::from_rows(self.n, rows)
    }

    /// Juxtaposition `self x other` on disjoint coordinate blocks.
    pub fn direct_product(&self, other: &LinearCode) -> LinearCode {
        let n = self.n + other.n;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for r in self.gens.rows() {
            rows.push(r.concat(&BitVec::zeros(other.n)));
        }
        for r in other.gens.rows() {
            rows.push(BitVec::zeros(self.n).concat(r));
        }
        let _ = n;
        LinearCode::from_rows(n, rows)
    }

    /// Projection onto the listed coordinates (span of restricted generators).
    pub fn project(&self, coords: &[usize]) -> LinearCode {
        LinearCode::from_matrix(&self.gens.select_columns(coords))
    }

    /// Image under a coordinate permutation (`coordinate i -> perm[i]`).
    pub fn permute(&self, perm: &[usize]) -> LinearCode {
        LinearCode::from_matrix(&self.gens.permute_columns(perm))
    }

    /// Serializes in the plain text exchange format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.dim());
        for r in self.gens.rows() {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

/// Parses the plain text format: a header line `n k`, then `k` rows of `n`
/// characters from {0,1}.  Lines starting with `#` and blank lines are
/// ignored.  Line numbers in errors are 1-based over the full input.
pub fn parse_code(text: &str) -> Result<LinearCode, CodeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let Some((header_line, header)) = lines.next() else {
        return Err(CodeError::Parse {
            line: 1,
            msg: "empty input, expected a header line `n k`".into(),
        });
    };
    let mut parts = header.split_whitespace();
    let parse_num = |tok: Option<&str>, what: &str| -> Result<usize, CodeError> {
        tok.ok_or_else(|| CodeError::Parse {
            line: header_line,
            msg: format!("missing {what} in header"),
        })?
        .parse()
        .map_err(|_| CodeError::Parse {
            line: header_line,
            msg: format!("invalid {what} in header"),
        })
    };
    let n = parse_num(parts.next(), "length")?;
    let k = parse_num(parts.next(), "dimension")?;
    if parts.next().is_some() {
        return Err(CodeError::Parse {
            line: header_line,
            msg: "trailing tokens after `n k` header".into(),
        });
    }
    if k > n {
        return Err(CodeError::Parse {
            line: header_line,
            msg: format!("dimension {k} exceeds length {n}"),
        });
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let Some((line_no, row)) = lines.next() else {
            return Err(CodeError::Parse {
                line: header_line,
                msg: format!("expected {k} rows, found {}", rows.len()),
            });
        };
        if row.len() != n {
            return Err(CodeError::Parse {
                line: line_no,
                msg: format!("row has {} characters, expected {n}", row.len()),
            });
        }
        let v = BitVec::from_str(row).map_err(|_| CodeError::Parse {
            line: line_no,
            msg: "row contains characters other than 0/1".into(),
        })?;
        rows.push(v);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(CodeError::Parse {
            line: line_no,
            msg: "unexpected content after the last row".into(),
        });
    }
    Ok(LinearCode::from_rows(n, rows))
}

/// Parses a `%`-separated stream of records, each in the plain text format.
pub fn parse_code_db(text: &str) -> Result<Vec<LinearCode>, CodeError> {
    let mut out = Vec::new();
    let mut chunk = String::new();
    let mut chunk_start = 1usize;
    let mut line_no = 0usize;
    let flush = |chunk: &mut String, start: usize, out: &mut Vec<LinearCode>| {
        let body = chunk.clone();
        chunk.clear();
        if body
            .lines()
            .all(|l| l.trim().is_empty() || l.trim().starts_with('#'))
        {
            return Ok(());
        }
        match parse_code(&body) {
            Ok(c) => {
                out.push(c);
                Ok(())
            }
            Err(CodeError::Parse { line, msg }) => Err(CodeError::Parse {
                line: start + line - 1,
                msg,
            }),
            Err(e) => Err(e),
        }
    };
    for line in text.lines() {
        line_no += 1;
        if line.trim() == "%" {
            flush(&mut chunk, chunk_start, &mut out)?;
            chunk_start = line_no + 1;
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    flush(&mut chunk, chunk_start, &mut out)?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Named small codes.
// ---------------------------------------------------------------------------

/// `{0, 1}`: the full space of length 1.
pub fn i1() -> LinearCode {
    LinearCode::from_row_strs(&["1"])
}

/// `{00, 11}`: the length-2 repetition code.
pub fn i2() -> LinearCode {
    LinearCode::from_row_strs(&["11"])
}

/// `{00, 10}`: the odd sibling of `i2` (a Lagrangian that is not self-dual).
pub fn i2_prime() -> LinearCode {
    LinearCode::from_row_strs(&["10"])
}

/// The [7,4] Hamming code.
pub fn hamming() -> LinearCode {
    LinearCode::from_row_strs(&["1110000", "1001100", "0101010", "1101001"])
}

/// The even subcode of the Hamming code (all weights 0 or 4).
pub fn e7() -> LinearCode {
    hamming().even_subcode()
}

/// The [8,4] extended Hamming code, the unique Type II self-dual code of
/// length 8.
pub fn e8() -> LinearCode {
    LinearCode::from_row_strs(&["10000111", "01001011", "00101101", "00011110"])
}

/// A length-6 odd Lagrangian of Type I (weights 1 through 5 all present).
pub fn odd6_type_i() -> LinearCode {
    LinearCode::from_row_strs(&["100000", "010100", "001010"])
}

/// A length-6 odd Lagrangian of Type II (odd weights all 3).
pub fn odd6_type_ii() -> LinearCode {
    LinearCode::from_row_strs(&["100011", "010101", "001110"])
}

/// `k` juxtaposed copies of `i2`.
pub fn i2_power(k: usize) -> LinearCode {
    let mut rows = Vec::with_capacity(k);
    for j in 0..k {
        let mut v = BitVec::zeros(2 * k);
        v.set(2 * j, true);
        v.set(2 * j + 1, true);
        rows.push(v);
    }
    LinearCode::from_rows(2 * k, rows)
}

//! Self-dual binary codes: representatives, generation, mass certification.
//!
//! For even `n` the total number of self-dual codes of length `n` is
//! `T_n = prod_{i=1}^{n/2-1} (2^i + 1)`.  A set of pairwise inequivalent
//! representatives is complete exactly when `sum n!/|Aut(K)| = T_n`; that
//! certificate is enforced both on generated sets and on sets loaded from a
//! database file.
//!
//! Generation walks the neighbor graph: two self-dual codes are neighbors
//! when they meet in codimension 1.  Starting from the juxtaposition of
//! `n/2` copies of the repetition code, expanding every codimension-1
//! subcode containing the all-ones vector reaches every class; completeness
//! is certified (not assumed) by the mass formula.

use num::{BigRational, BigUint, One};
use thiserror::Error;

use crate::canon::{canonical_form, CANON_MAX_LEN};
use crate::code::{self, parse_code_db, CodeError, LinearCode};
use crate::gf2::{BitMatrix, BitVec};

/// Generation is exhaustive and certified for lengths up to this bound.
pub const GENERATION_MAX_LEN: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SelfDualError {
    #[error("length {0} is odd; self-dual codes need even length")]
    OddLength(usize),
    #[error("generation supports even lengths up to {max}, got {got}")]
    LengthTooLarge { got: usize, max: usize },
    #[error("record {index} has length {got}, expected {want}")]
    WrongLength { index: usize, got: usize, want: usize },
    #[error("record {index} is not self-dual")]
    NotSelfDual { index: usize },
    #[error("record {index} does not contain the all-ones vector")]
    OnesMissing { index: usize },
    #[error("mass check failed: sum n!/|Aut| = {actual}, expected {expected}")]
    MassMismatch { expected: String, actual: String },
    #[error(transparent)]
    Parse(#[from] CodeError),
}

/// One equivalence class of self-dual codes.
#[derive(Clone, Debug)]
pub struct SelfDualRep {
    /// Canonical representative (reduced echelon form of the canonical
    /// labeling).
    pub code: LinearCode,
    /// Generator matrix whose rows sum to the all-ones vector.
    pub normalized: BitMatrix,
    pub aut_order: BigUint,
}

/// A complete, mass-certified set of self-dual class representatives.
#[derive(Clone, Debug)]
pub struct SelfDualSet {
    pub n: usize,
    pub reps: Vec<SelfDualRep>,
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product::<BigUint>().max(BigUint::one())
}

/// Total number of self-dual codes of even length `n`:
/// the product of `2^i + 1` for `i = 1 .. n/2 - 1`.
pub fn t_n(n: usize) -> Result<BigUint, SelfDualError> {
    if n % 2 != 0 {
        return Err(SelfDualError::OddLength(n));
    }
    let mut t = BigUint::one();
    for i in 1..n / 2 {
        t *= (BigUint::one() << i) + BigUint::one();
    }
    Ok(t)
}

/// Rewrites a generator basis of a code containing the all-ones vector so
/// that the rows sum to all-ones.
pub fn normalize_ones_first(code: &LinearCode) -> Result<BitMatrix, SelfDualError> {
    let n = code.len();
    let ones = BitVec::ones(n);
    if !code.contains(&ones) {
        return Err(SelfDualError::OnesMissing { index: 0 });
    }
    let mut rows: Vec<BitVec> = code.generators().rows().to_vec();
    let mut sigma = BitVec::zeros(n);
    for r in &rows {
        sigma.xor_assign(r);
    }
    if sigma != ones {
        // c = sigma + 1 is a nonzero codeword; adding it to a row whose
        // reduced-form coordinate in c is zero keeps the rows a basis and
        // fixes the sum.  Such a row exists: were every coordinate one, c
        // would equal sigma, forcing 1 = 0.
        let c = sigma.xor(&ones);
        let pivots = code.pivots();
        let j = (0..rows.len())
            .find(|&i| !c.get(pivots[i]))
            .expect("a row with zero coefficient exists");
        rows[j].xor_assign(&c);
    }
    let m = BitMatrix::from_rows(n, rows).expect("widths preserved");
    debug_assert_eq!(LinearCode::from_matrix(&m), *code);
    debug_assert_eq!(
        {
            let mut s = BitVec::zeros(n);
            for r in m.rows() {
                s.xor_assign(r);
            }
            s
        },
        ones
    );
    Ok(m)
}

impl SelfDualSet {
    /// Exact class mass `sum n!/|Aut(K)|` over the representatives.
    pub fn mass(&self) -> BigRational {
        let nf = BigRational::from_integer(factorial(self.n).into());
        self.reps
            .iter()
            .map(|r| {
                &nf / BigRational::from_integer(num::BigInt::from(r.aut_order.clone()))
            })
            .sum()
    }

    /// Checks the mass formula; `Err` carries both sides for reporting.
    pub fn certify(&self) -> Result<(), SelfDualError> {
        let expected = BigRational::from_integer(t_n(self.n)?.into());
        let actual = self.mass();
        if actual == expected {
            Ok(())
        } else {
            Err(SelfDualError::MassMismatch {
                expected: expected.to_string(),
                actual: actual.to_string(),
            })
        }
    }

    /// Database serialization: `%`-separated records of normalized matrices.
    pub fn to_db_text(&self) -> String {
        let mut out = String::new();
        for rep in &self.reps {
            out.push_str(&format!("{} {}\n", self.n, rep.normalized.nrows()));
            for row in rep.normalized.rows() {
                out.push_str(&row.to_string());
                out.push('\n');
            }
            out.push_str("%\n");
        }
        out
    }
}

fn build_set(n: usize, codes: Vec<LinearCode>) -> Result<SelfDualSet, SelfDualError> {
    let mut reps = Vec::with_capacity(codes.len());
    for code in codes {
        let cert = canonical_form(&code);
        let canonical = LinearCode::from_matrix(&cert.canon);
        let normalized = normalize_ones_first(&canonical)?;
        reps.push(SelfDualRep {
            code: canonical,
            normalized,
            aut_order: cert.aut_order,
        });
    }
    reps.sort_by(|a, b| a.code.cmp(&b.code));
    let set = SelfDualSet { n, reps };
    set.certify()?;
    Ok(set)
}

/// Loads and certifies a set of representatives from database text.
pub fn parse_selfdual_db(text: &str, n: usize) -> Result<SelfDualSet, SelfDualError> {
    let codes = parse_code_db(text)?;
    for (index, c) in codes.iter().enumerate() {
        if c.len() != n {
            return Err(SelfDualError::WrongLength {
                index,
                got: c.len(),
                want: n,
            });
        }
        if !c.is_self_dual() {
            return Err(SelfDualError::NotSelfDual { index });
        }
    }
    build_set(n, codes)
}

/// Generates the complete set of self-dual class representatives by a
/// certified neighbor-graph walk.
pub fn generate_selfdual_reps(n: usize) -> Result<SelfDualSet, SelfDualError> {
    if n % 2 != 0 {
        return Err(SelfDualError::OddLength(n));
    }
    if n == 0 || n > GENERATION_MAX_LEN || n > CANON_MAX_LEN {
        return Err(SelfDualError::LengthTooLarge {
            got: n,
            max: GENERATION_MAX_LEN,
        });
    }
    let m = n / 2;
    let seed = canonical_form(&code::i2_power(m)).canon;
    let seed = LinearCode::from_matrix(&seed);
    let mut known: std::collections::BTreeSet<LinearCode> = std::collections::BTreeSet::new();
    known.insert(seed.clone());
    let mut queue = std::collections::VecDeque::from([seed]);
    while let Some(k) = queue.pop_front() {
        let rows = k.generators().rows();
        // Codimension-1 subcodes containing all-ones = kernels of nonzero
        // even-weight functionals on the reduced-basis coefficients (the
        // all-ones word has every reduced coordinate set).
        for phi in 1u64..(1u64 << m) {
            if phi.count_ones() % 2 != 0 {
                continue;
            }
            let j = phi.trailing_zeros() as usize;
            let mut sub_rows = Vec::with_capacity(m - 1);
            for (i, row) in rows.iter().enumerate() {
                if i == j {
                    continue;
                }
                if (phi >> i) & 1 == 1 {
                    sub_rows.push(row.xor(&rows[j]));
                } else {
                    sub_rows.push(row.clone());
                }
            }
            let d = LinearCode::from_rows(n, sub_rows);
            debug_assert_eq!(d.dim(), m - 1);
            let d_perp = d.dual_dot();
            debug_assert_eq!(d_perp.dim(), m + 1);
            // A vector of the dual outside K spans the two candidate
            // neighbor cosets together with K itself.
            let w = d_perp
                .generators()
                .rows()
                .iter()
                .find(|r| !k.contains(r))
                .expect("dual strictly contains K")
                .clone();
            let u = rows[j].clone(); // in K, outside D
            for cand in [w.clone(), w.xor(&u)] {
                if cand.parity() {
                    continue; // odd coset: not self-orthogonal
                }
                let mut e_rows = d.generators().rows().to_vec();
                e_rows.push(cand);
                let e = LinearCode::from_rows(n, e_rows);
                debug_assert!(e.is_self_dual());
                let canon = LinearCode::from_matrix(&canonical_form(&e).canon);
                if known.insert(canon.clone()) {
                    queue.push_back(canon);
                }
            }
        }
    }
    build_set(n, known.into_iter().collect())
}

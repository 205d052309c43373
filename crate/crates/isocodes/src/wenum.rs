//! Exact weight enumerators and duality transforms.
//!
//! The weight enumerator of a code of length `n` is the homogeneous
//! polynomial `W(x,y) = sum_w A_w x^w y^(n-w)` with `A_w` the number of
//! codewords of weight `w`.  All arithmetic is in exact big integers.
//!
//! Two transforms are provided: the classical duality transform
//! `W -> (1/2^k) W(y-x, y+x)` for the dot-product dual, and the variant for
//! the alternating-form dual, which splits `W` into even- and odd-weight
//! parts and substitutes `(y-x, y+x)` in the even part but `(y+x, y-x)` in
//! the odd part.  A second, independent route to the alternating-form dual
//! goes through Krawtchouk polynomials.

use num::{BigInt, Zero};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WenumError {
    #[error("coefficient of x^{index} is not divisible by 2^{divisor_log2}")]
    NonIntegerResult { index: usize, divisor_log2: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Homogeneous enumerator of degree `n` with exact integer coefficients
/// (`coeffs[w]` multiplies `x^w y^(n-w)`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightEnumerator {
    n: usize,
    coeffs: Vec<BigInt>,
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::from(1);
    for i in 0..k {
        num = num * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    num
}

/// Krawtchouk polynomial value `P_k(i; n) = sum_j (-1)^j C(i,j) C(n-i,k-j)`.
pub fn krawtchouk(k: usize, i: usize, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k.min(i) {
        let term = binomial(i, j) * binomial(n - i, k - j);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

impl WeightEnumerator {
    pub fn new(n: usize, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), n + 1, "need n+1 coefficients");
        WeightEnumerator { n, coeffs }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        WeightEnumerator {
            n: counts.len() - 1,
            coeffs: counts.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn of_code(code: &LinearCode) -> Result<Self, CodeError> {
        Ok(Self::from_counts(code.weight_distribution()?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, w: usize) -> &BigInt {
        &self.coeffs[w]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Terms of even weight.
    pub fn even_part(&self) -> WeightEnumerator {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(w, c)| if w % 2 == 0 { c.clone() } else { BigInt::zero() })
            .collect();
        WeightEnumerator { n: self.n, coeffs }
    }

    /// Terms of odd weight.
    pub fn odd_part(&self) -> WeightEnumerator {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(w, c)| if w % 2 == 1 { c.clone() } else { BigInt::zero() })
            .collect();
        WeightEnumerator { n: self.n, coeffs }
    }

    pub fn add(&self, other: &WeightEnumerator) -> WeightEnumerator {
        assert_eq!(self.n, other.n);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        WeightEnumerator { n: self.n, coeffs }
    }

    /// Swaps the variables: `W(x,y) -> W(y,x)` (reverses the coefficients).
    pub fn swap_vars(&self) -> WeightEnumerator {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        WeightEnumerator { n: self.n, coeffs }
    }

    /// Substitutes `x -> sx*x + y`-style linear forms: each term
    /// `x^i y^(n-i)` becomes `(y + sx*x)^i (y + sy*x)^(n-i)` with the signs
    /// `sx, sy` in {-1,+1}.  Computed by per-term binomial convolution.
    fn substitute_signed(&self, sx: i32, sy: i32) -> WeightEnumerator {
        let n = self.n;
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..=i {
                let cj = binomial(i, j);
                let sj = if sx < 0 && j % 2 == 1 { -1 } else { 1 };
                for l in 0..=(n - i) {
                    let cl = binomial(n - i, l);
                    let sl = if sy < 0 && l % 2 == 1 { -1 } else { 1 };
                    let term = a * &cj * &cl * BigInt::from(sj * sl);
                    out[j + l] += term;
                }
            }
        }
        WeightEnumerator { n, coeffs: out }
    }

    fn divide_exact(mut self, divisor_log2: usize) -> Result<WeightEnumerator, WenumError> {
        let d = BigInt::from(1) << divisor_log2;
        for (w, c) in self.coeffs.iter_mut().enumerate() {
            let (q, r) = num::Integer::div_rem(&*c, &d);
            if !r.is_zero() {
                return Err(WenumError::NonIntegerResult {
                    index: w,
                    divisor_log2,
                });
            }
            *c = q;
        }
        Ok(self)
    }

    /// Classical duality transform `(1/2^k) W(y-x, y+x)` for a code of
    /// dimension `k`.
    pub fn macwilliams(&self, k: usize) -> Result<WeightEnumerator, WenumError> {
        self.substitute_signed(-1, 1).divide_exact(k)
    }

    /// Duality transform for the alternating form:
    /// `(1/2^k) [ Weven(y-x, y+x) + Wodd(y+x, y-x) ]`.
    pub fn macwilliams_type(&self, k: usize) -> Result<WeightEnumerator, WenumError> {
        let even = self.even_part().substitute_signed(-1, 1);
        let odd = self.odd_part().substitute_signed(1, -1);
        even.add(&odd).divide_exact(k)
    }

    /// Serializes as a comma-separated coefficient list `A_0,...,A_n`.
    pub fn to_csv(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Alternating-form dual weights through Krawtchouk sums, independently of
/// the polynomial substitution route: even target weights use the classical
/// dual weight, odd target weights the classical dual weight at `n - w`.
pub fn perp_weights_via_krawtchouk(
    counts: &WeightEnumerator,
    dim: usize,
) -> Result<WeightEnumerator, WenumError> {
    let n = counts.n;
    let mut out = vec![BigInt::zero(); n + 1];
    let dual_weight = |target: usize| -> BigInt {
        (0..=n)
            .map(|i| counts.coeffs[i].clone() * krawtchouk(target, i, n))
            .sum()
    };
    for (w, slot) in out.iter_mut().enumerate() {
        *slot = if w % 2 == 0 {
            dual_weight(w)
        } else {
            dual_weight(n - w)
        };
    }
    WeightEnumerator { n, coeffs: out }.divide_exact(dim)
}

impl std::fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude().to_string();
            let neg = c.sign() == num::bigint::Sign::Minus;
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let xo = i;
            let yo = self.n - i;
            let show_coeff = mag != "1" || (xo == 0 && yo == 0);
            if show_coeff {
                f.write_str(&mag)?;
            }
            match xo {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{xo}")?,
            }
            match yo {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{yo}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for WeightEnumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeightEnumerator({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code;

    fn we(counts: &[u64]) -> WeightEnumerator {
        WeightEnumerator::from_counts(counts)
    }

    #[test]
    fn display_forms() {
        let e8 = WeightEnumerator::of_code(&code::e8()).unwrap();
        assert_eq!(e8.to_string(), "y^8 + 14x^4y^4 + x^8");
        assert_eq!(
            WeightEnumerator::of_code(&code::i2_prime()).unwrap().to_string(),
            "y^2 + xy"
        );
        assert_eq!(we(&[0, 0, 0]).to_string(), "0");
    }

    #[test]
    fn even_and_odd_parts() {
        let h = WeightEnumerator::of_code(&code::hamming()).unwrap();
        assert_eq!(h.even_part().to_string(), "y^7 + 7x^4y^3");
        assert_eq!(h.odd_part().to_string(), "7x^3y^4 + x^7");
        assert_eq!(h.even_part().add(&h.odd_part()), h);
    }

    #[test]
    fn classical_transform_fixture() {
        // C = {0000, 1000}: dual transform of y^4 + xy^3.
        let w = we(&[1, 1, 0, 0, 0]);
        let dual = w.macwilliams(1).unwrap();
        assert_eq!(dual, we(&[1, 3, 3, 1, 0]));
    }

    #[test]
    fn alternating_transform_fixture() {
        let w = we(&[1, 1, 0, 0, 0]);
        let alt = w.macwilliams_type(1).unwrap();
        assert_eq!(alt, we(&[1, 1, 3, 3, 0]));
    }

    #[test]
    fn e8_is_a_fixed_point_of_both_transforms() {
        let w = WeightEnumerator::of_code(&code::e8()).unwrap();
        assert_eq!(w.macwilliams(4).unwrap(), w);
        assert_eq!(w.macwilliams_type(4).unwrap(), w);
    }

    #[test]
    fn transforms_match_actual_duals_small() {
        for rows in [
            vec!["1000"],
            vec!["1100", "0011"],
            vec!["110", "011"],
            vec!["10110"],
            vec!["111111"],
            vec!["100011", "010101"],
        ] {
            let c = code::LinearCode::from_row_strs(&rows);
            let w = WeightEnumerator::of_code(&c).unwrap();
            let k = c.dim();
            assert_eq!(
                w.macwilliams(k).unwrap(),
                WeightEnumerator::of_code(&c.dual_dot()).unwrap(),
                "dot dual mismatch for {c:?}"
            );
            assert_eq!(
                w.macwilliams_type(k).unwrap(),
                WeightEnumerator::of_code(&c.perp_alt()).unwrap(),
                "alt dual mismatch for {c:?}"
            );
        }
    }

    #[test]
    fn krawtchouk_route_agrees() {
        for rows in [
            vec!["1000"],
            vec!["10110"],
            vec!["110010", "011001"],
            vec!["1110000", "0011100"],
        ] {
            let c = code::LinearCode::from_row_strs(&rows);
            let w = WeightEnumerator::of_code(&c).unwrap();
            assert_eq!(
                w.macwilliams_type(c.dim()).unwrap(),
                perp_weights_via_krawtchouk(&w, c.dim()).unwrap()
            );
        }
    }

    #[test]
    fn krawtchouk_basic_identities() {
        for n in 1..9usize {
            for i in 0..=n {
                assert_eq!(krawtchouk(0, i, n), BigInt::from(1));
                // Reciprocity: C(n,i) P_k(i) = C(n,k) P_i(k).
                for k in 0..=n {
                    assert_eq!(
                        binomial(n, i) * krawtchouk(k, i, n),
                        binomial(n, k) * krawtchouk(i, k, n)
                    );
                }
                // Column sums vanish except at i = 0.
                let s: BigInt = (0..=n).map(|k| krawtchouk(k, i, n)).sum();
                let expect = if i == 0 {
                    BigInt::from(1) << n
                } else {
                    BigInt::zero()
                };
                assert_eq!(s, expect);
            }
            for k in 0..=n {
                assert_eq!(krawtchouk(k, 0, n), binomial(n, k));
            }
        }
    }

    #[test]
    fn non_integer_division_is_reported() {
        let w = we(&[1, 0, 0]); // y^2 alone is no self-dual enumerator
        let err = w.macwilliams(1).unwrap_err();
        assert!(matches!(err, WenumError::NonIntegerResult { .. }));
    }

    #[test]
    fn csv_round_trip_text() {
        let w = WeightEnumerator::of_code(&code::e8()).unwrap();
        assert_eq!(w.to_csv(), "1,0,0,0,14,0,0,0,1");
    }

    #[test]
    fn swap_vars() {
        let h = WeightEnumerator::of_code(&code::hamming()).unwrap();
        let s = h.swap_vars();
        assert_eq!(s.coeff(0), h.coeff(7));
        assert_eq!(s.coeff(3), h.coeff(4));
    }
}

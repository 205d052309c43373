//! Exact arithmetic in the 8th cyclotomic field `Q(z)`, `z = exp(i*pi/4)`.
//!
//! Elements are stored as `c0 + c1*z + c2*z^2 + c3*z^3` with rational
//! coordinates and the reduction rule `z^4 = -1`.  The field contains both
//! scalars needed by the duality-transform matrix groups exactly:
//! `i = z^2` and `sqrt(2) = z - z^3`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

/// An element of `Q(z)` with `z^4 = -1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloRat {
    c: [BigRational; 4],
}

impl CycloRat {
    pub fn new(c: [BigRational; 4]) -> Self {
        CycloRat { c }
    }

    pub fn zero() -> Self {
        CycloRat {
            c: [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        CycloRat::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        CycloRat::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut out = CycloRat::zero();
        out.c[0] = q;
        out
    }

    /// `q * z^k` for any integer power `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut out = CycloRat::zero();
        if k < 4 {
            out.c[k] = BigRational::one();
        } else {
            out.c[k - 4] = -BigRational::one();
        }
        out
    }

    /// The imaginary unit `i = z^2`.
    pub fn i() -> Self {
        CycloRat::zeta_pow(2)
    }

    /// `sqrt(2) = z - z^3`.
    pub fn sqrt2() -> Self {
        CycloRat::zeta_pow(1) - CycloRat::zeta_pow(3)
    }

    /// `1/sqrt(2) = sqrt(2)/2`.
    pub fn inv_sqrt2() -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        CycloRat::sqrt2() * CycloRat::from_rational(half)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &CycloRat::one()
    }

    /// The rational coordinate vector `(c0, c1, c2, c3)`.
    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Galois conjugate `z -> z^k` for odd `k` (1, 3, 5, 7).
    pub fn galois(&self, k: u8) -> Self {
        assert!(k % 2 == 1 && k < 8, "Galois exponents are odd mod 8");
        let mut out = CycloRat::zero();
        for (j, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let e = (j as i64 * k as i64).rem_euclid(8) as usize;
            if e < 4 {
                out.c[e] += coeff;
            } else {
                out.c[e - 4] -= coeff;
            }
        }
        out
    }

    /// Multiplicative inverse via the product of all Galois conjugates:
    /// `x * g3(x) * g5(x) * g7(x)` is the rational field norm.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let cofactor = self.galois(3) * self.galois(5) * self.galois(7);
        let norm = self.clone() * cofactor.clone();
        let norm = norm
            .as_rational()
            .expect("the norm is rational")
            .clone();
        assert!(!norm.is_zero());
        cofactor * CycloRat::from_rational(norm.recip())
    }
}

impl Add for CycloRat {
    type Output = CycloRat;
    fn add(self, rhs: CycloRat) -> CycloRat {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        CycloRat {
            c: [a0 + b0, a1 + b1, a2 + b2, a3 + b3],
        }
    }
}

impl Sub for CycloRat {
    type Output = CycloRat;
    fn sub(self, rhs: CycloRat) -> CycloRat {
        self + (-rhs)
    }
}

impl Neg for CycloRat {
    type Output = CycloRat;
    fn neg(self) -> CycloRat {
        let [a0, a1, a2, a3] = self.c;
        CycloRat {
            c: [-a0, -a1, -a2, -a3],
        }
    }
}

impl Mul for CycloRat {
    type Output = CycloRat;
    fn mul(self, rhs: CycloRat) -> CycloRat {
        let mut out = CycloRat::zero();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let e = i + j;
                if e < 4 {
                    out.c[e] += prod;
                } else {
                    out.c[e - 4] -= prod;
                }
            }
        }
        out
    }
}

impl Div for CycloRat {
    type Output = CycloRat;
    // Field division is multiplication by the inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: CycloRat) -> CycloRat {
        self * rhs.inverse()
    }
}

impl fmt::Debug for CycloRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, coeff) in self.c.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if coeff < &BigRational::zero() { " - " } else { " + " })?;
            } else if coeff < &BigRational::zero() {
                f.write_str("-")?;
            }
            let mag = if coeff < &BigRational::zero() {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            if j == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                if j > 0 {
                    f.write_str("*")?;
                }
            }
            match j {
                0 => {}
                1 => f.write_str("z")?,
                2 => f.write_str("z^2")?,
                _ => f.write_str("z^3")?,
            }
            first = false;
        }
        Ok(())
    }
}

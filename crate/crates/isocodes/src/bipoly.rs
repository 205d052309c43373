//! Bivariate polynomials over the 8th cyclotomic field, with the linear
//! `GL_2` substitution action `(g.f)(u) = f(g^{-1} u)` and finite matrix
//! group closures.
//!
//! This is the substrate for the weight-enumerator structure theorems: the
//! duality transform corresponds to the matrix `A` (which carries
//! `1/sqrt(2)`), parity constraints to the diagonal matrices `X` and `B`
//! (which carries `i`), and the theorems assert membership of enumerators
//! in modules over the invariant rings of the groups generated by them.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use crate::cyclo::CycloRat;
use crate::wenum::{binomial, WeightEnumerator};

/// Sparse bivariate polynomial: `(i, j) -> coefficient of x^i y^j`.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), CycloRat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(i: u32, j: u32, c: CycloRat) -> Self {
        let mut p = BiPoly::zero();
        p.insert(i, j, c);
        p
    }

    pub fn one() -> Self {
        BiPoly::monomial(0, 0, CycloRat::one())
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 0, CycloRat::one())
    }

    pub fn y() -> Self {
        BiPoly::monomial(0, 1, CycloRat::one())
    }

    /// Builds a polynomial from integer monomial data `(i, j, coeff)`.
    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = BiPoly::zero();
        for &(i, j, c) in terms {
            p.insert(i, j, CycloRat::from_int(c));
        }
        p
    }

    /// The polynomial `sum A_w x^w y^(n-w)` of a weight enumerator.
    pub fn from_enumerator(w: &WeightEnumerator) -> Self {
        let n = w.n() as u32;
        let mut p = BiPoly::zero();
        for (i, c) in w.coeffs().iter().enumerate() {
            p.insert(
                i as u32,
                n - i as u32,
                CycloRat::from_rational(BigRational::from_integer(c.clone())),
            );
        }
        p
    }

    fn insert(&mut self, i: u32, j: u32, c: CycloRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CycloRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> CycloRat {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(CycloRat::zero)
    }

    /// Total degree if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (i, j) in self.terms.keys() {
            let d = i + j;
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.insert(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.insert(i, j, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycloRat) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), coeff) in &self.terms {
            out.insert(i, j, coeff.clone() * c.clone());
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> BiPoly {
        self.scale(&CycloRat::from_int(c))
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.insert(i1 + i2, j1 + j2, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut out = BiPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// `f(y, x)`.
    pub fn swap_xy(&self) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.insert(j, i, c.clone());
        }
        out
    }

    /// Linear substitution `f(a x + b y, c x + d y)` where
    /// `m = [[a, b], [c, d]]`, computed by exact binomial expansion.
    pub fn subst_linear(&self, m: &Matrix2) -> BiPoly {
        let [[a, b], [c, d]] = &m.entries;
        // Precompute powers of the two linear forms on demand per term.
        let form1 = {
            let mut p = BiPoly::zero();
            p.insert(1, 0, a.clone());
            p.insert(0, 1, b.clone());
            p
        };
        let form2 = {
            let mut p = BiPoly::zero();
            p.insert(1, 0, c.clone());
            p.insert(0, 1, d.clone());
            p
        };
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut pow1 = Vec::with_capacity(max_i as usize + 1);
        let mut pow2 = Vec::with_capacity(max_j as usize + 1);
        pow1.push(BiPoly::one());
        for e in 1..=max_i {
            let next = pow1[e as usize - 1].mul(&form1);
            pow1.push(next);
        }
        pow2.push(BiPoly::one());
        for e in 1..=max_j {
            let next = pow2[e as usize - 1].mul(&form2);
            pow2.push(next);
        }
        let mut out = BiPoly::zero();
        for (&(i, j), coeff) in &self.terms {
            let term = pow1[i as usize].mul(&pow2[j as usize]).scale(coeff);
            out = out.add(&term);
        }
        out
    }

    /// True when every coefficient lies in the rational subfield.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Ascending x-exponent, then ascending y-exponent.
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|&&(i, j)| (i, j));
        let mut first = true;
        for &&(i, j) in &keys {
            let c = &self.terms[&(i, j)];
            let (neg, mag) = match c.as_rational() {
                Some(q) if q < &BigRational::zero() => (true, (-c.clone()).to_string()),
                Some(_) => (false, c.to_string()),
                None => (false, format!("({c})")),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit_mag = mag == "1";
            if !unit_mag || (i == 0 && j == 0) {
                f.write_str(&mag)?;
            }
            if i > 0 {
                write!(f, "x")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
            if j > 0 {
                write!(f, "y")?;
                if j > 1 {
                    write!(f, "^{j}")?;
                }
            }
        }
        Ok(())
    }
}

/// A 2x2 matrix over the 8th cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub entries: [[CycloRat; 2]; 2],
}

impl Matrix2 {
    pub fn new(entries: [[CycloRat; 2]; 2]) -> Self {
        Matrix2 { entries }
    }

    pub fn identity() -> Self {
        Matrix2::new([
            [CycloRat::one(), CycloRat::zero()],
            [CycloRat::zero(), CycloRat::one()],
        ])
    }

    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = [
            [CycloRat::zero(), CycloRat::zero()],
            [CycloRat::zero(), CycloRat::zero()],
        ];
        for (r, out_row) in out.iter_mut().enumerate() {
            for (c, cell) in out_row.iter_mut().enumerate() {
                *cell = a[r][0].clone() * b[0][c].clone() + a[r][1].clone() * b[1][c].clone();
            }
        }
        Matrix2::new(out)
    }

    pub fn det(&self) -> CycloRat {
        let e = &self.entries;
        e[0][0].clone() * e[1][1].clone() - e[0][1].clone() * e[1][0].clone()
    }

    pub fn inverse(&self) -> Matrix2 {
        let det = self.det();
        assert!(!det.is_zero(), "singular matrix");
        let inv = det.inverse();
        let e = &self.entries;
        Matrix2::new([
            [e[1][1].clone() * inv.clone(), -(e[0][1].clone() * inv.clone())],
            [-(e[1][0].clone() * inv.clone()), e[0][0].clone() * inv],
        ])
    }

    pub fn neg(&self) -> Matrix2 {
        Matrix2::new([
            [-self.entries[0][0].clone(), -self.entries[0][1].clone()],
            [-self.entries[1][0].clone(), -self.entries[1][1].clone()],
        ])
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

/// The duality-transform matrix `(1/sqrt 2) [[1, 1], [-1, 1]]`.
pub fn mat_a() -> Matrix2 {
    let r = CycloRat::inv_sqrt2();
    Matrix2::new([
        [r.clone(), r.clone()],
        [-r.clone(), r],
    ])
}

/// The parity reflection `diag(-1, 1)`.
pub fn mat_x() -> Matrix2 {
    Matrix2::new([
        [-CycloRat::one(), CycloRat::zero()],
        [CycloRat::zero(), CycloRat::one()],
    ])
}

/// The quarter-turn `diag(i, 1)`.
pub fn mat_b() -> Matrix2 {
    Matrix2::new([
        [CycloRat::i(), CycloRat::zero()],
        [CycloRat::zero(), CycloRat::one()],
    ])
}

/// `(g.f)(u) = f(g^{-1} u)`: substitute the rows of `g^{-1}` for `x, y`.
pub fn act(g: &Matrix2, f: &BiPoly) -> BiPoly {
    f.subst_linear(&g.inverse())
}

/// All elements of the group generated by `gens`, by breadth-first closure.
pub fn group_closure(gens: &[Matrix2]) -> Vec<Matrix2> {
    let mut seen: HashSet<Matrix2> = HashSet::new();
    let mut queue: Vec<Matrix2> = vec![Matrix2::identity()];
    seen.insert(Matrix2::identity());
    let mut out = Vec::new();
    while let Some(m) = queue.pop() {
        out.push(m.clone());
        for g in gens {
            let next = m.mul(g);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    out
}

/// A 1-dimensional character given by its values on specific generators.
#[derive(Clone, Debug)]
pub struct Character {
    pub pairs: Vec<(Matrix2, CycloRat)>,
}

impl Character {
    pub fn new(pairs: Vec<(Matrix2, CycloRat)>) -> Self {
        Character { pairs }
    }
}

/// `g.f = f` for every generator.
pub fn is_invariant(f: &BiPoly, gens: &[Matrix2]) -> bool {
    gens.iter().all(|g| act(g, f) == *f)
}

/// `g.f = chi(g) f` for every generator listed in the character.
pub fn is_semi_invariant(f: &BiPoly, chi: &Character) -> bool {
    chi.pairs
        .iter()
        .all(|(g, v)| act(g, f) == f.scale(v))
}

/// Exact scaled substitution `2^(-d/2) f(x - y, x + y)` for homogeneous
/// `f` of degree `d`, staying inside the cyclotomic field (`2^(1/2)` is
/// exact there).  This is an independent route to `act(mat_a(), f)`.
pub fn scaled_dual_substitution(f: &BiPoly) -> BiPoly {
    let d = f
        .homogeneous_degree()
        .expect("scaled substitution needs homogeneous input");
    // x -> x - y, y -> x + y.
    let m = Matrix2::new([
        [CycloRat::one(), -CycloRat::one()],
        [CycloRat::one(), CycloRat::one()],
    ]);
    let sub = f.subst_linear(&m);
    let mut scale = CycloRat::one();
    let half = CycloRat::from_rational(BigRational::new(BigInt::one(), BigInt::from(2)));
    for _ in 0..d / 2 {
        scale = scale * half.clone();
    }
    if d % 2 == 1 {
        scale = scale * CycloRat::inv_sqrt2();
    }
    sub.scale(&scale)
}

/// Re-exported convenience: binomial coefficients as exact rationals.
pub fn binomial_rat(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

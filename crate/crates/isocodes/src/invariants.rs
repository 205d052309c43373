//! Exact invariant-theoretic verification of the weight-enumerator
//! structure theorems.
//!
//! Two finite matrix groups drive everything:
//!
//! * the order-16 dihedral group generated by the duality transform `A`
//!   and the parity reflection `X = diag(-1, 1)`, whose invariant ring is
//!   `C[s, t]` with `s = x^2 + y^2`, `t = x^2 y^2 (x^2 - y^2)^2`;
//! * the order-192 group generated by `A` and `B = diag(i, 1)`, whose
//!   invariant ring is `C[S, T]` with `S = y^8 + 14 x^4 y^4 + x^8`,
//!   `T = x^4 y^4 (x^4 - y^4)^4`.
//!
//! The theorems say that (parts of) weight enumerators of maximal totally
//! isotropic codes lie in small free modules over these rings.  Membership
//! is decided exactly by solving a rational linear system over the
//! candidate monomials `g_i s^alpha t^beta` in the relevant degree.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};
use thiserror::Error;

use crate::bipoly::{
    act, group_closure, is_invariant, is_semi_invariant, mat_a, mat_b, mat_x, BiPoly, Character,
    Matrix2,
};
use crate::code::{CodeError, CodeType, LinearCode};
use crate::cyclo::CycloRat;
use crate::wenum::WeightEnumerator;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("membership target must be homogeneous of the stated degree")]
    Inhomogeneous,
    #[error("membership inputs must have rational coefficients")]
    Irrational,
    #[error(transparent)]
    Code(#[from] CodeError),
}

// ---------------------------------------------------------------------------
// Named polynomials.
// ---------------------------------------------------------------------------

/// `s = x^2 + y^2`, first invariant of the order-16 group.
pub fn d8_s() -> BiPoly {
    BiPoly::from_terms(&[(2, 0, 1), (0, 2, 1)])
}

/// `t = x^2 y^2 (x^2 - y^2)^2`, second invariant of the order-16 group.
pub fn d8_t() -> BiPoly {
    let xy = BiPoly::from_terms(&[(1, 1, 1)]);
    let diff = BiPoly::from_terms(&[(2, 0, 1), (0, 2, -1)]);
    xy.pow(2).mul(&diff.pow(2))
}

/// `a = y^7 + 7 x^4 y^3`, the even enumerator of the distance-4 length-7
/// self-orthogonal code.
pub fn poly_a() -> BiPoly {
    BiPoly::from_terms(&[(0, 7, 1), (4, 3, 7)])
}

/// `b = a(y, x) = x^7 + 7 x^3 y^4`.
pub fn poly_b() -> BiPoly {
    poly_a().swap_xy()
}

/// `D = y b - x a`, the basic odd semi-invariant of the order-16 group.
pub fn poly_d() -> BiPoly {
    BiPoly::y().mul(&poly_b()).sub(&BiPoly::x().mul(&poly_a()))
}

/// `S = y^8 + 14 x^4 y^4 + x^8`, first invariant of the order-192 group.
pub fn g_s() -> BiPoly {
    BiPoly::from_terms(&[(0, 8, 1), (4, 4, 14), (8, 0, 1)])
}

/// `T = x^4 y^4 (x^4 - y^4)^4`, second invariant of the order-192 group.
pub fn g_t() -> BiPoly {
    let xy = BiPoly::from_terms(&[(1, 1, 1)]);
    let diff = BiPoly::from_terms(&[(4, 0, 1), (0, 4, -1)]);
    xy.pow(4).mul(&diff.pow(4))
}

/// `p = 2 x y (y^4 - x^4)`.
pub fn g_p() -> BiPoly {
    BiPoly::from_terms(&[(1, 1, 2)]).mul(&BiPoly::from_terms(&[(0, 4, 1), (4, 0, -1)]))
}

/// `w = x^2 y^2 (x^4 - y^4)^2`.
pub fn g_w() -> BiPoly {
    let xy = BiPoly::from_terms(&[(1, 1, 1)]);
    let diff = BiPoly::from_terms(&[(4, 0, 1), (0, 4, -1)]);
    xy.pow(2).mul(&diff.pow(2))
}

/// `u = -(1/2)(x^12 - 33 x^8 y^4 - 33 x^4 y^8 + y^12)`.
pub fn g_u() -> BiPoly {
    let half = CycloRat::from_rational(BigRational::new(BigInt::from(-1), BigInt::from(2)));
    BiPoly::from_terms(&[(12, 0, 1), (8, 4, -33), (4, 8, -33), (0, 12, 1)]).scale(&half)
}

pub fn g_d1() -> BiPoly {
    g_p().mul(&g_u())
}

pub fn g_d2() -> BiPoly {
    g_p().mul(&g_u()).mul(&g_w())
}

pub fn g_d3() -> BiPoly {
    g_p().mul(&g_w())
}

pub fn g_d4() -> BiPoly {
    g_u().mul(&g_w())
}

/// `u1 = y^17 + 17 x^4 y^13 + 187 x^8 y^9 + 51 x^12 y^5` (degree 17).
pub fn odd2_u1() -> BiPoly {
    BiPoly::from_terms(&[(0, 17, 1), (4, 13, 17), (8, 9, 187), (12, 5, 51)])
}

/// `u2 = y^23 + 506 x^8 y^15 + 1288 x^12 y^11 + 253 x^16 y^7` (degree 23).
pub fn odd2_u2() -> BiPoly {
    BiPoly::from_terms(&[(0, 23, 1), (8, 15, 506), (12, 11, 1288), (16, 7, 253)])
}

/// `p1 = 2xy`: the odd enumerator sum of the length-2 odd pair.
pub fn even_p1() -> BiPoly {
    BiPoly::from_terms(&[(1, 1, 2)])
}

/// `p2 = y^2 - x^2`.
pub fn even_p2() -> BiPoly {
    BiPoly::from_terms(&[(0, 2, 1), (2, 0, -1)])
}

/// `q1 = x y^5 - 2 x^3 y^3 + x^5 y`.
pub fn even_q1() -> BiPoly {
    BiPoly::from_terms(&[(1, 5, 1), (3, 3, -2), (5, 1, 1)])
}

/// `q2 = 2 x^2 y^2 (y^2 - x^2)`.
pub fn even_q2() -> BiPoly {
    BiPoly::from_terms(&[(2, 2, 2)]).mul(&even_p2())
}

/// The semi-invariant table of the order-192 group: name, value on the
/// transform `A`, value on `B`, and the basic semi-invariant of that weight.
pub fn g_semi_invariant_table() -> Vec<(&'static str, CycloRat, CycloRat, BiPoly)> {
    let one = CycloRat::one;
    let i = CycloRat::i;
    vec![
        ("p", -one(), -i(), g_p()),
        ("w", one(), -one(), g_w()),
        ("u", -one(), one(), g_u()),
        ("D1", one(), -i(), g_d1()),
        ("D2", one(), i(), g_d2()),
        ("D3", -one(), i(), g_d3()),
        ("D4", -one(), -one(), g_d4()),
    ]
}

// ---------------------------------------------------------------------------
// Identity verification.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub items: Vec<CheckItem>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(|c| c.ok)
    }
    fn push(&mut self, name: &str, ok: bool) {
        self.items.push(CheckItem {
            name: name.to_string(),
            ok,
        });
    }
}

/// Verifies the exact polynomial identities behind the structure theorems,
/// the full semi-invariant character table, and the two group orders.
pub fn verify_semi_invariant_identities() -> IdentityReport {
    let mut rep = IdentityReport::default();
    let (s, t) = (d8_s(), d8_t());
    let (gs, gt) = (g_s(), g_t());
    let (p, w, u) = (g_p(), g_w(), g_u());
    let d = poly_d();

    rep.push("group-order-16", group_closure(&[mat_a(), mat_x()]).len() == 16);
    rep.push("group-order-192", group_closure(&[mat_a(), mat_b()]).len() == 192);
    rep.push(
        "small-ring-invariance",
        is_invariant(&s, &[mat_a(), mat_x()]) && is_invariant(&t, &[mat_a(), mat_x()]),
    );
    rep.push(
        "large-ring-invariance",
        is_invariant(&gs, &[mat_a(), mat_b()]) && is_invariant(&gt, &[mat_a(), mat_b()]),
    );
    rep.push(
        "D-semi-invariant",
        is_semi_invariant(
            &d,
            &Character::new(vec![(mat_a(), CycloRat::one()), (mat_x(), -CycloRat::one())]),
        ),
    );
    // D^2 = t (s^4 - 16 t).
    rep.push(
        "D-squared",
        d.pow(2) == t.mul(&s.pow(4).sub(&t.scale_int(16))),
    );
    // w^2 = T.
    rep.push("w-squared", w.pow(2) == gt);
    // 4 u^2 = S^3 - 108 T.
    rep.push(
        "u-squared",
        u.pow(2).scale_int(4) == gs.pow(3).sub(&gt.scale_int(108)),
    );
    // p^2 = 4 w and p^2 w = 4 T.
    rep.push("p-squared", p.pow(2) == w.scale_int(4));
    rep.push("p-squared-w", p.pow(2).mul(&w) == gt.scale_int(4));
    // D1^2 w = T (S^3 - 108 T).
    rep.push(
        "D1-squared-w",
        g_d1().pow(2).mul(&w) == gt.mul(&gs.pow(3).sub(&gt.scale_int(108))),
    );
    // s^4 - 4 t = S.
    rep.push("ring-bridge", s.pow(4).sub(&t.scale_int(4)) == gs);
    // Character table rows.
    for (name, on_a, on_b, f) in g_semi_invariant_table() {
        let chi = Character::new(vec![(mat_a(), on_a), (mat_b(), on_b)]);
        rep.push(&format!("table-{name}"), is_semi_invariant(&f, &chi));
    }
    // D1 = y u1(y,x) - x u1(x,y).
    let (u1, w1) = (odd2_u1(), odd2_u1().swap_xy());
    rep.push(
        "D1-from-u1",
        g_d1() == BiPoly::y().mul(&w1).sub(&BiPoly::x().mul(&u1)),
    );
    // 7 D2 = a u2(y,x) - b u2(x,y).
    let (u2, w2) = (odd2_u2(), odd2_u2().swap_xy());
    rep.push(
        "7D2-from-u2",
        g_d2().scale_int(7) == poly_a().mul(&w2).sub(&poly_b().mul(&u2)),
    );
    // p1 q2 - p2 q1 = D.
    rep.push(
        "even-pair-determinant",
        even_p1().mul(&even_q2()).sub(&even_p2().mul(&even_q1())) == d,
    );
    // The transform pairs (a, b), (u1, w1), (u2, w2) each behave like
    // (y, x): A sends the first to (1/sqrt 2)(second + first), and B fixes
    // the first while scaling the second by -i (degree 1 mod 4) or
    // i (degree 3 mod 4).
    let r = CycloRat::inv_sqrt2();
    for (name, e1, e2, b_on_e2) in [
        ("a-b", poly_a(), poly_b(), CycloRat::i()),
        ("u1-w1", u1.clone(), w1.clone(), -CycloRat::i()),
        ("u2-w2", u2.clone(), w2.clone(), CycloRat::i()),
    ] {
        let ok = act(&mat_a(), &e1) == e2.add(&e1).scale(&r)
            && act(&mat_a(), &e2) == e2.sub(&e1).scale(&r)
            && act(&mat_b(), &e1) == e1
            && act(&mat_b(), &e2) == e2.scale(&b_on_e2);
        rep.push(&format!("standard-pair-{name}"), ok);
    }
    rep
}

// ---------------------------------------------------------------------------
// Module membership by exact linear algebra.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTerm {
    pub generator: usize,
    pub s_pow: u32,
    pub t_pow: u32,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipOutcome {
    Member {
        coefficients: Vec<CoeffTerm>,
        unique: bool,
    },
    NotMember,
}

impl MembershipOutcome {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipOutcome::Member { .. })
    }
    pub fn is_unique_member(&self) -> bool {
        matches!(self, MembershipOutcome::Member { unique: true, .. })
    }
}

fn rational_terms(f: &BiPoly) -> Result<BTreeMap<(u32, u32), BigRational>, InvariantError> {
    let mut out = BTreeMap::new();
    for (&k, c) in f.terms() {
        let q = c.as_rational().ok_or(InvariantError::Irrational)?;
        out.insert(k, q.clone());
    }
    Ok(out)
}

/// Solves `rows * x = rhs` over the rationals.  Returns a particular
/// solution (free variables set to zero) and whether it is unique.
// In-place elimination reads one row while rewriting another, so explicit
// indices are clearer than iterator gymnastics here.
#[allow(clippy::needless_range_loop)]
fn solve_rational_system(
    mut rows: Vec<Vec<BigRational>>,
    mut rhs: Vec<BigRational>,
) -> Option<(Vec<BigRational>, bool)> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(pr) = (next_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pr);
        rhs.swap(next_row, pr);
        let inv = rows[next_row][col].clone().recip();
        for c in col..ncols {
            let v = &rows[next_row][c] * &inv;
            rows[next_row][c] = v;
        }
        rhs[next_row] = &rhs[next_row] * &inv;
        for r in 0..nrows {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let v = &rows[r][c] - &factor * &rows[next_row][c];
                    rows[r][c] = v;
                }
                rhs[r] = &rhs[r] - &factor * &rhs[next_row];
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == nrows {
            break;
        }
    }
    if rhs[next_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = rhs[*r].clone();
        }
    }
    let unique = pivot_of_col.iter().all(|p| p.is_some());
    Some((x, unique))
}

/// Decides whether the homogeneous polynomial `f` of degree `deg` lies in
/// the module `sum_i g_i C[s, t]`, returning exact coefficients on the
/// candidate basis `g_i s^alpha t^beta` when it does.  The `unique` flag
/// reports whether that representation is the only one (i.e. whether the
/// candidates are linearly independent in this degree, as asserted by the
/// direct-sum claims).
pub fn module_membership(
    f: &BiPoly,
    deg: u32,
    gens: &[&BiPoly],
    s: &BiPoly,
    t: &BiPoly,
) -> Result<MembershipOutcome, InvariantError> {
    if let Some(d) = f.homogeneous_degree() {
        if d != deg {
            return Err(InvariantError::Inhomogeneous);
        }
    } else if !f.is_zero() {
        return Err(InvariantError::Inhomogeneous);
    }
    let ds = s.homogeneous_degree().ok_or(InvariantError::Inhomogeneous)?;
    let dt = t.homogeneous_degree().ok_or(InvariantError::Inhomogeneous)?;
    // Candidate polynomials g_i s^a t^b of total degree `deg`, stored as
    // (generator index, s power, t power, coefficient map).
    type Candidate = (usize, u32, u32, BTreeMap<(u32, u32), BigRational>);
    let mut candidates: Vec<Candidate> = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let dg = g.homogeneous_degree().ok_or(InvariantError::Inhomogeneous)?;
        if dg > deg {
            continue;
        }
        let rem0 = deg - dg;
        let mut b = 0;
        while b * dt <= rem0 {
            let rem = rem0 - b * dt;
            if rem % ds == 0 {
                let a = rem / ds;
                let poly = g.mul(&s.pow(a)).mul(&t.pow(b));
                candidates.push((gi, a, b, rational_terms(&poly)?));
            }
            b += 1;
        }
    }
    let target = rational_terms(f)?;
    // Row index: every monomial appearing anywhere.
    let mut monomials: std::collections::BTreeSet<(u32, u32)> = target.keys().cloned().collect();
    for (_, _, _, c) in &candidates {
        monomials.extend(c.keys().cloned());
    }
    let monomials: Vec<(u32, u32)> = monomials.into_iter().collect();
    let rows: Vec<Vec<BigRational>> = monomials
        .iter()
        .map(|m| {
            candidates
                .iter()
                .map(|(_, _, _, c)| c.get(m).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = monomials
        .iter()
        .map(|m| target.get(m).cloned().unwrap_or_else(BigRational::zero))
        .collect();
    match solve_rational_system(rows, rhs) {
        None => Ok(MembershipOutcome::NotMember),
        Some((x, unique)) => {
            let coefficients = candidates
                .iter()
                .zip(&x)
                .filter(|(_, v)| !v.is_zero())
                .map(|((gi, a, b, _), v)| CoeffTerm {
                    generator: *gi,
                    s_pow: *a,
                    t_pow: *b,
                    value: v.clone(),
                })
                .collect();
            Ok(MembershipOutcome::Member {
                coefficients,
                unique,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Theorem checkers.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct MembershipCheck {
    /// What is being placed (e.g. `W+`, `W-(x,y)+W-(y,x)`).
    pub target: String,
    /// Human-readable module description.
    pub module: String,
    /// Generator names, indexed by `CoeffTerm::generator`.
    pub generator_names: Vec<String>,
    pub member: bool,
    pub unique: bool,
    pub coefficients: Vec<CoeffTerm>,
}

impl MembershipCheck {
    pub fn ok(&self) -> bool {
        self.member && self.unique
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: String,
    pub n: usize,
    pub memberships: Vec<MembershipCheck>,
    pub extra: Vec<CheckItem>,
}

impl TheoremReport {
    pub fn ok(&self) -> bool {
        self.memberships.iter().all(|m| m.ok()) && self.extra.iter().all(|c| c.ok)
    }
}

fn membership_check(
    target_name: &str,
    f: &BiPoly,
    deg: u32,
    named_gens: &[(&str, &BiPoly)],
    s: &BiPoly,
    t: &BiPoly,
) -> Result<MembershipCheck, InvariantError> {
    let gens: Vec<&BiPoly> = named_gens.iter().map(|(_, g)| *g).collect();
    let outcome = module_membership(f, deg, &gens, s, t)?;
    let module = named_gens
        .iter()
        .map(|(n, _)| format!("{n}*R"))
        .collect::<Vec<_>>()
        .join(" (+) ");
    let (member, unique, coefficients) = match outcome {
        MembershipOutcome::Member {
            coefficients,
            unique,
        } => (true, unique, coefficients),
        MembershipOutcome::NotMember => (false, false, Vec::new()),
    };
    Ok(MembershipCheck {
        target: target_name.to_string(),
        module,
        generator_names: named_gens.iter().map(|(n, _)| n.to_string()).collect(),
        member,
        unique,
        coefficients,
    })
}

/// The four enumerator parts `e1 = W+(x,y)`, `e2 = W-(x,y)` and their
/// variable swaps, as exact polynomials.
fn enumerator_parts(code: &LinearCode) -> Result<(BiPoly, BiPoly), InvariantError> {
    let w = WeightEnumerator::of_code(code)?;
    Ok((
        BiPoly::from_enumerator(&w.even_part()),
        BiPoly::from_enumerator(&w.odd_part()),
    ))
}

/// Structure theorem for maximal totally isotropic codes of odd length:
/// `W+` lies in `y C[s,t] (+) a C[s,t]` and `W-` in `x C[s,t] (+) b C[s,t]`
/// over the order-16 ring, the enumerator is recovered from `W+` by the
/// scaled substitution, `W+(x,y) = W-(y,x)`, and the transform acts on
/// `(W+, W-)` as the standard two-dimensional rotation.
pub fn check_thm_odd_general(code: &LinearCode) -> Result<TheoremReport, InvariantError> {
    let n = code.len();
    if n % 2 == 0 {
        return Err(InvariantError::Precondition(format!(
            "length {n} is even; this theorem addresses odd lengths"
        )));
    }
    if !code.is_max_totally_isotropic() {
        return Err(InvariantError::Precondition(
            "code is not maximal totally isotropic".into(),
        ));
    }
    let (e1, e2) = enumerator_parts(code)?;
    let (s, t) = (d8_s(), d8_t());
    let memberships = vec![
        membership_check(
            "W+",
            &e1,
            n as u32,
            &[("y", &BiPoly::y()), ("a", &poly_a())],
            &s,
            &t,
        )?,
        membership_check(
            "W-",
            &e2,
            n as u32,
            &[("x", &BiPoly::x()), ("b", &poly_b())],
            &s,
            &t,
        )?,
    ];
    let mut extra = Vec::new();
    // W = 2^-m W+(y - x, y + x) with n - 1 = 2m.
    let m = (n - 1) / 2;
    let sub = e1.subst_linear(&Matrix2::new([
        [-CycloRat::one(), CycloRat::one()],
        [CycloRat::one(), CycloRat::one()],
    ]));
    let scale = CycloRat::from_rational(BigRational::new(
        BigInt::one(),
        BigInt::from(2u8).pow(m as u32),
    ));
    extra.push(CheckItem {
        name: "enumerator-determined-by-even-part".into(),
        ok: sub.scale(&scale) == e1.add(&e2),
    });
    extra.push(CheckItem {
        name: "even-odd-swap-symmetry".into(),
        ok: e1 == e2.swap_xy(),
    });
    let r = CycloRat::inv_sqrt2();
    extra.push(CheckItem {
        name: "standard-representation".into(),
        ok: act(&mat_a(), &e1) == e1.add(&e2).scale(&r)
            && act(&mat_a(), &e2) == e2.sub(&e1).scale(&r),
    });
    Ok(TheoremReport {
        theorem: "odd-general".into(),
        n,
        memberships,
        extra,
    })
}

/// Whether the refined odd-length theorem applies: every even-subcode
/// weight is divisible by 4.
pub fn odd_type_ii_applicable(code: &LinearCode) -> Result<bool, InvariantError> {
    let w = WeightEnumerator::of_code(code)?;
    Ok(w
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, c)| i % 2 == 1 || i % 4 == 0 || c.is_zero()))
}

/// Refined theorem for odd length when all even-subcode weights are
/// divisible by 4: the length is congruent to 1 or -1 mod 8, and `W+`
/// lies in `y R (+) u1 R` resp. `a R (+) u2 R` over the order-192 ring.
pub fn check_thm_odd_type_ii(code: &LinearCode) -> Result<TheoremReport, InvariantError> {
    let n = code.len();
    if n % 2 == 0 {
        return Err(InvariantError::Precondition(format!(
            "length {n} is even; this theorem addresses odd lengths"
        )));
    }
    if !code.is_max_totally_isotropic() {
        return Err(InvariantError::Precondition(
            "code is not maximal totally isotropic".into(),
        ));
    }
    if !odd_type_ii_applicable(code)? {
        return Err(InvariantError::Precondition(
            "even subcode has a weight not divisible by 4".into(),
        ));
    }
    let (e1, _) = enumerator_parts(code)?;
    let (s, t) = (g_s(), g_t());
    let mut memberships = Vec::new();
    let mut extra = vec![CheckItem {
        name: "length-is-plus-minus-1-mod-8".into(),
        ok: n % 8 == 1 || n % 8 == 7,
    }];
    match n % 8 {
        1 => memberships.push(membership_check(
            "W+",
            &e1,
            n as u32,
            &[("y", &BiPoly::y()), ("u1", &odd2_u1())],
            &s,
            &t,
        )?),
        7 => memberships.push(membership_check(
            "W+",
            &e1,
            n as u32,
            &[("a", &poly_a()), ("u2", &odd2_u2())],
            &s,
            &t,
        )?),
        _ => extra.push(CheckItem {
            name: "membership-skipped-no-branch-applies".into(),
            ok: false,
        }),
    }
    Ok(TheoremReport {
        theorem: "odd-type2".into(),
        n,
        memberships,
        extra,
    })
}

/// Structure theorem for Lagrangian codes of even length over the
/// order-16 ring: symmetrized/antisymmetrized halves of the enumerator lie
/// in `C[s,t]`, `D C[s,t]`, `p1 C (+) q1 C` and `p2 C (+) q2 C`.
pub fn check_thm_even_general(code: &LinearCode) -> Result<TheoremReport, InvariantError> {
    let n = code.len();
    if n % 2 == 1 {
        return Err(InvariantError::Precondition(format!(
            "length {n} is odd; this theorem addresses even lengths"
        )));
    }
    if !code.is_lagrangian() {
        return Err(InvariantError::Precondition("code is not Lagrangian".into()));
    }
    let (e1, e2) = enumerator_parts(code)?;
    let (e3, e4) = (e1.swap_xy(), e2.swap_xy());
    let (s, t) = (d8_s(), d8_t());
    let one = BiPoly::one();
    let deg = n as u32;
    let memberships = vec![
        membership_check("W+(x,y)+W+(y,x)", &e1.add(&e3), deg, &[("1", &one)], &s, &t)?,
        membership_check(
            "W-(x,y)-W-(y,x)",
            &e2.sub(&e4),
            deg,
            &[("D", &poly_d())],
            &s,
            &t,
        )?,
        membership_check(
            "W-(x,y)+W-(y,x)",
            &e2.add(&e4),
            deg,
            &[("p1", &even_p1()), ("q1", &even_q1())],
            &s,
            &t,
        )?,
        membership_check(
            "W+(x,y)-W+(y,x)",
            &e1.sub(&e3),
            deg,
            &[("p2", &even_p2()), ("q2", &even_q2())],
            &s,
            &t,
        )?,
    ];
    let mut extra = Vec::new();
    // For an odd Lagrangian, e1 + e3 is the enumerator of the associated
    // self-dual code (even subcode plus all-ones); for a self-dual code it
    // is twice the code's own (symmetric) enumerator.
    let mut rows = code.even_subcode().generators().rows().to_vec();
    rows.push(crate::gf2::BitVec::ones(n));
    let parent = LinearCode::from_rows(n, rows);
    let parent_w = BiPoly::from_enumerator(&WeightEnumerator::of_code(&parent)?);
    let sym_ok = if e2.is_zero() {
        e1.add(&e3) == parent_w.scale_int(2)
    } else {
        e1.add(&e3) == parent_w
    };
    extra.push(CheckItem {
        name: "symmetrized-even-part-is-parent-enumerator".into(),
        ok: sym_ok,
    });
    extra.push(CheckItem {
        name: "antisymmetrized-odd-part-weight".into(),
        ok: is_semi_invariant(
            &e2.sub(&e4),
            &Character::new(vec![(mat_a(), CycloRat::one()), (mat_x(), -CycloRat::one())]),
        ),
    });
    let v1 = e2.add(&e4);
    let v2 = e1.sub(&e3);
    extra.push(CheckItem {
        name: "rotation-pair".into(),
        ok: act(&mat_a(), &v1) == v2.neg() && act(&mat_a(), &v2) == v1,
    });
    Ok(TheoremReport {
        theorem: "even-general".into(),
        n,
        memberships,
        extra,
    })
}

/// The common residue mod 4 of the odd weights, if the code has odd words
/// and they all agree (they always do for Type II Lagrangians).
pub fn common_odd_residue(code: &LinearCode) -> Result<Option<u32>, InvariantError> {
    let w = WeightEnumerator::of_code(code)?;
    let mut residue = None;
    for (i, c) in w.coeffs().iter().enumerate() {
        if i % 2 == 1 && !c.is_zero() {
            match residue {
                None => residue = Some((i % 4) as u32),
                Some(r) if r != (i % 4) as u32 => return Ok(None),
                _ => {}
            }
        }
    }
    Ok(residue)
}

/// The generator table of one refined Type II theorem branch: a single
/// generator for the `v0` module and three generators for each of the
/// `v1, v2, v3` modules, all over the order-192 ring.
pub struct TypeIiTable {
    pub branch: &'static str,
    pub v0: (&'static str, BiPoly),
    /// `rows[i]` generates the module containing `v_{i+1}`.
    pub rows: [Vec<(&'static str, BiPoly)>; 3],
}

/// `y^2 + x^2` (the third basic quadratic next to `2xy` and `y^2 - x^2`).
fn quad_sum() -> BiPoly {
    BiPoly::from_terms(&[(0, 2, 1), (2, 0, 1)])
}

/// Table for Type II Lagrangians of length 0 mod 4 (which forces
/// 0 mod 8).  `negate_p3` selects the variant used when all odd weights
/// are 3 mod 4; it flips the sign of each generator at most, so both
/// variants span the same modules.
pub fn type_ii_table_0_mod_8(negate_p3: bool) -> TypeIiTable {
    let p1 = even_p1();
    let p2 = even_p2();
    let p3 = if negate_p3 {
        quad_sum().neg()
    } else {
        quad_sum()
    };
    let q1 = p2.mul(&p3);
    let q2 = p1.mul(&p3).neg();
    let q3 = p1.mul(&p2);
    let r1 = p1.pow(3);
    let r2 = p2.pow(3);
    let r3 = p3.pow(3).neg();
    let p = p1.mul(&p2).mul(&p3);
    let w = g_w();
    let pw = p.mul(&w);
    TypeIiTable {
        branch: "even-type2(0 mod 8)",
        v0: ("1", BiPoly::one()),
        rows: [
            vec![
                ("p(q1r3+q3r1)", p.mul(&q1.mul(&r3).add(&q3.mul(&r1)))),
                ("p1r3-p3r1", p1.mul(&r3).sub(&p3.mul(&r1))),
                ("-pw(p1q3+p3q1)", pw.mul(&p1.mul(&q3).add(&p3.mul(&q1))).neg()),
            ],
            vec![
                ("p(q3r2-q2r3)", p.mul(&q3.mul(&r2).sub(&q2.mul(&r3)))),
                ("p2r3-p3r2", p2.mul(&r3).sub(&p3.mul(&r2))),
                ("pw(p3q2-p2q3)", pw.mul(&p3.mul(&q2).sub(&p2.mul(&q3)))),
            ],
            vec![
                ("-p(q2r1+q1r2)", p.mul(&q2.mul(&r1).add(&q1.mul(&r2))).neg()),
                ("p2r1-p1r2", p2.mul(&r1).sub(&p1.mul(&r2))),
                ("pw(p2q1+p1q2)", pw.mul(&p2.mul(&q1).add(&p1.mul(&q2)))),
            ],
        ],
    }
}

/// Shared `r` triple of the 2 mod 4 branches.
fn r_triple() -> (BiPoly, BiPoly, BiPoly) {
    (
        BiPoly::from_terms(&[(1, 7, 1), (5, 3, 7), (7, 1, 1), (3, 5, 7)]),
        BiPoly::from_terms(&[(0, 8, 1), (8, 0, -1)]),
        BiPoly::from_terms(&[(1, 7, 1), (5, 3, 7), (7, 1, -1), (3, 5, -7)]),
    )
}

/// Table for Type II Lagrangians of length 2 mod 4 with all odd weights
/// 1 mod 4 (which forces length 2 mod 8).
///
/// The sign of `q3` is forced by the required equivariance: the
/// generator `B = diag(i,1)` must send `q3` to `-q2` and `q2` to `-q3`,
/// so `q3 = -(y^2+x^2)(y^4-6x^2y^2+x^4)`.  With this sign the module
/// identity `q2 r3 - q3 r1 = -2 u u1` holds exactly.
pub fn type_ii_table_2_mod_8() -> TypeIiTable {
    let u1 = even_p1();
    let u2 = even_p2();
    let u3 = quad_sum();
    let p1 = u2.mul(&u3).neg();
    let p2 = u1.mul(&u3);
    let p3 = u1.mul(&u2);
    let q1 = BiPoly::from_terms(&[(1, 5, 4), (5, 1, 4)]);
    let q2 = BiPoly::from_terms(&[(0, 6, 1), (2, 4, 5), (4, 2, -5), (6, 0, -1)]);
    let q3 = BiPoly::from_terms(&[(0, 6, -1), (2, 4, 5), (4, 2, 5), (6, 0, -1)]);
    let (r1, r2, r3) = r_triple();
    let p = g_p();
    TypeIiTable {
        branch: "even-type2(2 mod 8)",
        v0: ("pu", p.mul(&g_u())),
        rows: [
            vec![
                ("u1", u1),
                ("p(p3r1-p2r3)", p.mul(&p3.mul(&r1).sub(&p2.mul(&r3)))),
                ("p2q3-p3q2", p2.mul(&q3).sub(&p3.mul(&q2))),
            ],
            vec![
                ("u2", u2),
                ("p(p3r2-p1r3)", p.mul(&p3.mul(&r2).sub(&p1.mul(&r3)))),
                ("p1q3-p3q1", p1.mul(&q3).sub(&p3.mul(&q1))),
            ],
            vec![
                ("u3", u3),
                ("p(p1r1-p2r2)", p.mul(&p1.mul(&r1).sub(&p2.mul(&r2)))),
                ("p2q1-p1q2", p2.mul(&q1).sub(&p1.mul(&q2))),
            ],
        ],
    }
}

/// Table for Type II Lagrangians of length 2 mod 4 with all odd weights
/// 3 mod 4 (which forces length -2 mod 8).
pub fn type_ii_table_minus_2_mod_8() -> TypeIiTable {
    let u1 = even_p1();
    let u2 = even_p2();
    let u3 = quad_sum();
    let p1 = u2.mul(&u3);
    let p2 = u1.mul(&u3).neg();
    let p3 = u1.mul(&u2);
    let q1 = u1.pow(3);
    let q2 = u2.pow(3);
    let q3 = u3.pow(3).neg();
    let (r1, r2, r3) = r_triple();
    let u = g_u();
    TypeIiTable {
        branch: "even-type2(-2 mod 8)",
        v0: ("puw", g_p().mul(&u).mul(&g_w())),
        rows: [
            vec![
                ("q2r3+q3r1", q2.mul(&r3).add(&q3.mul(&r1))),
                ("q1", q1.clone()),
                ("u(p2q3-p3q2)", u.mul(&p2.mul(&q3).sub(&p3.mul(&q2)))),
            ],
            vec![
                ("q3r2-q1r3", q3.mul(&r2).sub(&q1.mul(&r3))),
                ("q2", q2.clone()),
                ("u(p1q3+p3q1)", u.mul(&p1.mul(&q3).add(&p3.mul(&q1)))),
            ],
            vec![
                ("-(q1r1+q2r2)", q1.mul(&r1).add(&q2.mul(&r2)).neg()),
                ("q3", q3.clone()),
                ("-u(p1q2+p2q1)", u.mul(&p1.mul(&q2).add(&p2.mul(&q1))).neg()),
            ],
        ],
    }
}

/// Refined theorems for Type II Lagrangians with odd words, dispatched on
/// length mod 4 and the common odd-weight residue mod 4, over the
/// order-192 ring.  Asserts the forced length residue mod 8 and verifies
/// the tabulated module memberships for `v0..v3`.
pub fn check_thm_even_type_ii(code: &LinearCode) -> Result<TheoremReport, InvariantError> {
    let n = code.len();
    if n % 2 == 1 {
        return Err(InvariantError::Precondition(format!(
            "length {n} is odd; this theorem addresses even lengths"
        )));
    }
    if !code.is_lagrangian() {
        return Err(InvariantError::Precondition("code is not Lagrangian".into()));
    }
    if code.type_of()? != CodeType::II {
        return Err(InvariantError::Precondition("code is not Type II".into()));
    }
    let residue = common_odd_residue(code)?;
    let Some(residue) = residue else {
        return Err(InvariantError::Precondition(
            "code has no odd words or mixed odd residues".into(),
        ));
    };
    let (e1, e2) = enumerator_parts(code)?;
    let (e3, e4) = (e1.swap_xy(), e2.swap_xy());
    let (s, t) = (g_s(), g_t());
    let deg = n as u32;
    let mut extra = vec![CheckItem {
        name: "uniform-odd-residue".into(),
        ok: true,
    }];
    // Targets and table per branch.  For 0 mod 4, v0 is the symmetrized
    // even part; for 2 mod 4 it is the antisymmetrized odd part.
    let (table, targets, residue_name, residue_ok) = if n % 4 == 0 {
        (
            type_ii_table_0_mod_8(residue == 3),
            [
                ("W+(x,y)+W+(y,x)", e1.add(&e3)),
                ("W-(x,y)+W-(y,x)", e2.add(&e4)),
                ("W+(x,y)-W+(y,x)", e1.sub(&e3)),
                ("W-(x,y)-W-(y,x)", e2.sub(&e4)),
            ],
            "length-0-mod-8",
            n % 8 == 0,
        )
    } else {
        let table = if residue == 1 {
            type_ii_table_2_mod_8()
        } else {
            type_ii_table_minus_2_mod_8()
        };
        let (name, ok) = if residue == 1 {
            ("length-2-mod-8", n % 8 == 2)
        } else {
            ("length-minus-2-mod-8", n % 8 == 6)
        };
        (
            table,
            [
                ("W-(x,y)-W-(y,x)", e2.sub(&e4)),
                ("W-(x,y)+W-(y,x)", e2.add(&e4)),
                ("W+(x,y)-W+(y,x)", e1.sub(&e3)),
                ("W+(x,y)+W+(y,x)", e1.add(&e3)),
            ],
            name,
            ok,
        )
    };
    extra.push(CheckItem {
        name: residue_name.into(),
        ok: residue_ok,
    });
    let mut memberships = Vec::new();
    memberships.push(membership_check(
        targets[0].0,
        &targets[0].1,
        deg,
        &[(table.v0.0, &table.v0.1)],
        &s,
        &t,
    )?);
    for (i, row) in table.rows.iter().enumerate() {
        let named: Vec<(&str, &BiPoly)> = row.iter().map(|(n, g)| (*n, g)).collect();
        memberships.push(membership_check(
            targets[i + 1].0,
            &targets[i + 1].1,
            deg,
            &named,
            &s,
            &t,
        )?);
    }
    Ok(TheoremReport {
        theorem: table.branch.into(),
        n,
        memberships,
        extra,
    })
}

/// Runs every checker whose preconditions the code satisfies.
pub fn dispatch_checks(code: &LinearCode) -> Result<Vec<TheoremReport>, InvariantError> {
    let mut out = Vec::new();
    if code.len() % 2 == 1 {
        out.push(check_thm_odd_general(code)?);
        if odd_type_ii_applicable(code)? {
            out.push(check_thm_odd_type_ii(code)?);
        }
    } else {
        out.push(check_thm_even_general(code)?);
        if code.type_of()? == CodeType::II && common_odd_residue(code)?.is_some() {
            out.push(check_thm_even_type_ii(code)?);
        }
    }
    Ok(out)
}

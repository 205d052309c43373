//! Direct-product structure of maximal totally isotropic codes.
//!
//! A code `L` of length `n` splits along a coordinate bipartition when it
//! equals the direct product of its two projections.  For maximal totally
//! isotropic codes the bipartitions that work are exactly the supports of
//! vectors `e` outside `{0, 1}` with `<e, uv> = 0` for every pointwise
//! product `uv` of codewords, so decomposability reduces to a kernel
//! computation.  This module finds splitting vectors, factors codes into
//! indecomposable blocks, and verifies the structural consequences forced
//! by minimum distance 1 (a unit coordinate splits off) and minimum
//! distance 2 (copies of `i2` split off).

use crate::code::{i1, i2, i2_prime, CodeError, LinearCode};
use crate::gf2::BitVec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    /// The kernel criterion is proved only for maximal totally isotropic
    /// codes and for even codes that are maximal among even totally
    /// isotropic subspaces (the even parts of odd-length maximal codes).
    #[error("splitting criterion needs a maximal totally isotropic code or the even part of one")]
    OutsideCriterionDomain,
    #[error("invalid splitting vector: {0}")]
    InvalidSplittingVector(&'static str),
    #[error("code error: {0}")]
    Code(#[from] CodeError),
}

/// Span of all pointwise products `uv` with `u, v` in `l`.
///
/// Pointwise multiplication distributes over addition in `F_2^n`, so the
/// products of generator pairs (including squares, which reproduce the
/// generators themselves) already span the whole set.
pub fn product_span(l: &LinearCode) -> LinearCode {
    let rows = l.generators().rows();
    let mut prods = Vec::with_capacity(rows.len() * (rows.len() + 1) / 2);
    for i in 0..rows.len() {
        for j in i..rows.len() {
            prods.push(rows[i].pointwise(&rows[j]));
        }
    }
    LinearCode::from_rows(l.len(), prods)
}

/// Whether the kernel criterion of [`find_splitting_vector`] is valid for
/// `l`: maximal totally isotropic codes, or even totally isotropic codes
/// of odd length that are maximal among even ones.  Both kinds occur as
/// direct factors of maximal codes, and the class is closed under
/// splitting.
fn criterion_applies(l: &LinearCode) -> bool {
    if l.is_max_totally_isotropic() {
        return true;
    }
    l.len() % 2 == 1
        && l.dim() == (l.len() - 1) / 2
        && l.is_even()
        && l.is_totally_isotropic()
}

/// Lexicographically first vector `e` outside `{0, 1}` with
/// `<e, w> = 0` for all `w` in [`product_span`], or `None` when no such
/// vector exists — which happens exactly when `l` is indecomposable.
///
/// "Lexicographically first" orders vectors by their word encoding with
/// coordinate 0 as the least significant bit, so candidates supported on
/// early coordinates win.  The choice only affects which of several valid
/// splits is reported, never whether one exists.
pub fn find_splitting_vector(l: &LinearCode) -> Result<Option<BitVec>, DecompError> {
    if !criterion_applies(l) {
        return Err(DecompError::OutsideCriterionDomain);
    }
    let kernel = product_span(l).perp_alt();
    let ones = BitVec::ones(l.len());
    let mut best: Option<BitVec> = None;
    kernel.for_each_codeword(|v| {
        if v.is_zero() || *v == ones {
            return;
        }
        match &best {
            Some(b) if b.as_word() <= v.as_word() => {}
            _ => best = Some(v.clone()),
        }
    })?;
    Ok(best)
}

/// Splits `l` along the support of `e` into `(l1, l2, perm)`: `l1` is the
/// projection onto `support(e)`, `l2` the projection onto the complement,
/// and `perm` maps each coordinate of `l1 x l2` back to the original
/// coordinate, so `l1.direct_product(&l2).permute(&perm) == l`.
///
/// The factorization is verified, not assumed: a vector that is not in
/// the product-span kernel, or that fails the reassembly or parity checks
/// (at least one factor must be all-even), is rejected.
pub fn split(
    l: &LinearCode,
    e: &BitVec,
) -> Result<(LinearCode, LinearCode, Vec<usize>), DecompError> {
    let n = l.len();
    if e.len() != n {
        return Err(DecompError::InvalidSplittingVector("length mismatch"));
    }
    if e.is_zero() || *e == BitVec::ones(n) {
        return Err(DecompError::InvalidSplittingVector(
            "the zero and all-ones vectors induce no bipartition",
        ));
    }
    let ps = product_span(l);
    if ps.generators().rows().iter().any(|w| e.alt_inner(w)) {
        return Err(DecompError::InvalidSplittingVector(
            "not orthogonal to all pointwise products",
        ));
    }
    let supp = e.support();
    let comp: Vec<usize> = (0..n).filter(|&i| !e.get(i)).collect();
    let l1 = l.project(&supp);
    let l2 = l.project(&comp);
    if !(l1.is_even() || l2.is_even()) {
        return Err(DecompError::InvalidSplittingVector(
            "neither projection is all-even",
        ));
    }
    let mut perm = supp;
    perm.extend_from_slice(&comp);
    if l1.direct_product(&l2).permute(&perm) != *l {
        return Err(DecompError::InvalidSplittingVector(
            "projections do not multiply back to the code",
        ));
    }
    Ok((l1, l2, perm))
}

/// A full factorization into indecomposable direct factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    n: usize,
    /// Coordinate blocks, each sorted ascending, ordered by their smallest
    /// coordinate; together they partition `0..n`.
    pub blocks: Vec<Vec<usize>>,
    /// One indecomposable factor per block, in block order.
    pub factors: Vec<LinearCode>,
}

impl Decomposition {
    /// Length of the decomposed code.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Rebuilds the original code: the direct product of the factors in
    /// block order, with coordinates routed back through the blocks.
    pub fn reassemble(&self) -> LinearCode {
        let mut it = self.factors.iter();
        let first = it.next().expect("a decomposition has at least one block");
        let prod = it.fold(first.clone(), |acc, f| acc.direct_product(f));
        let perm: Vec<usize> = self.blocks.concat();
        prod.permute(&perm)
    }
}

fn decompose_rec(
    l: &LinearCode,
    coords: Vec<usize>,
    out: &mut Vec<(Vec<usize>, LinearCode)>,
) -> Result<(), DecompError> {
    match find_splitting_vector(l)? {
        None => out.push((coords, l.clone())),
        Some(e) => {
            let (l1, l2, perm) = split(l, &e)?;
            let n1 = l1.len();
            let c1: Vec<usize> = perm[..n1].iter().map(|&k| coords[k]).collect();
            let c2: Vec<usize> = perm[n1..].iter().map(|&k| coords[k]).collect();
            if l1.len() <= l2.len() {
                decompose_rec(&l1, c1, out)?;
                decompose_rec(&l2, c2, out)?;
            } else {
                decompose_rec(&l2, c2, out)?;
                decompose_rec(&l1, c1, out)?;
            }
        }
    }
    Ok(())
}

/// Factors `l` into indecomposable direct factors by repeated splitting.
///
/// Every factor is indecomposable in the sense that
/// [`find_splitting_vector`] returns `None` on it, and blocks are ordered
/// by smallest coordinate, so the result is deterministic.
pub fn full_decomposition(l: &LinearCode) -> Result<Decomposition, DecompError> {
    let mut parts: Vec<(Vec<usize>, LinearCode)> = Vec::new();
    decompose_rec(l, (0..l.len()).collect(), &mut parts)?;
    parts.sort_by_key(|(coords, _)| coords[0]);
    let (blocks, factors) = parts.into_iter().unzip();
    Ok(Decomposition {
        n: l.len(),
        blocks,
        factors,
    })
}

/// Outcome of the minimum-distance structure check for one code.
#[derive(Clone, Debug)]
pub struct DistanceCheck {
    /// Position of the code in the input slice.
    pub index: usize,
    pub distance: Option<u32>,
    pub pass: bool,
    pub detail: String,
}

/// Verifies, for each maximal totally isotropic code, the factorization
/// forced by its minimum distance: distance 1 splits off a unit
/// coordinate (`i1 x M` with `M` even maximal, `i2' x M` with `M` even
/// maximal, or `i1 x M+` with `M+` the even part of an odd-length maximal
/// code of distance at least 2), and distance 2 splits off `i2` factors
/// leaving `i2^k x M` with `M` maximal of distance at least 3.  Codes of
/// distance 3 or more carry no claim and pass vacuously.
pub fn verify_distance_decompositions(
    classes: &[LinearCode],
) -> Result<Vec<DistanceCheck>, DecompError> {
    classes
        .iter()
        .enumerate()
        .map(|(index, l)| {
            let distance = l.min_distance()?;
            let (pass, detail) = match distance {
                Some(1) => distance_one_check(l)?,
                Some(2) => distance_two_check(l)?,
                Some(d) => (true, format!("distance {d} forces no factor")),
                None => (true, "zero code".to_string()),
            };
            Ok(DistanceCheck {
                index,
                distance,
                pass,
                detail,
            })
        })
        .collect()
}

/// Distance-1 shapes.  The unit coordinate always splits off; the three
/// admissible complements are an even maximal code, an even maximal code
/// after also removing a forced zero coordinate (the `i2'` shape), or the
/// even part of an odd-length maximal code of distance at least 2.
fn distance_one_check(l: &LinearCode) -> Result<(bool, String), DecompError> {
    let n = l.len();
    let i = (0..n)
        .find(|&i| l.contains(&BitVec::unit(n, i)))
        .expect("distance 1 means some unit vector is a codeword");
    if n == 1 {
        return Ok((true, "equals i1".to_string()));
    }
    let e = BitVec::unit(n, i);
    let (f1, f2, _) = split(l, &e)?;
    debug_assert_eq!(f1, i1());
    if f2.is_even() && f2.is_max_totally_isotropic() {
        return Ok((
            true,
            format!("i1 x M with M even maximal (unit coordinate {i})"),
        ));
    }
    // i2' x M: a coordinate on which the whole code vanishes pairs with
    // the unit coordinate.
    let zero_cols: Vec<usize> = (0..n)
        .filter(|&j| j != i && l.generators().rows().iter().all(|r| !r.get(j)))
        .collect();
    for &j in &zero_cols {
        let rest: Vec<usize> = (0..n).filter(|&c| c != i && c != j).collect();
        if rest.is_empty() {
            return Ok((true, format!("equals i2' (coordinates {i}, {j})")));
        }
        let m = l.project(&rest);
        if m.is_even() && m.is_max_totally_isotropic() {
            let mut perm = vec![i, j];
            perm.extend_from_slice(&rest);
            if i2_prime().direct_product(&m).permute(&perm) == *l {
                return Ok((
                    true,
                    format!("i2' x M with M even maximal (coordinates {i}, {j})"),
                ));
            }
        }
    }
    // i1 x M+: the complement is the even part of the odd-length maximal
    // code obtained by adjoining the all-ones vector.
    if f2.is_even() && !f2.contains_ones() {
        let mut rows: Vec<BitVec> = f2.generators().rows().to_vec();
        rows.push(BitVec::ones(n - 1));
        let m = LinearCode::from_rows(n - 1, rows);
        let dm = m.min_distance()?;
        if m.is_max_totally_isotropic()
            && matches!(dm, Some(d) if d >= 2)
            && m.even_subcode() == f2
        {
            return Ok((
                true,
                format!(
                    "i1 x M+ with M maximal of length {} and distance {} (unit coordinate {i})",
                    m.len(),
                    dm.expect("checked above"),
                ),
            ));
        }
    }
    Ok((false, "no admissible distance-1 factorization".to_string()))
}

/// Distance-2 shape: `i2^k x M` with `k >= 1` and `M` maximal totally
/// isotropic of distance at least 3 (or absent).
fn distance_two_check(l: &LinearCode) -> Result<(bool, String), DecompError> {
    let dec = full_decomposition(l)?;
    let pair = i2();
    let mut k = 0usize;
    let mut rest: Vec<&LinearCode> = Vec::new();
    for f in &dec.factors {
        if *f == pair {
            k += 1;
        } else {
            rest.push(f);
        }
    }
    if k == 0 {
        return Ok((false, "distance 2 but no i2 factor".to_string()));
    }
    let Some((first, tail)) = rest.split_first() else {
        return Ok((true, format!("i2^{k} with no residual factor")));
    };
    let m = tail
        .iter()
        .fold((*first).clone(), |acc, f| acc.direct_product(f));
    let dm = m.min_distance()?;
    let pass = m.is_max_totally_isotropic() && matches!(dm, Some(d) if d >= 3);
    Ok((
        pass,
        format!(
            "i2^{k} x M with M of length {} and distance {}",
            m.len(),
            dm.map_or_else(|| "-".to_string(), |d| d.to_string()),
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::maximal_isotropic_classes;
    use crate::code::{e7, e8, i2_power, odd6_type_i, odd6_type_ii};

    fn ones_code(n: usize) -> LinearCode {
        LinearCode::from_rows(n, vec![BitVec::ones(n)])
    }

    /// All classes for a range of lengths, odd and even.
    fn classes_through(n_max: usize) -> Vec<LinearCode> {
        (1..=n_max)
            .flat_map(|n| maximal_isotropic_classes(n).expect("classification"))
            .collect()
    }

    #[test]
    fn product_span_examples() {
        // i2^k: products of the pair indicators are the indicators again.
        assert_eq!(product_span(&i2_power(3)), i2_power(3));
        // <1> of odd length squares to itself.
        for n in [3usize, 5] {
            assert_eq!(product_span(&ones_code(n)), ones_code(n));
        }
        // e8: generator pairs span the same space as all codeword pairs.
        let l = e8();
        let words = l.codewords().expect("small code");
        let mut prods = Vec::new();
        for u in &words {
            for v in &words {
                prods.push(u.pointwise(v));
            }
        }
        assert_eq!(product_span(&l), LinearCode::from_rows(8, prods));
    }

    #[test]
    fn splitting_vector_examples() {
        // The length-8 class i1 x e7 splits off its unit coordinate.
        let l = i1().direct_product(&e7());
        assert!(l.is_max_totally_isotropic());
        assert_eq!(
            find_splitting_vector(&l).unwrap(),
            Some(BitVec::unit(8, 0))
        );
        // The distance-3 length-6 class is indecomposable: the kernel
        // holds nothing outside {0, 1}.  (At even length the all-ones
        // vector pairs with a product `w` to `p(w)`, so it is not even in
        // the kernel when the code has odd vectors.)
        assert_eq!(find_splitting_vector(&odd6_type_ii()).unwrap(), None);
        let kernel = product_span(&odd6_type_ii()).perp_alt();
        kernel
            .for_each_codeword(|v| assert!(v.is_zero() || *v == BitVec::ones(6)))
            .unwrap();
        // i2 x i2 splits along the first pair.
        assert_eq!(
            find_splitting_vector(&i2_power(2)).unwrap(),
            Some(BitVec::from_word(4, 0b11))
        );
    }

    #[test]
    fn split_examples() {
        let l = i1().direct_product(&e7());
        let (f1, f2, perm) = split(&l, &BitVec::unit(8, 0)).unwrap();
        assert_eq!(f1, i1());
        assert_eq!(f2, e7());
        assert_eq!(perm, (0..8).collect::<Vec<_>>());

        let (g1, g2, _) = split(&i2_power(3), &BitVec::from_word(6, 0b11)).unwrap();
        assert_eq!(g1, i2());
        assert_eq!(g2, i2_power(2));

        // A vector outside the kernel is rejected.
        assert!(matches!(
            split(&e8(), &BitVec::unit(8, 0)),
            Err(DecompError::InvalidSplittingVector(_))
        ));
        assert!(matches!(
            split(&l, &BitVec::ones(8)),
            Err(DecompError::InvalidSplittingVector(_))
        ));
    }

    #[test]
    fn splits_are_sound_and_one_factor_is_even() {
        for l in classes_through(8) {
            if let Some(e) = find_splitting_vector(&l).unwrap() {
                // Orthogonality to every basis-pair product.
                let rows = l.generators().rows();
                for i in 0..rows.len() {
                    for j in 0..rows.len() {
                        assert!(!e.alt_inner(&rows[i].pointwise(&rows[j])));
                    }
                }
                let (f1, f2, _) = split(&l, &e).unwrap();
                assert!(f1.is_even() || f2.is_even());
            }
        }
    }

    #[test]
    fn full_decomposition_examples() {
        let dec = full_decomposition(&odd6_type_ii()).unwrap();
        assert_eq!(dec.blocks, vec![(0..6).collect::<Vec<_>>()]);
        assert_eq!(dec.factors, vec![odd6_type_ii()]);

        let dec = full_decomposition(&i1().direct_product(&e7())).unwrap();
        assert_eq!(dec.blocks, vec![vec![0], (1..8).collect::<Vec<_>>()]);
        assert_eq!(dec.factors, vec![i1(), e7()]);

        let dec = full_decomposition(&i2_power(3)).unwrap();
        assert_eq!(dec.blocks, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert_eq!(dec.factors, vec![i2(), i2(), i2()]);

        // i2' = {00, 10} itself splits into i1 and the length-1 zero code.
        let dec = full_decomposition(&i2_prime()).unwrap();
        assert_eq!(dec.blocks, vec![vec![0], vec![1]]);
        assert_eq!(dec.factors, vec![i1(), LinearCode::zero(1)]);
    }

    #[test]
    fn decomposition_reassembles_and_factors_are_indecomposable() {
        for l in classes_through(8) {
            let dec = full_decomposition(&l).unwrap();
            assert_eq!(dec.reassemble(), l);
            let mut all: Vec<usize> = dec.blocks.concat();
            all.sort_unstable();
            assert_eq!(all, (0..l.len()).collect::<Vec<_>>());
            for (block, f) in dec.blocks.iter().zip(&dec.factors) {
                assert_eq!(block.len(), f.len());
                assert_eq!(find_splitting_vector(f).unwrap(), None);
            }
            for w in dec.blocks.windows(2) {
                assert!(w[0][0] < w[1][0]);
            }
        }
    }

    /// Exhaustive bipartition oracle: a code splits along `(S, S^c)` if
    /// and only if the projection dimensions add up to its own.
    fn bipartition_decomposable(l: &LinearCode) -> bool {
        let n = l.len();
        (1..(1u64 << n) - 1).any(|mask| {
            let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let sc: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
            l.project(&s).dim() + l.project(&sc).dim() == l.dim()
        })
    }

    #[test]
    fn kernel_criterion_matches_bipartition_oracle() {
        let mut codes = classes_through(8);
        codes.push(e7());
        codes.push(i2_prime().direct_product(&i2()));
        codes.push(i2().direct_product(&odd6_type_ii()));
        codes.push(odd6_type_i());
        for l in codes {
            assert_eq!(
                find_splitting_vector(&l).unwrap().is_some(),
                bipartition_decomposable(&l),
                "criterion disagrees with oracle on {:?}",
                l.generators(),
            );
        }
    }

    #[test]
    fn criterion_domain_is_enforced() {
        // The full plane is not totally isotropic.
        assert_eq!(
            find_splitting_vector(&LinearCode::full_space(2)),
            Err(DecompError::OutsideCriterionDomain)
        );
        // A non-maximal isotropic code is rejected even though isotropic.
        assert_eq!(
            find_splitting_vector(&ones_code(4)),
            Err(DecompError::OutsideCriterionDomain)
        );
        // The Hamming code, by contrast, is in the domain: it equals the
        // direct sum of its even part and the all-ones vector, hence is
        // maximal totally isotropic (and indecomposable).
        assert!(crate::code::hamming().is_max_totally_isotropic());
        assert_eq!(
            find_splitting_vector(&crate::code::hamming()).unwrap(),
            None
        );
    }

    #[test]
    fn distance_structure_checks_pass_for_all_small_classes() {
        let classes = classes_through(8);
        let checks = verify_distance_decompositions(&classes).unwrap();
        assert_eq!(checks.len(), classes.len());
        for c in &checks {
            assert!(c.pass, "class {}: {}", c.index, c.detail);
        }
        // Every distance seen so far is covered by some branch.
        assert!(checks.iter().any(|c| c.distance == Some(1)));
        assert!(checks.iter().any(|c| c.distance == Some(2)));
        assert!(checks.iter().any(|c| c.distance >= Some(3)));
    }

    #[test]
    fn distance_one_shapes_are_reported() {
        // Length 4, the odd class: a zero coordinate pairs with the unit
        // coordinate, giving the i2' shape.
        let l4 = i2().direct_product(&i2_prime());
        let (pass, detail) = distance_one_check(&l4).unwrap();
        assert!(pass);
        assert!(detail.contains("i2'"), "{detail}");

        // Length 8, i1 x e7: the complement is an even part, not itself
        // maximal, so the M+ shape applies.
        let l8 = i1().direct_product(&e7());
        let (pass, detail) = distance_one_check(&l8).unwrap();
        assert!(pass);
        assert!(detail.contains("M+"), "{detail}");

        // Odd length: the complement is even maximal.
        let l3 = maximal_isotropic_classes(3).unwrap().remove(0);
        let (pass, detail) = distance_one_check(&l3).unwrap();
        assert!(pass);
        assert!(detail.contains("i1 x M "), "{detail}");
    }

    #[test]
    fn distance_two_factors_into_pairs_and_a_distant_remainder() {
        let (pass, detail) = distance_two_check(&i2_power(4)).unwrap();
        assert!(pass);
        assert!(detail.contains("i2^4"), "{detail}");

        let l = i2().direct_product(&odd6_type_ii());
        let (pass, detail) = distance_two_check(&l).unwrap();
        assert!(pass);
        assert!(detail.contains("i2^1 x M"), "{detail}");
        assert!(detail.contains("distance 3"), "{detail}");
    }
}

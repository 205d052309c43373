//! Classification of odd Lagrangians (maximal totally isotropic codes for
//! the alternating form that contain an odd-weight word) at even lengths.
//!
//! Every odd Lagrangian `L` of length `n = 2m` has even subcode
//! `L+ = L ∩ (even words)` of dimension `m-1`, and `K = L+ ⊕ <1>` is a
//! self-dual code.  Conversely, given a self-dual `K` with a generator basis
//! `g_1..g_m` summing to all-ones, every complement of `<1>` inside `K` has
//! the form `<a_2·1 + g_2, ..., a_m·1 + g_m>` for a vector `a` of `m-1`
//! bits, and each complement `K0` extends to exactly two odd Lagrangians
//! `K0 ⊕ <xi>` and `K0 ⊕ <xi + 1>` where `xi` is any odd-weight vector
//! orthogonal to `K0` under the alternating form.  Classification therefore
//! walks complements of all self-dual classes, dedupes by canonical form,
//! and certifies completeness with the exact mass formula
//! `sum 1/|Aut(L)| = 2^m T_n / n!`.

use std::collections::BTreeMap;

use num::{BigRational, BigUint, Integer, One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_code, canonical_form};
use crate::code::{CodeError, CodeType, LinearCode};
use crate::gf2::BitVec;
use crate::selfdual::{factorial, t_n, SelfDualError, SelfDualRep, SelfDualSet};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    SelfDual(#[from] SelfDualError),
    #[error("exhaustive search supports lengths 1..={SEARCH_MAX_LEN}, got {0}")]
    SearchLength(usize),
}

/// One `Aut(K)`-orbit of complements of `<1>` inside a self-dual code `K`.
#[derive(Clone, Debug)]
pub struct ComplementOrbit {
    /// First complement discovered in the orbit (in the parent's
    /// coordinates).
    pub code: LinearCode,
    pub aut_order: BigUint,
    /// Number of complements in the orbit.
    pub multiplicity: u64,
}

/// One equivalence class of odd Lagrangians.
#[derive(Clone, Debug)]
pub struct OddLagrangianClass {
    /// Representative in the coordinates of its parent self-dual code, so
    /// that `even_subcode(rep) ⊕ <1>` literally equals the parent.
    pub rep: LinearCode,
    /// Canonical form; the deduplication and reporting key.
    pub canon: LinearCode,
    pub aut_order: BigUint,
    pub code_type: CodeType,
    pub min_distance: u32,
    pub weight_distribution: Vec<u64>,
    /// Index of the parent class in the input `SelfDualSet`.
    pub parent_index: usize,
}

/// One row of the summary table for even length `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub count_type_i: usize,
    pub count_type_ii: usize,
    pub d_max: u32,
    pub count_max_type_i: usize,
    pub count_max_type_ii: usize,
}

impl TableRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.count_type_i,
            self.count_type_ii,
            self.d_max,
            self.count_max_type_i,
            self.count_max_type_ii
        )
    }
}

/// Result of an exact mass-formula check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassCheck {
    pub expected: BigRational,
    pub actual: BigRational,
}

impl MassCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
    pub fn deficit(&self) -> BigRational {
        &self.expected - &self.actual
    }
}

/// Enumerates the `2^(m-1)` complements of `<1>` in a self-dual code and
/// returns one representative per `Aut(K)`-orbit.
///
/// Orbit sizes are certified against the orbit-stabilizer theorem: a code
/// equivalence between two complements fixes all-ones and therefore
/// preserves `K`, so orbits under `Aut(K)` coincide with equivalence
/// classes, every complement automorphism preserves `K`, and each orbit has
/// exactly `|Aut(K)| / |Aut(K0)|` elements.
pub fn complements_of_ones(k: &LinearCode) -> Result<Vec<ComplementOrbit>, ClassifyError> {
    let rep = SelfDualRep {
        code: k.clone(),
        normalized: crate::selfdual::normalize_ones_first(k)?,
        aut_order: canonical_form(k).aut_order,
    };
    Ok(complement_orbits(&rep))
}

fn complement_orbits(parent: &SelfDualRep) -> Vec<ComplementOrbit> {
    let n = parent.code.len();
    let m = parent.code.dim();
    let rows = parent.normalized.rows();
    let ones = BitVec::ones(n);
    let total = 1u64 << (m - 1);
    let scanned: Vec<(LinearCode, LinearCode, BigUint)> = (0..total)
        .into_par_iter()
        .map(|a| {
            let mut gens = Vec::with_capacity(m - 1);
            for (i, row) in rows.iter().enumerate().skip(1) {
                if (a >> (i - 1)) & 1 == 1 {
                    gens.push(row.xor(&ones));
                } else {
                    gens.push(row.clone());
                }
            }
            let k0 = LinearCode::from_rows(n, gens);
            debug_assert_eq!(k0.dim(), m - 1);
            debug_assert!(!k0.contains(&ones));
            let cert = canonical_form(&k0);
            (k0, LinearCode::from_matrix(&cert.canon), cert.aut_order)
        })
        .collect();
    let mut orbits: Vec<ComplementOrbit> = Vec::new();
    let mut index: BTreeMap<LinearCode, usize> = BTreeMap::new();
    for (k0, key, aut) in scanned {
        match index.get(&key) {
            Some(&i) => orbits[i].multiplicity += 1,
            None => {
                index.insert(key, orbits.len());
                orbits.push(ComplementOrbit {
                    code: k0,
                    aut_order: aut,
                    multiplicity: 1,
                });
            }
        }
    }
    let mut covered = 0u64;
    for orbit in &orbits {
        let (q, r) = parent.aut_order.div_rem(&orbit.aut_order);
        assert!(r.is_zero(), "complement stabilizer must divide |Aut(K)|");
        assert_eq!(
            q,
            BigUint::from(orbit.multiplicity),
            "orbit size must equal |Aut(K)|/|Aut(K0)|"
        );
        covered += orbit.multiplicity;
    }
    assert_eq!(covered, total, "orbits must partition all complements");
    orbits
}

/// Extends a complement `K0` to its two odd Lagrangians `(L, L')`, where
/// `L = K0 ⊕ <xi>` for the lexicographically first odd-weight vector `xi`
/// orthogonal to `K0` under the alternating form, and `L' = K0 ⊕ <xi + 1>`
/// is the transvection image of `L`.
///
/// The set `{L, L'}` does not depend on the choice of odd `xi`; only the
/// labels can swap.
pub fn odd_pair_from_complement(
    k0: &LinearCode,
) -> Result<(LinearCode, LinearCode), ClassifyError> {
    let n = k0.len();
    debug_assert!(k0.is_totally_isotropic());
    debug_assert!(k0.is_even());
    debug_assert!(!k0.contains(&BitVec::ones(n)));
    let perp = k0.perp_alt();
    let mut xi: Option<BitVec> = None;
    perp.for_each_codeword(|w| {
        if w.parity() && xi.as_ref().is_none_or(|best| w < best) {
            xi = Some(w.clone());
        }
    })?;
    let xi = xi.expect("the alternating dual of an even proper subspace contains an odd vector");
    let mut l_rows = k0.generators().rows().to_vec();
    l_rows.push(xi.clone());
    let l = LinearCode::from_rows(n, l_rows);
    let mut lp_rows = k0.generators().rows().to_vec();
    lp_rows.push(xi.xor(&BitVec::ones(n)));
    let lp = LinearCode::from_rows(n, lp_rows);
    debug_assert_eq!(l.transvect(), lp);
    Ok((l, lp))
}

/// Classifies all odd Lagrangians of length `n` given the complete set of
/// self-dual classes of that length.  Output is sorted by canonical form
/// and globally certified: the representatives are pairwise inequivalent by
/// construction (asserted) and the exact mass formula is enforced.
pub fn classify_odd_lagrangians(
    sd: &SelfDualSet,
) -> Result<Vec<OddLagrangianClass>, ClassifyError> {
    let mut items: Vec<(usize, LinearCode)> = Vec::new();
    for (pi, parent) in sd.reps.iter().enumerate() {
        for orbit in complement_orbits(parent) {
            items.push((pi, orbit.code));
        }
    }
    let per_item: Vec<Result<Vec<OddLagrangianClass>, ClassifyError>> = items
        .into_par_iter()
        .map(|(pi, k0)| {
            let (l, lp) = odd_pair_from_complement(&k0)?;
            let cert_l = canonical_form(&l);
            let cert_lp = canonical_form(&lp);
            let mut out = Vec::with_capacity(2);
            let mut push = |code: LinearCode,
                            canon: LinearCode,
                            aut: BigUint|
             -> Result<(), ClassifyError> {
                let weight_distribution = code.weight_distribution()?.to_vec();
                let min_distance = code
                    .min_distance()?
                    .expect("odd Lagrangians are nonzero codes");
                out.push(OddLagrangianClass {
                    code_type: code.type_of()?,
                    canon,
                    aut_order: aut,
                    min_distance,
                    weight_distribution,
                    parent_index: pi,
                    rep: code,
                });
                Ok(())
            };
            if cert_l.canon == cert_lp.canon {
                push(l, LinearCode::from_matrix(&cert_l.canon), cert_l.aut_order)?;
            } else {
                push(l, LinearCode::from_matrix(&cert_l.canon), cert_l.aut_order)?;
                push(
                    lp,
                    LinearCode::from_matrix(&cert_lp.canon),
                    cert_lp.aut_order,
                )?;
            }
            Ok(out)
        })
        .collect();
    let mut classes: Vec<OddLagrangianClass> = Vec::new();
    for batch in per_item {
        classes.extend(batch?);
    }
    classes.sort_by(|a, b| a.canon.cmp(&b.canon));
    for pair in classes.windows(2) {
        assert!(
            pair[0].canon != pair[1].canon,
            "distinct complement orbits must yield inequivalent Lagrangians"
        );
    }
    let check = verify_odd_mass(&classes, sd.n)?;
    assert!(
        check.ok(),
        "odd mass formula failed: deficit {}",
        check.deficit()
    );
    Ok(classes)
}

/// Exact check of the class mass `sum 1/|Aut(L)| = 2^(n/2) T_n / n!`.
pub fn verify_odd_mass(
    classes: &[OddLagrangianClass],
    n: usize,
) -> Result<MassCheck, ClassifyError> {
    let expected = BigRational::new(
        num::BigInt::from((BigUint::one() << (n / 2)) * t_n(n)?),
        num::BigInt::from(factorial(n)),
    );
    let actual = classes
        .iter()
        .map(|c| {
            BigRational::new(num::BigInt::one(), num::BigInt::from(c.aut_order.clone()))
        })
        .sum();
    Ok(MassCheck { expected, actual })
}

/// Summary statistics over a complete classification at length `n`.
pub fn table_row(classes: &[OddLagrangianClass], n: usize) -> TableRow {
    let d_max = classes.iter().map(|c| c.min_distance).max().unwrap_or(0);
    let count = |t: CodeType, only_max: bool| {
        classes
            .iter()
            .filter(|c| c.code_type == t && (!only_max || c.min_distance == d_max))
            .count()
    };
    TableRow {
        n,
        count_type_i: count(CodeType::I, false),
        count_type_ii: count(CodeType::II, false),
        d_max,
        count_max_type_i: count(CodeType::I, true),
        count_max_type_ii: count(CodeType::II, true),
    }
}

/// Groups of two or more inequivalent classes sharing a weight
/// distribution, as sorted index lists into `classes`.
pub fn duplicate_weight_distributions(classes: &[OddLagrangianClass]) -> Vec<Vec<usize>> {
    let mut by_dist: BTreeMap<&[u64], Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        by_dist
            .entry(c.weight_distribution.as_slice())
            .or_default()
            .push(i);
    }
    by_dist.into_values().filter(|g| g.len() >= 2).collect()
}

/// Upper length bound for the exhaustive maximal-isotropic search.
pub const SEARCH_MAX_LEN: usize = 12;

/// Classifies all maximal totally isotropic codes of length `n` (odd or
/// even) by breadth-first isotropic extension with canonical
/// deduplication.  Completeness is certified exactly: the orbit sizes
/// `n!/|Aut|` must sum to the total number of maximal isotropic
/// subspaces, which is the product of `2^i + 1` for `i = 1 .. floor(n/2)`.
pub fn maximal_isotropic_classes(n: usize) -> Result<Vec<LinearCode>, ClassifyError> {
    if n == 0 || n > SEARCH_MAX_LEN {
        return Err(ClassifyError::SearchLength(n));
    }
    let mut level: Vec<LinearCode> = vec![LinearCode::zero(n)];
    loop {
        let next: std::collections::BTreeSet<LinearCode> = level
            .par_iter()
            .flat_map_iter(|c| {
                let rows = c.generators().rows().to_vec();
                (1u64..1 << n).filter_map(move |word| {
                    let v = BitVec::from_word(n, word);
                    if c.contains(&v) {
                        return None;
                    }
                    if rows.iter().any(|g| g.alt_inner(&v)) {
                        return None;
                    }
                    let mut ext = rows.clone();
                    ext.push(v);
                    Some(canonical_code(&LinearCode::from_rows(n, ext)))
                })
            })
            .collect();
        if next.is_empty() {
            break;
        }
        // All maximal isotropic subspaces have the same dimension, so once
        // any class extends, every class must.
        for c in &level {
            let rows = c.generators().rows().to_vec();
            let extendable = (1u64..1 << n).any(|word| {
                let v = BitVec::from_word(n, word);
                !c.contains(&v) && !rows.iter().any(|g| g.alt_inner(&v))
            });
            assert!(
                extendable,
                "isotropic class of dimension {} cannot be maximal below the common maximum",
                c.dim()
            );
        }
        level = next.into_iter().collect();
    }
    let expected = t_n(2 * (n / 2) + 2)?;
    let mut mass = BigRational::zero();
    for c in &level {
        mass += BigRational::new(
            num::BigInt::from(factorial(n)),
            num::BigInt::from(canonical_form(c).aut_order),
        );
    }
    let actual = mass;
    let expected_rat = BigRational::from_integer(num::BigInt::from(expected));
    assert_eq!(
        actual, expected_rat,
        "maximal isotropic mass certificate failed at n={n}"
    );
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_equivalent;
    use crate::code;
    use crate::selfdual::generate_selfdual_reps;
    use crate::wenum::WeightEnumerator;

    fn classes_for(n: usize) -> Vec<OddLagrangianClass> {
        classify_odd_lagrangians(&generate_selfdual_reps(n).unwrap()).unwrap()
    }

    #[test]
    fn search_matches_neighbor_classification_for_even_lengths() {
        // For even n, maximal isotropic = Lagrangian, and the classes are
        // the self-dual classes plus the odd-Lagrangian classes.
        for n in [2usize, 4, 6, 8] {
            let found = maximal_isotropic_classes(n).unwrap();
            let sd = generate_selfdual_reps(n).unwrap();
            let odd = classify_odd_lagrangians(&sd).unwrap();
            assert_eq!(found.len(), sd.reps.len() + odd.len(), "n={n}");
            for rep in &sd.reps {
                assert!(found.iter().any(|c| are_equivalent(c, &rep.code)));
            }
            for cls in &odd {
                assert!(found.iter().any(|c| are_equivalent(c, &cls.rep)));
            }
        }
    }

    #[test]
    fn search_classifies_odd_lengths() {
        // Each odd-length maximal isotropic code is even-subcode plus the
        // all-ones radical; the mass certificate inside the search makes
        // these counts complete.
        let counts: Vec<usize> = [1usize, 3, 5, 7, 9]
            .iter()
            .map(|&n| {
                let classes = maximal_isotropic_classes(n).unwrap();
                for c in &classes {
                    assert!(c.is_max_totally_isotropic());
                    assert!(c.contains(&BitVec::ones(n)), "radical missing at n={n}");
                    assert_eq!(c.dim(), (n + 1) / 2);
                }
                classes.len()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3]);
    }

    #[test]
    fn e8_has_one_complement_orbit() {
        let orbits = complements_of_ones(&code::e8()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].multiplicity, 8);
        assert_eq!(orbits[0].aut_order, BigUint::from(168u8));
    }

    #[test]
    fn i2_has_the_zero_complement() {
        let orbits = complements_of_ones(&code::i2()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].code, LinearCode::zero(2));
        assert_eq!(orbits[0].multiplicity, 1);
    }

    #[test]
    fn e8_pair_enumerators_match_known_values() {
        let orbits = complements_of_ones(&code::e8()).unwrap();
        let (l, lp) = odd_pair_from_complement(&orbits[0].code).unwrap();
        let wl = WeightEnumerator::of_code(&l).unwrap();
        let wlp = WeightEnumerator::of_code(&lp).unwrap();
        // y^8 + x y^7 + 7 x^4 y^4 + 7 x^5 y^3 and its odd-part reversal.
        let a = WeightEnumerator::from_counts(&[1, 1, 0, 0, 7, 7, 0, 0, 0]);
        let b = WeightEnumerator::from_counts(&[1, 0, 0, 7, 7, 0, 0, 1, 0]);
        assert!(
            (wl == a && wlp == b) || (wl == b && wlp == a),
            "pair enumerators {wl} / {wlp}"
        );
        assert!(!are_equivalent(&l, &lp));
    }

    #[test]
    fn odd_pair_structure() {
        for parent in [code::i2_power(3), code::e8()] {
            for orbit in complements_of_ones(&parent).unwrap() {
                let k0 = &orbit.code;
                let (l, lp) = odd_pair_from_complement(k0).unwrap();
                assert!(l.is_odd_lagrangian());
                assert!(lp.is_odd_lagrangian());
                assert_eq!(l.transvect(), lp);
                assert_eq!(lp.transvect(), l);
                assert_eq!(&l.even_subcode(), k0);
                assert_eq!(&lp.even_subcode(), k0);
                // L ∩ L' = K0: dimension via dim A + dim B - dim(A + B).
                let sum = LinearCode::from_matrix(
                    &l.generators().stack(lp.generators()),
                );
                assert_eq!(l.dim() + lp.dim() - sum.dim(), k0.dim());
            }
        }
    }

    #[test]
    fn xi_choice_does_not_affect_the_pair() {
        // Exhaustive over all complements for n ≤ 8 and all odd xi.
        for n in [2usize, 4, 6, 8] {
            let sd = generate_selfdual_reps(n).unwrap();
            for parent in &sd.reps {
                for orbit in complement_orbits(parent) {
                    let k0 = &orbit.code;
                    let (l, lp) = odd_pair_from_complement(k0).unwrap();
                    let perp = k0.perp_alt();
                    perp.for_each_codeword(|w| {
                        if w.parity() {
                            let mut rows = k0.generators().rows().to_vec();
                            rows.push(w.clone());
                            let cand = LinearCode::from_rows(n, rows);
                            assert!(cand == l || cand == lp);
                        }
                    })
                    .unwrap();
                }
            }
        }
    }

    #[test]
    fn automorphism_index_argument_holds() {
        // |Aut(K0)| = |Aut(L)| when L and L' are inequivalent, else
        // 2 |Aut(L)|: the complement stabilizer permutes the pair.
        for n in [4usize, 6, 8, 10] {
            let sd = generate_selfdual_reps(n).unwrap();
            for parent in &sd.reps {
                for orbit in complement_orbits(parent) {
                    let (l, lp) = odd_pair_from_complement(&orbit.code).unwrap();
                    let aut_l = canonical_form(&l).aut_order;
                    let factor = if are_equivalent(&l, &lp) { 2u8 } else { 1 };
                    assert_eq!(orbit.aut_order, aut_l * BigUint::from(factor));
                }
            }
        }
    }

    #[test]
    fn smallest_lengths_classify_correctly() {
        let c2 = classes_for(2);
        assert_eq!(c2.len(), 1);
        assert!(are_equivalent(&c2[0].rep, &code::i2_prime()));
        assert_eq!(c2[0].code_type, CodeType::II);
        assert_eq!(table_row(&c2, 2), TableRow {
            n: 2,
            count_type_i: 0,
            count_type_ii: 1,
            d_max: 1,
            count_max_type_i: 0,
            count_max_type_ii: 1,
        });

        let c4 = classes_for(4);
        assert_eq!(c4.len(), 1);
        assert_eq!(c4[0].code_type, CodeType::I);
        assert_eq!(table_row(&c4, 4).csv_line(), "4,1,0,1,1,0");
    }

    #[test]
    fn length6_matches_named_codes() {
        let c6 = classes_for(6);
        assert_eq!(c6.len(), 2);
        assert_eq!(table_row(&c6, 6).csv_line(), "6,1,1,3,0,1");
        for named in [code::odd6_type_i(), code::odd6_type_ii()] {
            assert!(c6.iter().any(|c| are_equivalent(&c.rep, &named)));
        }
    }

    #[test]
    fn length8_classification_and_mass() {
        let c8 = classes_for(8);
        assert_eq!(c8.len(), 4);
        assert_eq!(table_row(&c8, 8).csv_line(), "8,2,2,3,0,1");
        let mass = verify_odd_mass(&c8, 8).unwrap();
        assert!(mass.ok());
        assert_eq!(
            mass.actual,
            BigRational::new(num::BigInt::from(3), num::BigInt::from(56))
        );
        assert!(duplicate_weight_distributions(&c8).is_empty());
        // Dropping a class leaves a positive deficit.
        let partial = verify_odd_mass(&c8[1..], 8).unwrap();
        assert!(!partial.ok());
        assert!(partial.deficit() > BigRational::zero());
    }

    #[test]
    fn class_invariants_hold_through_length10() {
        for n in [2usize, 4, 6, 8, 10] {
            let sd = generate_selfdual_reps(n).unwrap();
            let classes = classify_odd_lagrangians(&sd).unwrap();
            for c in &classes {
                assert!(c.rep.is_odd_lagrangian());
                assert_eq!(c.rep.perp_alt(), c.rep);
                // Parent recovery is exact in discovery coordinates.
                let mut rows = c.rep.even_subcode().generators().rows().to_vec();
                rows.push(BitVec::ones(n));
                let parent = LinearCode::from_rows(n, rows);
                assert_eq!(parent, sd.reps[c.parent_index].code);
                assert_eq!(
                    c.weight_distribution,
                    c.rep.weight_distribution().unwrap().to_vec()
                );
            }
        }
    }

    #[test]
    fn length10_and_12_table_rows() {
        let c10 = classes_for(10);
        assert_eq!(table_row(&c10, 10).csv_line(), "10,5,2,4,0,1");
        let c12 = classes_for(12);
        assert_eq!(table_row(&c12, 12).csv_line(), "12,11,0,3,3,0");
        assert!(duplicate_weight_distributions(&c12).is_empty());
    }

    #[test]
    fn duplicate_grouping_basics() {
        let c2 = classes_for(2);
        assert!(duplicate_weight_distributions(&c2).is_empty());
        // Identical distributions are grouped.
        let mut doubled = c2.clone();
        doubled.push(c2[0].clone());
        assert_eq!(duplicate_weight_distributions(&doubled), vec![vec![0, 1]]);
    }
}

//! Canonical forms for codes under coordinate permutation.
//!
//! Two codes are equivalent when some permutation of coordinates maps one onto
//! the other.  [`canonical_form`] produces a certificate whose `canon` matrix
//! is equal for two codes exactly when they are equivalent, together with a
//! relabeling permutation realizing it and the full automorphism group.
//!
//! The engine is an individualization-refinement search over ordered
//! partitions of the coordinate set.  Coordinates are refined against the
//! incidence structure of low-weight codewords (smallest weight classes,
//! extended until the selected words span the code); remaining symmetric cells
//! are resolved by backtracking, pruned by the automorphisms discovered along
//! the way.  The canonical form is the minimum, over all surviving complete
//! labelings, of the relabeled reduced-echelon generator matrix.

use std::collections::BTreeMap;

use num::BigUint;

use crate::code::LinearCode;
use crate::gf2::BitMatrix;
use crate::perm::{self, Perm, PermGroup};

/// Canonical-form searches are restricted to modest sizes; classification
/// works well below these caps.
pub const CANON_MAX_LEN: usize = 40;

#[derive(Clone, Debug)]
pub struct CanonicalCert {
    /// Reduced-echelon generator matrix of the relabeled code: equal across a
    /// whole equivalence class and distinct between classes.
    pub canon: BitMatrix,
    /// Coordinate relabeling realizing the canonical form (`i -> perm[i]`).
    pub perm: Perm,
    /// Order of the automorphism group of the input code.
    pub aut_order: BigUint,
    /// Generators of the automorphism group (as permutations of the input
    /// coordinates).
    pub aut_gens: Vec<Perm>,
}

struct Search<'a> {
    n: usize,
    code: &'a LinearCode,
    /// Selected codewords as coordinate masks, with their weights.
    words: Vec<u64>,
    weights: Vec<u32>,
    best: Option<(BitMatrix, Perm)>,
    first: Option<(BitMatrix, Perm)>,
    aut_gens: Vec<Perm>,
}

type Cells = Vec<Vec<usize>>;

impl<'a> Search<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let n = code.len();
        // Word classes by ascending weight until the selection spans the code.
        let mut by_weight: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
        code.for_each_codeword(|w| {
            let wt = w.weight();
            if wt > 0 {
                by_weight.entry(wt).or_default().push(w.as_word());
            }
        })
        .expect("dimension within enumeration cap");
        let mut words = Vec::new();
        let mut weights = Vec::new();
        let mut basis: Vec<u64> = Vec::new(); // row-reduced masks for rank tracking
        let mut rank = 0;
        'outer: for (wt, class) in by_weight {
            let mut class = class;
            class.sort_unstable();
            for &w in &class {
                let mut r = w;
                for &b in &basis {
                    let pivot = b & b.wrapping_neg();
                    if r & pivot != 0 {
                        r ^= b;
                    }
                }
                if r != 0 {
                    basis.push(r);
                    basis.sort_unstable_by_key(|x| x.trailing_zeros());
                    rank += 1;
                }
            }
            words.extend(class.iter().copied());
            weights.extend(std::iter::repeat_n(wt, class.len()));
            if rank == code.dim() {
                break 'outer;
            }
        }
        Search {
            n,
            code,
            words,
            weights,
            best: None,
            first: None,
            aut_gens: vec![],
        }
    }

    fn cell_mask(cell: &[usize]) -> u64 {
        cell.iter().fold(0u64, |m, &i| m | (1u64 << i))
    }

    /// Equitable refinement against the selected codewords.  Words are
    /// grouped by (weight, per-cell incidence profile); coordinates within a
    /// cell are separated by their per-group membership counts.  Fragments
    /// are ordered by signature, so the procedure commutes with relabeling.
    fn refine(&self, cells: &mut Cells) {
        if self.words.is_empty() {
            return;
        }
        loop {
            let masks: Vec<u64> = cells.iter().map(|c| Self::cell_mask(c)).collect();
            let mut groups: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
            for (wi, &w) in self.words.iter().enumerate() {
                let mut profile = Vec::with_capacity(masks.len() + 1);
                profile.push(self.weights[wi]);
                for &m in &masks {
                    profile.push((w & m).count_ones());
                }
                groups.entry(profile).or_default().push(wi);
            }
            let ngroups = groups.len();
            let mut sig = vec![vec![0u32; ngroups]; self.n];
            for (gi, members) in groups.values().enumerate() {
                for &wi in members {
                    let mut bits = self.words[wi];
                    while bits != 0 {
                        let t = bits.trailing_zeros() as usize;
                        sig[t][gi] += 1;
                        bits &= bits - 1;
                    }
                }
            }
            let mut changed = false;
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut items = cell.clone();
                items.sort_by(|&a, &b| sig[a].cmp(&sig[b]).then(a.cmp(&b)));
                let mut start = 0;
                for i in 1..=items.len() {
                    if i == items.len() || sig[items[i]] != sig[items[start]] {
                        next.push(items[start..i].to_vec());
                        if start != 0 || i != items.len() {
                            changed = true;
                        }
                        start = i;
                    }
                }
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }

    /// First smallest cell with at least two members.
    fn target_cell(cells: &Cells) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for (i, c) in cells.iter().enumerate() {
            if c.len() >= 2 && best.is_none_or(|(len, _)| c.len() < len) {
                best = Some((c.len(), i));
            }
        }
        best.map(|(_, i)| i)
    }

    fn handle_leaf(&mut self, cells: &Cells) {
        let mut labeling = vec![0usize; self.n];
        for (pos, cell) in cells.iter().enumerate() {
            labeling[cell[0]] = pos;
        }
        let relabeled = self.code.permute(&labeling);
        let m = relabeled.generators().clone();
        let record = |stored: &(BitMatrix, Perm), gens: &mut Vec<Perm>| {
            let gamma = perm::compose(&perm::inverse(&stored.1), &labeling);
            if !perm::is_identity(&gamma) && !gens.contains(&gamma) {
                gens.push(gamma);
            }
        };
        if let Some(first) = &self.first {
            if m == first.0 {
                record(first, &mut self.aut_gens);
            }
        } else {
            self.first = Some((m.clone(), labeling.clone()));
        }
        match &self.best {
            None => self.best = Some((m, labeling)),
            Some(best) => match m.cmp(&best.0) {
                std::cmp::Ordering::Less => self.best = Some((m, labeling)),
                std::cmp::Ordering::Equal => record(&best.clone(), &mut self.aut_gens),
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    fn search(&mut self, mut cells: Cells, path: &mut Vec<usize>) {
        self.refine(&mut cells);
        let Some(target) = Self::target_cell(&cells) else {
            self.handle_leaf(&cells);
            return;
        };
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &x in &candidates {
            // Orbit pruning: skip x when an automorphism fixing the current
            // individualization path maps it into an already-explored branch.
            if !tried.is_empty() {
                let fixing: Vec<&Perm> = self
                    .aut_gens
                    .iter()
                    .filter(|g| path.iter().all(|&p| g[p] == p))
                    .collect();
                if !fixing.is_empty() {
                    let orb = perm::orbit(self.n, &fixing, x);
                    if orb.iter().any(|y| tried.contains(y)) {
                        continue;
                    }
                }
            }
            let mut child: Cells = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![x]);
                    child.push(cell.iter().copied().filter(|&y| y != x).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            path.push(x);
            self.search(child, path);
            path.pop();
            tried.push(x);
        }
    }
}

/// Canonical certificate for a code of length at most [`CANON_MAX_LEN`].
pub fn canonical_form(code: &LinearCode) -> CanonicalCert {
    assert!(
        code.len() <= CANON_MAX_LEN,
        "canonical_form supports length <= {CANON_MAX_LEN}, got {}",
        code.len()
    );
    let mut search = Search::new(code);
    let initial: Cells = if code.is_empty() {
        vec![]
    } else {
        vec![(0..code.len()).collect()]
    };
    let mut path = Vec::new();
    search.search(initial, &mut path);
    let (canon, labeling) = search.best.expect("at least one leaf");
    let group = PermGroup::from_generators(code.len(), &search.aut_gens);
    let cert = CanonicalCert {
        canon,
        perm: labeling,
        aut_order: group.order(),
        aut_gens: search.aut_gens,
    };
    debug_assert_eq!(code.permute(&cert.perm).generators(), &cert.canon);
    debug_assert!(cert
        .aut_gens
        .iter()
        .all(|g| &code.permute(g) == code));
    cert
}

/// The canonical representative of the equivalence class as a code.
pub fn canonical_code(code: &LinearCode) -> LinearCode {
    LinearCode::from_matrix(&canonical_form(code).canon)
}

/// Are the two codes related by a coordinate permutation?
pub fn are_equivalent(a: &LinearCode, b: &LinearCode) -> bool {
    a.len() == b.len() && a.dim() == b.dim() && canonical_form(a).canon == canonical_form(b).canon
}

/// A permutation mapping `a` onto `b`, when the codes are equivalent.
pub fn equivalence_map(a: &LinearCode, b: &LinearCode) -> Option<Perm> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return None;
    }
    let ca = canonical_form(a);
    let cb = canonical_form(b);
    if ca.canon != cb.canon {
        return None;
    }
    let map = perm::compose(&perm::inverse(&cb.perm), &ca.perm);
    debug_assert_eq!(&a.permute(&map), b);
    Some(map)
}

/// Order of the automorphism group.
pub fn aut_order(code: &LinearCode) -> BigUint {
    canonical_form(code).aut_order
}

/// Exhaustive equivalence test over all coordinate permutations; only
/// sensible for small lengths (factorial cost).
pub fn brute_force_equivalent(a: &LinearCode, b: &LinearCode) -> bool {
    if a.len() != b.len() || a.dim() != b.dim() {
        return false;
    }
    let mut found = false;
    perm::for_each_permutation(a.len(), |p| {
        if !found && &a.permute(p) == b {
            found = true;
        }
    });
    found
}

/// Exhaustive automorphism count over all coordinate permutations.
pub fn brute_force_aut_order(code: &LinearCode) -> BigUint {
    let mut count = 0u64;
    perm::for_each_permutation(code.len(), |p| {
        if &code.permute(p) == code {
            count += 1;
        }
    });
    BigUint::from(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{self, LinearCode};

    fn order(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn aut_orders_of_named_codes() {
        assert_eq!(aut_order(&code::e8()), order(1344));
        assert_eq!(aut_order(&code::hamming()), order(168));
        assert_eq!(aut_order(&code::e7()), order(168));
        assert_eq!(aut_order(&code::i2()), order(2));
        assert_eq!(aut_order(&code::i2_prime()), order(1));
        assert_eq!(aut_order(&code::i2_power(4)), order(384));
        assert_eq!(aut_order(&code::i2().direct_product(&code::i2())), order(8));
    }

    #[test]
    fn aut_order_of_degenerate_codes() {
        for n in 1..7usize {
            let f: u64 = (1..=n as u64).product();
            assert_eq!(aut_order(&LinearCode::full_space(n)), order(f));
            assert_eq!(aut_order(&LinearCode::zero(n)), order(f));
        }
    }

    #[test]
    fn relabeled_codes_are_equivalent() {
        let cases = [code::e8(), code::hamming(), code::odd6_type_i()];
        for c in cases {
            let n = c.len();
            let p: Perm = (0..n).map(|i| (i * 5 + 3) % n).collect();
            // make sure p is a permutation for these n (5 coprime to 6,7,8)
            let moved = c.permute(&p);
            assert!(are_equivalent(&c, &moved));
            let map = equivalence_map(&c, &moved).unwrap();
            assert_eq!(c.permute(&map), moved);
        }
    }

    #[test]
    fn inequivalent_codes_detected() {
        assert!(!are_equivalent(&code::odd6_type_i(), &code::odd6_type_ii()));
        assert!(!are_equivalent(&code::i2(), &code::i2_prime()));
        // The two odd Lagrangians above e8 are swapped by the transvection
        // but are not permutation equivalent.
        let l = code::i1().direct_product(&code::e7());
        let lt = l.transvect();
        assert!(!are_equivalent(&l, &lt));
        assert_eq!(aut_order(&l), order(168));
        assert_eq!(aut_order(&lt), order(168));
    }

    #[test]
    fn agrees_with_brute_force_on_small_codes() {
        let cases: Vec<LinearCode> = vec![
            code::i2(),
            code::i2_prime(),
            code::i2_power(3),
            code::hamming(),
            code::e7(),
            code::odd6_type_i(),
            code::odd6_type_ii(),
            LinearCode::from_row_strs(&["110", "011"]),
            LinearCode::from_row_strs(&["10110", "01011"]),
            LinearCode::zero(4),
            LinearCode::full_space(5),
        ];
        for c in &cases {
            assert_eq!(
                aut_order(c),
                brute_force_aut_order(c),
                "aut mismatch for {c:?}"
            );
        }
        for a in &cases {
            for b in &cases {
                assert_eq!(
                    are_equivalent(a, b),
                    brute_force_equivalent(a, b),
                    "equivalence mismatch for {a:?} vs {b:?}"
                );
            }
        }
    }

    #[test]
    fn orbit_size_times_aut_order_is_factorial() {
        let cases = [
            code::i2_power(2),
            code::odd6_type_ii().project(&[0, 1, 2, 3, 4]),
            LinearCode::from_row_strs(&["1100", "0011"]),
            LinearCode::from_row_strs(&["10100", "01010"]),
        ];
        for c in cases {
            let n = c.len();
            let mut orbit = std::collections::HashSet::new();
            perm::for_each_permutation(n, |p| {
                orbit.insert(c.permute(p));
            });
            let f: u64 = (1..=n as u64).product();
            assert_eq!(
                BigUint::from(orbit.len()) * aut_order(&c),
                BigUint::from(f),
                "orbit-stabilizer failed for {c:?}"
            );
        }
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let c = code::odd6_type_ii();
        let base = canonical_form(&c).canon;
        perm::for_each_permutation(6, |p| {
            let moved = c.permute(p);
            assert_eq!(canonical_form(&moved).canon, base);
        });
    }

    #[test]
    fn large_symmetry_case_is_fast_and_exact() {
        // 2^8 * 8! automorphisms; exercises the pruning path.
        let c = code::i2_power(8);
        let expect = BigUint::from(256u32) * BigUint::from(40320u32);
        assert_eq!(aut_order(&c), expect);
    }
}

//! Structured reports and verification-suite runners for the command-line
//! interface.
//!
//! Every report is a plain serde-serializable struct carrying a
//! `schema_version`; exact quantities (automorphism orders, masses,
//! membership coefficients) are rendered as decimal or `p/q` strings, never
//! floats.  Outputs are deterministic: classes are sorted by canonical
//! form, random sampling is seeded, and nothing depends on thread count.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipoly::BiPoly;
use crate::classify::{
    classify_odd_lagrangians, maximal_isotropic_classes, table_row, verify_odd_mass,
    ClassifyError, TableRow, SEARCH_MAX_LEN,
};
use crate::code::{i1, i2, i2_prime, CodeError, LinearCode};
use crate::decomp::{full_decomposition, verify_distance_decompositions, DecompError};
use crate::gf2::BitVec;
use crate::invariants::{
    dispatch_checks, verify_semi_invariant_identities, InvariantError, TheoremReport,
};
use crate::selfdual::{
    generate_selfdual_reps, parse_selfdual_db, t_n, SelfDualError, SelfDualSet,
};
use crate::wenum::{WeightEnumerator, WenumError};

/// Version stamp carried by every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Seed for the randomized duality-identity suite; fixed so that reports
/// are byte-identical across runs.
const MACWILLIAMS_SEED: u64 = 0x1505_c0de;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    SelfDual(#[from] SelfDualError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Wenum(#[from] WenumError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("{0}")]
    Usage(String),
}

impl ReportError {
    /// Process exit code: 1 for verification failures surfaced as errors,
    /// 2 for usage and parse problems, 3 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Io(_) | ReportError::Usage(_) => 2,
            ReportError::Code(CodeError::Parse { .. }) => 2,
            ReportError::Code(CodeError::EnumerationCap { .. }) => 3,
            ReportError::SelfDual(e) => match e {
                SelfDualError::OddLength(_) => 2,
                SelfDualError::LengthTooLarge { .. } => 3,
                SelfDualError::Parse(_) => 2,
                _ => 1,
            },
            ReportError::Classify(e) => match e {
                ClassifyError::SearchLength(_) => 3,
                ClassifyError::Code(CodeError::EnumerationCap { .. }) => 3,
                ClassifyError::Code(_) => 2,
                ClassifyError::SelfDual(SelfDualError::OddLength(_)) => 2,
                ClassifyError::SelfDual(SelfDualError::LengthTooLarge { .. }) => 3,
                ClassifyError::SelfDual(SelfDualError::Parse(_)) => 2,
                ClassifyError::SelfDual(_) => 1,
            },
            ReportError::Wenum(_) => 1,
            ReportError::Decomp(DecompError::OutsideCriterionDomain) => 2,
            ReportError::Decomp(_) => 1,
            ReportError::Invariant(_) => 1,
        }
    }
}

// ---------------------------------------------------------------------------
// Self-dual set acquisition with optional disk cache.
// ---------------------------------------------------------------------------

/// Loads the certified self-dual representatives for even length `n`.
///
/// With `source` set, the `%`-separated database file at that path is
/// parsed (and re-certified).  Otherwise the set is generated; if the
/// environment variable `ISOCODES_CACHE_DIR` names a directory, generated
/// sets are stored there and reused, with a failed cache read falling back
/// to generation.
pub fn obtain_selfdual(n: usize, source: Option<&Path>) -> Result<SelfDualSet, ReportError> {
    if let Some(path) = source {
        let text = std::fs::read_to_string(path)?;
        return Ok(parse_selfdual_db(&text, n)?);
    }
    let cache_file = std::env::var_os("ISOCODES_CACHE_DIR")
        .map(|d| Path::new(&d).join(format!("selfdual_{n}.db")));
    if let Some(f) = &cache_file {
        if let Ok(text) = std::fs::read_to_string(f) {
            if let Ok(set) = parse_selfdual_db(&text, n) {
                return Ok(set);
            }
        }
    }
    let set = generate_selfdual_reps(n)?;
    if let Some(f) = &cache_file {
        let _ = std::fs::create_dir_all(f.parent().expect("cache file has a parent"));
        if let Err(e) = std::fs::write(f, set.to_db_text()) {
            eprintln!("warning: could not write cache file {}: {e}", f.display());
        }
    }
    Ok(set)
}

// ---------------------------------------------------------------------------
// Classification report.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct MassReport {
    /// Computed side (sum over classes), exact.
    pub lhs: String,
    /// Closed-form side, exact.
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub n: usize,
    pub count_type_i: usize,
    pub count_type_ii: usize,
    pub d_max: u32,
    pub count_max_type_i: usize,
    pub count_max_type_ii: usize,
}

impl From<&TableRow> for RowReport {
    fn from(r: &TableRow) -> Self {
        RowReport {
            n: r.n,
            count_type_i: r.count_type_i,
            count_type_ii: r.count_type_ii,
            d_max: r.d_max,
            count_max_type_i: r.count_max_type_i,
            count_max_type_ii: r.count_max_type_ii,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    /// Canonical generator matrix, one bit string per row.
    pub rows: Vec<String>,
    pub aut_order: String,
    pub code_type: String,
    pub min_distance: u32,
    pub weight_distribution: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub schema_version: u32,
    pub n: usize,
    pub row: RowReport,
    pub classes: Vec<ClassRecord>,
    /// Mass check for the classified classes: `sum 1/|Aut|` against
    /// `2^(n/2) T_n / n!`.
    pub mass_check: MassReport,
    /// Mass check for the underlying self-dual set: `sum n!/|Aut|`
    /// against `T_n`.
    pub selfdual_mass_check: MassReport,
    pub timing_ms: u128,
}

/// Classifies length `n` and assembles the full report.  The self-dual
/// input set is certified either way (during generation or parse).
pub fn classification_report(
    n: usize,
    source: Option<&Path>,
) -> Result<ClassificationReport, ReportError> {
    let start = Instant::now();
    if n % 2 != 0 {
        return Err(ReportError::Usage(format!(
            "classification needs an even length, got {n}"
        )));
    }
    let sd = obtain_selfdual(n, source)?;
    let selfdual_mass_check = MassReport {
        lhs: sd.mass().to_string(),
        rhs: t_n(n)?.to_string(),
        pass: sd.certify().is_ok(),
    };
    let mut classes = classify_odd_lagrangians(&sd)?;
    classes.sort_by(|a, b| a.canon.cmp(&b.canon));
    let row = table_row(&classes, n);
    let mc = verify_odd_mass(&classes, n)?;
    let mass_check = MassReport {
        lhs: mc.actual.to_string(),
        rhs: mc.expected.to_string(),
        pass: mc.ok(),
    };
    let records = classes
        .iter()
        .map(|c| ClassRecord {
            rows: c.canon.generators().rows().iter().map(|r| r.to_string()).collect(),
            aut_order: c.aut_order.to_string(),
            code_type: format!("{:?}", c.code_type),
            min_distance: c.min_distance,
            weight_distribution: c.weight_distribution.clone(),
        })
        .collect();
    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION,
        n,
        row: RowReport::from(&row),
        classes: records,
        mass_check,
        selfdual_mass_check,
        timing_ms: start.elapsed().as_millis(),
    })
}

/// Fixed CSV header for summary rows.
pub const CSV_HEADER: &str = "n,#I,#II,d_max,#max_I,#max_II";

// ---------------------------------------------------------------------------
// Verification suites.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<SuiteCheck>,
    pub timing_ms: u128,
}

fn finish_suite(suite: &str, checks: Vec<SuiteCheck>, start: Instant) -> SuiteReport {
    SuiteReport {
        schema_version: SCHEMA_VERSION,
        suite: suite.to_string(),
        pass: checks.iter().all(|c| c.pass),
        checks,
        timing_ms: start.elapsed().as_millis(),
    }
}

/// A classified code with a stable, human-readable label.
#[derive(Clone, Debug)]
pub struct LabeledCode {
    pub label: String,
    pub code: LinearCode,
}

/// All classified codes of length `n` in deterministic order: for even
/// `n`, the self-dual classes followed by the classes with odd words; for
/// odd `n`, the exhaustively searched classes.
pub fn classified_codes(
    n: usize,
    source: Option<&Path>,
) -> Result<Vec<LabeledCode>, ReportError> {
    let mut out = Vec::new();
    if n % 2 == 0 {
        let sd = obtain_selfdual(n, source)?;
        let mut reps: Vec<LinearCode> = sd.reps.iter().map(|r| r.code.clone()).collect();
        reps.sort();
        for (i, code) in reps.into_iter().enumerate() {
            out.push(LabeledCode {
                label: format!("n={n} selfdual#{i}"),
                code,
            });
        }
        let mut classes = classify_odd_lagrangians(&sd)?;
        classes.sort_by(|a, b| a.canon.cmp(&b.canon));
        for (i, c) in classes.into_iter().enumerate() {
            out.push(LabeledCode {
                label: format!("n={n} odd#{i}"),
                code: c.canon,
            });
        }
    } else {
        for (i, code) in maximal_isotropic_classes(n)?.into_iter().enumerate() {
            out.push(LabeledCode {
                label: format!("n={n} class#{i}"),
                code,
            });
        }
    }
    Ok(out)
}

/// Mass-formula suite: for each even length in range, the self-dual mass
/// `sum n!/|Aut| = T_n` and the odd-class mass `sum 1/|Aut| = 2^(n/2) T_n / n!`.
pub fn suite_mass(lo: usize, hi: usize, source: Option<&Path>) -> Result<SuiteReport, ReportError> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for n in (lo..=hi).filter(|n| n % 2 == 0) {
        let sd = obtain_selfdual(n, source)?;
        let expected = BigRational::from_integer(BigInt::from(t_n(n)?));
        let actual = sd.mass();
        checks.push(SuiteCheck {
            name: format!("n={n} selfdual mass"),
            pass: actual == expected,
            detail: format!("sum n!/|Aut| = {actual}, T_n = {expected}"),
        });
        let classes = classify_odd_lagrangians(&sd)?;
        let mc = verify_odd_mass(&classes, n)?;
        checks.push(SuiteCheck {
            name: format!("n={n} odd-class mass"),
            pass: mc.ok(),
            detail: format!(
                "sum 1/|Aut| = {}, 2^(n/2) T_n / n! = {}",
                mc.actual, mc.expected
            ),
        });
    }
    Ok(finish_suite("mass", checks, start))
}

/// A pseudorandom linear code of length `n` with at most `k` generators.
fn random_code<R: Rng>(rng: &mut R, n: usize, k: usize) -> LinearCode {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rows = (0..k)
        .map(|_| BitVec::from_word(n, rng.gen::<u64>() & mask))
        .collect();
    LinearCode::from_rows(n, rows)
}

/// Whether the duality identity holds for `code`: the weight enumerator
/// of the dual under the alternating form must equal the transformed
/// enumerator of the code.
fn duality_identity_holds(code: &LinearCode) -> Result<bool, ReportError> {
    let lhs = WeightEnumerator::of_code(&code.perp_alt())?;
    let rhs = WeightEnumerator::of_code(code)?.macwilliams_type(code.dim())?;
    Ok(lhs == rhs)
}

/// Duality-identity suite: the exact small fixture plus `count` seeded
/// random codes with lengths cycling over `lo..=min(hi, 12)`.
pub fn suite_macwilliams(lo: usize, hi: usize, count: usize) -> Result<SuiteReport, ReportError> {
    let start = Instant::now();
    let mut checks = Vec::new();

    // Fixture: K = {0000, 1000} has dual enumerator y^4 + xy^3 + 3x^2y^2 + 3x^3y.
    let k = LinearCode::from_row_strs(&["1000"]);
    let expected = WeightEnumerator::new(
        4,
        [1, 1, 3, 3, 0].iter().map(|&c| BigInt::from(c)).collect(),
    );
    let transformed = WeightEnumerator::of_code(&k)?.macwilliams_type(k.dim())?;
    let direct = WeightEnumerator::of_code(&k.perp_alt())?;
    checks.push(SuiteCheck {
        name: "fixture {0000,1000}".to_string(),
        pass: transformed == expected && direct == expected,
        detail: format!(
            "transform = {}, direct dual = {}, expected = {}",
            BiPoly::from_enumerator(&transformed),
            BiPoly::from_enumerator(&direct),
            BiPoly::from_enumerator(&expected),
        ),
    });

    let lo = lo.max(1);
    let hi = hi.min(12);
    if lo > hi {
        return Err(ReportError::Usage(format!(
            "empty length range {lo}..{hi} for the duality suite"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(MACWILLIAMS_SEED);
    let lengths: Vec<usize> = (lo..=hi).collect();
    let mut per_n = vec![0usize; lengths.len()];
    let mut failures: Vec<String> = Vec::new();
    for i in 0..count {
        let n = lengths[i % lengths.len()];
        let kdim = rng.gen_range(0..=n);
        let code = random_code(&mut rng, n, kdim);
        if !duality_identity_holds(&code)? {
            failures.push(format!(
                "counterexample length {n}: [{}]",
                code.generators()
                    .rows()
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            ));
        }
        per_n[lengths.iter().position(|&m| m == n).expect("chosen from list")] += 1;
    }
    let spread = lengths
        .iter()
        .zip(&per_n)
        .map(|(n, c)| format!("n={n}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    checks.push(SuiteCheck {
        name: format!("{count} random codes"),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("all satisfied the identity ({spread})")
        } else {
            failures.join("; ")
        },
    });
    Ok(finish_suite("macwilliams", checks, start))
}

/// Renders the membership and side-condition outcomes of one theorem
/// check, including the exact coefficients of each decomposition.
pub fn theorem_detail(r: &TheoremReport) -> String {
    let mut out = String::new();
    for m in &r.memberships {
        if !out.is_empty() {
            out.push_str("; ");
        }
        let _ = write!(out, "{} in {}", m.target, m.module);
        if m.member {
            let coeffs = m
                .coefficients
                .iter()
                .map(|c| {
                    let mut mono = m.generator_names[c.generator].clone();
                    if c.s_pow > 0 {
                        let _ = write!(mono, "*s^{}", c.s_pow);
                    }
                    if c.t_pow > 0 {
                        let _ = write!(mono, "*t^{}", c.t_pow);
                    }
                    format!("{mono}: {}", c.value)
                })
                .collect::<Vec<_>>()
                .join(", ");
            let _ = write!(
                out,
                " ({}unique; {})",
                if m.unique { "" } else { "NOT " },
                if coeffs.is_empty() { "zero" } else { &coeffs }
            );
        } else {
            out.push_str(" (NOT a member)");
        }
    }
    for e in &r.extra {
        if !out.is_empty() {
            out.push_str("; ");
        }
        let _ = write!(out, "{}: {}", e.name, if e.ok { "ok" } else { "FAILED" });
    }
    out
}

/// Structure-theorem suite: every classified code of each length in range
/// is checked against its applicable weight-enumerator theorems.  Odd
/// lengths beyond the exhaustive-search cap are skipped with a note.
pub fn suite_theorems(
    lo: usize,
    hi: usize,
    source: Option<&Path>,
) -> Result<SuiteReport, ReportError> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for n in lo..=hi {
        if n % 2 == 1 && n > SEARCH_MAX_LEN {
            checks.push(SuiteCheck {
                name: format!("n={n}"),
                pass: true,
                detail: format!(
                    "odd lengths beyond the search cap {SEARCH_MAX_LEN} are not classified; skipped"
                ),
            });
            continue;
        }
        for lc in classified_codes(n, source)? {
            for rep in dispatch_checks(&lc.code)? {
                checks.push(SuiteCheck {
                    name: format!("{} {}", lc.label, rep.theorem),
                    pass: rep.ok(),
                    detail: theorem_detail(&rep),
                });
            }
        }
    }
    Ok(finish_suite("theorems", checks, start))
}

/// Symbolic-identity suite: polynomial identities, the semi-invariant
/// character table, and the two matrix-group orders.
pub fn suite_semiinvariants() -> SuiteReport {
    let start = Instant::now();
    let checks = verify_semi_invariant_identities()
        .items
        .into_iter()
        .map(|item| SuiteCheck {
            name: item.name,
            pass: item.ok,
            detail: String::new(),
        })
        .collect();
    finish_suite("semiinvariants", checks, start)
}

/// Decomposition suite: every classified code factors back together, and
/// the minimum-distance structure checks hold.
pub fn suite_decompose(
    lo: usize,
    hi: usize,
    source: Option<&Path>,
) -> Result<SuiteReport, ReportError> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for n in lo..=hi {
        if n % 2 == 1 && n > SEARCH_MAX_LEN {
            checks.push(SuiteCheck {
                name: format!("n={n}"),
                pass: true,
                detail: format!(
                    "odd lengths beyond the search cap {SEARCH_MAX_LEN} are not classified; skipped"
                ),
            });
            continue;
        }
        let labeled = classified_codes(n, source)?;
        let codes: Vec<LinearCode> = labeled.iter().map(|lc| lc.code.clone()).collect();
        for (lc, code) in labeled.iter().zip(&codes) {
            let dec = full_decomposition(code)?;
            if dec.reassemble() != *code {
                checks.push(SuiteCheck {
                    name: format!("{} reassembly", lc.label),
                    pass: false,
                    detail: "factors do not multiply back to the code".to_string(),
                });
            }
        }
        for (lc, dc) in labeled.iter().zip(verify_distance_decompositions(&codes)?) {
            checks.push(SuiteCheck {
                name: format!("{} distance structure", lc.label),
                pass: dc.pass,
                detail: format!(
                    "d = {}; {}",
                    dc.distance
                        .map_or_else(|| "-".to_string(), |d| d.to_string()),
                    dc.detail
                ),
            });
        }
    }
    Ok(finish_suite("decompose", checks, start))
}

// ---------------------------------------------------------------------------
// Single-code reports.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct WenumReport {
    pub schema_version: u32,
    pub n: usize,
    pub dim: usize,
    /// Homogeneous enumerator with `x` marking weight, e.g. `y^8 + 14x^4y^4 + x^8`.
    pub enumerator: String,
    pub weight_distribution: Vec<u64>,
    pub min_distance: Option<u32>,
    pub even: bool,
    pub totally_isotropic: bool,
    pub max_totally_isotropic: bool,
    pub self_dual: bool,
}

pub fn wenum_report(code: &LinearCode) -> Result<WenumReport, ReportError> {
    let w = WeightEnumerator::of_code(code)?;
    Ok(WenumReport {
        schema_version: SCHEMA_VERSION,
        n: code.len(),
        dim: code.dim(),
        enumerator: BiPoly::from_enumerator(&w).to_string(),
        weight_distribution: code.weight_distribution()?.to_vec(),
        min_distance: code.min_distance()?,
        even: code.is_even(),
        totally_isotropic: code.is_totally_isotropic(),
        max_totally_isotropic: code.is_max_totally_isotropic(),
        self_dual: code.is_self_dual(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    /// 1-based coordinates of the block in the original code.
    pub coordinates: Vec<usize>,
    pub rows: Vec<String>,
    pub length: usize,
    pub dim: usize,
    pub even: bool,
    /// Short name when the factor is one of the standard small codes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub schema_version: u32,
    pub n: usize,
    pub indecomposable: bool,
    pub factors: Vec<FactorReport>,
}

pub fn decomposition_report(code: &LinearCode) -> Result<DecompositionReport, ReportError> {
    let dec = full_decomposition(code)?;
    let factors = dec
        .blocks
        .iter()
        .zip(&dec.factors)
        .map(|(block, f)| {
            let name = if *f == i1() {
                Some("i1".to_string())
            } else if *f == i2() {
                Some("i2".to_string())
            } else if *f == i2_prime() {
                Some("i2'".to_string())
            } else if f.dim() == 0 && f.len() == 1 {
                Some("zero".to_string())
            } else {
                None
            };
            FactorReport {
                coordinates: block.iter().map(|c| c + 1).collect(),
                rows: f.generators().rows().iter().map(|r| r.to_string()).collect(),
                length: f.len(),
                dim: f.dim(),
                even: f.is_even(),
                name,
            }
        })
        .collect::<Vec<_>>();
    Ok(DecompositionReport {
        schema_version: SCHEMA_VERSION,
        n: code.len(),
        indecomposable: factors.len() == 1,
        factors,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub schema_version: u32,
    pub n: usize,
    pub dim: usize,
    pub min_distance: Option<u32>,
}

pub fn distance_report(code: &LinearCode) -> Result<DistanceReport, ReportError> {
    Ok(DistanceReport {
        schema_version: SCHEMA_VERSION,
        n: code.len(),
        dim: code.dim(),
        min_distance: code.min_distance()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::e8;

    #[test]
    fn classification_report_matches_known_row() {
        let rep = classification_report(6, None).unwrap();
        assert_eq!(rep.n, 6);
        assert!(rep.mass_check.pass && rep.selfdual_mass_check.pass);
        assert_eq!(
            (rep.row.count_type_i, rep.row.count_type_ii, rep.row.d_max),
            (1, 1, 3)
        );
        assert_eq!(rep.classes.len(), 2);
        // Exact rationals rendered as p/q.
        assert!(rep.mass_check.lhs.contains('/'), "{}", rep.mass_check.lhs);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"schema_version\":1"));
    }

    #[test]
    fn classification_rejects_odd_length() {
        assert!(matches!(
            classification_report(5, None),
            Err(ReportError::Usage(_))
        ));
    }

    #[test]
    fn mass_suite_passes_small() {
        let rep = suite_mass(2, 8, None).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.checks.len(), 8); // two checks per even length
    }

    #[test]
    fn macwilliams_suite_fixture_and_randoms() {
        let rep = suite_macwilliams(2, 8, 64).unwrap();
        assert!(rep.pass, "{:?}", rep.checks);
        assert_eq!(rep.checks.len(), 2);
        assert!(rep.checks[0].detail.contains("xy^3 + 3x^2y^2 + 3x^3y"));
    }

    #[test]
    fn theorem_suite_passes_small() {
        let rep = suite_theorems(6, 8, None).unwrap();
        assert!(rep.pass, "{:?}", rep.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        // Each length-6 class gets at least the general theorem; the
        // Type II class gets its residue theorem too.
        assert!(rep.checks.len() >= 5);
        assert!(rep.checks.iter().all(|c| !c.detail.contains("NOT")));
    }

    #[test]
    fn semiinvariant_suite_is_green() {
        let rep = suite_semiinvariants();
        assert!(rep.pass);
        assert_eq!(rep.checks.len(), 25);
    }

    #[test]
    fn decompose_suite_passes_small() {
        let rep = suite_decompose(1, 8, None).unwrap();
        assert!(rep.pass, "{:?}", rep.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn single_code_reports() {
        let w = wenum_report(&e8()).unwrap();
        assert_eq!(w.enumerator, "y^8 + 14x^4y^4 + x^8");
        assert_eq!(w.min_distance, Some(4));
        assert!(w.self_dual && w.max_totally_isotropic);

        let d = decomposition_report(&i1().direct_product(&crate::code::e7())).unwrap();
        assert!(!d.indecomposable);
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0].name.as_deref(), Some("i1"));
        assert_eq!(d.factors[0].coordinates, vec![1]);
        assert_eq!(d.factors[1].coordinates, (2..=8).collect::<Vec<_>>());

        let dist = distance_report(&e8()).unwrap();
        assert_eq!(dist.min_distance, Some(4));
    }

    #[test]
    fn labeled_classes_are_deterministic() {
        let a = classified_codes(8, None).unwrap();
        let b = classified_codes(8, None).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.code, y.code);
        }
        // 2 self-dual classes and 4 odd classes at length 8.
        assert_eq!(a.len(), 6);
        assert!(a[0].label.starts_with("n=8 selfdual#"));
        assert!(a[5].label.starts_with("n=8 odd#"));
    }
}

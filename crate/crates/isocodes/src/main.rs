//! Command-line interface: classification, verification suites, and
//! single-code reports for maximal totally isotropic binary codes.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use isocodes::code::{parse_code, LinearCode};
use isocodes::report::{
    classification_report, decomposition_report, distance_report, suite_decompose,
    suite_macwilliams, suite_mass, suite_semiinvariants, suite_theorems, wenum_report,
    ClassificationReport, ReportError, RowReport, SuiteReport, CSV_HEADER,
};
use isocodes::selfdual::generate_selfdual_reps;

#[derive(Parser)]
#[command(
    name = "isocodes",
    version,
    about = "Classification and weight-enumerator analysis of binary codes that are \
             maximal totally isotropic for the form <u,v> = u.v + p(u)p(v)"
)]
struct Cli {
    /// Number of worker threads for parallel sections (default: all cores).
    /// Output is identical for every setting.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    /// Exact mass formulas for the self-dual and odd-class counts.
    Mass,
    /// Duality identity for the alternating form on random codes.
    Macwilliams,
    /// Weight-enumerator structure theorems on all classified codes.
    Theorems,
    /// Polynomial identities, character table, and group orders.
    Semiinvariants,
    /// Direct-product factorization and distance structure.
    Decompose,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the maximal totally isotropic codes with odd words at an
    /// even length, with exact mass certification.
    Classify {
        /// Even code length.
        #[arg(long)]
        n: usize,
        /// Self-dual input: "generate" or a path to a %-separated database.
        #[arg(long, default_value = "generate")]
        selfdual: String,
        /// Report format.
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        /// Inclusive length range "LO..HI" or a single length.
        #[arg(long)]
        n: Option<String>,
        /// Number of random codes for the macwilliams suite.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Emit the report as JSON instead of text lines.
        #[arg(long)]
        json: bool,
    },
    /// Weight enumerator, distribution, and minimum distance of a code file.
    Wenum {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Indecomposable direct factors of a code file.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Minimum distance of a code file.
    Distance {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate the certified self-dual class database for an even length.
    GenSelfdual {
        #[arg(long)]
        n: usize,
        /// Output file for the %-separated records.
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), ReportError> {
    let bad = || ReportError::Usage(format!("invalid length range '{s}'; use LO..HI or N"));
    if let Some((a, b)) = s.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad())?;
        let hi: usize = b.trim().parse().map_err(|_| bad())?;
        if lo == 0 || lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let n: usize = s.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok((n, n))
    }
}

fn json_string<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize to JSON")
}

fn load_code(path: &PathBuf) -> Result<LinearCode, ReportError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_code(&text)?)
}

fn row_csv(r: &RowReport) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.n, r.count_type_i, r.count_type_ii, r.d_max, r.count_max_type_i, r.count_max_type_ii
    )
}

fn emit(text: String, output: Option<&PathBuf>) -> Result<(), ReportError> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn classify_cmd(
    n: usize,
    selfdual: &str,
    out: OutFormat,
    output: Option<&PathBuf>,
) -> Result<u8, ReportError> {
    let source = match selfdual {
        "generate" => None,
        path => Some(PathBuf::from(path)),
    };
    let rep: ClassificationReport = classification_report(n, source.as_deref())?;
    let text = match out {
        OutFormat::Json => format!("{}\n", json_string(&rep)),
        OutFormat::Csv => format!("{}\n{}\n", CSV_HEADER, row_csv(&rep.row)),
    };
    emit(text, output)?;
    Ok(if rep.mass_check.pass && rep.selfdual_mass_check.pass {
        0
    } else {
        1
    })
}

fn print_suite(rep: &SuiteReport, json: bool) {
    if json {
        println!("{}", json_string(rep));
        return;
    }
    for c in &rep.checks {
        if c.detail.is_empty() {
            println!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
        } else {
            println!(
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
    }
    println!(
        "suite {}: {} ({} checks, {} ms)",
        rep.suite,
        if rep.pass { "PASS" } else { "FAIL" },
        rep.checks.len(),
        rep.timing_ms
    );
}

fn verify_cmd(
    suite: SuiteName,
    range: Option<&str>,
    count: usize,
    json: bool,
) -> Result<u8, ReportError> {
    let rep = match suite {
        SuiteName::Mass => {
            let (lo, hi) = range.map_or(Ok((2, 12)), parse_range)?;
            suite_mass(lo, hi, None)?
        }
        SuiteName::Macwilliams => {
            let (lo, hi) = range.map_or(Ok((2, 12)), parse_range)?;
            suite_macwilliams(lo, hi, count)?
        }
        SuiteName::Theorems => {
            let (lo, hi) = range.map_or(Ok((2, 10)), parse_range)?;
            suite_theorems(lo, hi, None)?
        }
        SuiteName::Semiinvariants => suite_semiinvariants(),
        SuiteName::Decompose => {
            let (lo, hi) = range.map_or(Ok((1, 10)), parse_range)?;
            suite_decompose(lo, hi, None)?
        }
    };
    print_suite(&rep, json);
    Ok(u8::from(!rep.pass))
}

fn wenum_cmd(file: &PathBuf, json: bool) -> Result<u8, ReportError> {
    let code = load_code(file)?;
    let rep = wenum_report(&code)?;
    if json {
        println!("{}", json_string(&rep));
    } else {
        println!("length {}, dimension {}", rep.n, rep.dim);
        println!("enumerator: {}", rep.enumerator);
        println!(
            "weights: {}",
            rep.weight_distribution
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        println!(
            "minimum distance: {}",
            rep.min_distance
                .map_or_else(|| "-".to_string(), |d| d.to_string())
        );
        println!(
            "even: {}; totally isotropic: {}; maximal totally isotropic: {}; self-dual: {}",
            rep.even, rep.totally_isotropic, rep.max_totally_isotropic, rep.self_dual
        );
    }
    Ok(0)
}

fn decompose_cmd(file: &PathBuf, json: bool) -> Result<u8, ReportError> {
    let code = load_code(file)?;
    let rep = decomposition_report(&code)?;
    if json {
        println!("{}", json_string(&rep));
    } else if rep.indecomposable {
        println!("length {}: indecomposable", rep.n);
    } else {
        println!(
            "length {}: {} indecomposable factors",
            rep.n,
            rep.factors.len()
        );
        for (i, f) in rep.factors.iter().enumerate() {
            let name = f
                .name
                .as_ref()
                .map_or_else(String::new, |s| format!(" ({s})"));
            println!(
                "factor {}{}: coordinates {}; rows: {}",
                i + 1,
                name,
                f.coordinates
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                if f.rows.is_empty() {
                    "-".to_string()
                } else {
                    f.rows.join(", ")
                }
            );
        }
    }
    Ok(0)
}

fn distance_cmd(file: &PathBuf, json: bool) -> Result<u8, ReportError> {
    let code = load_code(file)?;
    let rep = distance_report(&code)?;
    if json {
        println!("{}", json_string(&rep));
    } else {
        println!(
            "{}",
            rep.min_distance
                .map_or_else(|| "-".to_string(), |d| d.to_string())
        );
    }
    Ok(0)
}

fn gen_selfdual_cmd(n: usize, out: &PathBuf) -> Result<u8, ReportError> {
    let set = generate_selfdual_reps(n)?;
    set.certify()?;
    std::fs::write(out, set.to_db_text())?;
    println!("wrote {} records of length {n} to {}", set.reps.len(), out.display());
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, ReportError> {
    match &cli.cmd {
        Cmd::Classify {
            n,
            selfdual,
            out,
            output,
        } => classify_cmd(*n, selfdual, *out, output.as_ref()),
        Cmd::Verify {
            suite,
            n,
            count,
            json,
        } => verify_cmd(*suite, n.as_deref(), *count, *json),
        Cmd::Wenum { file, json } => wenum_cmd(file, *json),
        Cmd::Decompose { file, json } => decompose_cmd(file, *json),
        Cmd::Distance { file, json } => distance_cmd(file, *json),
        Cmd::GenSelfdual { n, out } => gen_selfdual_cmd(*n, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

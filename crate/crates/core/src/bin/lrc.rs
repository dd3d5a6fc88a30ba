//! `lrc`: construct, verify and repair (r,δ) locally repairable codes.
//!
//! Exit codes: 0 success, 1 negative verdict (suboptimal, failed locality,
//! unrecoverable pattern, MDS witness found), 2 input error, 3 work budget
//! exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use rdlrc::analysis::{full_report_with, AnalysisError, Budget, DEFAULT_WORK_BUDGET};
use rdlrc::constructions::{
    build_general_with, build_h1_with, build_h2_with, build_h3_with, vandermonde_pair, BuildOptions, DesignFile,
    FPolynomial, LrcDesign,
};
use rdlrc::fqmatrix::{FqMatrix, MatrixFile, MdsVerdict};
use rdlrc::gf::FieldSpec;
use rdlrc::repair::{erasure_sweep, repair_auto, Codec, ErasurePattern, RepairError, RepairMode};

#[derive(Parser)]
#[command(name = "lrc", version, about = "Optimal (r,δ) locally repairable codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    H1,
    H2,
    H3,
    General,
}

#[derive(Subcommand)]
enum Command {
    /// Build a parity-check matrix and write it as a design file.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Field order (a prime power); alternative to --p/--e.
        #[arg(long, conflicts_with = "p")]
        q: Option<u64>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, default_value_t = 1, requires = "p")]
        e: u32,
        /// Monic modulus coefficients, constant term first.
        #[arg(long, value_delimiter = ',', requires = "p")]
        modulus: Option<Vec<u32>>,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Coefficients of f for h1, constant term first.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        f: Vec<u32>,
        /// δ for the general construction.
        #[arg(long)]
        delta: Option<usize>,
        /// Target distance for the general construction.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the MDS checks on the blocks.
        #[arg(long)]
        no_verify: bool,
        /// Print the design file to stdout.
        #[arg(long)]
        json: bool,
    },
    /// Certify dimension, distance, locality and optimality of a design.
    Verify {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Exit 0 on a suboptimal verdict.
        #[arg(long)]
        allow_suboptimal: bool,
        /// Work budget for the exact-distance search (env LRC_WORK_BUDGET).
        #[arg(long, env = "LRC_WORK_BUDGET")]
        budget: Option<u64>,
    },
    /// Repair erasures, from a word file, a random codeword, or a full sweep.
    Repair {
        file: PathBuf,
        /// JSON {"design": .., "word": [int|null, ..]}.
        #[arg(long, conflicts_with_all = ["erase", "sweep"])]
        word: Option<PathBuf>,
        /// Erase these coordinates of a random codeword.
        #[arg(long, value_delimiter = ',', conflicts_with = "sweep")]
        erase: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Try every erasure pattern up to --max-erasures.
        #[arg(long)]
        sweep: bool,
        /// Defaults to d-1.
        #[arg(long, requires = "sweep")]
        max_erasures: Option<usize>,
    },
    /// Check that every column subset of size rows is independent.
    MdsCheck { file: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("work budget of {0} exhausted before the search finished")]
    Budget(u64),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::BudgetExceeded { limit } => CliError::Budget(limit),
            other => CliError::input(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Construct { kind, q, p, e, modulus, r, m, f, delta, d, out, no_verify, json } => {
            let field = match (q, p) {
                (Some(q), _) => FieldSpec::with_order(q),
                (None, Some(p)) => FieldSpec::new(p, e, modulus.as_deref()),
                (None, None) => return Err(CliError::input("give the field as --q or --p/--e")),
            }
            .map_err(CliError::input)?;
            let opts = BuildOptions { verify_mds: !no_verify };
            let design = match kind {
                Kind::H1 => {
                    let f = FPolynomial::new(&field, &f).map_err(CliError::input)?;
                    build_h1_with(&field, r, m, &f, opts)
                }
                Kind::H2 => build_h2_with(&field, r, m, opts),
                Kind::H3 => build_h3_with(&field, r, m, opts),
                Kind::General => {
                    let (delta, d) = match (delta, d) {
                        (Some(delta), Some(d)) => (delta, d),
                        _ => return Err(CliError::input("--kind general needs --delta and --d")),
                    };
                    vandermonde_pair(&field, r, delta, d)
                        .and_then(|(u, v)| build_general_with(&vec![u; m], &vec![v; m], r, delta, d, opts))
                }
            }
            .map_err(CliError::input)?;
            println!("{}", design.summary());
            if let Some(path) = out {
                fs::write(&path, design.to_json()).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
                println!("wrote {}", path.display());
            }
            if json {
                println!("{}", design.to_json());
            }
            Ok(0)
        }
        Command::Verify { file, report, json, allow_suboptimal, budget } => {
            let design = load_design(&file)?;
            let mut budget = Budget::new(budget.unwrap_or(DEFAULT_WORK_BUDGET));
            let rep = full_report_with(&design, &mut budget)?;
            if json {
                println!("{}", rep.to_json());
            } else {
                println!("{}", design.summary());
                println!("n={} k={} d={} (witness support {:?})", rep.n, rep.k, rep.d_exact, rep.d_witness);
                println!("{}", rep.headline());
            }
            if let Some(path) = report {
                fs::write(&path, rep.to_json()).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            }
            Ok(if rep.is_optimal() || (allow_suboptimal && rep.locality_failure.is_none()) { 0 } else { 1 })
        }
        Command::Repair { file, word, erase, seed, sweep, max_erasures } => {
            if let Some(word_path) = word {
                let (design, word) = load_word(&word_path, Some(&file))?;
                return report_repair(&design, &word, None);
            }
            let design = load_design(&file)?;
            if sweep {
                return run_sweep(&design, max_erasures.unwrap_or(design.claimed_d() - 1), seed);
            }
            let codec = Codec::new(&design);
            let codeword =
                codec.encode(&codec.random_message(&mut ChaCha8Rng::seed_from_u64(seed))).map_err(CliError::input)?;
            let pattern = ErasurePattern::new(&erase.unwrap_or_default(), design.n()).map_err(CliError::input)?;
            println!("codeword {codeword:?}");
            println!("erased   {:?}", pattern.positions());
            report_repair(&design, &pattern.apply(&codeword), Some(&codeword))
        }
        Command::MdsCheck { file } => {
            let text = read(&file)?;
            let mf: MatrixFile = serde_json::from_str(&text).map_err(CliError::input)?;
            let h = FqMatrix::from_file(&mf).map_err(CliError::input)?;
            match h.mds_check().map_err(CliError::input)? {
                MdsVerdict::Holds => {
                    println!("MDS: every {} columns of the {}x{} matrix are independent", h.rows(), h.rows(), h.cols());
                    Ok(0)
                }
                MdsVerdict::Fails { witness } => {
                    println!("NOT MDS: columns {witness:?} are dependent");
                    Ok(1)
                }
            }
        }
    }
}

fn report_repair(design: &LrcDesign, word: &[Option<u32>], expected: Option<&[u32]>) -> Result<u8, CliError> {
    match repair_auto(design, word) {
        Ok(res) => {
            for (p, mode) in &res.modes {
                let how = match mode {
                    RepairMode::Local => format!("local, group {}", design.block_of(*p)),
                    RepairMode::Global => "global".to_string(),
                };
                println!("  x[{p}] = {} ({how})", res.codeword[*p]);
            }
            println!("repaired {:?}", res.codeword);
            println!("groups touched {:?}, symbols read {}", res.groups_touched, res.symbols_read());
            match expected {
                Some(c) if c != res.codeword.as_slice() => {
                    println!("MISMATCH against the original codeword");
                    Ok(1)
                }
                Some(_) => {
                    println!("matches the original codeword");
                    Ok(0)
                }
                None => Ok(0),
            }
        }
        Err(e @ RepairError::Unrecoverable { .. }) => {
            println!("{e}");
            Ok(1)
        }
        Err(e) => Err(CliError::input(e)),
    }
}

fn run_sweep(design: &LrcDesign, max: usize, seed: u64) -> Result<u8, CliError> {
    println!("{}", design.summary());
    let report = erasure_sweep(design, max, seed).map_err(CliError::input)?;
    let plural = |s: usize| if s == 1 { "erasure " } else { "erasures" };
    for t in &report.local {
        println!("local  {} {}: {}/{} patterns recovered", t.erasures, plural(t.erasures), t.recovered, t.patterns);
    }
    for t in &report.global {
        println!("global {} {}: {}/{} patterns recovered", t.erasures, plural(t.erasures), t.recovered, t.patterns);
    }
    let sum = |ts: &[rdlrc::repair::Tally]| {
        (ts.iter().map(|t| t.recovered).sum::<usize>(), ts.iter().map(|t| t.patterns).sum::<usize>())
    };
    let (lr, lp) = sum(&report.local);
    let (gr, gp) = sum(&report.global);
    println!("total: local {lr}/{lp}, global {gr}/{gp}, locality violations {}", report.locality_violations);
    Ok(if report.all_recovered() { 0 } else { 1 })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_design(path: &Path) -> Result<LrcDesign, CliError> {
    let file: DesignFile =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    LrcDesign::from_file(&file).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DesignRef {
    Path(PathBuf),
    Inline(Box<DesignFile>),
}

#[derive(Deserialize)]
struct WordFile {
    design: Option<DesignRef>,
    word: Vec<Option<u64>>,
}

/// Reads a word file. Its `design` entry (inline or a path relative to the
/// word file) wins over `fallback`.
fn load_word(path: &Path, fallback: Option<&Path>) -> Result<(LrcDesign, Vec<Option<u32>>), CliError> {
    let wf: WordFile =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let design = match (wf.design, fallback) {
        (Some(DesignRef::Inline(file)), _) => LrcDesign::from_file(&file).map_err(CliError::input)?,
        (Some(DesignRef::Path(p)), _) => load_design(&path.parent().unwrap_or(Path::new(".")).join(p))?,
        (None, Some(f)) => load_design(f)?,
        (None, None) => return Err(CliError::input("word file names no design")),
    };
    let q = design.field().order();
    let word = wf
        .word
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            Some(c) if *c >= u64::from(q) => {
                Err(CliError::input(format!("symbol {c} at position {i} is not below q = {q}")))
            }
            Some(c) => Ok(Some(*c as u32)),
            None => Ok(None),
        })
        .collect::<Result<_, _>>()?;
    Ok((design, word))
}

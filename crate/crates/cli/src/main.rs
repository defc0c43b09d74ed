mod render;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use qglinf::action::{Deformed, Engine, GeneratorId, Kind};
use qglinf::io::{operator_csv, operator_numeric, write_atomic, ModuleFile, OperatorJson};
use qglinf::patterns::{Basis, BasisConfig, Signature, DEFAULT_CAP};
use qglinf::{parse_rational, Error, Rational};
use serde::Serialize;

use suites::{RunConfig, Suite};

const PASS: u8 = 0;
const VERIFY_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;
const TOO_LARGE: u8 = 3;

#[derive(Parser)]
#[command(name = "qglinf", version, about = "Highest-weight U_h(gl_inf) modules in the C-pattern basis")]
struct Cli {
    /// Worker threads for parallel suites (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Basis size limit.
    #[arg(long, global = true, env = "QGLINF_CAP", default_value_t = DEFAULT_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the depth-N basis and write a module file.
    Build {
        /// Signature file, inline `offset=..; left=..; ...` text, or `ls:<s>`.
        #[arg(long)]
        signature: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply one generator to one basis vector.
    Act {
        #[arg(long)]
        module: PathBuf,
        /// e.g. `F:-1`, `E:0`, `H:2`.
        #[arg(long)]
        generator: GeneratorId,
        /// Basis id; the highest vector when omitted.
        #[arg(long)]
        pattern: Option<usize>,
        /// Also evaluate coefficients at this q.
        #[arg(long)]
        q: Option<String>,
    },
    /// Run verification suites and write a JSON report.
    Verify {
        #[arg(long)]
        module: PathBuf,
        /// Comma separated subset of cartan,serre,identities,highest,reach,classical,scan.
        #[arg(long, value_delimiter = ',', default_value = "cartan,serre,identities,highest,reach,classical,scan")]
        suites: Vec<Suite>,
        /// Generator index range `a..b`, inclusive (default: -N-1..N-1).
        #[arg(long)]
        range: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Identity order; both 1 and 2 when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Signature the identity suite samples from.
        #[arg(long)]
        sample_signature: Option<String>,
        #[arg(long, default_value = "3/2")]
        q: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export one generator's matrix.
    Export {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        generator: GeneratorId,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        q: Option<String>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Numeric,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BasisTooLarge { .. }) { TOO_LARGE } else { INPUT_ERROR };
        Self { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: INPUT_ERROR, message: message.into() }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    }
    let config = BasisConfig { cap: cli.cap, ..BasisConfig::default() };
    match run(cli.command, config) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, config: BasisConfig) -> Result<u8, Failure> {
    match command {
        Command::Build { signature, depth, out } => {
            let sig = read_signature(&signature)?;
            let basis = Basis::enumerate_with(&sig, depth, config)?;
            ModuleFile::from_basis(&basis).save(&out)?;
            println!("basis size {} id {}", basis.len(), basis.id());
            Ok(PASS)
        }
        Command::Act { module, generator, pattern, q } => {
            let basis = load(&module, config)?;
            let q = q.as_deref().map(rational).transpose()?;
            let id = pattern.unwrap_or_else(|| basis.highest_id());
            let p = basis.get(id).ok_or(Error::PatternNotInBasis(format!("id {id}")))?;
            let engine = Engine::for_basis(Deformed::new(), &basis);
            let lines = if generator.kind == Kind::H {
                generator.check_admissible(basis.depth())?;
                vec![render::eigenvalue(&engine.eigenvalue(generator.index, p)?, id)]
            } else {
                render::vector(&engine.act(generator, p)?, &basis, q.as_ref())?
            };
            for l in lines {
                println!("{l}");
            }
            Ok(PASS)
        }
        Command::Verify { module, suites, range, samples, seed, k, sample_signature, q, tol, out } => {
            let basis = load(&module, config)?;
            let n = basis.depth() as i64;
            let range = match range {
                Some(r) => parse_range(&r)?,
                None => (-n - 1..n).collect(),
            };
            let cfg = RunConfig {
                range,
                samples,
                seed,
                ks: k.map_or(vec![1, 2], |k| vec![k]),
                q: rational(&q)?,
                tol,
                sampling_signature: match sample_signature {
                    Some(s) => read_signature(&s)?,
                    None => suites::default_sampling_signature(),
                },
            };
            verify(&basis, &suites, &cfg, out.as_deref())
        }
        Command::Export { module, generator, format, q, out } => {
            let basis = load(&module, config)?;
            let engine = Engine::for_basis(Deformed::new(), &basis);
            let op = engine.operator(generator, &basis)?;
            let text = match format {
                Format::Json => json(&OperatorJson::from(op.as_ref()))?,
                Format::Csv => operator_csv(&op),
                Format::Numeric => {
                    let q = q.ok_or_else(|| input_error("numeric export needs --q"))?;
                    json(&operator_numeric(&op, &rational(&q)?)?)?
                }
            };
            match out {
                Some(path) => write_atomic(&path, text.as_bytes())?,
                None => print!("{text}"),
            }
            Ok(PASS)
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    basis_id: &'a str,
    basis_hash: &'a str,
    signature: String,
    depth: usize,
    config: &'a RunConfig,
    passed: bool,
    suites: Vec<SuiteReport>,
}

#[derive(Serialize)]
struct SuiteReport {
    suite: Suite,
    passed: bool,
    #[serde(flatten)]
    outcome: suites::Outcome,
}

fn verify(basis: &Basis, selected: &[Suite], cfg: &RunConfig, out: Option<&Path>) -> Result<u8, Failure> {
    let mut selected = selected.to_vec();
    selected.sort();
    selected.dedup();
    let mut results = Vec::new();
    for suite in selected {
        info!("running {suite}");
        let outcome = suites::run(suite, basis, cfg)?;
        let passed = outcome.passed();
        let checked: usize = outcome.reports.iter().map(|r| r.checked).sum();
        println!("{} {suite}: {} relations, {checked} checks", if passed { "PASS" } else { "FAIL" }, outcome.reports.len());
        for r in outcome.reports.iter().filter(|r| !r.passed()).take(10) {
            println!("  {r}");
            for f in &r.failures {
                println!("    {:?}: {}", f.pattern_id, f.residual_terms.join(", "));
            }
        }
        results.push(SuiteReport { suite, passed, outcome });
    }
    let passed = results.iter().all(|s| s.passed);
    let report = Report {
        basis_id: basis.id(),
        basis_hash: basis.hash(),
        signature: basis.signature().to_string(),
        depth: basis.depth(),
        config: cfg,
        passed,
        suites: results,
    };
    if let Some(path) = out {
        write_atomic(path, json(&report)?.as_bytes())?;
    }
    Ok(if passed { PASS } else { VERIFY_FAILED })
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Failure::from(Error::from(e)))
}

fn load(path: &Path, config: BasisConfig) -> Result<Basis, Failure> {
    Ok(ModuleFile::load(path)?.basis(config)?)
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| input_error(format!("`{s}` is not a rational number")))
}

/// A path to a signature file, inline signature text, or `ls:<s>`.
fn read_signature(arg: &str) -> Result<Signature, Failure> {
    if let Some(s) = arg.strip_prefix("ls:") {
        let s = s.parse().map_err(|_| input_error(format!("`{arg}`: expected ls:<integer>")))?;
        return Ok(Signature::levendorskii_soibelman(s));
    }
    let path = Path::new(arg);
    let text = if path.is_file() { fs::read_to_string(path).map_err(Error::from)? } else { arg.to_string() };
    Ok(Signature::parse(&text)?)
}

fn parse_range(s: &str) -> Result<Vec<i64>, Failure> {
    let bad = || input_error(format!("`{s}`: expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

//! The `finflow` command line.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 verification
//! failure, 3 size limit exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::checks::{invariant_checks, CheckOptions};
use crate::corpus::{builtin_corpus, named_spaces, random_corpus};
use crate::error::Error;
use crate::families::{self, GeneratorSpec};
use crate::io::{
    format_semiflow_list, parse_poset, to_dot, write_poset_json, write_poset_text, AnalysisReport,
};
use crate::poset::Poset;
use crate::semiflow::{
    brute_force_oracle_with_limit, enumerate_semiflows_with, Analysis, ClaimCheck,
    EnumerateOptions, ENUMERATION_LIMIT, ORACLE_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "finflow",
    version,
    about = "Beat points, cores and semiflows on finite posets"
)]
struct Cli {
    /// Raise the enumeration and oracle size limits to N points.
    #[arg(long, global = true, value_name = "N")]
    size_limit: Option<usize>,

    /// Worker threads for semiflow enumeration (default: FINFLOW_THREADS or all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a poset file and report its size.
    Validate { file: PathBuf },
    /// Beat points, core, potential points and semiflow counts.
    Analyze {
        file: PathBuf,
        /// Also write the JSON report here.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Enumerate semiflows.
    Semiflows {
        file: PathBuf,
        /// Print every semiflow (default).
        #[arg(long, conflicts_with = "count")]
        list: bool,
        /// Print only the count.
        #[arg(long)]
        count: bool,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Check the counting results and structural invariants.
    Verify {
        /// Poset file; omit with --builtin.
        file: Option<PathBuf>,
        /// Run over the named families and the seeded random corpus.
        #[arg(long)]
        builtin: bool,
    },
    /// Generate a named or random space.
    Gen {
        /// chain, antichain, example_3_1, example_2_5, pseudo_circle, cone, x_n, random
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        p: Option<f64>,
        /// Base space for `cone` (any kind name).
        #[arg(long)]
        base: Option<String>,
        /// Output file; `.json` selects JSON, anything else the text format.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Hasse diagram in DOT, optionally with one semiflow drawn on it.
    Dot {
        file: PathBuf,
        /// Index into the canonical semiflow list.
        #[arg(long)]
        semiflow: Option<usize>,
    },
    /// Verify a batch of seeded random posets.
    RandomSuite {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long = "max-n", default_value_t = 9)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeLimit { .. } => EXIT_SIZE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<i32, Failure>;

struct Context {
    opts: EnumerateOptions,
    oracle_limit: usize,
}

/// Runs the CLI on `args` (program name first), writing to `out` and `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let mut ctx = Context {
        opts: EnumerateOptions {
            limit: ENUMERATION_LIMIT,
            threads: cli.threads,
        },
        oracle_limit: ORACLE_LIMIT,
    };
    if let Some(limit) = cli.size_limit {
        let _ = writeln!(
            err,
            "warning: size limit raised to {limit}; enumeration cost grows exponentially"
        );
        ctx.opts.limit = limit;
        ctx.oracle_limit = limit;
    }
    match dispatch(cli.command, &ctx, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_poset(path: &Path) -> Result<Poset, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_poset(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn dispatch(cmd: Command, ctx: &Context, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Validate { file } => {
            let p = read_poset(&file)?;
            writeln!(
                out,
                "ok: {} points, {} cover relations, height {}",
                p.len(),
                p.covers().len(),
                p.height()
            )?;
            Ok(EXIT_OK)
        }
        Command::Analyze { file, json } => {
            let p = read_poset(&file)?;
            let analysis = Analysis::with_options(&p, &ctx.opts)?;
            let report = AnalysisReport::build(&analysis);
            write!(out, "{}", report.render())?;
            if let Some(path) = json {
                std::fs::write(&path, report.to_json())?;
            }
            Ok(EXIT_OK)
        }
        Command::Semiflows {
            file,
            list: _,
            count,
            oracle,
        } => {
            let p = read_poset(&file)?;
            let sfs = enumerate_semiflows_with(&p, &ctx.opts)?;
            if count {
                writeln!(out, "{} ({} non-trivial)", sfs.len(), sfs.len() - 1)?;
            } else {
                write!(out, "{}", format_semiflow_list(&sfs))?;
            }
            if oracle {
                let maps = brute_force_oracle_with_limit(&p, ctx.oracle_limit)?;
                let same = maps.len() == sfs.len()
                    && maps
                        .iter()
                        .zip(&sfs)
                        .all(|(m, s)| m.values() == s.retraction().values());
                if !same {
                    writeln!(
                        err,
                        "oracle mismatch: enumerator {} maps, oracle {} maps",
                        sfs.len(),
                        maps.len()
                    )?;
                    return Ok(EXIT_VERIFY);
                }
                writeln!(err, "oracle agrees ({} maps)", maps.len())?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { file, builtin } => {
            let targets: Vec<(String, Poset)> = match (file, builtin) {
                (Some(f), false) => vec![(f.display().to_string(), read_poset(&f)?)],
                (None, true) => builtin_corpus(),
                _ => {
                    return Err(Failure {
                        code: EXIT_INVALID,
                        message: "verify needs either FILE or --builtin".into(),
                    })
                }
            };
            verify_all(&targets, ctx, out)
        }
        Command::Gen {
            kind,
            n,
            seed,
            p,
            base,
            output,
        } => {
            let spec = build_spec(&kind, n, seed, p, base.as_deref())?;
            let poset = families::make(&spec)?;
            let json = output
                .as_ref()
                .and_then(|o| o.extension())
                .is_some_and(|e| e == "json");
            let body = if json {
                write_poset_json(&poset) + "\n"
            } else {
                format!("# {spec}\n{}", write_poset_text(&poset))
            };
            match output {
                Some(path) => std::fs::write(path, body)?,
                None => write!(out, "{body}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Dot { file, semiflow } => {
            let p = read_poset(&file)?;
            let text = match semiflow {
                None => to_dot(&p, None),
                Some(i) => {
                    let sfs = enumerate_semiflows_with(&p, &ctx.opts)?;
                    let sf = sfs.get(i).ok_or_else(|| Failure {
                        code: EXIT_INVALID,
                        message: format!("semiflow index {i} out of range (0..{})", sfs.len()),
                    })?;
                    to_dot(&p, Some(sf))
                }
            };
            write!(out, "{text}")?;
            Ok(EXIT_OK)
        }
        Command::RandomSuite { count, max_n, seed } => {
            let mut targets = named_spaces();
            targets.extend(
                random_corpus(count, max_n, seed)
                    .into_iter()
                    .map(|(s, p)| (s.to_string(), p)),
            );
            verify_all(&targets, ctx, out)
        }
    }
}

fn build_spec(
    kind: &str,
    n: Option<usize>,
    seed: Option<u64>,
    p: Option<f64>,
    base: Option<&str>,
) -> Result<GeneratorSpec, Failure> {
    let mut spec: GeneratorSpec = kind.parse()?;
    match &mut spec {
        GeneratorSpec::Chain { n: m }
        | GeneratorSpec::Antichain { n: m }
        | GeneratorSpec::XN { n: m } => {
            if let Some(v) = n {
                *m = v;
            }
        }
        GeneratorSpec::Random {
            n: m,
            p: prob,
            seed: s,
        } => {
            if let Some(v) = n {
                *m = v;
            }
            if let Some(v) = p {
                *prob = v;
            }
            if let Some(v) = seed {
                *s = v;
            }
        }
        GeneratorSpec::Cone { base: b } => {
            if let Some(name) = base {
                **b = build_spec(name, n, seed, p, None)?;
            }
        }
        _ => {}
    }
    spec.validate()?;
    Ok(spec)
}

fn verify_one(p: &Poset, ctx: &Context) -> Result<Vec<ClaimCheck>, Failure> {
    let analysis = Analysis::with_options(p, &ctx.opts)?;
    let mut checks = analysis.claims();
    let opts = CheckOptions {
        oracle_limit: ctx.oracle_limit,
        ..CheckOptions::default()
    };
    checks.extend(invariant_checks(&analysis, &opts)?);
    Ok(checks)
}

fn verify_all(targets: &[(String, Poset)], ctx: &Context, out: &mut dyn Write) -> CliResult {
    let mut failures = 0usize;
    let single = targets.len() == 1;
    for (name, p) in targets {
        let checks = verify_one(p, ctx)?;
        let failed: Vec<&ClaimCheck> = checks.iter().filter(|c| !c.satisfied).collect();
        if single {
            for c in &checks {
                let mark = if c.satisfied { "PASS" } else { "FAIL" };
                writeln!(out, "{mark} {} ({})", c.claim, c.detail)?;
            }
        } else if !failed.is_empty() {
            for c in &failed {
                writeln!(out, "FAIL {name}: {} ({})", c.claim, c.detail)?;
            }
        }
        if !failed.is_empty() {
            failures += 1;
        }
    }
    writeln!(
        out,
        "{} of {} spaces passed every check",
        targets.len() - failures,
        targets.len()
    )?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_VERIFY })
}

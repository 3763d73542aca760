//! `peakfn`: compute pattern-avoiding peak functions, expand them across
//! bases, verify the closed forms behind them, and search for symmetry
//! counterexamples.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 requested
//! Schur Q expansion does not exist (expression outside the span).

mod cache;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use peakfn::insertion::{phi, phi_preimage, rsk_traced, sagan_worley_traced, TraceEvent};
use peakfn::pattern::{r_n_from_histogram, ConjectureReport};
use peakfn::perm::{IndexSet, PatternSet, Permutation};
use peakfn::qsym::QsymExpr;
use peakfn::schurq::{expand_in_schurq, schur_q, ExpandOutcome};
use peakfn::tableau::{ShiftedTableau, StrictPartition};
use peakfn::verify::{
    all_passed, check_appendix, check_counterexample, check_counting_identities,
    check_include_delta, check_insertion_properties, check_labeling_roundtrip, check_phi_suite,
    check_product_oracle, check_reversal_machinery, check_shuffle_closed_form,
    check_shuffle_formula, check_symmetry_oracle, check_table1, check_table1_completeness,
    CheckResult,
};

#[derive(Parser)]
#[command(
    name = "peakfn",
    version,
    about = "Exact pattern-avoiding peak function computations"
)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

/// Global configuration; flags win over environment variables.
#[derive(Args, Clone)]
struct ConfigArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached avoidance-class histograms.
    #[arg(long, global = true, env = "PEAKFN_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Worker threads for verification suites (0 = all cores).
    #[arg(long, global = true, env = "PEAKFN_JOBS", default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "Q", alias = "q")]
    Q,
}

#[derive(Subcommand)]
enum Command {
    /// Compute R_n(Π) and print it in the requested basis.
    Rn {
        n: usize,
        /// Comma-separated pattern list, e.g. "123,132" (empty for Π = ∅).
        #[arg(long, default_value = "")]
        patterns: String,
        #[arg(long, value_enum, default_value_t = BasisArg::K)]
        basis: BasisArg,
    },
    /// Print the descent and peak sets of a permutation.
    Peaks { perm: String },
    /// Run RSK (--rsk) or Sagan–Worley (--sw) insertion on a permutation.
    Insert {
        #[arg(long)]
        rsk: bool,
        #[arg(long)]
        sw: bool,
        /// Print one line per bump before the tableaux.
        #[arg(long)]
        trace: bool,
        perm: String,
    },
    /// Apply Φ (Sagan–Worley insertion of the RSK recording reading word).
    Phi { perm: String },
    /// List the permutations mapped to a two-row shifted tableau by Φ.
    PhiPreimage { tableau: String },
    /// Expand the Schur Q-function of a strict partition into peak functions.
    Schurq { lambda: String },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
    /// Search commands.
    Search {
        #[command(subcommand)]
        what: SearchCommand,
    },
    /// Check symmetry and Schur Q-positivity of R_n({ι_k}) for n up to a bound.
    Conjecture {
        /// Size k of the increasing pattern.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        iota: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
    /// Decide whether two pattern sets have equal peak-set multisets up to a bound.
    PeakEquiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Every pattern set of the closed-form table against brute force.
    Table1 {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(3..))]
        max_n: u64,
    },
    /// The embedded R_n(1234)/R_n(12345) reference tables.
    Appendix {
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
    /// Insertion, Φ, reversal, counting, product, and symmetry identities.
    Identities {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
    /// The shuffle-product identity and its closed values.
    Shuffle {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Smallest n with R_n(Π) not symmetric.
    Asymmetry {
        #[arg(long)]
        patterns: String,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (e.g. output piped into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = cli.config;
    match cli.command {
        Command::Rn { n, patterns, basis } => cmd_rn(&cfg, n, &patterns, basis),
        Command::Peaks { perm } => cmd_peaks(&cfg, &perm),
        Command::Insert {
            rsk,
            sw,
            trace,
            perm,
        } => cmd_insert(&cfg, rsk, sw, trace, &perm),
        Command::Phi { perm } => cmd_phi(&cfg, &perm),
        Command::PhiPreimage { tableau } => cmd_phi_preimage(&cfg, &tableau),
        Command::Schurq { lambda } => cmd_schurq(&cfg, &lambda),
        Command::Verify { suite } => cmd_verify(&cfg, suite),
        Command::Search { what } => match what {
            SearchCommand::Asymmetry { patterns, max_n } => {
                cmd_search_asymmetry(&cfg, &patterns, max_n as usize)
            }
        },
        Command::Conjecture { iota, max_n } => cmd_conjecture(&cfg, iota as usize, max_n as usize),
        Command::PeakEquiv { a, b, max_n } => cmd_peak_equiv(&cfg, &a, &b, max_n as usize),
    }
}

fn parse_patterns(text: &str) -> Result<PatternSet> {
    PatternSet::parse(text).map_err(|e| anyhow!("bad pattern list '{text}': {e}"))
}

fn parse_perm(text: &str) -> Result<Permutation> {
    text.parse::<Permutation>()
        .map_err(|e| anyhow!("bad permutation '{text}': {e}"))
}

fn cached_histogram(cfg: &ConfigArgs, patterns: &PatternSet, n: usize) -> BTreeMap<IndexSet, u64> {
    cache::histogram(cfg.cache_dir.as_deref(), patterns, n)
}

fn render_qsym(cfg: &ConfigArgs, e: &QsymExpr) -> Result<String> {
    Ok(match cfg.format {
        Format::Text => e.to_string(),
        Format::Latex => e.to_latex(),
        Format::Json => serde_json::to_string(e)?,
    })
}

fn cmd_rn(cfg: &ConfigArgs, n: usize, patterns: &str, basis: BasisArg) -> Result<ExitCode> {
    let patterns = parse_patterns(patterns)?;
    let hist = cached_histogram(cfg, &patterns, n);
    let e = r_n_from_histogram(&hist, n);
    let rendered = match basis {
        BasisArg::K => render_qsym(cfg, &e)?,
        BasisArg::F => render_qsym(cfg, &e.k_to_f().expect("R_n is a K-expression"))?,
        BasisArg::M => render_qsym(cfg, &e.to_m())?,
        BasisArg::Q => match expand_in_schurq(&e).context("expansion failed")? {
            ExpandOutcome::Expansion(x) => match cfg.format {
                Format::Text => x.to_string(),
                Format::Latex => x.to_latex(),
                Format::Json => serde_json::to_string(&x)?,
            },
            ExpandOutcome::NotInSpan {
                witness,
                expected,
                actual,
            } => {
                eprintln!(
                    "not Schur Q-expandable: the K({witness}) equation needs {expected}, \
                     the candidate gives {actual}"
                );
                return Ok(ExitCode::from(3));
            }
        },
    };
    println!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_peaks(cfg: &ConfigArgs, perm: &str) -> Result<ExitCode> {
    let p = parse_perm(perm)?;
    let des = p.descent_set();
    let peak = p.peak_set();
    match cfg.format {
        Format::Json => println!(
            "{}",
            json!({
                "permutation": p.to_string(),
                "des": des.elements(),
                "peak": peak.elements(),
            })
        ),
        _ => println!("Des={des} Peak={peak}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_insert(
    cfg: &ConfigArgs,
    use_rsk: bool,
    use_sw: bool,
    trace: bool,
    perm: &str,
) -> Result<ExitCode> {
    if use_rsk == use_sw {
        bail!("exactly one of --rsk and --sw is required");
    }
    let p = parse_perm(perm)?;
    let (labels, insertion, recording, events): (_, String, String, Vec<TraceEvent>) = if use_rsk {
        let (result, events) = rsk_traced(&p);
        (
            ("P", "Q"),
            result.insertion.to_string(),
            result.recording.to_string(),
            events,
        )
    } else {
        let (result, events) = sagan_worley_traced(&p);
        (
            ("R", "S"),
            result.insertion.to_string(),
            result.recording.to_string(),
            events,
        )
    };
    match cfg.format {
        Format::Json => {
            let trace_lines: Option<Vec<String>> =
                trace.then(|| events.iter().map(|e| e.to_string()).collect());
            println!(
                "{}",
                json!({
                    "algorithm": if use_rsk { "rsk" } else { "sw" },
                    "permutation": p.to_string(),
                    "insertion": insertion,
                    "recording": recording,
                    "trace": trace_lines,
                })
            );
        }
        _ => {
            if trace {
                for e in &events {
                    println!("{e}");
                }
            }
            println!("{}={insertion}", labels.0);
            println!("{}={recording}", labels.1);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_phi(cfg: &ConfigArgs, perm: &str) -> Result<ExitCode> {
    let p = parse_perm(perm)?;
    let t = phi(&p);
    match cfg.format {
        Format::Json => println!(
            "{}",
            json!({ "permutation": p.to_string(), "tableau": t.to_string() })
        ),
        _ => println!("{t}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_phi_preimage(cfg: &ConfigArgs, tableau: &str) -> Result<ExitCode> {
    let t: ShiftedTableau = tableau
        .parse()
        .map_err(|e| anyhow!("bad tableau '{tableau}': {e}"))?;
    let preimage = phi_preimage(&t).map_err(|e| anyhow!("{e}"))?;
    match cfg.format {
        Format::Json => println!(
            "{}",
            json!({
                "tableau": t.to_string(),
                "count": preimage.len(),
                "preimage": preimage.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            })
        ),
        _ => {
            for p in &preimage {
                println!("{p}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_schurq(cfg: &ConfigArgs, lambda: &str) -> Result<ExitCode> {
    let lambda: StrictPartition = lambda
        .parse()
        .map_err(|e| anyhow!("bad strict partition '{lambda}': {e}"))?;
    let e = schur_q(&lambda);
    println!("{}", render_qsym(cfg, &e)?);
    Ok(ExitCode::SUCCESS)
}

type CheckJob = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync>;

fn cmd_verify(cfg: &ConfigArgs, suite: VerifySuite) -> Result<ExitCode> {
    let (name, jobs): (&str, Vec<CheckJob>) = match suite {
        VerifySuite::Table1 { max_n } => {
            let jobs: Vec<CheckJob> = (3..=max_n as usize)
                .map(|n| Box::new(move || check_table1(n, n)) as CheckJob)
                .collect();
            ("table1", jobs)
        }
        VerifySuite::Appendix { max_n } => {
            let jobs: Vec<CheckJob> = (1..=(max_n as usize).min(9))
                .map(|n| Box::new(move || check_appendix(n, n)) as CheckJob)
                .collect();
            ("appendix", jobs)
        }
        VerifySuite::Identities { max_n } => {
            let n = max_n as usize;
            let jobs: Vec<CheckJob> = vec![
                Box::new(move || check_insertion_properties(n.min(7))),
                Box::new(move || check_phi_suite(n.min(7), n.min(8))),
                Box::new(move || check_reversal_machinery(n.min(6))),
                Box::new(move || check_counting_identities(n.max(20), n.max(12), n.min(12))),
                Box::new(move || check_labeling_roundtrip(n.min(8))),
                Box::new(move || check_product_oracle(n.min(7), n.min(6))),
                Box::new(move || check_symmetry_oracle(n.min(5))),
                Box::new(check_counterexample),
                Box::new(move || check_table1_completeness(n.min(7))),
            ];
            ("identities", jobs)
        }
        VerifySuite::Shuffle { max_n } => {
            let n = max_n as usize;
            let jobs: Vec<CheckJob> = vec![
                Box::new(move || check_shuffle_formula(n)),
                Box::new(move || check_shuffle_closed_form(n)),
                Box::new(move || check_include_delta(n.min(8))),
            ];
            ("shuffle", jobs)
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .context("building worker pool")?;
    let results: Vec<Vec<CheckResult>> = pool.install(|| {
        use rayon::prelude::*;
        jobs.par_iter().map(|job| job()).collect()
    });
    let checks: Vec<CheckResult> = results.into_iter().flatten().collect();

    let passed = checks.iter().filter(|c| c.passed).count();
    match cfg.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "details": c.details }))
                .collect();
            println!(
                "{}",
                json!({
                    "suite": name,
                    "passed": passed,
                    "failed": checks.len() - passed,
                    "checks": rows,
                })
            );
        }
        _ => {
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                if c.details.is_empty() {
                    println!("{status} {}", c.name);
                } else {
                    println!("{status} {} — {}", c.name, c.details);
                }
            }
            println!("{name}: {passed}/{} checks passed", checks.len());
        }
    }
    Ok(if all_passed(&checks) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_search_asymmetry(cfg: &ConfigArgs, patterns: &str, max_n: usize) -> Result<ExitCode> {
    let patterns = parse_patterns(patterns)?;
    let witness = (1..=max_n).find(|&n| {
        let hist = cached_histogram(cfg, &patterns, n);
        !r_n_from_histogram(&hist, n).is_symmetric()
    });
    match cfg.format {
        Format::Json => println!(
            "{}",
            json!({
                "patterns": patterns.canonical_string(),
                "max_n": max_n,
                "witness": witness,
            })
        ),
        _ => match witness {
            Some(n) => println!("n={n}"),
            None => println!("none up to n={max_n}"),
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_conjecture(cfg: &ConfigArgs, iota: usize, max_n: usize) -> Result<ExitCode> {
    let patterns = PatternSet::new([Permutation::increasing(iota)]).map_err(|e| anyhow!("{e}"))?;
    let mut reports = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let start = Instant::now();
        let hist = cached_histogram(cfg, &patterns, n);
        let e = r_n_from_histogram(&hist, n);
        let symmetric = e.is_symmetric();
        let outcome = expand_in_schurq(&e).map_err(|e| anyhow!("{e}"))?;
        let q_positive = outcome.expansion().map(|x| x.is_positive());
        reports.push(ConjectureReport {
            n,
            symmetric,
            q_positive,
            outcome,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
    match cfg.format {
        Format::Json => println!("{}", serde_json::to_string(&reports)?),
        format => {
            for r in &reports {
                let expansion = match (&r.outcome, format) {
                    (ExpandOutcome::Expansion(x), Format::Latex) => x.to_latex(),
                    (ExpandOutcome::Expansion(x), _) => x.to_string(),
                    (ExpandOutcome::NotInSpan { witness, .. }, _) => {
                        format!("not in span (witness K({witness}))")
                    }
                };
                let positive = r
                    .q_positive
                    .map(|b| b.to_string())
                    .unwrap_or_else(|| "n/a".into());
                println!(
                    "n={} symmetric={} q_positive={} expansion={}",
                    r.n, r.symmetric, positive, expansion
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_peak_equiv(cfg: &ConfigArgs, a: &str, b: &str, max_n: usize) -> Result<ExitCode> {
    let pa = parse_patterns(a)?;
    let pb = parse_patterns(b)?;
    let equivalent =
        (0..=max_n).all(|n| cached_histogram(cfg, &pa, n) == cached_histogram(cfg, &pb, n));
    match cfg.format {
        Format::Json => println!(
            "{}",
            json!({
                "a": pa.canonical_string(),
                "b": pb.canonical_string(),
                "max_n": max_n,
                "equivalent": equivalent,
            })
        ),
        _ => println!("{equivalent}"),
    }
    Ok(ExitCode::SUCCESS)
}

//! Command-line front end. Exit status: 0 on success, 1 when a search finds
//! counterexamples, 2 on invalid input.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use prishchepov::classify::{classify_with, ClassifyOptions};
use prishchepov::cosetenum::{
    presentation_from_params, todd_coxeter, EnumerationOptions, EnumerationStatus, DEFAULT_MAX_COSETS,
};
use prishchepov::harness::{self, Execution, SearchConfig, SearchReport, JOBS_ENV};
use prishchepov::params::TypeFParams;
use prishchepov::zpoly::{ab_order, abelian_invariants, representer_polynomial};

#[derive(Parser)]
#[command(name = "prishchepov", version, about = "Abelianizations, perfectness and triviality of P(r,n,k,s,q)")]
struct Cli {
    /// Print JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print CSV (search reports only).
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Coset enumeration strategy seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Perfectness and triviality verdict (always JSON).
    Classify {
        #[arg(value_parser = parse_params)]
        params: TypeFParams,
        /// Settle unknown triviality by coset enumeration with this budget.
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Invariant factors of the abelianization.
    Ab {
        #[arg(value_parser = parse_params)]
        params: TypeFParams,
    },
    /// Order of the abelianization.
    Order {
        #[arg(value_parser = parse_params)]
        params: TypeFParams,
    },
    /// Representer polynomial mod t^n - 1.
    Poly {
        #[arg(value_parser = parse_params)]
        params: TypeFParams,
    },
    /// Enumerate cosets of the trivial subgroup.
    Coset {
        #[arg(value_parser = parse_params)]
        params: TypeFParams,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Compact and continue when the budget is reached.
        #[arg(long)]
        lookahead: bool,
    },
    /// Check that perfect P(r,n,k,r-1,q) satisfying the hypotheses are of type Z-tilde.
    VerifyConjecture {
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search P(r,n,k,r-1,1) with 2 < k <= n for trivial groups.
    SearchTrivial {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value_t = harness::DEFAULT_R_MIN)]
        r_min: u64,
        #[arg(long, default_value_t = harness::DEFAULT_R_MAX)]
        r_max: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long)]
        lookahead: bool,
    },
    /// Cross-validation sweeps.
    Sweep {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = SweepKind::Grid)]
        kind: SweepKind,
        /// Upper bound on r (and s); each kind has its own default.
        #[arg(long)]
        r_max: Option<u64>,
        /// Random unit-circle samples for the spectral sweep.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n_max: u64,
    #[arg(long, default_value_t = 2)]
    n_min: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = JOBS_ENV)]
    jobs: Option<usize>,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    /// classify against the determinant over the full grid
    Grid,
    HFamily,
    Identity,
    Sieradski,
    Scaling,
    Named,
    Spectral,
}

fn parse_params(s: &str) -> Result<TypeFParams, String> {
    s.parse::<TypeFParams>().map_err(|e| e.to_string())
}

fn config(a: &SearchArgs, seed: u64) -> SearchConfig {
    let mut cfg = SearchConfig::new(a.n_max);
    cfg.n_min = a.n_min;
    cfg.jobs = a.jobs;
    cfg.seed = seed;
    if a.sequential {
        cfg.execution = Execution::Sequential;
    }
    cfg
}

enum Output {
    Text(String),
    Report(SearchReport),
}

fn run(cli: &Cli) -> Result<Output, String> {
    let text = |s: String| Ok(Output::Text(s));
    let check = |cfg: &SearchConfig| cfg.validate().map_err(|e| e.to_string());
    match &cli.command {
        Command::Classify { params, max_cosets } => {
            let opts = ClassifyOptions {
                enumerate: max_cosets.map(|m| EnumerationOptions {
                    max_cosets: m,
                    seed: cli.seed,
                    lookahead: false,
                }),
            };
            text(serde_json::to_string_pretty(&classify_with(params, &opts)).expect("verdict serializes"))
        }
        Command::Ab { params } => {
            let inv = abelian_invariants(params);
            if cli.json {
                text(serde_json::to_string_pretty(&inv).expect("invariants serialize"))
            } else {
                text(inv.to_string())
            }
        }
        Command::Order { params } => {
            let order = ab_order(params);
            if cli.json {
                text(json!({ "order": order }).to_string())
            } else {
                text(order.to_string())
            }
        }
        Command::Poly { params } => {
            let f = representer_polynomial(params);
            if cli.json {
                text(serde_json::to_string(&f).expect("polynomial serializes"))
            } else {
                text(f.to_string())
            }
        }
        Command::Coset {
            params,
            max_cosets,
            lookahead,
        } => {
            if *max_cosets == 0 {
                return Err("--max-cosets must be positive".into());
            }
            let opts = EnumerationOptions {
                max_cosets: *max_cosets,
                seed: cli.seed,
                lookahead: *lookahead,
            };
            let status = todd_coxeter(&presentation_from_params(params), &opts).status;
            if cli.json {
                text(serde_json::to_string(&status).expect("status serializes"))
            } else {
                text(match status {
                    EnumerationStatus::Complete(m) => format!("complete: order {m}"),
                    EnumerationStatus::Exceeded(m) => format!("exceeded: {m} cosets"),
                })
            }
        }
        Command::VerifyConjecture { search } => {
            let cfg = config(search, cli.seed);
            check(&cfg)?;
            Ok(Output::Report(harness::verify_type_z_tilde_conjecture(&cfg)))
        }
        Command::SearchTrivial {
            search,
            r_min,
            r_max,
            max_cosets,
            lookahead,
        } => {
            let mut cfg = config(search, cli.seed);
            cfg.r_min = Some(*r_min);
            cfg.r_max = Some(*r_max);
            cfg.max_cosets = *max_cosets;
            cfg.lookahead = *lookahead;
            check(&cfg)?;
            Ok(Output::Report(harness::search_trivial_instances(&cfg)))
        }
        Command::Sweep {
            search,
            kind,
            r_max,
            samples,
        } => {
            let mut cfg = config(search, cli.seed);
            cfg.r_max = *r_max;
            check(&cfg)?;
            Ok(Output::Report(match kind {
                SweepKind::Grid => harness::soundness_sweep(&cfg),
                SweepKind::HFamily => harness::h_family_sweep(&cfg),
                SweepKind::Identity => harness::polynomial_identity_sweep(&cfg),
                SweepKind::Sieradski => harness::sieradski_sweep(&cfg),
                SweepKind::Scaling => harness::scaling_sweep(&cfg),
                SweepKind::Named => harness::named_family_sweep(&cfg),
                SweepKind::Spectral => harness::spectral_sweep(&cfg, *samples),
            }))
        }
    }
}

fn summary(r: &SearchReport) -> String {
    let mut s = format!(
        "{}: {} ({} checked, {} counterexamples, {} ms)\nranges: {}\n",
        r.statement,
        if r.verified { "verified" } else { "FAILED" },
        r.checked,
        r.counterexamples.len(),
        r.wall_ms,
        r.ranges
    );
    for p in &r.counterexamples {
        s += &format!("counterexample: {p}\n");
    }
    const SHOWN: usize = 20;
    for (name, items) in &r.lists {
        let shown: Vec<String> = items.iter().take(SHOWN).map(|p| p.to_string()).collect();
        let more = if items.len() > SHOWN {
            format!(" ... ({} total; use --json for all)", items.len())
        } else {
            String::new()
        };
        s += &format!("{name}: {}{more}\n", shown.join(" "));
    }
    for (name, v) in r.counts.iter().chain(&r.theorem_hits) {
        s += &format!("{name}: {v}\n");
    }
    for (name, v) in &r.measures {
        s += &format!("{name}: {v:e}\n");
    }
    s
}

fn emit(cli: &Cli, out: &Output) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match out {
        Output::Text(s) => writeln!(sink, "{s}")?,
        Output::Report(r) if cli.csv => r.write_csv(&mut sink).map_err(io::Error::other)?,
        Output::Report(r) if cli.json => writeln!(sink, "{}", r.to_json())?,
        Output::Report(r) => write!(sink, "{}", summary(r))?,
    }
    sink.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &out) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    match out {
        Output::Report(r) if !r.verified => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

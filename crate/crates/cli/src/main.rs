use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ordcalc::attrs::{attrs_with_depth, rho_surrogate_with};
use ordcalc::catalog::{catalog, finite_catalog};
use ordcalc::check::run_suite;
use ordcalc::condense::{condense, hausdorff_rank, Mode};
use ordcalc::config::Config;
use ordcalc::densegen::{saturate, StageOrder};
use ordcalc::report::{envelope, error_envelope, to_text};
use ordcalc::sampler::{sample_restriction, sample_with};
use ordcalc::{parse, CnfOrdinal, Error, FinPoset, OrderTerm};

#[derive(Parser)]
#[command(
    name = "ordcalc",
    version,
    about = "Analyze order terms built from ordinals, dense leaves and lexicographic sums"
)]
struct Cli {
    /// Optional `key = value` file of resource caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write a Graphviz rendering to this path.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every synthesized attribute of a term.
    Analyze { term: String },
    /// Hausdorff rank, antichain rank or hierarchy level.
    Rank {
        #[arg(long, value_enum)]
        kind: RankKind,
        term: String,
    },
    /// Condensation quotient of a linear term.
    Condense {
        #[arg(long, value_enum, default_value = "finite")]
        mode: CondenseMode,
        term: String,
    },
    /// A seeded finite restriction of a term.
    Sample {
        term: String,
        #[arg(short = 'n', long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Gap-request saturation starting from a two-element chain.
    GenDense {
        #[arg(long, default_value_t = 3)]
        rounds: u32,
        #[arg(long, default_value_t = ordcalc::densegen::DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Size of the starting chain.
        #[arg(long, default_value_t = 2)]
        start: u32,
    },
    /// Run a regression suite: finite, hierarchy, examples, condense, dense, sampler or all.
    Check { suite: String },
    /// The example catalog.
    Examples,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankKind {
    Hausdorff,
    Antichain,
    Hierarchy,
}

#[derive(Clone, Copy, ValueEnum)]
enum CondenseMode {
    Finite,
    H,
}

enum Failure {
    Usage(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn stage_dot(p: &StageOrder) -> String {
    let labels: Vec<String> = p
        .elements()
        .iter()
        .map(|e| format!("{} (round {})", e.label, e.birth))
        .collect();
    FinPoset::chain(p.len()).to_dot("stage", Some(&labels))
}

fn write_dot(
    path: &Option<PathBuf>,
    dot: impl FnOnce() -> Result<String, Error>,
) -> Result<(), Failure> {
    if let Some(path) = path {
        let text = dot()?;
        std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: &Cli, cfg: &Config) -> Result<(Value, bool), Failure> {
    let dot = &cli.dot;
    Ok(match &cli.command {
        Command::Analyze { term } => {
            let t = parse(term)?;
            let r = attrs_with_depth(&t, cfg.max_depth)?;
            write_dot(dot, || match &t {
                OrderTerm::Fin(p) => Ok(p.to_dot(&t.to_string(), None)),
                _ => Ok(
                    sample_with(&t, cfg.sampler.width.min(16) as usize, 0, &cfg.sampler)?.to_dot(),
                ),
            })?;
            (envelope("analyze", &json!({"term": t, "attrs": r})), true)
        }
        Command::Rank { kind, term } => {
            let t = parse(term)?;
            let r = attrs_with_depth(&t, cfg.max_depth)?;
            let result = match kind {
                RankKind::Hausdorff => {
                    json!({"kind": "hausdorff", "term": t, "rank": hausdorff_rank(&t)?})
                }
                RankKind::Antichain => match &t {
                    OrderTerm::Fin(p) => {
                        json!({"kind": "antichain", "term": t, "exact": true, "rank": p.antichain_rank_exact()})
                    }
                    _ if r.card.is_zero() => {
                        json!({"kind": "antichain", "term": t, "exact": true, "rank": CnfOrdinal::zero()})
                    }
                    _ => {
                        let b = rho_surrogate_with(&t, cfg.rho_formula)?;
                        json!({"kind": "antichain", "term": t, "exact": false, "upper_bound": b})
                    }
                },
                RankKind::Hierarchy => json!({
                    "kind": "hierarchy",
                    "term": t,
                    "in_h": r.hier.in_h,
                    "status": r.hier.status,
                    "alpha_bound": r.hier.alpha_bound,
                }),
            };
            (envelope("rank", &result), true)
        }
        Command::Condense { mode, term } => {
            let t = parse(term)?;
            let mode = match mode {
                CondenseMode::Finite => Mode::Finite,
                CondenseMode::H => Mode::H,
            };
            let c = condense(&t, mode)?;
            write_dot(dot, || Ok(sample_restriction(&c.quotient, 12, 0)?.to_dot()))?;
            (
                envelope(
                    "condense",
                    &json!({"term": t, "quotient_text": c.quotient.to_string(), "condensation": c}),
                ),
                true,
            )
        }
        Command::Sample { term, n, seed } => {
            let t = parse(term)?;
            let s = sample_with(&t, *n, *seed, &cfg.sampler)?;
            write_dot(dot, || Ok(s.to_dot()))?;
            (envelope("sample", &s), true)
        }
        Command::GenDense {
            rounds,
            bound,
            seed,
            start,
        } => {
            let p = saturate(&StageOrder::chain(*start), *rounds, *bound, *seed)?;
            write_dot(dot, || Ok(stage_dot(&p)))?;
            let result = json!({"rounds": rounds, "bound": bound, "seed": seed, "size": p.len(), "stage": p});
            (envelope("gen-dense", &result), true)
        }
        Command::Check { suite } => {
            let reports = run_suite(suite)?;
            for s in &reports {
                for c in &s.checks {
                    eprintln!(
                        "{} {}/{}: {}",
                        if c.ok { "PASS" } else { "FAIL" },
                        s.suite,
                        c.name,
                        c.detail
                    );
                }
            }
            let ok = reports.iter().all(|s| s.passed);
            (
                envelope("check", &json!({"passed": ok, "suites": reports})),
                ok,
            )
        }
        Command::Examples => {
            let terms: Vec<Value> = catalog()
                .into_iter()
                .map(|(name, t)| {
                    let r = attrs_with_depth(&t, cfg.max_depth)?;
                    Ok(json!({
                        "name": name,
                        "term": t,
                        "linear": r.linear,
                        "fac": r.fac,
                        "weakly_kappa_scattered": r.weakly_kappa_scattered,
                        "in_h": r.hier.in_h,
                    }))
                })
                .collect::<Result<_, Error>>()?;
            let posets: Vec<Value> = finite_catalog()
                .into_iter()
                .map(|(name, p)| json!({"name": name, "size": p.len(), "relations": p.pairs()}))
                .collect();
            (
                envelope(
                    "examples",
                    &json!({"terms": terms, "finite_posets": posets}),
                ),
                true,
            )
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Rank { .. } => "rank",
        Command::Condense { .. } => "condense",
        Command::Sample { .. } => "sample",
        Command::GenDense { .. } => "gen-dense",
        Command::Check { .. } => "check",
        Command::Examples => "examples",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let cfg = match &cli.config {
        None => Ok(Config::default()),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
            .and_then(|text| Config::parse(&text)),
    };
    let outcome = cfg.map_err(Failure::Usage).and_then(|cfg| run(&cli, &cfg));
    match outcome {
        Ok((v, ok)) => {
            print!("{}", to_text(&v));
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            print!("{}", to_text(&error_envelope(name, &e)));
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! The `pforge` command line: Pfister number computations, verification
//! suites, a benchmark, and a line-delimited result cache.
//!
//! Exit codes: 0 when everything passed or was computed exactly, 1 on a
//! failed check or an error, 2 when a node budget ran out first.

pub mod bench;
pub mod cache;
pub mod input;
pub mod solver;
pub mod suites;

use std::env;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pforge_core::{decompose_pf1, pf1_exact, Decomposition, SearchConfig, SearchStatus, Strategy};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::{Cache, CacheRecord};
use crate::input::{Generic, Input, NRange};
use crate::solver::Solver;
use crate::suites::{CaseResult, CaseStatus, Output, RunConfig, Summary};

pub const CACHE_ENV: &str = "PFORGE_CACHE";

#[derive(Debug, Parser)]
#[command(name = "pforge", version, about = "Pfister numbers in the group algebra F2[(Z/2)^n]")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Dimension, or an inclusive range such as 2..5
    #[arg(long, global = true)]
    pub n: Option<NRange>,
    /// Number of random cases per suite
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Nodes the exact search may expand before giving bounds
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    /// iddfs (least-uncovered-iddfs) or mim (meet-in-middle)
    #[arg(long, global = true, default_value = "iddfs")]
    pub strategy: Strategy,
    /// Cache file [default: $PFORGE_CACHE or ~/.cache/pforge/pf2.jsonl]
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Emit JSON lines instead of tables
    #[arg(long, global = true)]
    pub json: bool,
    /// Print a decomposition realising the value
    #[arg(long, global = true)]
    pub witness: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute Pf1 or Pf2 of an element or form
    Pf(PfArgs),
    /// Run a verification suite
    Verify {
        /// Suite name, or `all`
        suite: String,
    },
    /// Time the exact search on xi_e for each n
    Bench,
    /// Inspect or maintain the result cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Args)]
pub struct PfArgs {
    /// Fold of the Pfister elements, 1 or 2
    #[arg(short, long, default_value_t = 2)]
    pub m: u8,
    /// Canonical key, JSON element or form, or @file
    #[arg(long, group = "input")]
    pub element: Option<String>,
    /// Diagonal form over x1..xn, e.g. "<1, x1*x2, x3>" (needs --n)
    #[arg(long, group = "input")]
    pub form: Option<String>,
    /// A named element or form (needs --n)
    #[arg(long, group = "input", value_enum)]
    pub generic: Option<Generic>,
    /// Multiply by X^v (scale a form by <v>), v a word like x1*x2
    #[arg(long)]
    pub scale: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Print the cache file location
    Path,
    /// Print every record
    Show,
    /// Print the records for one element
    Get {
        /// Canonical key, JSON element or form, or @file
        element: String,
    },
    /// Rewrite the file with one line per record
    Compact,
    /// Recompute a seeded sample of exact records
    Check {
        #[arg(long, default_value_t = 8)]
        sample: usize,
    },
}

/// `--cache`, then `$PFORGE_CACHE`, then `$XDG_CACHE_HOME/pforge/pf2.jsonl`
/// or `~/.cache/pforge/pf2.jsonl`.
pub fn cache_path(flag: Option<PathBuf>) -> PathBuf {
    if let Some(p) = flag {
        return p;
    }
    if let Some(p) = env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
        return p.into();
    }
    let base = env::var_os("XDG_CACHE_HOME")
        .filter(|p| !p.is_empty())
        .map(PathBuf::from)
        .or_else(|| env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
        .unwrap_or_else(|| PathBuf::from(".cache"));
    base.join("pforge").join("pf2.jsonl")
}

#[derive(Serialize)]
struct PfReport {
    kind: &'static str,
    input: String,
    key: String,
    m: u8,
    status: SearchStatus,
    value: Option<u32>,
    lower: u32,
    upper: u32,
    nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Decomposition>,
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    kind: &'static str,
    suite: &'a str,
    #[serde(flatten)]
    summary: &'a Summary,
}

#[derive(Serialize)]
struct CaseRecord<'a> {
    kind: &'static str,
    #[serde(flatten)]
    case: &'a CaseResult,
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

/// Left-aligned columns separated by two spaces.
fn table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut line = |cells: Vec<String>| -> Result<()> {
        let last = cells.len() - 1;
        let text: Vec<String> = cells
            .into_iter()
            .enumerate()
            .map(|(i, c)| if i == last { c } else { format!("{c:<w$}", w = widths[i]) })
            .collect();
        writeln!(out, "{}", text.join("  ").trim_end())?;
        Ok(())
    };
    line(header.iter().map(|h| h.to_string()).collect())?;
    for row in rows {
        line(row.clone())?;
    }
    Ok(())
}

fn opt(v: Option<u32>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}

struct Ctx {
    global: GlobalArgs,
}

impl Ctx {
    fn search(&self) -> SearchConfig {
        SearchConfig::with_budget(self.global.budget_nodes.unwrap_or(SearchConfig::DEFAULT_BUDGET))
            .strategy(self.global.strategy)
    }

    fn open_cache(&self) -> Result<Cache> {
        let path = cache_path(self.global.cache.clone());
        Cache::open(&path).with_context(|| format!("opening cache {}", path.display()))
    }

    fn output(&self) -> Output {
        if self.global.json {
            Output::Json
        } else {
            Output::Human
        }
    }

    fn single_n(&self, what: &str) -> Result<usize> {
        match self.global.n {
            Some(n) => n.exactly_one(what),
            None => bail!("{what} needs --n"),
        }
    }
}

fn read_input(ctx: &Ctx, args: &PfArgs) -> Result<Input> {
    let input = match (&args.element, &args.form, args.generic) {
        (Some(e), _, _) => input::parse_element(e)?,
        (_, Some(f), _) => input::parse_form(ctx.single_n("--form")?, f)?,
        (_, _, Some(g)) => input::generic(ctx.single_n("--generic")?, g)?,
        _ => bail!("pf needs one of --element, --form or --generic"),
    };
    match &args.scale {
        Some(word) => input.scaled(word),
        None => Ok(input),
    }
}

fn cmd_pf(ctx: &Ctx, args: &PfArgs, out: &mut dyn Write) -> Result<i32> {
    let input = read_input(ctx, args)?;
    let x = input.class();
    let mut report = PfReport {
        kind: "pf",
        input: input.describe(),
        key: x.canonical_key(),
        m: args.m,
        status: SearchStatus::Exact,
        value: None,
        lower: 0,
        upper: 0,
        nodes: 0,
        witness: None,
    };
    match args.m {
        1 => {
            let v = pf1_exact(&x)?;
            (report.value, report.lower, report.upper) = (Some(v), v, v);
            if ctx.global.witness {
                report.witness = Some(decompose_pf1(&x)?);
            }
        }
        2 => {
            let mut cache = ctx.open_cache()?;
            let solver = Solver::new(ctx.search(), Some(&cache));
            let hit = if ctx.global.witness { None } else { solver.cached(&x) };
            match hit {
                Some(hit) => {
                    log::info!("cache hit for {}", report.key);
                    (report.value, report.lower, report.upper) = (hit.value, hit.lower, hit.upper);
                    report.nodes = hit.nodes;
                }
                None => {
                    let outcome = solver.search(&x)?;
                    report.status = outcome.status;
                    (report.value, report.lower, report.upper) =
                        (outcome.value, outcome.lower, outcome.upper);
                    report.nodes = outcome.nodes_visited;
                    if ctx.global.witness {
                        report.witness = outcome.witness;
                    }
                }
            }
            for rec in solver.into_pending() {
                cache.put(rec)?;
            }
        }
        m => bail!("m must be 1 or 2, got {m}"),
    }

    if ctx.global.json {
        json_line(out, &report)?;
    } else {
        let mut rows = vec![
            vec!["input".into(), report.input.clone()],
            vec!["key".into(), report.key.clone()],
            vec!["m".into(), report.m.to_string()],
            vec!["status".into(), format!("{:?}", report.status).to_lowercase()],
            vec!["value".into(), opt(report.value)],
            vec!["lower".into(), report.lower.to_string()],
            vec!["upper".into(), report.upper.to_string()],
            vec!["nodes".into(), report.nodes.to_string()],
        ];
        if let Some(w) = &report.witness {
            rows.push(vec!["witness".into(), w.to_string()]);
        }
        table(out, &["field", "value"], &rows)?;
    }
    Ok(if report.value.is_some() { 0 } else { 2 })
}

/// Recomputes up to `sample` exact records chosen by `seed`; returns the
/// keys whose cached value disagrees.
fn spot_check(cache: &Cache, sample: usize, seed: u64, cfg: &SearchConfig) -> Result<Vec<String>> {
    let exact: Vec<&CacheRecord> = cache.records().filter(|r| cache.get(&r.key) == Some(*r)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for rec in exact.choose_multiple(&mut rng, sample) {
        let x = pforge_core::GroupAlgebraElement::parse_canonical_key(&rec.key)?;
        let fresh = pforge_core::pf2_exact(&x, cfg)?;
        match fresh.value {
            Some(v) if v != rec.value => {
                log::error!("cache says Pf2 = {} for {}, recomputed {v}", rec.value, rec.key);
                bad.push(rec.key.clone());
            }
            Some(_) => log::debug!("cache record {} confirmed", rec.key),
            None => log::warn!("could not recheck {} within the node budget", rec.key),
        }
    }
    Ok(bad)
}

fn cmd_verify(ctx: &Ctx, suite: &str, out: &mut dyn Write) -> Result<i32> {
    let cfg = RunConfig {
        seed: ctx.global.seed,
        node_budget: ctx.global.budget_nodes.unwrap_or(SearchConfig::DEFAULT_BUDGET),
        strategy: ctx.global.strategy,
        trials: ctx.global.trials,
        n: ctx.global.n,
        output: ctx.output(),
    };
    let mut cache = ctx.open_cache()?;
    let mut results = Vec::new();
    for key in spot_check(&cache, 2, cfg.seed, &cfg.search())? {
        results.push(CaseResult {
            suite: "cache-coherence",
            case: key,
            status: CaseStatus::Fail,
            detail: "cached exact value differs from recomputation".into(),
        });
    }
    let solver = Solver::new(cfg.search(), Some(&cache));
    results.extend(suites::run(suite, &cfg, &solver)?);
    let pending = solver.into_pending();
    for rec in pending {
        cache.put(rec)?;
    }

    let summary = Summary::of(&results);
    match cfg.output {
        Output::Json => {
            for case in &results {
                json_line(out, &CaseRecord { kind: "case", case })?;
            }
            json_line(out, &SummaryRecord { kind: "summary", suite, summary: &summary })?;
        }
        Output::Human => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        format!("{:?}", r.status).to_uppercase(),
                        r.suite.to_string(),
                        r.case.clone(),
                        r.detail.clone(),
                    ]
                })
                .collect();
            table(out, &["status", "suite", "case", "detail"], &rows)?;
            writeln!(
                out,
                "{suite}: {} passed, {} failed, {} inconclusive",
                summary.passed, summary.failed, summary.inconclusive
            )?;
        }
    }
    Ok(summary.exit_code())
}

fn cmd_bench(ctx: &Ctx, out: &mut dyn Write) -> Result<i32> {
    let dims = ctx.global.n.unwrap_or(NRange::new(2, 6));
    let rows = bench::run(dims, ctx.global.budget_nodes)?;
    if ctx.global.json {
        for row in &rows {
            json_line(out, row)?;
        }
    } else {
        let cells: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.strategy.to_string(),
                    format!("{:?}", r.status).to_lowercase(),
                    opt(r.value),
                    r.lower.to_string(),
                    r.upper.to_string(),
                    r.nodes.to_string(),
                    format!("{:.2}", r.millis),
                ]
            })
            .collect();
        table(out, &["n", "strategy", "status", "value", "lower", "upper", "nodes", "ms"], &cells)?;
    }
    Ok(0)
}

fn cmd_cache(ctx: &Ctx, action: &CacheAction, out: &mut dyn Write) -> Result<i32> {
    let path = cache_path(ctx.global.cache.clone());
    if let CacheAction::Path = action {
        writeln!(out, "{}", path.display())?;
        return Ok(0);
    }
    let cache = ctx.open_cache()?;
    let print = |out: &mut dyn Write, recs: Vec<&CacheRecord>| -> Result<()> {
        if ctx.global.json {
            for r in recs {
                writeln!(out, "{}", r.to_line())?;
            }
            return Ok(());
        }
        let rows: Vec<Vec<String>> = recs
            .iter()
            .map(|r| {
                let status = serde_json::to_value(r.status)?;
                Ok(vec![
                    status.as_str().unwrap_or_default().to_string(),
                    r.value.to_string(),
                    r.nodes.to_string(),
                    r.key.clone(),
                ])
            })
            .collect::<Result<_>>()?;
        table(out, &["status", "value", "nodes", "key"], &rows)
    };
    match action {
        CacheAction::Path => unreachable!(),
        CacheAction::Show => {
            print(out, cache.records().collect())?;
            Ok(0)
        }
        CacheAction::Get { element } => {
            let key = input::parse_element(element)?.class().canonical_key();
            let recs: Vec<&CacheRecord> = cache.records().filter(|r| r.key == key).collect();
            if recs.is_empty() {
                writeln!(out, "absent: {key}")?;
                return Ok(1);
            }
            print(out, recs)?;
            Ok(0)
        }
        CacheAction::Compact => {
            cache.compact()?;
            log::info!("compacted {} to {} records", path.display(), cache.records().count());
            Ok(0)
        }
        CacheAction::Check { sample } => {
            let bad = spot_check(&cache, *sample, ctx.global.seed, &ctx.search())?;
            for key in &bad {
                writeln!(out, "mismatch: {key}")?;
            }
            Ok(i32::from(!bad.is_empty()))
        }
    }
}

/// Runs a parsed command line, writing results to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let ctx = Ctx { global: cli.global };
    match &cli.command {
        Command::Pf(args) => cmd_pf(&ctx, args, out),
        Command::Verify { suite } => cmd_verify(&ctx, suite, out),
        Command::Bench => cmd_bench(&ctx, out),
        Command::Cache { action } => cmd_cache(&ctx, action, out),
    }
}

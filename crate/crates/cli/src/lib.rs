//! Command-line front end.
//!
//! Every command renders either a human-readable table or one JSON document
//! (`--format machine`). Output is built in full before anything is written,
//! so a failing command never leaves a partial table behind.
//!
//! Exit status: 0 on success, 1 on usage / parse / validation errors, 2 when a
//! budget admits no eligible suite.

mod human;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use nsp_core::catalog::{default_catalog, MetricCatalog};
use nsp_core::preferential::table1::{load_published, published_table1, reproduce};
use nsp_core::preferential::{
    filter_by_budget, load_weights, select_in, BudgetOutcome, CompositionSpace, MetricBudget,
    ThroughputComposition, WeightVector,
};
use nsp_core::sim::{compare_topologies, run_simulation, SimConfig, Topology};
use nsp_core::SCHEMA_VERSION;

/// Environment variable naming a catalog file to use instead of the bundled one.
pub const CATALOG_ENV: &str = "NSP_CATALOG";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "nsp",
    version,
    about = "Cipher-suite selection and NSP dataflow simulation"
)]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputMode::Human, global = true)]
    pub format: OutputMode,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Human,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Catalog file operations.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Score every suite for one weight vector, optionally within a budget.
    Select(SelectArgs),
    /// Score every suite for each weight vector in a file.
    Sweep(SweepArgs),
    /// Re-run the 46 published weight instances and diff against the published table.
    #[command(name = "reproduce-table1")]
    ReproduceTable1(ReproduceArgs),
    /// Simulate one topology.
    Simulate(SimulateArgs),
    /// Simulate the same workload on all three topologies.
    #[command(name = "compare-topologies")]
    CompareTopologies(CompareArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// Parse and validate a catalog file.
    Validate { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct CatalogArg {
    /// Catalog file; defaults to $NSP_CATALOG, then the bundled catalog.
    #[arg(long)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelectArgs {
    /// Priority weights `w_p,w_t,w_r`, summing to 1.
    #[arg(long)]
    pub weights: String,
    #[command(flatten)]
    pub catalog: CatalogArg,
    /// Throughput composition; `bottleneck` is an extension.
    #[arg(long, value_enum, default_value_t = CompositionArg::Additive)]
    pub throughput_composition: CompositionArg,
    #[arg(long)]
    pub max_power_mw: Option<f64>,
    #[arg(long)]
    pub min_throughput_gbps: Option<f64>,
    #[arg(long)]
    pub max_slices: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompositionArg {
    Additive,
    Bottleneck,
}

impl From<CompositionArg> for ThroughputComposition {
    fn from(value: CompositionArg) -> Self {
        match value {
            CompositionArg::Additive => ThroughputComposition::Additive,
            CompositionArg::Bottleneck => ThroughputComposition::Bottleneck,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// CSV with header `w_p,w_t,w_r`.
    #[arg(long)]
    pub weights_file: PathBuf,
    #[command(flatten)]
    pub catalog: CatalogArg,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[command(flatten)]
    pub catalog: CatalogArg,
    /// Alternative transcription of the published table.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WorkloadArgs {
    /// TOML simulation config; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Packet counts `forward,reverse`.
    #[arg(long)]
    pub packets: Option<String>,
    #[arg(long)]
    pub packet_size: Option<u64>,
    #[arg(long)]
    pub bus_gbps: Option<f64>,
    /// Crypto engine rate in Gbps.
    #[arg(long)]
    pub suite_gbps: Option<f64>,
    /// Take the engine rate from this suite's composed throughput, e.g. `DES+MD5+RSA`.
    #[arg(long, conflicts_with = "suite_gbps")]
    pub suite: Option<String>,
    /// Take the engine rate from the best suite for these weights.
    #[arg(long, conflicts_with_all = ["suite_gbps", "suite"])]
    pub weights: Option<String>,
    #[arg(long)]
    pub reverse_suite_gbps: Option<f64>,
    #[arg(long)]
    pub dma_setup_ns: Option<u64>,
    #[arg(long)]
    pub key_exchange_ns: Option<u64>,
    #[arg(long)]
    pub reconfig_delay_ns: Option<u64>,
    #[arg(long)]
    pub suite_switch_after: Option<u32>,
    #[command(flatten)]
    pub catalog: CatalogArg,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_topology)]
    pub topology: Option<Topology>,
    #[command(flatten)]
    pub workload: WorkloadArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub workload: WorkloadArgs,
}

fn parse_topology(s: &str) -> Result<Topology, String> {
    s.parse()
}

/// A command failure with the exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn invalid(message: impl fmt::Display) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// A fully rendered command result.
#[derive(Debug)]
pub struct Output {
    pub code: i32,
    pub document: Value,
    pub human: String,
}

/// Runs a parsed command.
pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Catalog(CatalogCommand::Validate { file }) => catalog_validate(file),
        Command::Select(args) => run_select(args),
        Command::Sweep(args) => run_sweep(args),
        Command::ReproduceTable1(args) => run_reproduce(args),
        Command::Simulate(args) => run_simulate(args),
        Command::CompareTopologies(args) => run_compare(args),
    }
}

/// What a process invocation would print, without touching stdio.
#[derive(Debug)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and executes. `--out` is
/// honoured; everything else is returned.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = err.render().to_string();
            return if code == EXIT_OK {
                Invocation {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Invocation {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };

    let command_name = command_name(&cli.command);
    let (code, body, stderr) = match execute(&cli.command) {
        Ok(out) => {
            let body = match cli.format {
                OutputMode::Machine => to_json(&out.document),
                OutputMode::Human => out.human,
            };
            let stderr = if out.code == EXIT_INFEASIBLE {
                "error: no eligible suite fits the budget; increase the metrics budget\n"
                    .to_string()
            } else {
                String::new()
            };
            (out.code, body, stderr)
        }
        Err(err) => {
            let body = match cli.format {
                OutputMode::Machine => to_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command_name,
                    "status": "error",
                    "error": err.message,
                })),
                OutputMode::Human => String::new(),
            };
            (err.code, body, format!("error: {}\n", err.message))
        }
    };

    match &cli.out {
        Some(path) if !body.is_empty() => match std::fs::write(path, &body) {
            Ok(()) => Invocation {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => Invocation {
                code: EXIT_INVALID,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        _ => Invocation {
            code,
            stdout: body,
            stderr,
        },
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Catalog(_) => "catalog validate",
        Command::Select(_) => "select",
        Command::Sweep(_) => "sweep",
        Command::ReproduceTable1(_) => "reproduce-table1",
        Command::Simulate(_) => "simulate",
        Command::CompareTopologies(_) => "compare-topologies",
    }
}

fn envelope(command: &str, body: impl Serialize) -> Value {
    let mut value = serde_json::to_value(body).expect("report serializes");
    let map = value.as_object_mut().expect("report bodies are objects");
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("status".into(), json!("ok"));
    value
}

/// Resolves `--catalog`, then `$NSP_CATALOG`, then the bundled catalog.
fn resolve_catalog(arg: &CatalogArg) -> Result<(MetricCatalog, String), CliError> {
    let path = arg
        .catalog
        .clone()
        .or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    match path {
        Some(path) => {
            let catalog = MetricCatalog::from_path(&path)
                .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
            Ok((catalog, path.display().to_string()))
        }
        None => Ok((default_catalog(), "bundled".to_string())),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))
}

fn parse_weights(text: &str) -> Result<WeightVector, CliError> {
    text.parse().map_err(CliError::invalid)
}

fn catalog_validate(file: &Path) -> Result<Output, CliError> {
    let catalog = MetricCatalog::from_path(file)
        .map_err(|e| CliError::invalid(format!("{}: {e}", file.display())))?;
    let (n, m, l) = catalog.dimensions();
    let human = human::catalog(&catalog, file);
    let document = envelope(
        "catalog validate",
        json!({
            "file": file.display().to_string(),
            "valid": true,
            "dimensions": { "encryption": n, "hash": m, "key_exchange": l, "suites": n * m * l },
            "catalog": catalog,
        }),
    );
    Ok(Output {
        code: EXIT_OK,
        document,
        human,
    })
}

fn run_select(args: &SelectArgs) -> Result<Output, CliError> {
    let weights = parse_weights(&args.weights)?;
    let (catalog, source) = resolve_catalog(&args.catalog)?;
    let mode: ThroughputComposition = args.throughput_composition.into();
    let space = CompositionSpace::new(&catalog, mode);
    let report = select_in(&space, &weights);

    let budget = MetricBudget {
        max_power_mw: args.max_power_mw,
        min_throughput_gbps: args.min_throughput_gbps,
        max_slices: args.max_slices,
    };
    let outcome = if budget.is_vacuous() {
        None
    } else {
        Some(filter_by_budget(&report, &budget).map_err(CliError::invalid)?)
    };
    let code = match outcome {
        Some(BudgetOutcome::Infeasible { .. }) => EXIT_INFEASIBLE,
        _ => EXIT_OK,
    };

    let human = human::selection(&report, &source, outcome.as_ref());
    let mut document = envelope(
        "select",
        json!({
            "catalog": source,
            "throughput_composition": mode,
            "report": report,
            "budget": outcome.as_ref().map(|o| json!({ "bounds": budget, "outcome": o })),
        }),
    );
    if code == EXIT_INFEASIBLE {
        document["status"] = json!("infeasible");
    }
    Ok(Output {
        code,
        document,
        human,
    })
}

fn run_sweep(args: &SweepArgs) -> Result<Output, CliError> {
    let text = read_file(&args.weights_file)?;
    let weights = load_weights(&text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", args.weights_file.display())))?;
    let (catalog, source) = resolve_catalog(&args.catalog)?;
    let space = CompositionSpace::new(&catalog, ThroughputComposition::Additive);
    let reports: Vec<_> = weights.iter().map(|w| select_in(&space, w)).collect();
    let human = human::sweep(&reports, &source);
    let document = envelope("sweep", json!({ "catalog": source, "reports": reports }));
    Ok(Output {
        code: EXIT_OK,
        document,
        human,
    })
}

fn run_reproduce(args: &ReproduceArgs) -> Result<Output, CliError> {
    let (catalog, source) = resolve_catalog(&args.catalog)?;
    let published = match &args.table {
        Some(path) => load_published(&read_file(path)?)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?,
        None => published_table1(),
    };
    let diff = reproduce(&catalog, &published);
    let human = human::table1(&diff);
    let document = envelope(
        "reproduce-table1",
        json!({
            "catalog": source,
            "summary": {
                "rows": diff.rows.len(),
                "max_abs_esi_t_delta": diff.max_abs_esi_t_delta,
                "best_matches": diff.best_matches,
                "worst_matches": diff.worst_matches,
                "pct_within_5": diff.pct_within_5,
            },
            "rows": diff.rows,
        }),
    );
    Ok(Output {
        code: EXIT_OK,
        document,
        human,
    })
}

/// Builds a config from an optional TOML file plus flag overrides.
fn build_config(
    args: &WorkloadArgs,
    topology: Option<Topology>,
) -> Result<(SimConfig, Option<String>), CliError> {
    let mut config = match &args.config {
        Some(path) => SimConfig::from_toml_str(&read_file(path)?)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?,
        None => SimConfig::new(Topology::DualInterface, 1024, 5, 5, 1.0, 0.0),
    };
    if let Some(t) = topology {
        config.topology = t;
    }
    if let Some(packets) = &args.packets {
        let parts: Vec<&str> = packets.split(',').map(str::trim).collect();
        let parsed: Option<Vec<u32>> = parts.iter().map(|p| p.parse().ok()).collect();
        match parsed.as_deref() {
            Some([f, r]) => {
                config.forward_packets = *f;
                config.reverse_packets = *r;
            }
            _ => {
                return Err(CliError::invalid(format!(
                    "--packets must be `forward,reverse` counts (got `{packets}`)"
                )))
            }
        }
    }
    if let Some(v) = args.packet_size {
        config.packet_size_bits = v;
    }
    if let Some(v) = args.bus_gbps {
        config.bus_gbps = v;
    }
    if let Some(v) = args.reverse_suite_gbps {
        config.reverse_suite_gbps = Some(v);
    }
    if let Some(v) = args.dma_setup_ns {
        config.dma_setup_ns = v;
    }
    if let Some(v) = args.key_exchange_ns {
        config.key_exchange_ns = v;
    }
    if let Some(v) = args.reconfig_delay_ns {
        config.reconfig_delay_ns = v;
    }
    if let Some(v) = args.suite_switch_after {
        config.suite_switch_after = Some(v);
    }

    let mut suite_label = None;
    if let Some(v) = args.suite_gbps {
        config.suite_gbps = v;
    } else if args.suite.is_some() || args.weights.is_some() || args.config.is_none() {
        let (catalog, _) = resolve_catalog(&args.catalog)?;
        let space = CompositionSpace::new(&catalog, ThroughputComposition::Additive);
        let (label, gbps) = match (&args.suite, &args.weights) {
            (Some(label), _) => {
                let index = space
                    .find_label(label)
                    .ok_or_else(|| CliError::invalid(format!("unknown suite `{label}`")))?;
                let cell = space.cell(index).expect("resolved index");
                (space.label(index), cell.throughput_gbps)
            }
            (None, weights) => {
                let weights = match weights {
                    Some(w) => parse_weights(w)?,
                    None => WeightVector::equal(),
                };
                let best = select_in(&space, &weights).best;
                (best.label, best.throughput_gbps)
            }
        };
        config.suite_gbps = gbps;
        suite_label = Some(label);
    }
    config.validate().map_err(CliError::invalid)?;
    Ok((config, suite_label))
}

fn run_simulate(args: &SimulateArgs) -> Result<Output, CliError> {
    let (config, suite) = build_config(&args.workload, args.topology)?;
    let result = run_simulation(&config).map_err(CliError::invalid)?;
    let human = human::simulation(&result, suite.as_deref());
    let document = envelope("simulate", json!({ "suite": suite, "result": result }));
    Ok(Output {
        code: EXIT_OK,
        document,
        human,
    })
}

fn run_compare(args: &CompareArgs) -> Result<Output, CliError> {
    let (config, suite) = build_config(&args.workload, None)?;
    let comparison = compare_topologies(&config).map_err(CliError::invalid)?;
    let human = human::comparison(&comparison, suite.as_deref());
    let document = envelope(
        "compare-topologies",
        json!({
            "suite": suite,
            "ranking": comparison.ranking,
            "results": comparison.results,
        }),
    );
    Ok(Output {
        code: EXIT_OK,
        document,
        human,
    })
}

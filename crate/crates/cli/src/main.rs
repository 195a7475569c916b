//! `vgg`: command-line front end for the discrete Voronoi game toolkit.
//!
//! Every command prints exactly one JSON document on stdout. Logs go to
//! stderr (`RUST_LOG` controls verbosity). Exit codes: 0 success,
//! 1 negative decision, 2 input error, 3 budget exceeded.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vgg_core::equilibria::DEFAULT_BUDGET;
use vgg_core::{Error, GameMode};

#[derive(Parser, Debug)]
#[command(name = "vgg", version, about = "Discrete Voronoi game on graphs")]
pub struct Cli {
    /// Worker threads for parallel searches (default: all cores). Never
    /// changes the output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Summarize an instance, or score a profile on it.
    Analyze(AnalyzeArgs),
    /// Enumerate every pure Nash equilibrium.
    Equilibria(EquilibriaArgs),
    /// Run best-response dynamics, or search cycles for a non-convergent walk.
    Dynamics(DynamicsArgs),
    /// Check a cycle profile against the four-condition test and the engine.
    CycleCheck(CycleCheckArgs),
    /// 3-Partition compilation, or expansion of a weighted game.
    Reduce(ReduceArgs),
    /// Search random 9-vertex graphs for a verified gadget.
    GadgetSearch(GadgetSearchArgs),
    /// Build a member of the cost-discrepancy family.
    Family(FamilyArgs),
    /// Render an instance (and optional profile) as Graphviz DOT.
    ExportDot(ExportDotArgs),
    /// Run a table of equilibrium experiments from a config file.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArg {
    /// Instance JSON file; stdin when omitted or `-`.
    #[arg(long, short = 'i')]
    pub instance: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BudgetArg {
    /// Cap on (profile, deviation) checks.
    #[arg(long, env = "VGG_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ModeArg {
    #[arg(long, value_enum, default_value_t = ModeChoice::Shared)]
    pub mode: ModeChoice,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeChoice {
    Shared,
    Disjoint,
}

impl From<ModeChoice> for GameMode {
    fn from(m: ModeChoice) -> Self {
        match m {
            ModeChoice::Shared => GameMode::Shared,
            ModeChoice::Disjoint => GameMode::Disjoint,
        }
    }
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InstanceArg,
    #[command(flatten)]
    pub mode: ModeArg,
    /// Comma-separated facility per player.
    #[arg(long, value_delimiter = ',')]
    pub profile: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
pub struct EquilibriaArgs {
    #[command(flatten)]
    pub input: InstanceArg,
    #[command(flatten)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub budget: BudgetArg,
    /// Also check the star-partition proximity bounds on every ordered pair
    /// of equilibria.
    #[arg(long)]
    pub structure: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum SelectionChoice {
    LowestIndex,
    Random,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum TieBreakChoice {
    LowestVertex,
    Random,
}

#[derive(Args, Debug)]
pub struct DynamicsArgs {
    #[command(flatten)]
    pub input: InstanceArg,
    #[command(flatten)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub budget: BudgetArg,
    /// Starting profile.
    #[arg(long, value_delimiter = ',', required_unless_present = "search_cycle")]
    pub start: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = SelectionChoice::LowestIndex)]
    pub selection: SelectionChoice,
    #[arg(long, value_enum, default_value_t = TieBreakChoice::LowestVertex)]
    pub tie_break: TieBreakChoice,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub max_steps: usize,
    /// Write the moves as JSON lines to this file.
    #[arg(long)]
    pub trace_out: Option<String>,
    /// Search cycles C_n for a directed cycle in the best-response graph
    /// instead of running from a start profile.
    #[arg(long)]
    pub search_cycle: bool,
    #[arg(long, default_value_t = 3)]
    pub n_min: usize,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    #[arg(long, default_value_t = 1)]
    pub k_min: usize,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    /// Only explore profiles reachable from distinct-facility starts.
    #[arg(long)]
    pub distinct_starts: bool,
}

#[derive(Args, Debug)]
pub struct CycleCheckArgs {
    #[arg(long)]
    pub n: usize,
    /// Player count; must match the number of positions when given.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub positions: Vec<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceTask {
    /// Compile a 3-Partition instance and compare equilibrium existence
    /// with the exhaustive answer.
    Roundtrip,
    /// Print the compiled weighted game.
    Build,
    /// Expand a weighted, facility-restricted game into a standard one.
    Expand,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// 3-Partition JSON (`{"m", "a", "B"}`) for roundtrip/build, game
    /// instance JSON for expand; stdin when omitted.
    #[command(flatten)]
    pub input: InstanceArg,
    #[arg(long, value_enum, default_value_t = ReduceTask::Roundtrip)]
    pub task: ReduceTask,
    /// Gadget file; the bundled gadget when omitted.
    #[arg(long)]
    pub gadget: Option<String>,
    #[command(flatten)]
    pub budget: BudgetArg,
}

#[derive(Args, Debug)]
pub struct GadgetSearchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of candidate graphs to examine.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    /// Also write the gadget file here.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long)]
    pub a: usize,
    /// Leaves per hub; defaults to a^2.
    #[arg(long)]
    pub b: Option<usize>,
    /// Also write the instance artifact here.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct ExportDotArgs {
    #[command(flatten)]
    pub input: InstanceArg,
    #[arg(long, value_delimiter = ',')]
    pub profile: Option<Vec<usize>>,
    /// DOT output file; the text is embedded in the report when omitted.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Suite config JSON; stdin when omitted or `-`.
    #[arg(long, short = 'c')]
    pub config: Option<String>,
    #[command(flatten)]
    pub budget: BudgetArg,
    /// Also write the aligned text table here.
    #[arg(long)]
    pub text_out: Option<String>,
}

/// Result of a command: the JSON report and whether its decision was positive.
pub struct Report {
    pub json: serde_json::Value,
    pub positive: bool,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } | Error::SearchExhausted { .. } => 3,
        _ => 2,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidInstance { .. } => "invalid_instance",
        Error::Parse(_) => "parse",
        Error::InvalidProfile(_) => "invalid_profile",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Disconnected => "disconnected",
        Error::EmptyCell { .. } => "empty_cell",
        Error::NotEquilibrium { .. } => "not_equilibrium",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::SearchExhausted { .. } => "search_exhausted",
        Error::InvalidThreePartition(_) => "invalid_three_partition",
        Error::GadgetRejected(_) => "gadget_rejected",
        Error::Verification(_) => "verification",
    }
}

fn print(value: &serde_json::Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            print(&report.json);
            ExitCode::from(if report.positive { 0 } else { 1 })
        }
        Err(err) => {
            log::error!("{err}");
            print(&serde_json::json!({ "error": err.to_string(), "kind": error_kind(&err) }));
            ExitCode::from(exit_code(&err))
        }
    }
}

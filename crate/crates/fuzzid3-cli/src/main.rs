//! Command-line surface: train single trees, evaluate one method
//! through the pairwise five-fold protocol, or compare both methods on
//! shared folds.
//!
//! Reports go to standard output, diagnostics to standard error. Exit
//! code 0 means the run completed, 1 a runtime failure, 2 a flag error.

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzid3::{
    build_tree, compare_methods, fit_partitions, load_iris, run_experiment, Dataset,
    ExperimentConfig, PairDeltas, PartitionReport, PrototypeScope, ReportConfig, RunReport,
    StrategyOptions, StrategyRegistry,
};

type AppResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(
    name = "fuzzid3",
    version,
    about = "Decision-tree induction with crisp and fuzzy split criteria"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one tree on a full class-pair subset and serialize it.
    Train(TrainArgs),
    /// Run one method through the five-fold protocol.
    Evaluate(EvaluateArgs),
    /// Run both methods on shared folds and report per-fold deltas.
    Compare(CompareArgs),
}

#[derive(Args)]
struct DataArgs {
    /// Input CSV file; defaults to $FUZZID3_DATA.
    #[arg(long, env = "FUZZID3_DATA", value_name = "PATH")]
    data: PathBuf,
    /// Class pair as 1-based group numbers `N,M`, or `all-pairs`.
    #[arg(long, default_value = "1,2", value_parser = parse_pair)]
    pair: PairArg,
    /// Fuzzy terms per feature.
    #[arg(long, default_value_t = 2, value_parser = parse_k)]
    k: usize,
    /// Where the fuzzy criterion takes its class prototypes from.
    #[arg(long, value_enum, default_value_t = ScopeArg::PerNode)]
    prototype_scope: ScopeArg,
}

#[derive(Args)]
struct ProtocolArgs {
    /// Test instances per class per fold.
    #[arg(long, default_value_t = 10)]
    fold_size: usize,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Collect per-fold split diagnostics.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct TrainArgs {
    /// Input CSV file; defaults to $FUZZID3_DATA.
    #[arg(long, env = "FUZZID3_DATA", value_name = "PATH")]
    data: PathBuf,
    /// Class pair as 1-based group numbers `N,M`.
    #[arg(long, default_value = "1,2", value_parser = parse_single_pair)]
    pair: (usize, usize),
    /// Fuzzy terms per feature.
    #[arg(long, default_value_t = 2, value_parser = parse_k)]
    k: usize,
    /// Where the fuzzy criterion takes its class prototypes from.
    #[arg(long, value_enum, default_value_t = ScopeArg::PerNode)]
    prototype_scope: ScopeArg,
    /// Split criterion for the tree.
    #[arg(long, value_enum, default_value_t = TrainMethod::Id3)]
    method: TrainMethod,
    /// Write the tree here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Method to evaluate; `both` behaves like `compare`.
    #[arg(long, value_enum, default_value_t = MethodArg::Id3)]
    method: MethodArg,
    #[command(flatten)]
    protocol: ProtocolArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    protocol: ProtocolArgs,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TrainMethod {
    Id3,
    Fuzzy,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Id3,
    Fuzzy,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Json,
    Csv,
}

impl FormatArg {
    fn name(self) -> &'static str {
        match self {
            Self::Table => "table",
            Self::Json => "json",
            Self::Csv => "csv",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    PerNode,
    Global,
}

impl From<ScopeArg> for PrototypeScope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::PerNode => Self::PerNode,
            ScopeArg::Global => Self::Global,
        }
    }
}

#[derive(Clone, Debug)]
enum PairArg {
    All,
    Groups(usize, usize),
}

fn parse_k(s: &str) -> Result<usize, String> {
    let k: usize = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if k < 2 {
        return Err("k must be >= 2".into());
    }
    Ok(k)
}

fn parse_pair(s: &str) -> Result<PairArg, String> {
    if s == "all-pairs" {
        return Ok(PairArg::All);
    }
    let parts: Vec<&str> = s.split(',').collect();
    let [a, b] = parts.as_slice() else {
        return Err(format!("`{s}` is neither `N,M` nor `all-pairs`"));
    };
    let group = |t: &str| -> Result<usize, String> {
        let n: usize = t
            .trim()
            .parse()
            .map_err(|_| format!("`{t}` is not a group number"))?;
        if n == 0 {
            return Err("group numbers are 1-based".into());
        }
        Ok(n)
    };
    let (a, b) = (group(a)?, group(b)?);
    if a == b {
        return Err("a pair needs two distinct groups".into());
    }
    Ok(PairArg::Groups(a, b))
}

fn parse_single_pair(s: &str) -> Result<(usize, usize), String> {
    match parse_pair(s)? {
        PairArg::Groups(a, b) => Ok((a, b)),
        PairArg::All => Err("expected one explicit pair `N,M`".into()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let mut message = format!("error: {e}");
            let mut source = e.source();
            while let Some(s) = source {
                message.push_str(&format!(": {s}"));
                source = s.source();
            }
            eprintln!("{message}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> AppResult<()> {
    match command {
        Command::Train(args) => train(args),
        Command::Evaluate(args) => evaluate(args),
        Command::Compare(args) => compare(args),
    }
}

/// Maps a 1-based group number to its label, in file order of first
/// appearance.
fn group_name(data: &Dataset, n: usize) -> AppResult<String> {
    data.class_names().get(n - 1).cloned().ok_or_else(|| {
        format!(
            "group {n} is out of range: the data has {} classes",
            data.class_names().len()
        )
        .into()
    })
}

fn enumerate_pairs(data: &Dataset, pair: &PairArg) -> AppResult<Vec<(String, String)>> {
    match *pair {
        PairArg::Groups(a, b) => Ok(vec![(group_name(data, a)?, group_name(data, b)?)]),
        PairArg::All => {
            let names = data.class_names();
            let mut pairs = Vec::new();
            for i in 0..names.len() {
                for j in i + 1..names.len() {
                    pairs.push((names[i].clone(), names[j].clone()));
                }
            }
            Ok(pairs)
        }
    }
}

fn train(args: TrainArgs) -> AppResult<()> {
    let data = load_iris(&args.data)?;
    let name_a = group_name(&data, args.pair.0)?;
    let name_b = group_name(&data, args.pair.1)?;
    let pairwise = data.pairwise_subset(&name_a, &name_b)?;
    let partitions = fit_partitions(&pairwise, args.k)?;
    let options = StrategyOptions {
        prototype_scope: args.prototype_scope.into(),
        ..Default::default()
    };
    let method = match args.method {
        TrainMethod::Id3 => "id3",
        TrainMethod::Fuzzy => "fuzzy",
    };
    let strategy = StrategyRegistry::with_builtins().create(method, &options)?;
    let tree = build_tree(&pairwise, &partitions, strategy.as_ref())?;
    let text = serde_json::to_string_pretty(&tree.to_json(pairwise.class_names()))?;
    match args.out {
        Some(path) => fs::write(&path, text + "\n")
            .map_err(|e| format!("cannot write `{}`: {e}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn evaluate(args: EvaluateArgs) -> AppResult<()> {
    match args.method {
        MethodArg::Id3 => single_run(&args.data, &args.protocol, "id3"),
        MethodArg::Fuzzy => single_run(&args.data, &args.protocol, "fuzzy"),
        MethodArg::Both => comparison_run(&args.data, &args.protocol, "both"),
    }
}

fn compare(args: CompareArgs) -> AppResult<()> {
    comparison_run(&args.data, &args.protocol, "both")
}

fn experiment_config(data_args: &DataArgs, protocol: &ProtocolArgs) -> ExperimentConfig {
    ExperimentConfig {
        terms_per_feature: data_args.k,
        fold_size: protocol.fold_size,
        options: StrategyOptions {
            prototype_scope: data_args.prototype_scope.into(),
            ..Default::default()
        },
        trace: protocol.verbose,
    }
}

fn report_config(data_args: &DataArgs, protocol: &ProtocolArgs, method: &str) -> ReportConfig {
    let class_pair = match data_args.pair {
        PairArg::All => "all-pairs".to_string(),
        PairArg::Groups(a, b) => format!("{a},{b}"),
    };
    ReportConfig {
        data_path: data_args.data.display().to_string(),
        method: method.to_string(),
        class_pair,
        k: data_args.k,
        fold_size: protocol.fold_size,
        format: protocol.format.name().to_string(),
        verbose: protocol.verbose,
        prototype_scope: data_args.prototype_scope.into(),
    }
}

/// Partitions echoed at the top of the report: fitted on the pairwise
/// subset for a single pair, on the whole dataset for all-pairs.
fn report_partitions(
    data: &Dataset,
    pairs: &[(String, String)],
    k: usize,
) -> AppResult<Vec<PartitionReport>> {
    let basis = match pairs {
        [(a, b)] => data.pairwise_subset(a, b)?,
        _ => data.clone(),
    };
    Ok(fit_partitions(&basis, k)?
        .iter()
        .map(PartitionReport::from)
        .collect())
}

fn single_run(data_args: &DataArgs, protocol: &ProtocolArgs, method: &str) -> AppResult<()> {
    let data = load_iris(&data_args.data)?;
    let pairs = enumerate_pairs(&data, &data_args.pair)?;
    let registry = StrategyRegistry::with_builtins();
    let cfg = experiment_config(data_args, protocol);
    let mut results = Vec::new();
    for (a, b) in &pairs {
        results.push(run_experiment(&registry, &data, method, (a, b), &cfg)?);
    }
    let report = RunReport {
        config: report_config(data_args, protocol, method),
        partitions: report_partitions(&data, &pairs, data_args.k)?,
        results,
        deltas: None,
        folds_shared: None,
    };
    render::emit(&report, protocol.format)
}

fn comparison_run(data_args: &DataArgs, protocol: &ProtocolArgs, method: &str) -> AppResult<()> {
    let data = load_iris(&data_args.data)?;
    let pairs = enumerate_pairs(&data, &data_args.pair)?;
    let registry = StrategyRegistry::with_builtins();
    let cfg = experiment_config(data_args, protocol);
    let mut results = Vec::new();
    let mut deltas = Vec::new();
    for (a, b) in &pairs {
        let cmp = compare_methods(&registry, &data, (a, b), &cfg)?;
        deltas.push(PairDeltas {
            pair: cmp.id3.pair.clone(),
            per_fold: cmp.deltas,
        });
        results.push(cmp.id3);
        results.push(cmp.fuzzy);
    }
    let report = RunReport {
        config: report_config(data_args, protocol, method),
        partitions: report_partitions(&data, &pairs, data_args.k)?,
        results,
        deltas: Some(deltas),
        folds_shared: Some(true),
    };
    render::emit(&report, protocol.format)
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget or search guard
//! exceeded, 4 disconnected graph.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diffnet_core::construct::{
    clique_chain, construct_m, construct_mbar, optimal_clique_chain_search, trim_to_n,
    CliqueChainSpec, MConstruction,
};
use diffnet_core::graph::{EdgeWeights, Graph};
use diffnet_core::leaders::{
    min_leaders_full_pmi, min_leaders_ssc_estimate, Certificate, LeaderSearchResult,
};
use diffnet_core::sim::{simulate_dispersion, SimConfig};
use diffnet_core::spectral::{kirchhoff_eigen, kirchhoff_resistance, worst_case_kirchhoff};
use diffnet_core::ssc::{
    dl_matrix, longest_pmi_budgeted, maximal_lieep, ssc_rank_oracle, LeaderSet, PmiMode,
};
use diffnet_core::Error as CoreError;

use diffnet_cli::io::{read_graph_file, to_edge_list, write_json, GraphDocument};
use diffnet_cli::report;

#[derive(Parser)]
#[command(
    name = "diffnet",
    version,
    about = "Controllability/robustness analysis for diffusively coupled networks"
)]
struct Cli {
    /// Root seed for every randomized operation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for table and figure sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Budget for exhaustive searches (subsets or node expansions).
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Output format for result records.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from one of the extremal families.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Kirchhoff index of a graph (both routes).
    Kirchhoff(KirchhoffArgs),
    /// Longest PMI sequence for a graph and leader set.
    Pmi(PmiArgs),
    /// Maximal leader-invariant external equitable partition.
    Lieep(GraphLeadersArgs),
    /// Randomized controllability-matrix rank estimate.
    Rank(RankArgs),
    /// Minimum-leader search.
    Minleaders(MinleadersArgs),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Noisy consensus simulation against the dispersion identity.
    Simulate(SimulateArgs),
    /// Reproduce the clique-chain vs dense-family comparison table.
    Table1(Table1Args),
    /// Figure data series.
    #[command(subcommand)]
    Figures(FiguresCmd),
}

#[derive(Subcommand)]
enum GenCmd {
    /// Clique chain from a composition.
    CliqueChain(GenChainArgs),
    /// Sparse leader-minimal graph with k leaders and eccentricity D.
    M(GenMArgs),
    /// Densified leader-minimal graph (maximal distance-preserving edges).
    Mbar(GenMArgs),
}

#[derive(Args)]
struct GenChainArgs {
    /// Clique sizes, space separated, e.g. "1 2 3 1".
    #[arg(long)]
    sizes: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// File format: structured JSON document or plain edge list.
    #[arg(long, value_enum, default_value_t = IoFormat::Json)]
    io_format: IoFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IoFormat {
    Json,
    Edges,
}

#[derive(Args)]
struct GenMArgs {
    #[arg(short, long)]
    k: usize,
    #[arg(short, long)]
    d: usize,
    /// Trim the generated graph down to this many nodes.
    #[arg(long)]
    trim: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = IoFormat::Json)]
    io_format: IoFormat,
}

#[derive(Args)]
struct KirchhoffArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Also report the worst-case index over weights bounded below by
    /// this value.
    #[arg(long)]
    wmin: Option<f64>,
}

#[derive(Args)]
struct GraphLeadersArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Leader ids, space separated; overrides leaders from the file.
    #[arg(long)]
    leaders: Option<String>,
}

#[derive(Args)]
struct PmiArgs {
    #[command(flatten)]
    gl: GraphLeadersArgs,
    #[arg(long, value_enum, default_value_t = PmiModeArg::Exact)]
    mode: PmiModeArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PmiModeArg {
    Exact,
    Greedy,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    gl: GraphLeadersArgs,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0.5)]
    wmin: f64,
    #[arg(long, default_value_t = 1.5)]
    wmax: f64,
}

#[derive(Args)]
struct MinleadersArgs {
    #[arg(long, value_enum)]
    mode: MinleadersMode,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MinleadersMode {
    Pmi,
    Ssc,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Exhaustive optimal clique-chain search at fixed N and D.
    CliqueChain(SearchChainArgs),
}

#[derive(Args)]
struct SearchChainArgs {
    #[arg(short, long)]
    n: usize,
    #[arg(short, long)]
    d: usize,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long, default_value_t = 400)]
    trials: usize,
    #[arg(long, default_value_t = 0.3)]
    burn_in: f64,
}

#[derive(Args)]
struct Table1Args {
    /// Diameters to sweep (default: the default grid 3..=7).
    #[arg(long, value_delimiter = ' ')]
    d_list: Option<Vec<usize>>,
    /// Leader counts to sweep (default: 2..=7; rows keep k <= D).
    #[arg(long, value_delimiter = ' ')]
    k_list: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum FiguresCmd {
    /// Leader-count comparison at fixed D over a list of N.
    Leaders(FigLeadersArgs),
    /// Kirchhoff comparison with bound overlays, fixed k or fixed D.
    Kf(FigKfArgs),
}

#[derive(Args)]
struct FigLeadersArgs {
    #[arg(short, long)]
    d: usize,
    #[arg(long, value_delimiter = ' ')]
    n_list: Vec<usize>,
}

#[derive(Args)]
struct FigKfArgs {
    #[arg(short, long)]
    k: Option<usize>,
    #[arg(short, long)]
    d: Option<usize>,
    #[arg(long, value_delimiter = ' ')]
    d_list: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ' ')]
    k_list: Option<Vec<usize>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// 2 invalid input, 3 budget exceeded, 4 disconnected.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(core) = cause.downcast_ref::<CoreError>() {
            return match core {
                CoreError::Disconnected => 4,
                CoreError::BudgetExceeded | CoreError::SearchSpaceTooLarge { .. } => 3,
                _ => 2,
            };
        }
    }
    2
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Gen(gen) => run_gen(&cli, gen)?,
        Cmd::Kirchhoff(args) => run_kirchhoff(&cli, args)?,
        Cmd::Pmi(args) => run_pmi(&cli, args)?,
        Cmd::Lieep(args) => run_lieep(&cli, args)?,
        Cmd::Rank(args) => run_rank(&cli, args)?,
        Cmd::Minleaders(args) => return run_minleaders(&cli, args),
        Cmd::Search(SearchCmd::CliqueChain(args)) => run_search(&cli, args)?,
        Cmd::Simulate(args) => run_simulate(&cli, args)?,
        Cmd::Table1(args) => run_table1(&cli, args)?,
        Cmd::Figures(fig) => run_figures(&cli, fig)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn load_graph(path: &std::path::Path) -> Result<(GraphDocument, Graph)> {
    let doc = read_graph_file(path)?;
    let g = doc.to_graph()?;
    Ok((doc, g))
}

fn resolve_leaders(doc: &GraphDocument, g: &Graph, flag: &Option<String>) -> Result<LeaderSet> {
    if let Some(text) = flag {
        let ids: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse().with_context(|| format!("bad leader id: {t}")))
            .collect::<Result<_>>()?;
        return Ok(LeaderSet::new(ids, g.num_nodes())?);
    }
    doc.leader_set()?
        .ok_or_else(|| anyhow!("no leaders: pass --leaders or include them in the graph file"))
}

fn unit_or_file_weights(doc: &GraphDocument, g: &Graph) -> Result<EdgeWeights> {
    Ok(match doc.edge_weights(g)? {
        Some(w) => w,
        None => EdgeWeights::uniform(g, 1.0)?,
    })
}

fn emit_doc(doc: &GraphDocument, g: &Graph, out: &Option<PathBuf>, fmt: IoFormat) -> Result<()> {
    let text = match fmt {
        IoFormat::Json => write_json(doc),
        IoFormat::Edges => to_edge_list(g),
    };
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run_gen(_cli: &Cli, gen: &GenCmd) -> Result<()> {
    match gen {
        GenCmd::CliqueChain(args) => {
            let sizes: Vec<usize> = args
                .sizes
                .split_whitespace()
                .map(|t| t.parse().with_context(|| format!("bad clique size: {t}")))
                .collect::<Result<_>>()?;
            let spec = CliqueChainSpec::new(sizes)?;
            let g = clique_chain(&spec);
            let doc = GraphDocument::from_graph(&g);
            emit_doc(&doc, &g, &args.out, args.io_format)
        }
        GenCmd::M(args) | GenCmd::Mbar(args) => {
            let dense = matches!(gen, GenCmd::Mbar(_));
            let built = if dense {
                construct_mbar(args.k, args.d)?
            } else {
                construct_m(args.k, args.d)?
            };
            let built: MConstruction = match args.trim {
                Some(target) => {
                    if !dense {
                        bail!("--trim applies to the densified family only");
                    }
                    trim_to_n(&built, target)?
                }
                None => built,
            };
            let doc = GraphDocument::from_construction(&built);
            emit_doc(&doc, &built.graph, &args.out, args.io_format)
        }
    }
}

#[derive(Serialize)]
struct KirchhoffRecord {
    kf_eigen: f64,
    kf_resistance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    worst_case: Option<f64>,
}

fn run_kirchhoff(cli: &Cli, args: &KirchhoffArgs) -> Result<()> {
    let (doc, g) = load_graph(&args.graph)?;
    let w = unit_or_file_weights(&doc, &g)?;
    let record = KirchhoffRecord {
        kf_eigen: kirchhoff_eigen(&g, &w)?.kf,
        kf_resistance: kirchhoff_resistance(&g, &w)?.kf,
        worst_case: match args.wmin {
            Some(wmin) => Some(worst_case_kirchhoff(&g, wmin)?),
            None => None,
        },
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        Format::Csv => {
            println!("kf_eigen,kf_resistance,worst_case");
            println!(
                "{},{},{}",
                record.kf_eigen,
                record.kf_resistance,
                record.worst_case.map_or(String::new(), |v| v.to_string())
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PmiRecord {
    length: usize,
    full: bool,
    order: Vec<usize>,
    witness: Vec<usize>,
}

fn run_pmi(cli: &Cli, args: &PmiArgs) -> Result<()> {
    let (doc, g) = load_graph(&args.gl.graph)?;
    let leaders = resolve_leaders(&doc, &g, &args.gl.leaders)?;
    let dl = dl_matrix(&g, &leaders)?;
    let mode = match args.mode {
        PmiModeArg::Exact => PmiMode::Exact,
        PmiModeArg::Greedy => PmiMode::Greedy,
    };
    let seq = longest_pmi_budgeted(&dl, mode, cli.budget)?;
    let record = PmiRecord {
        length: seq.len(),
        full: seq.len() == g.num_nodes(),
        order: seq.order.clone(),
        witness: seq.witness.clone(),
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        Format::Csv => {
            println!("length,full,order,witness");
            println!(
                "{},{},\"{}\",\"{}\"",
                record.length,
                record.full,
                join(&record.order),
                join(&record.witness)
            );
        }
    }
    Ok(())
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct LieepRecord {
    num_cells: usize,
    all_singletons: bool,
    cells: Vec<Vec<usize>>,
}

fn run_lieep(cli: &Cli, args: &GraphLeadersArgs) -> Result<()> {
    let (doc, g) = load_graph(&args.graph)?;
    let leaders = resolve_leaders(&doc, &g, &args.leaders)?;
    let part = maximal_lieep(&g, &leaders);
    let record = LieepRecord {
        num_cells: part.num_cells(),
        all_singletons: part.all_singletons(),
        cells: part.cells().to_vec(),
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        Format::Csv => {
            println!("num_cells,all_singletons,cells");
            let cells = record
                .cells
                .iter()
                .map(|c| join(c))
                .collect::<Vec<_>>()
                .join("|");
            println!(
                "{},{},\"{}\"",
                record.num_cells, record.all_singletons, cells
            );
        }
    }
    Ok(())
}

fn run_rank(cli: &Cli, args: &RankArgs) -> Result<()> {
    let (doc, g) = load_graph(&args.gl.graph)?;
    let leaders = resolve_leaders(&doc, &g, &args.gl.leaders)?;
    let rank = ssc_rank_oracle(&g, &leaders, args.trials, args.wmin, args.wmax, cli.seed)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({ "rank": rank, "n": g.num_nodes(), "trials": args.trials })
        ),
        Format::Csv => {
            println!("rank,n,trials");
            println!("{rank},{},{}", g.num_nodes(), args.trials);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct MinleadersRecord {
    k_found: usize,
    certificate: &'static str,
    witness_leaders: Option<Vec<usize>>,
    subsets_examined: u64,
}

fn run_minleaders(cli: &Cli, args: &MinleadersArgs) -> Result<ExitCode> {
    let (_doc, g) = load_graph(&args.graph)?;
    let result: LeaderSearchResult = match args.mode {
        MinleadersMode::Pmi => min_leaders_full_pmi(&g, cli.budget)?,
        MinleadersMode::Ssc => min_leaders_ssc_estimate(&g, args.trials, cli.budget, cli.seed)?,
    };
    let record = MinleadersRecord {
        k_found: result.k_found,
        certificate: match result.certificate {
            Certificate::FullPmi => "full_pmi",
            Certificate::RankOracle => "rank_oracle",
            Certificate::Exhausted => "exhausted",
        },
        witness_leaders: result
            .witness_leaders
            .as_ref()
            .map(|l| l.as_slice().to_vec()),
        subsets_examined: result.subsets_examined,
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        Format::Csv => {
            println!("k_found,certificate,witness_leaders,subsets_examined");
            println!(
                "{},{},\"{}\",{}",
                record.k_found,
                record.certificate,
                record
                    .witness_leaders
                    .as_deref()
                    .map_or(String::new(), join),
                record.subsets_examined
            );
        }
    }
    if result.certificate == Certificate::Exhausted {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_search(cli: &Cli, args: &SearchChainArgs) -> Result<()> {
    let (spec, kf) = optimal_clique_chain_search(args.n, args.d)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({ "n": args.n, "d": args.d, "spec": spec.sizes(), "kf": kf })
        ),
        Format::Csv => {
            println!("N,D,spec,kf");
            println!("{},{},\"{}\",{}", args.n, args.d, join(spec.sizes()), kf);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SimulateRecord {
    h_hat: f64,
    h_theory: f64,
    rel_err: f64,
    ci95: f64,
}

fn run_simulate(cli: &Cli, args: &SimulateArgs) -> Result<()> {
    let (doc, g) = load_graph(&args.graph)?;
    let w = unit_or_file_weights(&doc, &g)?;
    let mut cfg = SimConfig::for_graph(&g, &w, args.trials, cli.seed)?;
    cfg.burn_in = args.burn_in;
    if let Some(dt) = args.dt {
        cfg.dt = dt;
    }
    if let Some(h) = args.horizon {
        cfg.horizon = h;
    }
    let est = simulate_dispersion(&g, &w, &cfg)?;
    let record = SimulateRecord {
        h_hat: est.h_hat,
        h_theory: est.h_theory,
        rel_err: est.rel_err,
        ci95: est.ci95,
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        Format::Csv => {
            println!("h_hat,h_theory,rel_err,ci95");
            println!(
                "{},{},{},{}",
                record.h_hat, record.h_theory, record.rel_err, record.ci95
            );
        }
    }
    Ok(())
}

fn run_table1(cli: &Cli, args: &Table1Args) -> Result<()> {
    let (default_d, default_k) = report::default_grid();
    let d_list = args.d_list.clone().unwrap_or(default_d);
    let k_list = args.k_list.clone().unwrap_or(default_k);
    let rows = report::reproduce_table1(&d_list, &k_list, cli.threads)?;
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Csv => print!("{}", report::table1_csv(&rows)),
    }
    Ok(())
}

fn run_figures(cli: &Cli, fig: &FiguresCmd) -> Result<()> {
    match fig {
        FiguresCmd::Leaders(args) => {
            let rows = report::figure_leader_comparison(args.d, &args.n_list);
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                Format::Csv => print!("{}", report::leader_comparison_csv(args.d, &rows)),
            }
        }
        FiguresCmd::Kf(args) => {
            let rows = match (args.k, args.d) {
                (Some(k), None) => {
                    let d_list = args
                        .d_list
                        .clone()
                        .ok_or_else(|| anyhow!("--d-list is required with --k"))?;
                    report::figure_kf_comparison(k, &d_list, cli.threads)?
                }
                (None, Some(d)) => {
                    let k_list = args
                        .k_list
                        .clone()
                        .ok_or_else(|| anyhow!("--k-list is required with --d"))?;
                    report::figure_kf_comparison_fixed_d(d, &k_list, cli.threads)?
                }
                _ => bail!("pass exactly one of --k (with --d-list) or --d (with --k-list)"),
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                Format::Csv => print!("{}", report::kf_comparison_csv(&rows)),
            }
        }
    }
    Ok(())
}

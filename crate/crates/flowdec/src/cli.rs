//! Command-line interface: analyze | decompose | verify | gen | bench.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or parameter error,
//! 3 exact-search budget exhaustion (best-known result still emitted).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{run_bench, to_csv, BenchConfig};
use crate::decompose::{
    exact_mfd, greedy_decompose, mfd_lower_bound, parity_fix_decompose, verify, Decomposition,
    DecompositionStats, ExactBudget, Verdict,
};
use crate::error::Error;
use crate::formats::{
    parse_decomposition_file, parse_graph_file, serialize_decomposition_file, serialize_graph_file,
};
use crate::generate::{InstanceFamily, InstanceSpec};
use crate::graph::FlowNetwork;
use crate::report::build_report;
use crate::structure::SearchBudget;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAIL: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "flowdec",
    about = "Structural widths and weighted-path decompositions of integer flows on s-t DAGs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print width, flow-width, parallel-width and width-stability of a graph file
    Analyze {
        input: PathBuf,
        /// Emit one JSON object instead of the table
        #[arg(long)]
        json: bool,
        /// Node budget for the parallel-width search (default 1000000,
        /// overridable via FLOWDEC_PW_BUDGET)
        #[arg(long)]
        pw_budget: Option<u64>,
    },
    /// Decompose the flow of a graph file into weighted paths
    Decompose {
        input: PathBuf,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// Write the decomposition here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the run statistics as one JSON object
        #[arg(long)]
        json: bool,
        /// Node budget for the exact search (default 1000000)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a decomposition file against a graph file
    Verify { graph: PathBuf, decomposition: PathBuf },
    /// Generate an instance family member
    Gen {
        /// genset | threepart | chk | pc | random_paths | series_parallel | adversarial
        family: String,
        /// Family parameters (threepart: 3q elements then B)
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the graph here (witness decomposition goes to FILE.witness)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run decomposition algorithms over generated families and emit CSV
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        families: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        algos: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Parityfix,
    Greedy,
    Exact,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Parityfix => "parityfix",
            AlgoArg::Greedy => "greedy",
            AlgoArg::Exact => "exact",
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // keep clap's rendering but pin our exit-code contract
            let is_help = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if is_help { EXIT_OK } else { EXIT_INPUT_ERROR };
        }
    };
    match cli.command {
        Command::Analyze { input, json, pw_budget } => cmd_analyze(&input, json, pw_budget),
        Command::Decompose { input, algo, out, json, budget } => {
            cmd_decompose(&input, algo, out.as_deref(), json, budget)
        }
        Command::Verify { graph, decomposition } => cmd_verify(&graph, &decomposition),
        Command::Gen { family, params, seed, out } => cmd_gen(&family, &params, seed, out.as_deref()),
        Command::Bench { families, sizes, algos, seed, out } => {
            cmd_bench(families, sizes, algos, seed, out.as_deref())
        }
    }
}

fn fail(err: &Error) -> u8 {
    eprintln!("error: {err}");
    match err {
        Error::BudgetExceeded => EXIT_BUDGET,
        Error::BenchConsistency(_) => EXIT_VERIFY_FAIL,
        _ => EXIT_INPUT_ERROR,
    }
}

fn load_network(path: &Path) -> Result<FlowNetwork, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, message: format!("{}: {e}", path.display()) })?;
    parse_graph_file(&text)
}

fn pw_budget_from(flag: Option<u64>) -> Result<SearchBudget, Error> {
    if let Some(nodes) = flag {
        return Ok(SearchBudget { max_nodes: nodes });
    }
    match std::env::var("FLOWDEC_PW_BUDGET") {
        Ok(raw) => raw
            .parse::<u64>()
            .map(|max_nodes| SearchBudget { max_nodes })
            .map_err(|_| Error::InvalidParameters("FLOWDEC_PW_BUDGET must be an integer".into())),
        Err(_) => Ok(SearchBudget::default()),
    }
}

fn cmd_analyze(input: &Path, json: bool, pw_budget: Option<u64>) -> u8 {
    let budget = match pw_budget_from(pw_budget) {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    let net = match load_network(input) {
        Ok(n) => n,
        Err(e) => return fail(&e),
    };
    match build_report(&net, &budget) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                print!("{}", report.to_table());
            }
            EXIT_OK
        }
        Err(e) => fail(&e),
    }
}

#[derive(Serialize)]
struct DecomposeStatsOut<'a> {
    algorithm: &'a str,
    size: usize,
    lower_bound: i64,
    ratio: String,
    optimal: Option<bool>,
    iterations: Vec<crate::decompose::IterationRecord>,
}

fn cmd_decompose(
    input: &Path,
    algo: AlgoArg,
    out: Option<&Path>,
    json: bool,
    budget: Option<u64>,
) -> u8 {
    let net = match load_network(input) {
        Ok(n) => n,
        Err(e) => return fail(&e),
    };
    let lower_bound = match mfd_lower_bound(&net) {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    let mut optimal = None;
    let mut stats: Option<DecompositionStats> = None;
    let decomposition: Decomposition = match algo {
        AlgoArg::Parityfix => match parity_fix_decompose(&net) {
            Ok((d, s)) => {
                stats = Some(s);
                d
            }
            Err(e) => return fail(&e),
        },
        AlgoArg::Greedy => match greedy_decompose(&net) {
            Ok(d) => d,
            Err(e) => return fail(&e),
        },
        AlgoArg::Exact => {
            let budget = ExactBudget { max_nodes: budget.unwrap_or(ExactBudget::default().max_nodes) };
            match exact_mfd(&net, &budget) {
                Ok(outcome) => {
                    optimal = Some(outcome.optimal);
                    outcome.decomposition
                }
                Err(e) => return fail(&e),
            }
        }
    };
    // every emitted decomposition is re-verified before a success exit
    if let Verdict::Fail(v) = verify(&net, &decomposition) {
        eprintln!("error: produced decomposition failed verification: {v}");
        return EXIT_VERIFY_FAIL;
    }
    let rendered = serialize_decomposition_file(&decomposition, net.dag());
    let stats_out = DecomposeStatsOut {
        algorithm: algo.name(),
        size: decomposition.size(),
        lower_bound,
        ratio: format!("{:.4}", decomposition.size() as f64 / lower_bound as f64),
        optimal,
        iterations: stats.map(|s| s.iterations).unwrap_or_default(),
    };
    let stats_text = if json {
        serde_json::to_string(&stats_out).expect("stats serialize")
    } else {
        let mut text = format!(
            "algorithm    {}\nsize         {}\nlower bound  {}\nratio        {}\n",
            stats_out.algorithm, stats_out.size, stats_out.lower_bound, stats_out.ratio
        );
        if let Some(flag) = stats_out.optimal {
            text.push_str(&format!("optimal      {flag}\n"));
        }
        if !stats_out.iterations.is_empty() {
            text.push_str("iter  val(f_i)  fwidth(f^(i))\n");
            for r in &stats_out.iterations {
                text.push_str(&format!("{:<5} {:<9} {}\n", r.index, r.parity_value, r.flow_width_bound));
            }
        }
        text
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INPUT_ERROR;
            }
            println!("{stats_text}");
        }
        None => {
            print!("{rendered}");
            eprintln!("{stats_text}");
        }
    }
    if optimal == Some(false) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

fn cmd_verify(graph: &Path, decomposition: &Path) -> u8 {
    let net = match load_network(graph) {
        Ok(n) => n,
        Err(e) => return fail(&e),
    };
    let text = match std::fs::read_to_string(decomposition) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", decomposition.display());
            return EXIT_INPUT_ERROR;
        }
    };
    let parsed = match parse_decomposition_file(&text, net.dag()) {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    match verify(&net, &parsed) {
        Verdict::Pass => {
            println!("ok: {} paths reconstruct the flow exactly", parsed.size());
            EXIT_OK
        }
        Verdict::Fail(v) => {
            eprintln!("verification failed: {v}");
            EXIT_VERIFY_FAIL
        }
    }
}

fn cmd_gen(family: &str, params: &[i64], seed: u64, out: Option<&Path>) -> u8 {
    let family = match InstanceFamily::parse(family) {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    let instance = match InstanceSpec::new(family, params.to_vec(), seed).generate() {
        Ok(i) => i,
        Err(e) => return fail(&e),
    };
    let graph_text = match serialize_graph_file(&instance.network) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &graph_text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INPUT_ERROR;
            }
            if let Some(witness) = &instance.witness {
                let mut wpath = path.as_os_str().to_owned();
                wpath.push(".witness");
                let wtext = serialize_decomposition_file(witness, instance.network.dag());
                if let Err(e) = std::fs::write(&wpath, wtext) {
                    eprintln!("error: cannot write witness file: {e}");
                    return EXIT_INPUT_ERROR;
                }
            }
            println!(
                "wrote {} ({} vertices, {} edges, value {})",
                path.display(),
                instance.network.dag().vertex_count(),
                instance.network.dag().edge_count(),
                instance.network.value()
            );
        }
        None => print!("{graph_text}"),
    }
    EXIT_OK
}

fn cmd_bench(
    families: Vec<String>,
    sizes: Vec<i64>,
    algos: Vec<String>,
    seed: u64,
    out: Option<&Path>,
) -> u8 {
    let pw_budget = match pw_budget_from(None) {
        Ok(b) => b,
        Err(e) => return fail(&e),
    };
    let config = BenchConfig {
        families,
        sizes,
        algos,
        seed,
        pw_budget,
        exact_budget: ExactBudget::default(),
    };
    match run_bench(&config) {
        Ok(rows) => {
            let csv = to_csv(&rows);
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, csv) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return EXIT_INPUT_ERROR;
                    }
                    println!("wrote {} rows to {}", rows.len(), path.display());
                }
                None => print!("{csv}"),
            }
            EXIT_OK
        }
        Err(e) => fail(&e),
    }
}

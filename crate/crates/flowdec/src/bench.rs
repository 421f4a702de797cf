//! CSV benchmark harness: runs the decomposition algorithms over generated
//! instance families and reports per-run sizes, bounds and timings.

use std::time::Instant;

use crate::decompose::{
    exact_mfd, greedy_decompose, mfd_lower_bound, parity_fix_decompose, verify, Decomposition,
    ExactBudget,
};
use crate::error::{Error, Result};
use crate::generate::{GeneratedInstance, InstanceFamily, InstanceSpec};
use crate::minflow::width;
use crate::structure::{parallel_width, SearchBudget};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub families: Vec<String>,
    pub sizes: Vec<i64>,
    pub algos: Vec<String>,
    pub seed: u64,
    pub pw_budget: SearchBudget,
    pub exact_budget: ExactBudget,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub family: String,
    pub params: String,
    pub n: usize,
    pub m: usize,
    pub val: i64,
    pub maxflow: i64,
    pub width: i64,
    pub fwidth: i64,
    pub pw: String,
    pub algo: String,
    pub size: usize,
    pub lower_bound: i64,
    pub ratio: String,
    pub wall_ms: u128,
    pub optimal: Option<bool>, // internal; not a CSV column
}

pub const CSV_HEADER: &str =
    "family,params,n,m,val,maxflow,width,fwidth,pw,algo,size,lower_bound,ratio,wall_ms";

/// One instance per (family, size): the size selects canonical parameters for
/// each family, and the seed feeds the random families.
fn instance_for(family: InstanceFamily, size: i64, seed: u64) -> Result<GeneratedInstance> {
    if size < 1 {
        return Err(Error::InvalidParameters("sizes must be positive".into()));
    }
    let spec = match family {
        InstanceFamily::Genset => InstanceSpec::new(family, (1..=size).collect(), seed),
        InstanceFamily::ThreePartition => {
            let mut params = vec![3; 3 * size as usize];
            params.push(9);
            InstanceSpec::new(family, params, seed)
        }
        InstanceFamily::Chk | InstanceFamily::Pc | InstanceFamily::SeriesParallel => {
            InstanceSpec::new(family, vec![size], seed)
        }
        InstanceFamily::RandomPaths => {
            InstanceSpec::new(family, vec![size, (size / 2).max(1), 20], seed)
        }
        InstanceFamily::Adversarial => InstanceSpec::new(family, vec![size, size], seed),
    };
    spec.generate()
}

fn run_algo(
    algo: &str,
    instance: &GeneratedInstance,
    exact_budget: &ExactBudget,
) -> Result<(Decomposition, Option<bool>)> {
    match algo {
        "parityfix" => Ok((parity_fix_decompose(&instance.network)?.0, None)),
        "greedy" => Ok((greedy_decompose(&instance.network)?, None)),
        "exact" => {
            let out = exact_mfd(&instance.network, exact_budget)?;
            Ok((out.decomposition, Some(out.optimal)))
        }
        other => Err(Error::InvalidParameters(format!(
            "unknown algorithm '{other}'; expected parityfix, greedy or exact"
        ))),
    }
}

/// Runs the whole configuration. Rows come out in (family, size, algo) input
/// order; a final consistency pass rejects any instance on which a proven
/// optimum exceeds a heuristic size.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.families.is_empty() || config.sizes.is_empty() || config.algos.is_empty() {
        return Err(Error::InvalidParameters("families, sizes and algos must be non-empty".into()));
    }
    let mut rows = Vec::new();
    for family_name in &config.families {
        let family = InstanceFamily::parse(family_name)?;
        for &size in &config.sizes {
            let instance = instance_for(family, size, config.seed)?;
            let net = &instance.network;
            let (w, _) = width(net.dag())?;
            let fwidth = mfd_lower_bound(net)?;
            let pw = parallel_width(net.dag(), &config.pw_budget);
            for algo in &config.algos {
                let start = Instant::now();
                let (decomposition, optimal) = run_algo(algo, &instance, &config.exact_budget)?;
                let wall_ms = start.elapsed().as_millis();
                if !verify(net, &decomposition).is_pass() {
                    return Err(Error::BenchConsistency(format!(
                        "{family_name}({}) {algo}: output failed verification",
                        instance.label
                    )));
                }
                rows.push(BenchRow {
                    family: family_name.clone(),
                    params: instance.label.clone(),
                    n: net.dag().vertex_count(),
                    m: net.dag().edge_count(),
                    val: net.value(),
                    maxflow: net.max_norm(),
                    width: w,
                    fwidth,
                    pw: pw.display_value(),
                    algo: algo.clone(),
                    size: decomposition.size(),
                    lower_bound: fwidth,
                    ratio: format!("{:.4}", decomposition.size() as f64 / fwidth as f64),
                    wall_ms,
                    optimal,
                });
            }
        }
    }
    check_dominance(&rows)?;
    Ok(rows)
}

/// A proven exact optimum must not exceed any heuristic size on the same
/// instance.
fn check_dominance(rows: &[BenchRow]) -> Result<()> {
    for exact in rows.iter().filter(|r| r.algo == "exact" && r.optimal == Some(true)) {
        for other in rows.iter().filter(|r| {
            r.family == exact.family && r.params == exact.params && r.algo != "exact"
        }) {
            if exact.size > other.size {
                return Err(Error::BenchConsistency(format!(
                    "{}({}): exact size {} exceeds {} size {}",
                    exact.family, exact.params, exact.size, other.algo, other.size
                )));
            }
        }
    }
    Ok(())
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.family,
            r.params,
            r.n,
            r.m,
            r.val,
            r.maxflow,
            r.width,
            r.fwidth,
            r.pw,
            r.algo,
            r.size,
            r.lower_bound,
            r.ratio,
            r.wall_ms
        ));
    }
    out
}

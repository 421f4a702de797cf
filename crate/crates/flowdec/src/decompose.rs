//! Flow decomposition into weighted source-sink paths: the parity-fixing
//! approximation, a widest-path greedy baseline, a budgeted exact search, and
//! decomposition verification.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{ContractionMap, EdgeId, Flow, FlowNetwork, MultiDag};
use crate::minflow::{
    extract_unit_paths, flow_width, parity_cover_flow, solve_min_flow, BoundedFlowProblem,
    Capacity,
};

/// A contiguous source-sink walk given by edge ids, with a positive weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPath {
    pub edges: Vec<EdgeId>,
    pub weight: i64,
}

/// Which algorithm produced a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Parity fixing; `iterations[j]` is the halving round that produced
    /// `paths[j]` (its weight is 2^round).
    ParityFix { iterations: Vec<u32> },
    Greedy,
    Exact { optimal: bool },
    External,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub paths: Vec<WeightedPath>,
    pub provenance: Provenance,
}

impl Decomposition {
    pub fn size(&self) -> usize {
        self.paths.len()
    }
}

/// One halving round of the parity-fixing loop.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IterationRecord {
    pub index: u32,
    /// val(f_i): value of the parity cover flow subtracted this round.
    pub parity_value: i64,
    /// fwidth of the residual flow at the start of the round; bounds
    /// `parity_value` from above.
    pub flow_width_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DecompositionStats {
    pub size: usize,
    /// fwidth of the input flow; a lower bound on any decomposition size.
    pub lower_bound: i64,
    /// floor(log2 ||f||) + 1.
    pub log_factor: u32,
    pub iterations: Vec<IterationRecord>,
}

/// floor(log2 x) + 1 for x >= 1; 0 for x <= 0.
pub fn log_factor(max_norm: i64) -> u32 {
    if max_norm <= 0 {
        0
    } else {
        64 - (max_norm as u64).leading_zeros()
    }
}

fn flow_value(dag: &MultiDag, flow: &Flow) -> i64 {
    dag.out_edges(dag.source()).map(|e| flow.value_on(e.id).unwrap()).sum()
}

/// Parity-fixing decomposition: each round subtracts the min-value flow
/// covering all odd edges, emits its unit paths at weight 2^round, and halves
/// the remainder. Terminates after at most floor(log2 ||f||) + 1 rounds.
pub fn parity_fix_decompose(net: &FlowNetwork) -> Result<(Decomposition, DecompositionStats)> {
    if net.value() == 0 {
        return Err(Error::EmptyFlow);
    }
    let dag = net.dag();
    let log = log_factor(net.max_norm());
    let mut current = net.flow().clone();
    let mut paths = Vec::new();
    let mut iteration_tags = Vec::new();
    let mut records = Vec::new();
    let mut round: u32 = 0;

    while flow_value(dag, &current) > 0 {
        assert!(round < log, "parity loop exceeded its round bound");
        let round_net = net.with_flow(current.clone())?;
        let (bound, _) = flow_width(&round_net)?;
        let cover = parity_cover_flow(&round_net)?;
        let cover_value = flow_value(dag, &cover);
        assert!(cover_value <= bound, "parity cover exceeded the flow-width bound");
        records.push(IterationRecord {
            index: round,
            parity_value: cover_value,
            flow_width_bound: bound,
        });

        if cover_value > 0 {
            let weight = 1i64.checked_shl(round).ok_or(Error::IntegerOverflow)?;
            let cover_net = net.with_flow(cover.clone())?;
            for edges in extract_unit_paths(&cover_net) {
                paths.push(WeightedPath { edges, weight });
                iteration_tags.push(round);
            }
        }
        current = current.checked_sub(&cover)?.halved()?;
        round += 1;
    }

    let stats = DecompositionStats {
        size: paths.len(),
        lower_bound: records[0].flow_width_bound,
        log_factor: log,
        iterations: records,
    };
    let decomposition =
        Decomposition { paths, provenance: Provenance::ParityFix { iterations: iteration_tags } };
    Ok((decomposition, stats))
}

/// Greedy baseline: repeatedly remove the maximum-bottleneck source-sink path
/// over positive-residual edges, assigning it its bottleneck weight. Ties are
/// broken by the smallest edge id at every vertex.
pub fn greedy_decompose(net: &FlowNetwork) -> Result<Decomposition> {
    if net.value() == 0 {
        return Err(Error::EmptyFlow);
    }
    let dag = net.dag();
    let mut residual: Vec<i64> = dag.edges().iter().map(|e| net.flow_of(e.id)).collect();
    let mut remaining = net.value();
    let order = dag.topological_order();
    let mut paths = Vec::new();

    while remaining > 0 {
        let n = dag.vertex_count();
        let mut best = vec![0i64; n];
        let mut choice: Vec<Option<usize>> = vec![None; n];
        best[dag.position_of_source()] = i64::MAX;
        for &v in &order {
            if v == dag.source() {
                continue;
            }
            let vpos = dag.position_of(v).unwrap();
            for &epos in dag.in_positions(vpos) {
                if residual[epos] == 0 {
                    continue;
                }
                let tail_pos = dag.position_of(dag.edges()[epos].tail).unwrap();
                let cand = best[tail_pos].min(residual[epos]);
                if cand > best[vpos] {
                    best[vpos] = cand;
                    choice[vpos] = Some(epos);
                }
            }
        }
        let bottleneck = best[dag.position_of_sink()];
        assert!(bottleneck > 0, "positive residual value must admit a path");

        let mut edges = Vec::new();
        let mut vpos = dag.position_of_sink();
        while vpos != dag.position_of_source() {
            let epos = choice[vpos].unwrap();
            edges.push(dag.edges()[epos].id);
            residual[epos] -= bottleneck;
            vpos = dag.position_of(dag.edges()[epos].tail).unwrap();
        }
        edges.reverse();
        paths.push(WeightedPath { edges, weight: bottleneck });
        remaining -= bottleneck;
    }
    Ok(Decomposition { paths, provenance: Provenance::Greedy })
}

/// First violation found when checking a decomposition against a network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyPath { path: usize },
    NonPositiveWeight { path: usize },
    UnknownEdge { path: usize, edge: EdgeId },
    NotFromSource { path: usize },
    NotToSink { path: usize },
    BrokenWalk { path: usize },
    UnderSum { edge: EdgeId },
    OverSum { edge: EdgeId },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::EmptyPath { path } => write!(f, "path {path} has no edges"),
            Violation::NonPositiveWeight { path } => write!(f, "path {path} has weight < 1"),
            Violation::UnknownEdge { path, edge } => {
                write!(f, "path {path} references unknown edge {edge}")
            }
            Violation::NotFromSource { path } => {
                write!(f, "path {path} does not start at the source")
            }
            Violation::NotToSink { path } => write!(f, "path {path} does not end at the sink"),
            Violation::BrokenWalk { path } => {
                write!(f, "path {path} has non-adjacent consecutive edges")
            }
            Violation::UnderSum { edge } => write!(f, "UnderSum: edge {edge} is not fully covered"),
            Violation::OverSum { edge } => write!(f, "OverSum: edge {edge} is over-covered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Checks that every path is a contiguous source-sink walk with weight >= 1
/// and that the weighted indicator sum reproduces the flow exactly.
pub fn verify(net: &FlowNetwork, decomposition: &Decomposition) -> Verdict {
    let dag = net.dag();
    for (idx, path) in decomposition.paths.iter().enumerate() {
        if path.weight < 1 {
            return Verdict::Fail(Violation::NonPositiveWeight { path: idx });
        }
        if path.edges.is_empty() {
            return Verdict::Fail(Violation::EmptyPath { path: idx });
        }
        for &e in &path.edges {
            if dag.edge(e).is_none() {
                return Verdict::Fail(Violation::UnknownEdge { path: idx, edge: e });
            }
        }
        if dag.edge(path.edges[0]).unwrap().tail != dag.source() {
            return Verdict::Fail(Violation::NotFromSource { path: idx });
        }
        if dag.edge(*path.edges.last().unwrap()).unwrap().head != dag.sink() {
            return Verdict::Fail(Violation::NotToSink { path: idx });
        }
        for pair in path.edges.windows(2) {
            if dag.edge(pair[0]).unwrap().head != dag.edge(pair[1]).unwrap().tail {
                return Verdict::Fail(Violation::BrokenWalk { path: idx });
            }
        }
    }
    let mut sums: BTreeMap<EdgeId, i128> = dag.edges().iter().map(|e| (e.id, 0i128)).collect();
    for path in &decomposition.paths {
        for &e in &path.edges {
            *sums.get_mut(&e).unwrap() += i128::from(path.weight);
        }
    }
    for e in dag.edges() {
        let want = i128::from(net.flow_of(e.id));
        let got = sums[&e.id];
        if got < want {
            return Verdict::Fail(Violation::UnderSum { edge: e.id });
        }
        if got > want {
            return Verdict::Fail(Violation::OverSum { edge: e.id });
        }
    }
    Verdict::Pass
}

/// fwidth(G, f): a lower bound on the size of every decomposition of f.
pub fn mfd_lower_bound(net: &FlowNetwork) -> Result<i64> {
    Ok(flow_width(net)?.0)
}

/// Merges paths with identical edge sequences by summing their weights,
/// keeping first-occurrence order. Mainly useful to compact parity-fixing
/// output on narrow graphs; not applied by default.
pub fn merge_identical_paths(decomposition: &Decomposition) -> Decomposition {
    let mut order: Vec<Vec<EdgeId>> = Vec::new();
    let mut weights: BTreeMap<Vec<EdgeId>, i64> = BTreeMap::new();
    for path in &decomposition.paths {
        if !weights.contains_key(&path.edges) {
            order.push(path.edges.clone());
        }
        *weights.entry(path.edges.clone()).or_insert(0) += path.weight;
    }
    Decomposition {
        paths: order
            .into_iter()
            .map(|edges| {
                let weight = weights[&edges];
                WeightedPath { edges, weight }
            })
            .collect(),
        provenance: Provenance::External,
    }
}

/// Rewrites a decomposition of a contracted network into one of the original
/// network by expanding every edge through the contraction map.
pub fn expand_decomposition(map: &ContractionMap, decomposition: &Decomposition) -> Decomposition {
    Decomposition {
        paths: decomposition
            .paths
            .iter()
            .map(|p| WeightedPath { edges: map.expand_path(&p.edges), weight: p.weight })
            .collect(),
        provenance: decomposition.provenance.clone(),
    }
}

/// Node budget for the exact search.
#[derive(Debug, Clone, Copy)]
pub struct ExactBudget {
    pub max_nodes: u64,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget { max_nodes: 1_000_000 }
    }
}

#[derive(Debug, Clone)]
pub struct ExactOutcome {
    pub decomposition: Decomposition,
    /// True when the search exhausted level k-1 and found a solution at k
    /// (levels below the fwidth lower bound are vacuously exhausted).
    pub optimal: bool,
    pub explored_nodes: u64,
}

enum LevelResult {
    Found(Vec<WeightedPath>),
    Exhausted,
    OutOfBudget,
}

/// Minimum flow decomposition by iterative deepening on the size k, starting
/// at the fwidth lower bound. For each k, routes are enumerated in strictly
/// increasing lexicographic edge-id order and weights are propagated through
/// the per-edge sum constraints; remaining free weights are enumerated within
/// their slack bounds. On budget exhaustion the best heuristic decomposition
/// is returned with `optimal = false`.
pub fn exact_mfd(net: &FlowNetwork, budget: &ExactBudget) -> Result<ExactOutcome> {
    if net.value() == 0 {
        return Err(Error::EmptyFlow);
    }
    let (contracted, map) = net.yv_contract();
    let (lower_bound, _) = flow_width(&contracted)?;
    let greedy = greedy_decompose(&contracted)?;
    let (parity, _) = parity_fix_decompose(&contracted)?;
    let heuristic = if parity.size() < greedy.size() { parity } else { greedy };

    let mut nodes = 0u64;
    let lb = usize::try_from(lower_bound).unwrap_or(1).max(1);
    for k in lb..heuristic.size() {
        let mut search = LevelSearch::new(&contracted, k, budget.max_nodes);
        match search.run(&mut nodes) {
            LevelResult::Found(paths) => {
                let found =
                    Decomposition { paths, provenance: Provenance::Exact { optimal: true } };
                return Ok(ExactOutcome {
                    decomposition: expand_decomposition(&map, &found),
                    optimal: true,
                    explored_nodes: nodes,
                });
            }
            LevelResult::Exhausted => continue,
            LevelResult::OutOfBudget => {
                let best = Decomposition {
                    paths: heuristic.paths.clone(),
                    provenance: Provenance::Exact { optimal: false },
                };
                return Ok(ExactOutcome {
                    decomposition: expand_decomposition(&map, &best),
                    optimal: false,
                    explored_nodes: nodes,
                });
            }
        }
    }
    // every size below the heuristic was exhausted, so the heuristic is optimal
    let best =
        Decomposition { paths: heuristic.paths, provenance: Provenance::Exact { optimal: true } };
    Ok(ExactOutcome {
        decomposition: expand_decomposition(&map, &best),
        optimal: true,
        explored_nodes: nodes,
    })
}

struct LevelSearch<'a> {
    net: &'a FlowNetwork,
    k: usize,
    f: Vec<i64>,      // by edge position
    counts: Vec<i64>, // routes chosen so far per edge position
    uncovered: usize, // positive-flow edges with count 0
    routes: Vec<Vec<usize>>,
    max_nodes: u64,
}

impl<'a> LevelSearch<'a> {
    fn new(net: &'a FlowNetwork, k: usize, max_nodes: u64) -> Self {
        let f: Vec<i64> = net.dag().edges().iter().map(|e| net.flow_of(e.id)).collect();
        let uncovered = f.iter().filter(|&&v| v > 0).count();
        LevelSearch {
            net,
            k,
            counts: vec![0; f.len()],
            f,
            uncovered,
            routes: Vec::new(),
            max_nodes,
        }
    }

    fn run(&mut self, nodes: &mut u64) -> LevelResult {
        self.choose_route(0, nodes)
    }

    fn choose_route(&mut self, idx: usize, nodes: &mut u64) -> LevelResult {
        if idx == self.k {
            if self.uncovered > 0 {
                return LevelResult::Exhausted;
            }
            return match self.solve_weights(nodes) {
                WeightOutcome::Solved(weights) => {
                    let dag = self.net.dag();
                    let paths = self
                        .routes
                        .iter()
                        .zip(weights)
                        .map(|(route, weight)| WeightedPath {
                            edges: route.iter().map(|&epos| dag.edges()[epos].id).collect(),
                            weight,
                        })
                        .collect();
                    LevelResult::Found(paths)
                }
                WeightOutcome::NoSolution => LevelResult::Exhausted,
                WeightOutcome::OutOfBudget => LevelResult::OutOfBudget,
            };
        }
        let start = self.net.dag().position_of_source();
        let mut route = Vec::new();
        self.extend_route(idx, start, &mut route, idx > 0, nodes)
    }

    /// Depth-first extension of route `idx`; `tight` means the prefix equals
    /// the previous route so far (routes must be strictly increasing).
    fn extend_route(
        &mut self,
        idx: usize,
        vpos: usize,
        route: &mut Vec<usize>,
        tight: bool,
        nodes: &mut u64,
    ) -> LevelResult {
        *nodes += 1;
        if *nodes > self.max_nodes {
            return LevelResult::OutOfBudget;
        }
        let dag = self.net.dag();
        if vpos == dag.position_of_sink() {
            if tight {
                // identical to the previous route; skip
                return LevelResult::Exhausted;
            }
            if !self.completion_feasible(idx + 1) {
                return LevelResult::Exhausted;
            }
            self.routes.push(route.clone());
            let result = self.choose_route(idx + 1, nodes);
            self.routes.pop();
            if matches!(result, LevelResult::Exhausted) {
                return LevelResult::Exhausted;
            }
            return result;
        }
        let depth = route.len();
        let prev_at = if tight {
            debug_assert!(depth < self.routes[idx - 1].len(), "no route is a prefix of another");
            Some(self.routes[idx - 1][depth])
        } else {
            None
        };
        let out: Vec<usize> = dag.out_positions(vpos).to_vec();
        for epos in out {
            if self.f[epos] == 0 || self.counts[epos] == self.f[epos] {
                continue;
            }
            if let Some(min_epos) = prev_at {
                if epos < min_epos {
                    continue;
                }
            }
            let next_tight = prev_at == Some(epos);
            let head = dag.edges()[epos].head;
            let hpos = dag.position_of(head).unwrap();
            self.counts[epos] += 1;
            if self.counts[epos] == 1 {
                self.uncovered -= 1;
            }
            route.push(epos);
            let result = self.extend_route(idx, hpos, route, next_tight, nodes);
            route.pop();
            self.counts[epos] -= 1;
            if self.counts[epos] == 0 {
                self.uncovered += 1;
            }
            if !matches!(result, LevelResult::Exhausted) {
                return result;
            }
        }
        LevelResult::Exhausted
    }

    /// Can `remaining` further unit routes cover all still-uncovered positive
    /// edges within the per-edge route capacities f(e) - count(e)? Decided by
    /// a min-flow feasibility check.
    fn completion_feasible(&self, chosen: usize) -> bool {
        let remaining = (self.k - chosen) as i64;
        if self.uncovered == 0 {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        let dag = self.net.dag();
        // cheap degree test first: one route covers at most one out-edge per vertex
        for &v in dag.vertices() {
            let vpos = dag.position_of(v).unwrap();
            let count_open = |positions: &[usize]| {
                positions
                    .iter()
                    .filter(|&&epos| self.f[epos] > 0 && self.counts[epos] == 0)
                    .count() as i64
            };
            if count_open(dag.out_positions(vpos)) > remaining
                || count_open(dag.in_positions(vpos)) > remaining
            {
                return false;
            }
        }
        let lower: BTreeMap<EdgeId, i64> = dag
            .edges()
            .iter()
            .enumerate()
            .map(|(epos, e)| (e.id, i64::from(self.f[epos] > 0 && self.counts[epos] == 0)))
            .collect();
        let upper: BTreeMap<EdgeId, Capacity> = dag
            .edges()
            .iter()
            .enumerate()
            .map(|(epos, e)| (e.id, Capacity::Finite(self.f[epos] - self.counts[epos])))
            .collect();
        let problem = match BoundedFlowProblem::new(dag, &lower, &upper, None) {
            Ok(p) => p,
            Err(_) => return false,
        };
        match solve_min_flow(&problem) {
            Ok(flow) => flow_value(dag, &flow) <= remaining,
            Err(_) => false,
        }
    }

    fn solve_weights(&self, nodes: &mut u64) -> WeightOutcome {
        let m = self.f.len();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (ridx, route) in self.routes.iter().enumerate() {
            for &epos in route {
                members[epos].push(ridx);
            }
        }
        let weights: Vec<Option<i64>> = vec![None; self.k];
        self.assign_weights(&members, weights, nodes)
    }

    fn assign_weights(
        &self,
        members: &[Vec<usize>],
        mut weights: Vec<Option<i64>>,
        nodes: &mut u64,
    ) -> WeightOutcome {
        *nodes += 1;
        if *nodes > self.max_nodes {
            return WeightOutcome::OutOfBudget;
        }
        // propagate forced weights to a fixpoint
        loop {
            let mut progress = false;
            for (epos, mems) in members.iter().enumerate() {
                if self.f[epos] == 0 {
                    continue;
                }
                let mut known: i64 = 0;
                let mut unknown = Vec::new();
                for &ridx in mems {
                    match weights[ridx] {
                        Some(w) => known += w,
                        None => unknown.push(ridx),
                    }
                }
                let residual = self.f[epos] - known;
                if residual < unknown.len() as i64 {
                    return WeightOutcome::NoSolution; // every weight is >= 1
                }
                match unknown.len() {
                    0 => {
                        if residual != 0 {
                            return WeightOutcome::NoSolution;
                        }
                    }
                    1 => {
                        weights[unknown[0]] = Some(residual);
                        progress = true;
                    }
                    _ => {}
                }
            }
            if !progress {
                break;
            }
        }
        let first_unknown = weights.iter().position(|w| w.is_none());
        let Some(ridx) = first_unknown else {
            return WeightOutcome::Solved(weights.into_iter().map(Option::unwrap).collect());
        };
        // enumerate the smallest undetermined weight within its slack bounds
        let mut upper = i64::MAX;
        for (epos, mems) in members.iter().enumerate() {
            if !mems.contains(&ridx) {
                continue;
            }
            let known: i64 = mems.iter().filter_map(|&r| weights[r]).sum();
            let others = mems.iter().filter(|&&r| r != ridx && weights[r].is_none()).count() as i64;
            upper = upper.min(self.f[epos] - known - others);
        }
        if upper < 1 {
            return WeightOutcome::NoSolution;
        }
        for w in 1..=upper {
            let mut candidate = weights.clone();
            candidate[ridx] = Some(w);
            match self.assign_weights(members, candidate, nodes) {
                WeightOutcome::NoSolution => continue,
                other => return other,
            }
        }
        WeightOutcome::NoSolution
    }
}

enum WeightOutcome {
    Solved(Vec<i64>),
    NoSolution,
    OutOfBudget,
}

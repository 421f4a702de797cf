//! Min-value integral flows under per-edge lower/upper bounds.
//!
//! The width, the flow-width and the parity cover flow are all derived from
//! one solver: start from a feasible flow (a supplied witness, or one built by
//! a circulation-with-lower-bounds transformation) and cancel it with
//! shortest augmenting paths from the sink to the source until no decrementing
//! path remains. Augmenting paths are discovered scanning incident edges in
//! ascending edge-id order, which makes the returned flow deterministic.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Flow, FlowNetwork, MultiDag};

/// Per-edge upper bound; `Unbounded` admits arbitrarily large flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(i64),
    Unbounded,
}

/// A min-value flow instance: per-edge integer lower/upper bounds on a DAG,
/// with an optional feasible witness flow.
#[derive(Debug, Clone)]
pub struct BoundedFlowProblem<'a> {
    graph: &'a MultiDag,
    lower: Vec<i64>,    // by edge position
    upper: Vec<Capacity>,
    witness: Option<Vec<i64>>,
}

impl<'a> BoundedFlowProblem<'a> {
    pub fn new(
        graph: &'a MultiDag,
        lower: &BTreeMap<EdgeId, i64>,
        upper: &BTreeMap<EdgeId, Capacity>,
        witness: Option<&Flow>,
    ) -> Result<Self> {
        let m = graph.edge_count();
        if lower.len() != m {
            let missing = graph
                .edges()
                .iter()
                .find(|e| !lower.contains_key(&e.id))
                .map(|e| e.id)
                .or_else(|| lower.keys().find(|e| graph.edge(**e).is_none()).copied())
                .unwrap();
            return Err(Error::UnknownEdge(missing));
        }
        if upper.len() != m {
            let missing = graph
                .edges()
                .iter()
                .find(|e| !upper.contains_key(&e.id))
                .map(|e| e.id)
                .or_else(|| upper.keys().find(|e| graph.edge(**e).is_none()).copied())
                .unwrap();
            return Err(Error::UnknownEdge(missing));
        }
        let mut lo = Vec::with_capacity(m);
        let mut hi = Vec::with_capacity(m);
        for e in graph.edges() {
            let l = *lower.get(&e.id).ok_or(Error::UnknownEdge(e.id))?;
            let u = *upper.get(&e.id).ok_or(Error::UnknownEdge(e.id))?;
            if l < 0 {
                return Err(Error::NegativeFlow(e.id));
            }
            if let Capacity::Finite(c) = u {
                if c < l {
                    // contradictory bounds admit no flow at all
                    return Err(Error::Infeasible);
                }
            }
            lo.push(l);
            hi.push(u);
        }
        let witness = match witness {
            None => None,
            Some(w) => Some(Self::check_witness(graph, &lo, &hi, w)?),
        };
        Ok(BoundedFlowProblem { graph, lower: lo, upper: hi, witness })
    }

    fn check_witness(graph: &MultiDag, lo: &[i64], hi: &[Capacity], w: &Flow) -> Result<Vec<i64>> {
        let mut vals = Vec::with_capacity(graph.edge_count());
        for (pos, e) in graph.edges().iter().enumerate() {
            let v = w
                .value_on(e.id)
                .ok_or_else(|| Error::InvalidWitness(format!("no value on edge {}", e.id)))?;
            if v < lo[pos] {
                return Err(Error::InvalidWitness(format!("edge {} below lower bound", e.id)));
            }
            if let Capacity::Finite(c) = hi[pos] {
                if v > c {
                    return Err(Error::InvalidWitness(format!("edge {} above upper bound", e.id)));
                }
            }
            vals.push(v);
        }
        for &v in graph.vertices() {
            if v == graph.source() || v == graph.sink() {
                continue;
            }
            let inflow: i64 = graph
                .in_edges(v)
                .map(|e| vals[graph.edge_position(e.id).unwrap()])
                .sum();
            let outflow: i64 = graph
                .out_edges(v)
                .map(|e| vals[graph.edge_position(e.id).unwrap()])
                .sum();
            if inflow != outflow {
                return Err(Error::InvalidWitness(format!("not conserving at vertex {v}")));
            }
        }
        Ok(vals)
    }

    pub fn graph(&self) -> &MultiDag {
        self.graph
    }
}

/// Returns the integral flow of minimum value within the problem bounds.
pub fn solve_min_flow(problem: &BoundedFlowProblem) -> Result<Flow> {
    let dag = problem.graph;
    let mut g = match &problem.witness {
        Some(w) => w.clone(),
        None => bootstrap_feasible(dag, &problem.lower, &problem.upper)?,
    };
    minimize(dag, &problem.lower, &problem.upper, &mut g)?;
    Ok(Flow::from_pairs(dag.edges().iter().enumerate().map(|(pos, e)| (e.id, g[pos]))))
}

/// Cancels the feasible flow `g` with sink-to-source augmenting paths until
/// its value is minimum. Afterwards no source-sink path has slack below the
/// lower bound on every edge.
fn minimize(dag: &MultiDag, lower: &[i64], upper: &[Capacity], g: &mut [i64]) -> Result<()> {
    let n = dag.vertex_count();
    let spos = dag.position_of_source();
    let tpos = dag.position_of_sink();

    // incident edge positions merged ascending by edge id; (position, is_out)
    let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (vpos, list) in incident.iter_mut().enumerate() {
        let outs = dag.out_positions(vpos);
        let ins = dag.in_positions(vpos);
        let (mut i, mut j) = (0, 0);
        while i < outs.len() || j < ins.len() {
            let take_out = match (outs.get(i), ins.get(j)) {
                (Some(&o), Some(&x)) => o < x,
                (Some(_), None) => true,
                _ => false,
            };
            if take_out {
                list.push((outs[i], true));
                i += 1;
            } else {
                list.push((ins[j], false));
                j += 1;
            }
        }
    }

    loop {
        // BFS from the sink over residual moves:
        //  - against an in-edge with g > lower (decrease)
        //  - along an out-edge with g < upper (increase)
        let mut parent: Vec<Option<(usize, bool, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[tpos] = true;
        let mut queue = VecDeque::from([tpos]);
        'bfs: while let Some(vpos) = queue.pop_front() {
            for &(epos, is_out) in &incident[vpos] {
                let e = &dag.edges()[epos];
                let (next, ok) = if is_out {
                    // moving to the head increases flow on e
                    let room = match upper[epos] {
                        Capacity::Finite(c) => g[epos] < c,
                        Capacity::Unbounded => true,
                    };
                    (dag.position_of(e.head).unwrap(), room)
                } else {
                    // moving to the tail decreases flow on e
                    (dag.position_of(e.tail).unwrap(), g[epos] > lower[epos])
                };
                if !ok || seen[next] {
                    continue;
                }
                seen[next] = true;
                parent[next] = Some((epos, is_out, vpos));
                if next == spos {
                    break 'bfs;
                }
                queue.push_back(next);
            }
        }
        if !seen[spos] {
            return Ok(());
        }

        // collect the move sequence from the source back to the sink
        let mut moves = Vec::new();
        let mut cur = spos;
        while cur != tpos {
            let (epos, is_out, prev) = parent[cur].unwrap();
            moves.push((epos, is_out));
            cur = prev;
        }
        let mut delta = i64::MAX;
        for &(epos, is_out) in &moves {
            let slack = if is_out {
                match upper[epos] {
                    Capacity::Finite(c) => c - g[epos],
                    Capacity::Unbounded => i64::MAX,
                }
            } else {
                g[epos] - lower[epos]
            };
            delta = delta.min(slack);
        }
        debug_assert!(delta > 0 && delta < i64::MAX);
        for &(epos, is_out) in &moves {
            if is_out {
                g[epos] = g[epos].checked_add(delta).ok_or(Error::IntegerOverflow)?;
            } else {
                g[epos] -= delta;
            }
        }
    }
}

/// Builds some feasible flow for the bounds via the standard circulation
/// transformation, or reports infeasibility.
fn bootstrap_feasible(dag: &MultiDag, lower: &[i64], upper: &[Capacity]) -> Result<Vec<i64>> {
    const INF: i64 = i64::MAX / 4;
    let n = dag.vertex_count();
    let (s_node, t_node) = (n, n + 1);
    let mut net = ResidualNet::new(n + 2);

    // graph edges offer the slack above their lower bound
    let mut edge_arcs = Vec::with_capacity(dag.edge_count());
    for (pos, e) in dag.edges().iter().enumerate() {
        let cap = match upper[pos] {
            Capacity::Finite(c) => c - lower[pos],
            Capacity::Unbounded => INF,
        };
        edge_arcs.push(net.add_arc(
            dag.position_of(e.tail).unwrap(),
            dag.position_of(e.head).unwrap(),
            cap,
        ));
    }
    // close the circulation
    net.add_arc(dag.position_of_sink(), dag.position_of_source(), INF);

    let mut demand_total: i64 = 0;
    for vpos in 0..n {
        let mut excess: i64 = 0;
        for &epos in dag.in_positions(vpos) {
            excess = excess.checked_add(lower[epos]).ok_or(Error::IntegerOverflow)?;
        }
        for &epos in dag.out_positions(vpos) {
            excess = excess.checked_sub(lower[epos]).ok_or(Error::IntegerOverflow)?;
        }
        if excess > 0 {
            net.add_arc(s_node, vpos, excess);
            demand_total = demand_total.checked_add(excess).ok_or(Error::IntegerOverflow)?;
        } else if excess < 0 {
            net.add_arc(vpos, t_node, -excess);
        }
    }

    if net.max_flow(s_node, t_node) != demand_total {
        return Err(Error::Infeasible);
    }
    Ok(edge_arcs
        .iter()
        .enumerate()
        .map(|(pos, &arc)| lower[pos] + net.flow_on(arc))
        .collect())
}

/// Small deterministic max-flow used by the feasibility bootstrap.
struct ResidualNet {
    heads: Vec<usize>,
    caps: Vec<i64>,
    orig: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl ResidualNet {
    fn new(n: usize) -> Self {
        ResidualNet { heads: Vec::new(), caps: Vec::new(), orig: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: i64) -> usize {
        let idx = self.heads.len();
        self.heads.push(v);
        self.caps.push(cap);
        self.orig.push(cap);
        self.adj[u].push(idx);
        self.heads.push(u);
        self.caps.push(0);
        self.orig.push(0);
        self.adj[v].push(idx + 1);
        idx
    }

    fn flow_on(&self, arc: usize) -> i64 {
        self.orig[arc] - self.caps[arc]
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0i64;
        loop {
            let mut parent: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &arc in &self.adj[u] {
                    let v = self.heads[arc];
                    if seen[v] || self.caps[arc] == 0 {
                        continue;
                    }
                    seen[v] = true;
                    parent[v] = Some(arc);
                    if v == t {
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
            if !seen[t] {
                return total;
            }
            let mut bottleneck = i64::MAX;
            let mut cur = t;
            while cur != s {
                let arc = parent[cur].unwrap();
                bottleneck = bottleneck.min(self.caps[arc]);
                cur = self.heads[arc ^ 1];
            }
            let mut cur = t;
            while cur != s {
                let arc = parent[cur].unwrap();
                self.caps[arc] -= bottleneck;
                self.caps[arc ^ 1] += bottleneck;
                cur = self.heads[arc ^ 1];
            }
            total += bottleneck;
        }
    }
}

impl MultiDag {
    pub(crate) fn position_of_source(&self) -> usize {
        self.position_of(self.source()).unwrap()
    }

    pub(crate) fn position_of_sink(&self) -> usize {
        self.position_of(self.sink()).unwrap()
    }
}

/// width(G): the minimum number of source-sink paths covering every edge,
/// together with a covering flow of that value.
pub fn width(dag: &MultiDag) -> Result<(i64, Flow)> {
    let lower: BTreeMap<EdgeId, i64> = dag.edges().iter().map(|e| (e.id, 1)).collect();
    let upper: BTreeMap<EdgeId, Capacity> =
        dag.edges().iter().map(|e| (e.id, Capacity::Unbounded)).collect();
    let problem = BoundedFlowProblem::new(dag, &lower, &upper, None)?;
    let g = solve_min_flow(&problem)?;
    let value = dag.out_edges(dag.source()).map(|e| g.value_on(e.id).unwrap()).sum();
    Ok((value, g))
}

/// fwidth(G, f): the minimum number of source-sink paths covering every
/// positive-flow edge while using each edge e at most f(e) times. The witness
/// is a minimal flow of that value.
pub fn flow_width(net: &FlowNetwork) -> Result<(i64, Flow)> {
    if net.value() == 0 {
        return Err(Error::EmptyFlow);
    }
    let dag = net.dag();
    let lower: BTreeMap<EdgeId, i64> =
        dag.edges().iter().map(|e| (e.id, i64::from(net.flow_of(e.id) > 0))).collect();
    let upper: BTreeMap<EdgeId, Capacity> =
        dag.edges().iter().map(|e| (e.id, Capacity::Finite(net.flow_of(e.id)))).collect();
    let problem = BoundedFlowProblem::new(dag, &lower, &upper, Some(net.flow()))?;
    let g = solve_min_flow(&problem)?;
    let value = dag.out_edges(dag.source()).map(|e| g.value_on(e.id).unwrap()).sum();
    Ok((value, g))
}

/// width(G|_f): the width of the flow-subgraph, computed without
/// materializing the subgraph (zero-flow edges are pinned to zero).
pub fn support_width(net: &FlowNetwork) -> Result<(i64, Flow)> {
    if net.value() == 0 {
        return Err(Error::EmptyFlow);
    }
    let dag = net.dag();
    let lower: BTreeMap<EdgeId, i64> =
        dag.edges().iter().map(|e| (e.id, i64::from(net.flow_of(e.id) > 0))).collect();
    let upper: BTreeMap<EdgeId, Capacity> = dag
        .edges()
        .iter()
        .map(|e| {
            let cap = if net.flow_of(e.id) > 0 { Capacity::Unbounded } else { Capacity::Finite(0) };
            (e.id, cap)
        })
        .collect();
    let problem = BoundedFlowProblem::new(dag, &lower, &upper, Some(net.flow()))?;
    let g = solve_min_flow(&problem)?;
    let value = dag.out_edges(dag.source()).map(|e| g.value_on(e.id).unwrap()).sum();
    Ok((value, g))
}

/// The min-value flow g with 0 <= g <= f that is positive on every edge where
/// f is odd. The difference f - g is even on every edge; a violation would be
/// a solver bug and is reported as `ParityAssertionFailed`.
pub fn parity_cover_flow(net: &FlowNetwork) -> Result<Flow> {
    if net.value() == 0 {
        return Err(Error::EmptyFlow);
    }
    let dag = net.dag();
    let lower: BTreeMap<EdgeId, i64> =
        dag.edges().iter().map(|e| (e.id, net.flow_of(e.id) % 2)).collect();
    let upper: BTreeMap<EdgeId, Capacity> =
        dag.edges().iter().map(|e| (e.id, Capacity::Finite(net.flow_of(e.id)))).collect();
    let problem = BoundedFlowProblem::new(dag, &lower, &upper, Some(net.flow()))?;
    let g = solve_min_flow(&problem)?;
    for e in dag.edges() {
        if (net.flow_of(e.id) - g.value_on(e.id).unwrap()) % 2 != 0 {
            return Err(Error::ParityAssertionFailed);
        }
    }
    Ok(g)
}

/// Decomposes the network's flow into exactly val(f) unit paths; each edge e
/// appears in exactly f(e) of them. At every vertex the positive-residual
/// edge of smallest id is followed, so the output is deterministic.
pub fn extract_unit_paths(net: &FlowNetwork) -> Vec<Vec<EdgeId>> {
    let dag = net.dag();
    let mut residual: Vec<i64> = dag.edges().iter().map(|e| net.flow_of(e.id)).collect();
    let value = net.value();
    let mut paths = Vec::with_capacity(usize::try_from(value).unwrap_or(0));
    for _ in 0..value {
        let mut path = Vec::new();
        let mut vpos = dag.position_of_source();
        let tpos = dag.position_of_sink();
        while vpos != tpos {
            let &epos = dag
                .out_positions(vpos)
                .iter()
                .find(|&&epos| residual[epos] > 0)
                .expect("conservation guarantees an onward edge");
            residual[epos] -= 1;
            path.push(dag.edges()[epos].id);
            vpos = dag.position_of(dag.edges()[epos].head).unwrap();
        }
        paths.push(path);
    }
    debug_assert!(residual.iter().all(|&r| r == 0));
    paths
}

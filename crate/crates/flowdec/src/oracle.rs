//! Brute-force reference implementations for differential testing.
//!
//! Everything here is exponential and meant for graphs with at most a dozen
//! edges. These routines deliberately avoid the solver machinery they are
//! used to check: covers are found by enumerating path subsets, minimal flows
//! by enumerating conservation-consistent edge values, and the width-stability
//! definition by enumerating path-closed edge supports.

use std::collections::BTreeMap;

use crate::graph::{EdgeId, Flow, FlowNetwork, MultiDag};

/// All source-sink paths as edge-id sequences, in lexicographic edge-id order.
pub fn enumerate_st_paths(dag: &MultiDag) -> Vec<Vec<EdgeId>> {
    let mut paths = Vec::new();
    let mut stack = Vec::new();
    fn go(dag: &MultiDag, v: usize, stack: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if v == dag.position_of_sink() {
            out.push(stack.clone());
            return;
        }
        for &epos in dag.out_positions(v) {
            let e = &dag.edges()[epos];
            stack.push(e.id);
            go(dag, dag.position_of(e.head).unwrap(), stack, out);
            stack.pop();
        }
    }
    go(dag, dag.position_of_source(), &mut stack, &mut paths);
    paths
}

/// width(G) by enumerating path subsets of growing size until one covers
/// every edge.
pub fn brute_width(dag: &MultiDag) -> i64 {
    let paths = enumerate_st_paths(dag);
    let masks: Vec<u64> = paths
        .iter()
        .map(|p| {
            p.iter().fold(0u64, |acc, &e| acc | 1 << dag.edge_position(e).unwrap())
        })
        .collect();
    let full: u64 = (1 << dag.edge_count()) - 1;
    for r in 1..=paths.len() {
        if subset_covers(&masks, full, 0, r, 0) {
            return r as i64;
        }
    }
    unreachable!("every valid graph admits a path cover");
}

fn subset_covers(masks: &[u64], target: u64, covered: u64, left: usize, from: usize) -> bool {
    if covered & target == target {
        return true;
    }
    if left == 0 {
        return false;
    }
    for i in from..masks.len() {
        if subset_covers(masks, target, covered | masks[i], left - 1, i + 1) {
            return true;
        }
    }
    false
}

/// fwidth(G, f) by branch-and-bound over path multisets: every positive-flow
/// edge covered at least once, every edge used at most f(e) times.
pub fn brute_flow_width(net: &FlowNetwork) -> Option<i64> {
    let dag = net.dag();
    let paths = enumerate_st_paths(dag);
    let m = dag.edge_count();
    let caps: Vec<i64> = dag.edges().iter().map(|e| net.flow_of(e.id)).collect();
    let path_positions: Vec<Vec<usize>> = paths
        .iter()
        .map(|p| p.iter().map(|&e| dag.edge_position(e).unwrap()).collect())
        .collect();

    struct Search<'s> {
        paths: &'s [Vec<usize>],
        caps: &'s [i64],
        counts: Vec<i64>,
        best: Option<i64>,
        m: usize,
    }
    impl Search<'_> {
        fn uncovered(&self) -> usize {
            (0..self.m).filter(|&e| self.caps[e] > 0 && self.counts[e] == 0).count()
        }
        fn go(&mut self, idx: usize, used: i64) {
            if let Some(b) = self.best {
                if used >= b {
                    return;
                }
            }
            if self.uncovered() == 0 {
                self.best = Some(used);
                return;
            }
            if idx == self.paths.len() {
                return;
            }
            let max_copies = self.paths[idx]
                .iter()
                .map(|&e| self.caps[e] - self.counts[e])
                .min()
                .unwrap_or(0)
                .max(0);
            // more copies first so the bound tightens early
            for copies in (0..=max_copies.min(self.m as i64)).rev() {
                for &e in &self.paths[idx] {
                    self.counts[e] += copies;
                }
                self.go(idx + 1, used + copies);
                for &e in &self.paths[idx] {
                    self.counts[e] -= copies;
                }
            }
        }
    }
    let mut search =
        Search { paths: &path_positions, caps: &caps, counts: vec![0; m], best: None, m };
    search.go(0, 0);
    search.best
}

/// Visits every minimal flow on the graph: non-negative, conserving, and with
/// no source-sink path carrying weight 2. Minimal flows satisfy
/// `val(f) <= m`, so enumerating per-edge values up to m is complete.
pub fn for_each_minimal_flow<F: FnMut(i64, &Flow)>(dag: &MultiDag, mut visit: F) {
    let order = dag.topo_positions();
    let m = dag.edge_count() as i64;
    let mut values = vec![0i64; dag.edge_count()];

    fn distribute<F: FnMut(i64, &Flow)>(
        dag: &MultiDag,
        order: &[usize],
        oidx: usize,
        values: &mut Vec<i64>,
        cap_total: i64,
        visit: &mut F,
    ) {
        if oidx == order.len() {
            if is_minimal(dag, values) {
                let flow = Flow::from_pairs(
                    dag.edges().iter().enumerate().map(|(pos, e)| (e.id, values[pos])),
                );
                let val = dag
                    .out_positions(dag.position_of_source())
                    .iter()
                    .map(|&epos| values[epos])
                    .sum();
                visit(val, &flow);
            }
            return;
        }
        let vpos = order[oidx];
        let need: i64 = if vpos == dag.position_of_source() {
            -1 // free total, bounded by cap_total
        } else {
            dag.in_positions(vpos).iter().map(|&e| values[e]).sum()
        };
        let outs: Vec<usize> = dag.out_positions(vpos).to_vec();
        if outs.is_empty() {
            distribute(dag, order, oidx + 1, values, cap_total, visit);
            return;
        }
        fn split<F: FnMut(i64, &Flow)>(
            dag: &MultiDag,
            order: &[usize],
            oidx: usize,
            outs: &[usize],
            k: usize,
            remaining: i64,
            exact: bool,
            values: &mut Vec<i64>,
            cap_total: i64,
            visit: &mut F,
        ) {
            if k == outs.len() {
                if !exact || remaining == 0 {
                    distribute(dag, order, oidx + 1, values, cap_total, visit);
                }
                return;
            }
            let last = k + 1 == outs.len();
            for v in 0..=remaining {
                if exact && last && v != remaining {
                    continue;
                }
                values[outs[k]] = v;
                split(dag, order, oidx, outs, k + 1, remaining - v, exact, values, cap_total, visit);
            }
            values[outs[k]] = 0;
        }
        if need < 0 {
            split(dag, order, oidx, &outs, 0, cap_total, false, values, cap_total, visit);
        } else {
            split(dag, order, oidx, &outs, 0, need, true, values, cap_total, visit);
        }
    }

    fn is_minimal(dag: &MultiDag, values: &[i64]) -> bool {
        // max-bottleneck path weight must stay below 2
        let order = dag.topo_positions();
        let mut best = vec![0i64; dag.vertex_count()];
        best[dag.position_of_source()] = i64::MAX;
        for &vpos in &order {
            for &epos in dag.out_positions(vpos) {
                let hpos = dag.position_of(dag.edges()[epos].head).unwrap();
                let cand = best[vpos].min(values[epos]);
                if cand > best[hpos] {
                    best[hpos] = cand;
                }
            }
        }
        best[dag.position_of_sink()] <= 1
    }

    distribute(dag, &order, 0, &mut values, m, &mut visit);
}

/// max val(f) over minimal flows; brute-force counterpart of parallel-width.
pub fn max_minimal_flow_value(dag: &MultiDag) -> i64 {
    let mut best = 0;
    for_each_minimal_flow(dag, |val, _| best = best.max(val));
    best
}

/// min val(f) over everywhere-positive minimal flows; brute-force width.
pub fn min_positive_minimal_flow_value(dag: &MultiDag) -> Option<i64> {
    let mut best: Option<i64> = None;
    for_each_minimal_flow(dag, |val, flow| {
        if flow.iter().all(|(_, v)| v > 0) && best.map_or(true, |b| val < b) {
            best = Some(val);
        }
    });
    best
}

/// Definitional width-stability check. The width of a flow-subgraph depends
/// only on the support, so the definition quantifies over pairs of path-closed
/// edge sets: the graph is width-stable iff width(G[S]) <= width(G[T]) for all
/// closed supports S inside T. Requires m <= 25.
pub fn is_width_stable_definitional(dag: &MultiDag) -> bool {
    let m = dag.edge_count();
    assert!(m <= 25, "support enumeration needs a small graph");
    let supports = path_closed_supports(dag);
    let widths: Vec<i64> = supports.iter().map(|&s| support_width(dag, s)).collect();
    for (i, &s) in supports.iter().enumerate() {
        for (j, &t) in supports.iter().enumerate() {
            if s & t == s && widths[i] > widths[j] {
                return false;
            }
        }
    }
    true
}

/// All non-empty edge subsets in which every edge lies on a source-sink path
/// using only subset edges.
pub fn path_closed_supports(dag: &MultiDag) -> Vec<u32> {
    let m = dag.edge_count();
    let mut out = Vec::new();
    'next: for mask in 1u32..(1 << m) {
        let fwd = reach_in_mask(dag, mask, false);
        let bwd = reach_in_mask(dag, mask, true);
        for epos in 0..m {
            if mask & (1 << epos) != 0 {
                let e = &dag.edges()[epos];
                if !fwd[dag.position_of(e.tail).unwrap()] || !bwd[dag.position_of(e.head).unwrap()]
                {
                    continue 'next;
                }
            }
        }
        out.push(mask);
    }
    out
}

fn reach_in_mask(dag: &MultiDag, mask: u32, backward: bool) -> Vec<bool> {
    let start = if backward { dag.position_of_sink() } else { dag.position_of_source() };
    let mut seen = vec![false; dag.vertex_count()];
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(vpos) = queue.pop_front() {
        let list = if backward { dag.in_positions(vpos) } else { dag.out_positions(vpos) };
        for &epos in list {
            if mask & (1 << epos) == 0 {
                continue;
            }
            let e = &dag.edges()[epos];
            let next = if backward { e.tail } else { e.head };
            let npos = dag.position_of(next).unwrap();
            if !seen[npos] {
                seen[npos] = true;
                queue.push_back(npos);
            }
        }
    }
    seen
}

/// Width of the subgraph on a closed support, via a bounded min-flow.
fn support_width(dag: &MultiDag, mask: u32) -> i64 {
    use crate::minflow::{solve_min_flow, BoundedFlowProblem, Capacity};
    let lower: BTreeMap<EdgeId, i64> = dag
        .edges()
        .iter()
        .enumerate()
        .map(|(pos, e)| (e.id, i64::from(mask & (1 << pos) != 0)))
        .collect();
    let upper: BTreeMap<EdgeId, Capacity> = dag
        .edges()
        .iter()
        .enumerate()
        .map(|(pos, e)| {
            let cap = if mask & (1 << pos) != 0 { Capacity::Unbounded } else { Capacity::Finite(0) };
            (e.id, cap)
        })
        .collect();
    let problem = BoundedFlowProblem::new(dag, &lower, &upper, None)
        .expect("closed support admits a covering flow");
    let flow = solve_min_flow(&problem).expect("closed support is feasible");
    dag.out_edges(dag.source()).map(|e| flow.value_on(e.id).unwrap()).sum()
}

//! Structural parameters and detectors: width-stability via CH2 minor
//! detection, parallel-width (exact within a search budget, bounds beyond),
//! single d-minor operations, and the CH_k / P_c reference graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Flow, MultiDag, VertexId};
use crate::minflow::width;

/// Node budget for the exponential searches in this module. Overridable via
/// the `FLOWDEC_PW_BUDGET` environment variable at the CLI level.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 1_000_000 }
    }
}

/// CH_k: four vertices s=0, u=1, v=2, t=3 with k parallel (s,u) edges,
/// k parallel (v,t) edges, and the three edges (s,v), (u,v), (u,t).
/// Edge ids: 0..k are (s,u), k..2k are (v,t), then (s,v), (u,v), (u,t).
pub fn make_chk(k: usize) -> Result<MultiDag> {
    if k == 0 {
        return Err(Error::InvalidParameters("CH_k needs k >= 1".into()));
    }
    let mut arcs = Vec::with_capacity(2 * k + 3);
    arcs.extend(std::iter::repeat((0, 1)).take(k));
    arcs.extend(std::iter::repeat((2, 3)).take(k));
    arcs.push((0, 2));
    arcs.push((1, 2));
    arcs.push((1, 3));
    MultiDag::new(4, &arcs)
}

/// P_c: two vertices joined by c parallel edges.
pub fn make_pc(c: usize) -> Result<MultiDag> {
    if c == 0 {
        return Err(Error::InvalidParameters("P_c needs c >= 1".into()));
    }
    MultiDag::new(2, &vec![(0, 1); c])
}

/// Contracts every edge whose head has in-degree 1 or whose tail has
/// out-degree 1, to a fixpoint. Flows and path covers correspond bijectively
/// across these contractions, so width-stability is unchanged; in the result
/// every internal vertex has in- and out-degree at least 2. Surviving vertex
/// ids are original vertex ids.
fn unit_degree_closure(dag: &MultiDag) -> MultiDag {
    let mut current = dag.clone();
    loop {
        if current.edge_count() == 1 {
            return current;
        }
        let next_op = current.edges().iter().find_map(|e| {
            if current.in_degree(e.head) == 1 {
                Some(DMinorOp::ContractBackward(e.id))
            } else if current.out_degree(e.tail) == 1 {
                Some(DMinorOp::ContractForward(e.id))
            } else {
                None
            }
        });
        match next_op {
            Some(op) => {
                current = d_minor_step(&current, op).expect("closure contractions are legal")
            }
            None => return current,
        }
    }
}

/// Decides width-stability by searching for a CH2 pattern on the Y-to-V
/// closure of the graph: an internal pair (u, v) with u before v in
/// topological order, at least two s-u paths and two v-t paths, such that u
/// reaches v, s reaches v avoiding u, and u reaches t avoiding v.
///
/// Running on the closure is essential: on the raw graph two s-u paths may
/// share their final edge, in which case no CH2 minor exists and the pair
/// conditions overreport. After the closure every internal vertex has in- and
/// out-degree at least 2, so the two paths end in distinct edges. The first
/// qualifying pair (in topological order) is returned as a witness; its
/// vertices are original vertex ids surviving the contraction. A witness
/// means the graph is not width-stable.
pub fn is_width_stable(dag: &MultiDag) -> (bool, Option<(VertexId, VertexId)>) {
    let closed = unit_degree_closure(dag);
    let (ds, dt) = closed.capped_path_counts(2);
    let order = closed.topological_order();
    let internal: Vec<VertexId> = order
        .into_iter()
        .filter(|&v| v != closed.source() && v != closed.sink())
        .collect();
    for (i, &u) in internal.iter().enumerate() {
        if ds[&u] < 2 {
            continue;
        }
        for &v in &internal[i + 1..] {
            if dt[&v] < 2 {
                continue;
            }
            let reaches = closed.reachable(u, v, None).unwrap()
                && closed.reachable(closed.source(), v, Some(u)).unwrap()
                && closed.reachable(u, closed.sink(), Some(v)).unwrap();
            if reaches {
                return (false, Some((u, v)));
            }
        }
    }
    (true, None)
}

/// Exact value or bounds for the parallel-width, with a minimal flow whose
/// value attains the lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelWidth {
    pub lower: i64,
    pub upper: i64,
    pub exact: bool,
    pub witness: Flow,
}

impl ParallelWidth {
    pub fn display_value(&self) -> String {
        if self.exact {
            format!("{}", self.lower)
        } else {
            format!("{}..{}", self.lower, self.upper)
        }
    }
}

/// pw(G): the size of the largest minimal cut-set, equivalently the largest
/// value of a minimal flow.
///
/// Minimal cuts are enumerated through their source sides: subsets A of
/// vertices containing s in which every member is reachable from s inside A.
/// The candidate cut is the set of edges leaving A; it is minimal exactly when
/// every cut edge's head still reaches t after removing the cut. The
/// enumeration is complete, so within budget the maximum is exact; beyond
/// budget the result degrades to bounds `[max(width, best found), m]`.
pub fn parallel_width(dag: &MultiDag, budget: &SearchBudget) -> ParallelWidth {
    let mut search = CutSearch::new(dag, budget.max_nodes, None);
    let complete = search.run();
    let (w, w_witness) = width(dag).expect("width of a valid graph");
    let (best_size, best_witness) = match search.best.take() {
        Some((size, cut_a)) => {
            let witness = search.cut_witness_flow(&cut_a);
            (size as i64, witness)
        }
        None => (0, w_witness.clone()),
    };
    let lower = if best_size >= w { best_size } else { w };
    let witness = if best_size >= w { best_witness } else { w_witness };
    if complete {
        ParallelWidth { lower, upper: lower, exact: true, witness }
    } else {
        ParallelWidth { lower, upper: dag.edge_count() as i64, exact: false, witness }
    }
}

/// Whether pw(G) >= c, i.e. whether the graph contains c fully parallel edges
/// as a d-minor: c cut edges whose tails hang off an out-tree from s and whose
/// heads feed an in-tree to t, disjoint from the cut edges themselves. Decided
/// by the minimal-cut enumeration with an early exit at size c.
pub fn has_pc_minor(dag: &MultiDag, c: usize, budget: &SearchBudget) -> Result<bool> {
    if c == 0 {
        return Err(Error::InvalidParameters("need c >= 1".into()));
    }
    let mut search = CutSearch::new(dag, budget.max_nodes, Some(c));
    let complete = search.run();
    if let Some((size, _)) = &search.best {
        if *size >= c {
            return Ok(true);
        }
    }
    if complete {
        Ok(false)
    } else {
        Err(Error::BudgetExceeded)
    }
}

/// Depth-first enumeration of source sides of minimal cuts.
struct CutSearch<'a> {
    dag: &'a MultiDag,
    internal: Vec<usize>, // vertex positions in topological order, s and t excluded
    in_set: Vec<bool>,    // by vertex position; true for s
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
    target: Option<usize>, // early exit threshold
    best: Option<(usize, Vec<bool>)>,
}

impl<'a> CutSearch<'a> {
    fn new(dag: &'a MultiDag, max_nodes: u64, target: Option<usize>) -> Self {
        let order = dag.topo_positions();
        let spos = dag.position_of_source();
        let tpos = dag.position_of_sink();
        let internal: Vec<usize> =
            order.into_iter().filter(|&p| p != spos && p != tpos).collect();
        let mut in_set = vec![false; dag.vertex_count()];
        in_set[spos] = true;
        CutSearch { dag, internal, in_set, nodes: 0, max_nodes, exhausted: false, target, best: None }
    }

    /// Returns true when the enumeration ran to completion.
    fn run(&mut self) -> bool {
        self.exhausted = true;
        self.descend(0);
        self.exhausted
    }

    fn descend(&mut self, depth: usize) {
        if let Some(t) = self.target {
            if matches!(self.best, Some((size, _)) if size >= t) {
                return;
            }
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = false;
            return;
        }
        if depth == self.internal.len() {
            self.evaluate_leaf();
            return;
        }
        let vpos = self.internal[depth];
        // include vpos only if it is fed from inside the current set
        let connected = self
            .dag
            .in_positions(vpos)
            .iter()
            .any(|&epos| {
                let tail = self.dag.edges()[epos].tail;
                self.in_set[self.dag.position_of(tail).unwrap()]
            });
        if connected {
            self.in_set[vpos] = true;
            self.descend(depth + 1);
            self.in_set[vpos] = false;
            if !self.exhausted {
                return;
            }
        }
        self.descend(depth + 1);
    }

    fn cut_edge_positions(&self) -> Vec<usize> {
        (0..self.dag.edge_count())
            .filter(|&epos| {
                let e = &self.dag.edges()[epos];
                self.in_set[self.dag.position_of(e.tail).unwrap()]
                    && !self.in_set[self.dag.position_of(e.head).unwrap()]
            })
            .collect()
    }

    fn evaluate_leaf(&mut self) {
        let cut = self.cut_edge_positions();
        if cut.is_empty() {
            return;
        }
        if let Some((size, _)) = &self.best {
            if self.target.is_none() && cut.len() <= *size {
                return; // cannot improve
            }
        }
        // minimality: every cut edge's head must still reach t in G - C
        let reach_t = self.reach_sink_avoiding(&cut);
        let minimal = cut.iter().all(|&epos| {
            let head = self.dag.edges()[epos].head;
            reach_t[self.dag.position_of(head).unwrap()]
        });
        if !minimal {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((size, _)) => cut.len() > *size,
        };
        if better {
            self.best = Some((cut.len(), self.in_set.clone()));
        }
    }

    fn reach_sink_avoiding(&self, cut: &[usize]) -> Vec<bool> {
        let dag = self.dag;
        let mut blocked = vec![false; dag.edge_count()];
        for &epos in cut {
            blocked[epos] = true;
        }
        let mut seen = vec![false; dag.vertex_count()];
        let tpos = dag.position_of_sink();
        seen[tpos] = true;
        let mut queue = VecDeque::from([tpos]);
        while let Some(vpos) = queue.pop_front() {
            for &epos in dag.in_positions(vpos) {
                if blocked[epos] {
                    continue;
                }
                let tpos2 = dag.position_of(dag.edges()[epos].tail).unwrap();
                if !seen[tpos2] {
                    seen[tpos2] = true;
                    queue.push_back(tpos2);
                }
            }
        }
        seen
    }

    /// Builds the minimal flow induced by a stored cut side: one unit per cut
    /// edge, routed from s inside the set and to t avoiding the cut.
    fn cut_witness_flow(&self, in_set: &[bool]) -> Flow {
        let dag = self.dag;
        let cut: Vec<usize> = (0..dag.edge_count())
            .filter(|&epos| {
                let e = &dag.edges()[epos];
                in_set[dag.position_of(e.tail).unwrap()]
                    && !in_set[dag.position_of(e.head).unwrap()]
            })
            .collect();

        // BFS tree from s over edges inside the set, lowest edge id first
        let spos = dag.position_of_source();
        let mut tree_in: Vec<Option<usize>> = vec![None; dag.vertex_count()];
        let mut seen = vec![false; dag.vertex_count()];
        seen[spos] = true;
        let mut queue = VecDeque::from([spos]);
        while let Some(vpos) = queue.pop_front() {
            for &epos in dag.out_positions(vpos) {
                let e = &dag.edges()[epos];
                let hpos = dag.position_of(e.head).unwrap();
                if !in_set[hpos] || seen[hpos] {
                    continue;
                }
                seen[hpos] = true;
                tree_in[hpos] = Some(epos);
                queue.push_back(hpos);
            }
        }
        // BFS tree toward t over edges outside the cut
        let mut blocked = vec![false; dag.edge_count()];
        for &epos in &cut {
            blocked[epos] = true;
        }
        let tpos = dag.position_of_sink();
        let mut tree_out: Vec<Option<usize>> = vec![None; dag.vertex_count()];
        let mut seen_t = vec![false; dag.vertex_count()];
        seen_t[tpos] = true;
        let mut queue = VecDeque::from([tpos]);
        while let Some(vpos) = queue.pop_front() {
            for &epos in dag.in_positions(vpos) {
                if blocked[epos] {
                    continue;
                }
                let tl = dag.position_of(dag.edges()[epos].tail).unwrap();
                if !seen_t[tl] {
                    seen_t[tl] = true;
                    tree_out[tl] = Some(epos);
                    queue.push_back(tl);
                }
            }
        }

        let mut units = vec![0i64; dag.edge_count()];
        for &epos in &cut {
            units[epos] += 1;
            let e = &dag.edges()[epos];
            let mut cur = dag.position_of(e.tail).unwrap();
            while let Some(tree_epos) = tree_in[cur] {
                units[tree_epos] += 1;
                cur = dag.position_of(dag.edges()[tree_epos].tail).unwrap();
            }
            let mut cur = dag.position_of(e.head).unwrap();
            while let Some(tree_epos) = tree_out[cur] {
                units[tree_epos] += 1;
                cur = dag.position_of(dag.edges()[tree_epos].head).unwrap();
            }
        }
        Flow::from_pairs(dag.edges().iter().enumerate().map(|(epos, e)| (e.id, units[epos])))
    }
}

/// A single directed-minor operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DMinorOp {
    /// Delete edge e; requires out-degree(tail) > 1 and in-degree(head) > 1.
    Delete(EdgeId),
    /// Contract edge (a,b) with in-degree(b) = 1, merging b into a.
    ContractBackward(EdgeId),
    /// Contract edge (a,b) with out-degree(a) = 1, merging a into b.
    ContractForward(EdgeId),
}

/// Applies one d-minor operation. Parallel edges are never merged; surviving
/// edges keep their ids.
pub fn d_minor_step(dag: &MultiDag, op: DMinorOp) -> Result<MultiDag> {
    let edge_of = |id: EdgeId| dag.edge(id).copied().ok_or(Error::UnknownEdge(id));
    match op {
        DMinorOp::Delete(id) => {
            let e = edge_of(id)?;
            if dag.out_degree(e.tail) <= 1 || dag.in_degree(e.head) <= 1 {
                return Err(Error::PreconditionViolated { op: "deletion", edge: id });
            }
            let edges: Vec<Edge> = dag.edges().iter().filter(|x| x.id != id).copied().collect();
            MultiDag::from_parts(dag.vertices().to_vec(), edges)
        }
        DMinorOp::ContractBackward(id) => {
            let e = edge_of(id)?;
            if dag.in_degree(e.head) != 1 {
                return Err(Error::PreconditionViolated { op: "backward contraction", edge: id });
            }
            if dag.edge_count() == 1 {
                return Err(Error::DegenerateContraction(id));
            }
            let edges: Vec<Edge> = dag
                .edges()
                .iter()
                .filter(|x| x.id != id)
                .map(|x| {
                    let mut out = *x;
                    if out.tail == e.head {
                        out.tail = e.tail;
                    }
                    out
                })
                .collect();
            let vertices: Vec<VertexId> =
                dag.vertices().iter().copied().filter(|&v| v != e.head).collect();
            MultiDag::from_parts(vertices, edges)
        }
        DMinorOp::ContractForward(id) => {
            let e = edge_of(id)?;
            if dag.out_degree(e.tail) != 1 {
                return Err(Error::PreconditionViolated { op: "forward contraction", edge: id });
            }
            if dag.edge_count() == 1 {
                return Err(Error::DegenerateContraction(id));
            }
            let edges: Vec<Edge> = dag
                .edges()
                .iter()
                .filter(|x| x.id != id)
                .map(|x| {
                    let mut out = *x;
                    if out.head == e.tail {
                        out.head = e.head;
                    }
                    out
                })
                .collect();
            let vertices: Vec<VertexId> =
                dag.vertices().iter().copied().filter(|&v| v != e.tail).collect();
            MultiDag::from_parts(vertices, edges)
        }
    }
}

/// Structural summary of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub width: i64,
    pub parallel_width: ParallelWidth,
    pub width_stable: bool,
    pub ch2_witness: Option<(VertexId, VertexId)>,
}

pub fn analyze_structure(dag: &MultiDag, budget: &SearchBudget) -> Result<StructureReport> {
    let (w, _) = width(dag)?;
    let pw = parallel_width(dag, budget);
    let (stable, witness) = is_width_stable(dag);
    debug_assert!(w <= pw.lower || !pw.exact);
    Ok(StructureReport { width: w, parallel_width: pw, width_stable: stable, ch2_witness: witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chk_and_pc_shapes() {
        let ch2 = make_chk(2).unwrap();
        assert_eq!(ch2.vertex_count(), 4);
        assert_eq!(ch2.edge_count(), 7);
        assert_eq!(ch2.topological_order(), vec![0, 1, 2, 3]);

        let ch1 = make_chk(1).unwrap();
        assert_eq!(ch1.edge_count(), 5);
        assert_eq!(width(&ch1).unwrap().0, 3);

        let p1 = make_pc(1).unwrap();
        assert_eq!(p1.edge_count(), 1);
        assert!(make_chk(0).is_err());
    }

    #[test]
    fn ch2_is_not_width_stable() {
        let (stable, witness) = is_width_stable(&make_chk(2).unwrap());
        assert!(!stable);
        assert_eq!(witness, Some((1, 2)));
    }

    #[test]
    fn narrow_graphs_are_width_stable() {
        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(is_width_stable(&path), (true, None));

        // two-gadget parallel chain has many paths but no CH2 pattern
        let chain = MultiDag::new(3, &[(0, 1), (0, 1), (1, 2), (1, 2)]).unwrap();
        assert_eq!(is_width_stable(&chain), (true, None));
    }

    #[test]
    fn parallel_width_of_reference_graphs() {
        let budget = SearchBudget::default();
        assert_eq!(parallel_width(&make_pc(4).unwrap(), &budget).lower, 4);

        let pw2 = parallel_width(&make_chk(2).unwrap(), &budget);
        assert!(pw2.exact);
        assert_eq!(pw2.lower, 4);

        let pw3 = parallel_width(&make_chk(3).unwrap(), &budget);
        assert_eq!(pw3.lower, 6);

        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(parallel_width(&path, &budget).lower, 1);
    }

    #[test]
    fn parallel_width_witness_is_a_minimal_flow_of_that_value() {
        use crate::graph::FlowNetwork;
        let dag = make_chk(2).unwrap();
        let pw = parallel_width(&dag, &SearchBudget::default());
        let net = FlowNetwork::new(dag, pw.witness.clone()).unwrap();
        assert_eq!(net.value(), pw.lower);
        // minimality: every s-t path has an edge of weight <= 1
        let w = |e: EdgeId| pw.witness.value_on(e).unwrap();
        for path in [
            vec![0, 5, 2],
            vec![0, 5, 3],
            vec![1, 5, 2],
            vec![1, 5, 3],
            vec![0, 6],
            vec![1, 6],
            vec![4, 2],
            vec![4, 3],
        ] {
            assert!(path.iter().any(|&e| w(e) <= 1), "path {path:?} carries 2");
        }
    }

    #[test]
    fn pc_minor_detection() {
        let budget = SearchBudget::default();
        assert!(has_pc_minor(&make_pc(3).unwrap(), 3, &budget).unwrap());
        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!has_pc_minor(&path, 2, &budget).unwrap());
        let ch2 = make_chk(2).unwrap();
        assert!(has_pc_minor(&ch2, 4, &budget).unwrap());
        assert!(!has_pc_minor(&ch2, 5, &budget).unwrap());
    }

    #[test]
    fn budget_exhaustion_degrades_to_bounds() {
        let dag = make_chk(3).unwrap();
        let pw = parallel_width(&dag, &SearchBudget { max_nodes: 2 });
        assert!(!pw.exact);
        assert!(pw.lower >= width(&dag).unwrap().0);
        assert_eq!(pw.upper, dag.edge_count() as i64);
        assert_eq!(has_pc_minor(&dag, 6, &SearchBudget { max_nodes: 2 }), Err(Error::BudgetExceeded));
    }

    #[test]
    fn d_minor_steps_follow_degree_preconditions() {
        let ch2 = make_chk(2).unwrap();
        // (u,v) is edge 5; deg+(u) = 2, deg-(v) = 2
        let smaller = d_minor_step(&ch2, DMinorOp::Delete(5)).unwrap();
        assert_eq!(smaller.edge_count(), 6);

        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        let contracted = d_minor_step(&path, DMinorOp::ContractBackward(0)).unwrap();
        assert_eq!(contracted.edge_count(), 1);
        assert_eq!(contracted.edge(1).unwrap().tail, 0);

        assert_eq!(
            d_minor_step(&path, DMinorOp::Delete(0)),
            Err(Error::PreconditionViolated { op: "deletion", edge: 0 })
        );
    }

    #[test]
    fn d_minor_preserves_validity() {
        let ch2 = make_chk(2).unwrap();
        for op in [DMinorOp::Delete(5), DMinorOp::ContractBackward(6)] {
            if let Ok(next) = d_minor_step(&ch2, op) {
                // from_parts re-validates: acyclic, unique source/sink, no dangling
                assert!(next.vertex_count() >= 2);
            }
        }
        let single = MultiDag::new(2, &[(0, 1)]).unwrap();
        assert_eq!(
            d_minor_step(&single, DMinorOp::ContractBackward(0)),
            Err(Error::DegenerateContraction(0))
        );
    }
}

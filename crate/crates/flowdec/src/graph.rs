//! Single-source/single-sink DAG multigraphs with integer flows.
//!
//! Vertex and edge ids are plain integers. Graphs built with [`MultiDag::new`]
//! use the dense ranges `0..n` and `0..m`; derived graphs (flow subgraphs,
//! minor steps) may carry sparse ids so that downstream results keep referring
//! to the original edges.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

/// An acyclic multigraph with a unique source and a unique sink in which
/// every vertex lies on some source-sink path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDag {
    vertices: Vec<VertexId>, // sorted ascending
    edges: Vec<Edge>,        // sorted by id ascending
    source: VertexId,
    sink: VertexId,
    // adjacency by vertex position; entries are edge positions, ascending by id
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl MultiDag {
    /// Builds a graph on vertices `0..vertex_count` with edge ids assigned by
    /// position in `arcs`.
    pub fn new(vertex_count: usize, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        let vertices: Vec<VertexId> = (0..vertex_count).collect();
        let edges: Vec<Edge> = arcs
            .iter()
            .enumerate()
            .map(|(id, &(tail, head))| Edge { id, tail, head })
            .collect();
        Self::from_parts(vertices, edges)
    }

    /// Builds a graph from explicit vertex and edge lists; ids may be sparse.
    pub fn from_parts(mut vertices: Vec<VertexId>, mut edges: Vec<Edge>) -> Result<Self> {
        if vertices.len() < 2 || edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        edges.sort_by_key(|e| e.id);
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateEdge(w[0].id));
            }
        }

        let pos_of = |v: VertexId| vertices.binary_search(&v).map_err(|_| Error::InvalidVertex(v));
        let n = vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (epos, e) in edges.iter().enumerate() {
            if e.tail == e.head {
                return Err(Error::CycleDetected);
            }
            out_adj[pos_of(e.tail)?].push(epos);
            in_adj[pos_of(e.head)?].push(epos);
        }

        // unique source and sink
        let mut source = None;
        let mut sink = None;
        for (vpos, &v) in vertices.iter().enumerate() {
            if in_adj[vpos].is_empty() {
                match source {
                    None => source = Some(v),
                    Some(prev) => return Err(Error::MultipleSources(prev, v)),
                }
            }
            if out_adj[vpos].is_empty() {
                match sink {
                    None => sink = Some(v),
                    Some(prev) => return Err(Error::MultipleSinks(prev, v)),
                }
            }
        }
        let (source, sink) = match (source, sink) {
            (Some(s), Some(t)) => (s, t),
            // with at least one edge and no degree-0 vertex the graph is cyclic
            _ => return Err(Error::CycleDetected),
        };

        let dag = MultiDag { vertices, edges, source, sink, out_adj, in_adj };

        // acyclicity via Kahn count
        if dag.topo_positions().len() != n {
            return Err(Error::CycleDetected);
        }

        // every vertex on some s-t path
        let fwd = dag.reach_positions_from(dag.position_of(source).unwrap(), false);
        let bwd = dag.reach_positions_from(dag.position_of(sink).unwrap(), true);
        for vpos in 0..n {
            if !(fwd[vpos] && bwd[vpos]) {
                return Err(Error::DanglingVertex(dag.vertices[vpos]));
            }
        }
        Ok(dag)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|pos| &self.edges[pos])
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Out-edges of `v` in ascending edge-id order.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        let list = self.position_of(v).map(|p| self.out_adj[p].as_slice()).unwrap_or(&[]);
        list.iter().map(move |&epos| &self.edges[epos])
    }

    /// In-edges of `v` in ascending edge-id order.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = &Edge> {
        let list = self.position_of(v).map(|p| self.in_adj[p].as_slice()).unwrap_or(&[]);
        list.iter().map(move |&epos| &self.edges[epos])
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.position_of(v).map(|p| self.out_adj[p].len()).unwrap_or(0)
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.position_of(v).map(|p| self.in_adj[p].len()).unwrap_or(0)
    }

    /// True when vertex ids are exactly `0..n` and edge ids exactly `0..m`.
    pub fn is_dense(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| i == v)
            && self.edges.iter().enumerate().all(|(i, e)| i == e.id)
    }

    pub(crate) fn position_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub(crate) fn edge_position(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub(crate) fn out_positions(&self, vpos: usize) -> &[usize] {
        &self.out_adj[vpos]
    }

    pub(crate) fn in_positions(&self, vpos: usize) -> &[usize] {
        &self.in_adj[vpos]
    }

    /// Topological order of vertex positions; ties broken by smallest vertex id.
    pub(crate) fn topo_positions(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut indegree: Vec<usize> = (0..n).map(|p| self.in_adj[p].len()).collect();
        let mut heap: BinaryHeap<Reverse<VertexId>> = (0..n)
            .filter(|&p| indegree[p] == 0)
            .map(|p| Reverse(self.vertices[p]))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = heap.pop() {
            let vpos = self.position_of(v).unwrap();
            order.push(vpos);
            for &epos in &self.out_adj[vpos] {
                let hpos = self.position_of(self.edges[epos].head).unwrap();
                indegree[hpos] -= 1;
                if indegree[hpos] == 0 {
                    heap.push(Reverse(self.vertices[hpos]));
                }
            }
        }
        order
    }

    /// Deterministic topological order of vertex ids, smallest id first on ties.
    pub fn topological_order(&self) -> Vec<VertexId> {
        self.topo_positions().iter().map(|&p| self.vertices[p]).collect()
    }

    fn reach_positions_from(&self, start: usize, backward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(vpos) = queue.pop_front() {
            let list = if backward { &self.in_adj[vpos] } else { &self.out_adj[vpos] };
            for &epos in list {
                let e = &self.edges[epos];
                let next = if backward { e.tail } else { e.head };
                let npos = self.position_of(next).unwrap();
                if !seen[npos] {
                    seen[npos] = true;
                    queue.push_back(npos);
                }
            }
        }
        seen
    }

    /// Whether a directed path from `from` to `to` exists that does not visit
    /// `avoiding`. `avoiding` must differ from both endpoints.
    pub fn reachable(&self, from: VertexId, to: VertexId, avoiding: Option<VertexId>) -> Result<bool> {
        let fpos = self.position_of(from).ok_or(Error::InvalidVertex(from))?;
        let tpos = self.position_of(to).ok_or(Error::InvalidVertex(to))?;
        let apos = match avoiding {
            None => None,
            Some(a) => {
                if a == from || a == to {
                    return Err(Error::InvalidVertex(a));
                }
                Some(self.position_of(a).ok_or(Error::InvalidVertex(a))?)
            }
        };
        if fpos == tpos {
            return Ok(true);
        }
        let mut seen = vec![false; self.vertices.len()];
        seen[fpos] = true;
        let mut queue = VecDeque::from([fpos]);
        while let Some(vpos) = queue.pop_front() {
            for &epos in &self.out_adj[vpos] {
                let hpos = self.position_of(self.edges[epos].head).unwrap();
                if Some(hpos) == apos || seen[hpos] {
                    continue;
                }
                if hpos == tpos {
                    return Ok(true);
                }
                seen[hpos] = true;
                queue.push_back(hpos);
            }
        }
        Ok(false)
    }

    /// Path counts from the source and to the sink, saturated at `cap`.
    ///
    /// `d_s(v)` is `min(cap, #distinct s-v paths)` and `d_t(v)` is
    /// `min(cap, #distinct v-t paths)`, computed by dynamic programming over a
    /// topological order with saturating addition.
    pub fn capped_path_counts(&self, cap: u64) -> (BTreeMap<VertexId, u64>, BTreeMap<VertexId, u64>) {
        let order = self.topo_positions();
        let n = self.vertices.len();
        let mut ds = vec![0u64; n];
        ds[self.position_of(self.source).unwrap()] = 1.min(cap);
        for &vpos in &order {
            for &epos in &self.out_adj[vpos] {
                let hpos = self.position_of(self.edges[epos].head).unwrap();
                ds[hpos] = ds[hpos].saturating_add(ds[vpos]).min(cap);
            }
        }
        let mut dt = vec![0u64; n];
        dt[self.position_of(self.sink).unwrap()] = 1.min(cap);
        for &vpos in order.iter().rev() {
            for &epos in &self.out_adj[vpos] {
                let hpos = self.position_of(self.edges[epos].head).unwrap();
                dt[vpos] = dt[vpos].saturating_add(dt[hpos]).min(cap);
            }
        }
        let to_map = |vals: Vec<u64>| {
            self.vertices
                .iter()
                .enumerate()
                .map(|(p, &v)| (v, vals[p]))
                .collect::<BTreeMap<_, _>>()
        };
        (to_map(ds), to_map(dt))
    }
}

/// A non-negative integer weighting of edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    values: BTreeMap<EdgeId, i64>,
}

impl Flow {
    pub fn from_pairs<I: IntoIterator<Item = (EdgeId, i64)>>(pairs: I) -> Flow {
        Flow { values: pairs.into_iter().collect() }
    }

    pub fn uniform_on<I: IntoIterator<Item = EdgeId>>(edges: I, value: i64) -> Flow {
        Flow { values: edges.into_iter().map(|e| (e, value)).collect() }
    }

    pub fn value_on(&self, edge: EdgeId) -> Option<i64> {
        self.values.get(&edge).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries in ascending edge-id order.
    pub fn iter(&self) -> impl Iterator<Item = (EdgeId, i64)> + '_ {
        self.values.iter().map(|(&e, &v)| (e, v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.values.keys().copied()
    }

    /// Element-wise difference; fails if any entry would go negative or the
    /// edge sets differ.
    pub fn checked_sub(&self, other: &Flow) -> Result<Flow> {
        let mut out = BTreeMap::new();
        for (&e, &v) in &self.values {
            let o = other.value_on(e).ok_or(Error::UnknownEdge(e))?;
            let d = v.checked_sub(o).ok_or(Error::IntegerOverflow)?;
            if d < 0 {
                return Err(Error::NegativeFlow(e));
            }
            out.insert(e, d);
        }
        if other.len() != self.len() {
            let extra = other.edge_ids().find(|e| !self.values.contains_key(e)).unwrap();
            return Err(Error::UnknownEdge(extra));
        }
        Ok(Flow { values: out })
    }

    /// Exact halving; an odd entry is a parity invariant violation.
    pub fn halved(&self) -> Result<Flow> {
        let mut out = BTreeMap::new();
        for (&e, &v) in &self.values {
            if v % 2 != 0 {
                return Err(Error::ParityAssertionFailed);
            }
            out.insert(e, v / 2);
        }
        Ok(Flow { values: out })
    }

    pub fn scaled(&self, factor: i64) -> Result<Flow> {
        let mut out = BTreeMap::new();
        for (&e, &v) in &self.values {
            out.insert(e, v.checked_mul(factor).ok_or(Error::IntegerOverflow)?);
        }
        Ok(Flow { values: out })
    }
}

/// Maps each edge of a contracted graph back to the chain of original edges
/// it replaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    chains: BTreeMap<EdgeId, Vec<EdgeId>>,
}

impl ContractionMap {
    pub fn chain(&self, contracted_edge: EdgeId) -> Option<&[EdgeId]> {
        self.chains.get(&contracted_edge).map(|c| c.as_slice())
    }

    pub fn chains(&self) -> impl Iterator<Item = (EdgeId, &[EdgeId])> {
        self.chains.iter().map(|(&e, c)| (e, c.as_slice()))
    }

    /// Expands a path over contracted edge ids into original edge ids.
    pub fn expand_path(&self, path: &[EdgeId]) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for &e in path {
            match self.chains.get(&e) {
                Some(chain) => out.extend_from_slice(chain),
                None => out.push(e),
            }
        }
        out
    }
}

/// A validated pair of a [`MultiDag`] and a conserving non-negative [`Flow`]
/// defined on exactly its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    dag: MultiDag,
    flow: Flow,
}

impl FlowNetwork {
    /// Validates conservation, non-negativity and the exact edge-id match.
    pub fn new(dag: MultiDag, flow: Flow) -> Result<FlowNetwork> {
        for e in dag.edges() {
            match flow.value_on(e.id) {
                None => return Err(Error::UnknownEdge(e.id)),
                Some(v) if v < 0 => return Err(Error::NegativeFlow(e.id)),
                Some(_) => {}
            }
        }
        if flow.len() != dag.edge_count() {
            let extra = flow.edge_ids().find(|&e| dag.edge(e).is_none()).unwrap();
            return Err(Error::UnknownEdge(extra));
        }
        for &v in dag.vertices() {
            if v == dag.source() || v == dag.sink() {
                continue;
            }
            let mut balance: i64 = 0;
            for e in dag.in_edges(v) {
                balance = balance
                    .checked_add(flow.value_on(e.id).unwrap())
                    .ok_or(Error::IntegerOverflow)?;
            }
            for e in dag.out_edges(v) {
                balance = balance
                    .checked_sub(flow.value_on(e.id).unwrap())
                    .ok_or(Error::IntegerOverflow)?;
            }
            if balance != 0 {
                return Err(Error::ConservationViolated(v));
            }
        }
        // total value must be representable
        let mut val: i64 = 0;
        for e in dag.out_edges(dag.source()) {
            val = val
                .checked_add(flow.value_on(e.id).unwrap())
                .ok_or(Error::IntegerOverflow)?;
        }
        Ok(FlowNetwork { dag, flow })
    }

    pub fn dag(&self) -> &MultiDag {
        &self.dag
    }

    pub fn flow(&self) -> &Flow {
        &self.flow
    }

    pub fn flow_of(&self, edge: EdgeId) -> i64 {
        self.flow.value_on(edge).expect("flow defined on every edge")
    }

    /// Re-validates this graph against a different flow.
    pub fn with_flow(&self, flow: Flow) -> Result<FlowNetwork> {
        FlowNetwork::new(self.dag.clone(), flow)
    }

    /// val(f): total flow leaving the source.
    pub fn value(&self) -> i64 {
        self.dag.out_edges(self.dag.source()).map(|e| self.flow_of(e.id)).sum()
    }

    /// The largest edge value.
    pub fn max_norm(&self) -> i64 {
        self.flow.iter().map(|(_, v)| v).max().unwrap_or(0)
    }

    /// Restriction to positive-flow edges; isolated vertices are dropped and
    /// edge ids are preserved.
    pub fn flow_subgraph(&self) -> Result<FlowNetwork> {
        if self.value() == 0 {
            return Err(Error::EmptyFlow);
        }
        let kept: Vec<Edge> = self
            .dag
            .edges()
            .iter()
            .filter(|e| self.flow_of(e.id) > 0)
            .copied()
            .collect();
        let mut vertices: Vec<VertexId> = kept.iter().flat_map(|e| [e.tail, e.head]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let flow = Flow::from_pairs(kept.iter().map(|e| (e.id, self.flow_of(e.id))));
        FlowNetwork::new(MultiDag::from_parts(vertices, kept)?, flow)
    }

    /// Contracts every maximal chain through internal vertices with in-degree
    /// and out-degree 1, merging each chain into one edge carrying the common
    /// flow value. Contracted edges are renumbered `0..m'` in ascending order
    /// of the smallest original id in their chain; the map recovers the
    /// original edge sequences.
    pub fn yv_contract(&self) -> (FlowNetwork, ContractionMap) {
        let dag = &self.dag;
        let smoothable = |v: VertexId| {
            v != dag.source() && v != dag.sink() && dag.in_degree(v) == 1 && dag.out_degree(v) == 1
        };
        let mut chains: Vec<Vec<EdgeId>> = Vec::new();
        for e in dag.edges() {
            if smoothable(e.tail) {
                continue; // not the start of a maximal chain
            }
            let mut chain = vec![e.id];
            let mut cur = e.head;
            while smoothable(cur) {
                let next = dag.out_edges(cur).next().unwrap();
                chain.push(next.id);
                cur = next.head;
            }
            chains.push(chain);
        }
        chains.sort_by_key(|c| c[0]);

        let mut edges = Vec::with_capacity(chains.len());
        let mut map = BTreeMap::new();
        let mut flow_pairs = Vec::with_capacity(chains.len());
        for (new_id, chain) in chains.iter().enumerate() {
            let first = dag.edge(chain[0]).unwrap();
            let last = dag.edge(*chain.last().unwrap()).unwrap();
            let value = self.flow_of(first.id);
            debug_assert!(chain.iter().all(|&c| self.flow_of(c) == value));
            edges.push(Edge { id: new_id, tail: first.tail, head: last.head });
            flow_pairs.push((new_id, value));
            map.insert(new_id, chain.clone());
        }
        let mut vertices: Vec<VertexId> = edges.iter().flat_map(|e| [e.tail, e.head]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let contracted = MultiDag::from_parts(vertices, edges)
            .expect("chain contraction preserves validity");
        let network = FlowNetwork::new(contracted, Flow::from_pairs(flow_pairs))
            .expect("chain contraction preserves conservation");
        (network, ContractionMap { chains: map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn diamond() -> MultiDag {
        // s=0, a=1, b=2, t=3
        MultiDag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn diamond_net(values: [i64; 4]) -> Result<FlowNetwork> {
        FlowNetwork::new(diamond(), Flow::from_pairs((0..4).zip(values)))
    }

    #[test]
    fn validates_single_edge() {
        let dag = MultiDag::new(2, &[(0, 1)]).unwrap();
        let net = FlowNetwork::new(dag, Flow::from_pairs([(0, 5)])).unwrap();
        assert_eq!(net.value(), 5);
    }

    #[test]
    fn validates_diamond_and_rejects_imbalance() {
        let net = diamond_net([2, 1, 2, 1]).unwrap();
        assert_eq!(net.value(), 3);
        assert_eq!(diamond_net([2, 1, 1, 1]), Err(Error::ConservationViolated(1)));
    }

    #[test]
    fn rejects_structural_defects() {
        assert_eq!(MultiDag::new(2, &[]), Err(Error::EmptyGraph));
        assert_eq!(MultiDag::new(3, &[(0, 1), (1, 2), (2, 0)]), Err(Error::CycleDetected));
        assert_eq!(
            MultiDag::new(4, &[(0, 2), (1, 2), (2, 3)]),
            Err(Error::MultipleSources(0, 1))
        );
        assert_eq!(
            MultiDag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3), (0, 3), (0, 3)]).map(|_| ()),
            Ok(())
        );
        // vertex 2 unreachable from source
        assert_eq!(
            MultiDag::new(4, &[(0, 1), (1, 3), (1, 2), (2, 1)]),
            Err(Error::CycleDetected)
        );
    }

    #[test]
    fn rejects_flow_edge_mismatch() {
        let dag = MultiDag::new(2, &[(0, 1)]).unwrap();
        assert_eq!(
            FlowNetwork::new(dag.clone(), Flow::from_pairs([(1, 5)])),
            Err(Error::UnknownEdge(0))
        );
        assert_eq!(
            FlowNetwork::new(dag, Flow::from_pairs([(0, -2)])),
            Err(Error::NegativeFlow(0))
        );
    }

    #[test]
    fn topological_order_breaks_ties_by_id() {
        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.topological_order(), vec![0, 1, 2]);
        assert_eq!(diamond().topological_order(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn reachability_with_avoidance() {
        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.reachable(0, 2, None).unwrap());
        assert!(!path.reachable(0, 2, Some(1)).unwrap());
        assert_eq!(path.reachable(0, 2, Some(0)), Err(Error::InvalidVertex(0)));
        assert_eq!(path.reachable(0, 5, None), Err(Error::InvalidVertex(5)));
    }

    #[test]
    fn capped_counts_saturate() {
        let p3 = MultiDag::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let (ds, dt) = p3.capped_path_counts(2);
        assert_eq!(ds[&1], 2);
        assert_eq!(dt[&0], 2);

        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (ds, _) = path.capped_path_counts(2);
        assert!(ds.values().all(|&c| c == 1));
    }

    #[test]
    fn flow_subgraph_drops_zero_edges_and_isolated_vertices() {
        let net = diamond_net([2, 0, 2, 0]).unwrap();
        let sub = net.flow_subgraph().unwrap();
        assert_eq!(sub.dag().vertices(), &[0, 1, 3]);
        assert_eq!(
            sub.dag().edges().iter().map(|e| e.id).collect::<Vec<_>>(),
            vec![0, 2]
        );
        // idempotent
        assert_eq!(sub.flow_subgraph().unwrap(), sub);

        let full = diamond_net([2, 1, 2, 1]).unwrap();
        assert_eq!(full.flow_subgraph().unwrap(), full);

        let zero = diamond_net([0, 0, 0, 0]).unwrap();
        assert_eq!(zero.flow_subgraph(), Err(Error::EmptyFlow));
    }

    #[test]
    fn contraction_merges_chains() {
        let path = MultiDag::new(3, &[(0, 1), (1, 2)]).unwrap();
        let net = FlowNetwork::new(path, Flow::uniform_on(0..2, 3)).unwrap();
        let (contracted, map) = net.yv_contract();
        assert_eq!(contracted.dag().edge_count(), 1);
        assert_eq!(contracted.value(), 3);
        assert_eq!(map.chain(0), Some(&[0, 1][..]));
        assert_eq!(map.expand_path(&[0]), vec![0, 1]);
    }

    #[test]
    fn contraction_of_diamond_yields_parallel_edges() {
        let net = diamond_net([2, 1, 2, 1]).unwrap();
        let (contracted, map) = net.yv_contract();
        assert_eq!(contracted.dag().vertices(), &[0, 3]);
        assert_eq!(contracted.flow_of(0), 2);
        assert_eq!(contracted.flow_of(1), 1);
        assert_eq!(map.chain(0), Some(&[0, 2][..]));
        assert_eq!(map.chain(1), Some(&[1, 3][..]));
    }

    #[test]
    fn contraction_preserves_value_and_norm() {
        let net = diamond_net([2, 1, 2, 1]).unwrap();
        let (contracted, _) = net.yv_contract();
        assert_eq!(contracted.value(), net.value());
        assert_eq!(contracted.max_norm(), net.max_norm());
    }
}

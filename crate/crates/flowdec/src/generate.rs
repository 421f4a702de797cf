//! Deterministic instance generators: the generating-set and three-partition
//! reduction gadgets, the CH_k / P_c reference graphs, an adversarial family
//! for the parity-fixing algorithm, and seeded random families.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::{verify, Decomposition, Provenance, WeightedPath};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Flow, FlowNetwork, MultiDag, VertexId};
use crate::minflow::width;
use crate::structure::{is_width_stable, make_chk, make_pc, parallel_width, SearchBudget};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn checked_sum(values: &[i64]) -> Result<i64> {
    let mut total: i64 = 0;
    for &v in values {
        total = total.checked_add(v).ok_or(Error::IntegerOverflow)?;
    }
    Ok(total)
}

/// Generating-set chain: one two-edge gadget per element of `a`. Gadget i has
/// a top edge (id 2i) carrying a[i] and a bottom edge (id 2i+1) carrying
/// `sum(a) + 1 - a[i]`; the total source-sink value is `sum(a) + 1`. The graph
/// has width 2 and is width-stable, and its minimum decomposition size is
/// k + 1 exactly when some k-element set generates every a[i] by subset sums.
///
/// The returned witness is the trivial decomposition of size `|a| + 1`.
pub fn gen_genset(a: &[i64]) -> Result<(FlowNetwork, Decomposition)> {
    if a.is_empty() || a.iter().any(|&x| x < 1) {
        return Err(invalid("generating-set input needs positive integers"));
    }
    let total = checked_sum(a)?.checked_add(1).ok_or(Error::IntegerOverflow)?;
    let n = a.len() + 1;
    let mut arcs = Vec::with_capacity(2 * a.len());
    let mut values = Vec::with_capacity(2 * a.len());
    for (i, &ai) in a.iter().enumerate() {
        arcs.push((i, i + 1));
        values.push(ai);
        arcs.push((i, i + 1));
        values.push(total - ai);
    }
    let dag = MultiDag::new(n, &arcs)?;
    let net = FlowNetwork::new(dag, Flow::from_pairs(values.into_iter().enumerate()))?;

    let mut paths = Vec::new();
    for (i, &ai) in a.iter().enumerate() {
        let edges = (0..a.len())
            .map(|j| if j == i { 2 * j } else { 2 * j + 1 })
            .collect();
        paths.push(WeightedPath { edges, weight: ai });
    }
    paths.push(WeightedPath { edges: (0..a.len()).map(|j| 2 * j + 1).collect(), weight: 1 });
    let witness = Decomposition { paths, provenance: Provenance::External };

    assert!(verify(&net, &witness).is_pass(), "generating-set witness must reconstruct the flow");
    assert_eq!(width(net.dag())?.0, 2, "generating-set chain must have width 2");
    assert!(is_width_stable(net.dag()).0, "generating-set chain must be width-stable");
    Ok((net, witness))
}

#[derive(Debug, Clone)]
pub struct ThreePartitionInstance {
    pub network: FlowNetwork,
    /// Index triples summing to B, when a partition exists.
    pub witness_partition: Option<Vec<[usize; 3]>>,
    /// A decomposition of size 3q + 1, present exactly when a partition was
    /// found.
    pub witness_decomposition: Option<Decomposition>,
}

/// Three-partition ladder of width 3.
///
/// The top component has one column per element: a vertical edge carrying
/// `(3q+2)a[i] + 1`, top/bottom rails closing conservation, and weight-1
/// diagonal edges from each column's bottom vertex to the next column's top
/// vertex. The bottom component mirrors this with q columns of vertical value
/// `(3q+2)B + 1`. One weight-1 path weaves through every vertical and every
/// diagonal; a heavy path of weight `(3q+2)a[i]` rides the rails, crosses the
/// i-th top vertical and one bottom vertical. Because the diagonals are the
/// only way back to the top rail and carry exactly 1, no heavier path can
/// cross two verticals, which forces minimum decompositions of size 3q + 1 to
/// encode partitions of the elements into triples summing to B.
pub fn gen_3partition(a: &[i64], b: i64) -> Result<ThreePartitionInstance> {
    if a.is_empty() || a.len() % 3 != 0 {
        return Err(invalid("three-partition needs 3q elements"));
    }
    if a.iter().any(|&x| x < 1) || b < 1 {
        return Err(invalid("three-partition needs positive integers"));
    }
    let q = a.len() / 3;
    let total = checked_sum(a)?;
    let qb = (q as i64).checked_mul(b).ok_or(Error::IntegerOverflow)?;
    if total != qb {
        return Err(invalid("element sum must equal q*B"));
    }
    for &x in a {
        // strict open interval (B/4, B/2) forces all groups to be triples
        if 4 * x <= b || 2 * x >= b {
            return Err(invalid("every element must lie strictly between B/4 and B/2"));
        }
    }
    let factor = (3 * q as i64).checked_add(2).ok_or(Error::IntegerOverflow)?;
    let value = factor.checked_mul(qb).ok_or(Error::IntegerOverflow)?.checked_add(1).ok_or(Error::IntegerOverflow)?;

    let cols = 3 * q;
    let top_p = |i: usize| 2 * i + 1; // i in 0..3q
    let top_r = |i: usize| 2 * i + 2;
    let bot_p = |j: usize| 6 * q + 2 * j + 1; // j in 0..q
    let bot_r = |j: usize| 6 * q + 2 * j + 2;
    let t = 8 * q + 1;

    let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
    let mut values: Vec<i64> = Vec::new();
    let mut vertical_top = vec![0; cols];
    let mut rail_top = vec![0; cols.saturating_sub(1)];
    let mut diag_top = vec![0; cols.saturating_sub(1)];
    let mut rail_bottom_top_component = vec![0; cols.saturating_sub(1)];
    let push = |arcs: &mut Vec<(VertexId, VertexId)>, values: &mut Vec<i64>, arc: (VertexId, VertexId), v: i64| -> EdgeId {
        arcs.push(arc);
        values.push(v);
        arcs.len() - 1
    };

    let source_edge = push(&mut arcs, &mut values, (0, top_p(0)), value);
    let mut prefix: i64 = 0;
    for i in 0..cols {
        prefix += factor * a[i];
        vertical_top[i] = push(&mut arcs, &mut values, (top_p(i), top_r(i)), factor * a[i] + 1);
        if i + 1 < cols {
            rail_top[i] = push(&mut arcs, &mut values, (top_p(i), top_p(i + 1)), value - 1 - prefix);
            diag_top[i] = push(&mut arcs, &mut values, (top_r(i), top_p(i + 1)), 1);
            rail_bottom_top_component[i] =
                push(&mut arcs, &mut values, (top_r(i), top_r(i + 1)), prefix);
        }
    }
    let bridge = push(&mut arcs, &mut values, (top_r(cols - 1), bot_p(0)), value);
    let mut vertical_bottom = vec![0; q];
    let mut rail_top_bottom_component = vec![0; q.saturating_sub(1)];
    let mut diag_bottom = vec![0; q.saturating_sub(1)];
    let mut rail_bottom_bottom_component = vec![0; q.saturating_sub(1)];
    for j in 0..q {
        vertical_bottom[j] = push(&mut arcs, &mut values, (bot_p(j), bot_r(j)), factor * b + 1);
        if j + 1 < q {
            let prefix = factor * b * (j as i64 + 1);
            rail_top_bottom_component[j] =
                push(&mut arcs, &mut values, (bot_p(j), bot_p(j + 1)), value - 1 - prefix);
            diag_bottom[j] = push(&mut arcs, &mut values, (bot_r(j), bot_p(j + 1)), 1);
            rail_bottom_bottom_component[j] =
                push(&mut arcs, &mut values, (bot_r(j), bot_r(j + 1)), prefix);
        }
    }
    let sink_edge = push(&mut arcs, &mut values, (bot_r(q - 1), t), value);

    let dag = MultiDag::new(8 * q + 2, &arcs)?;
    let network = FlowNetwork::new(dag, Flow::from_pairs(values.into_iter().enumerate()))?;
    assert_eq!(width(network.dag())?.0, 3, "three-partition ladder must have width 3");

    let witness_partition = find_partition(a, b);
    let witness_decomposition = witness_partition.as_ref().map(|triples| {
        let mut paths = Vec::new();
        // the weave: every vertical and every diagonal, at weight 1
        let mut weave = vec![source_edge];
        for i in 0..cols {
            weave.push(vertical_top[i]);
            if i + 1 < cols {
                weave.push(diag_top[i]);
            }
        }
        weave.push(bridge);
        for j in 0..q {
            weave.push(vertical_bottom[j]);
            if j + 1 < q {
                weave.push(diag_bottom[j]);
            }
        }
        weave.push(sink_edge);
        paths.push(WeightedPath { edges: weave, weight: 1 });

        let mut group_of = vec![0usize; cols];
        for (g, triple) in triples.iter().enumerate() {
            for &i in triple {
                group_of[i] = g;
            }
        }
        for i in 0..cols {
            let j = group_of[i];
            let mut edges = vec![source_edge];
            edges.extend((0..i).map(|x| rail_top[x]));
            edges.push(vertical_top[i]);
            edges.extend((i..cols - 1).map(|x| rail_bottom_top_component[x]));
            edges.push(bridge);
            edges.extend((0..j).map(|x| rail_top_bottom_component[x]));
            edges.push(vertical_bottom[j]);
            edges.extend((j..q - 1).map(|x| rail_bottom_bottom_component[x]));
            edges.push(sink_edge);
            paths.push(WeightedPath { edges, weight: factor * a[i] });
        }
        let d = Decomposition { paths, provenance: Provenance::External };
        assert!(verify(&network, &d).is_pass(), "three-partition witness must reconstruct the flow");
        d
    });

    Ok(ThreePartitionInstance { network, witness_partition, witness_decomposition })
}

/// Backtracking search for a partition of the elements into triples summing
/// to B; desk scale (q <= 4 or so).
fn find_partition(a: &[i64], b: i64) -> Option<Vec<[usize; 3]>> {
    let q = a.len() / 3;
    let mut used = vec![false; a.len()];
    let mut triples = Vec::with_capacity(q);
    fn go(a: &[i64], b: i64, used: &mut Vec<bool>, triples: &mut Vec<[usize; 3]>, q: usize) -> bool {
        if triples.len() == q {
            return true;
        }
        let first = used.iter().position(|&u| !u).unwrap();
        used[first] = true;
        for second in first + 1..a.len() {
            if used[second] || a[first] + a[second] >= b {
                continue;
            }
            used[second] = true;
            for third in second + 1..a.len() {
                if used[third] || a[first] + a[second] + a[third] != b {
                    continue;
                }
                used[third] = true;
                triples.push([first, second, third]);
                if go(a, b, used, triples, q) {
                    return true;
                }
                triples.pop();
                used[third] = false;
            }
            used[second] = false;
        }
        used[first] = false;
        false
    }
    if go(a, b, &mut used, &mut triples, q) {
        Some(triples)
    } else {
        None
    }
}

/// Adversarial family for the parity-fixing algorithm: a chain of l + 2
/// central gadgets, each fed by its own source edge. The flanking gadgets
/// carry 2k parallel weight-3 wing edges each; the l middle gadgets carry two
/// weight-3k wings each; every gadget has k parallel weight-2 edges chained to
/// the next gadget by a weight-2k bold connector. The k weight-2 witness paths
/// saturate all bold connectors, so after the first halving round the per-
/// gadget odd edges become pairwise unreachable and the parity-fixing
/// algorithm needs far more paths than the witness. The largest minimal
/// cut-set collects all wing and weight-2 edges: 6k + l(k + 2).
///
/// Returns the instance and a verified witness decomposition of size 5k + 2l.
pub fn gen_adversarial(k: usize, l: usize) -> Result<(FlowNetwork, Decomposition)> {
    if k < 3 || k % 2 == 0 {
        return Err(invalid("adversarial family needs odd k >= 3"));
    }
    if l < 1 {
        return Err(invalid("adversarial family needs l >= 1"));
    }
    let gadgets = l + 2;
    let e_g = |g: usize| 3 * g + 1;
    let w_g = |g: usize| 3 * g + 2;
    let x_g = |g: usize| 3 * g + 3;
    let t = 3 * gadgets + 1;
    let ki = k as i64;

    let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
    let mut source_edges = vec![0; gadgets];
    let mut weight2_edges = vec![Vec::new(); gadgets];
    let mut wing_edges = vec![Vec::new(); gadgets];
    let mut collector_edges = vec![0; gadgets];
    let mut exit_edges = vec![0; gadgets];
    let mut bold_edges = vec![0; gadgets.saturating_sub(1)];
    for g in 0..gadgets {
        let is_flank = g == 0 || g == gadgets - 1;
        source_edges[g] = arcs.len();
        arcs.push((0, e_g(g)));
        for _ in 0..k {
            weight2_edges[g].push(arcs.len());
            arcs.push((e_g(g), x_g(g)));
        }
        let wing_count = if is_flank { 2 * k } else { 2 };
        for _ in 0..wing_count {
            wing_edges[g].push(arcs.len());
            arcs.push((e_g(g), w_g(g)));
        }
        collector_edges[g] = arcs.len();
        arcs.push((w_g(g), x_g(g)));
        exit_edges[g] = arcs.len();
        arcs.push((x_g(g), t));
        if g + 1 < gadgets {
            bold_edges[g] = arcs.len();
            arcs.push((x_g(g), e_g(g + 1)));
        }
    }
    let dag = MultiDag::new(3 * gadgets + 2, &arcs)?;

    // witness paths; the flow is their weighted sum
    let mut paths = Vec::new();
    for j in 0..k {
        let mut edges = Vec::new();
        for g in 0..gadgets {
            if g == 0 {
                edges.push(source_edges[0]);
            }
            edges.push(weight2_edges[g][j]);
            if g + 1 < gadgets {
                edges.push(bold_edges[g]);
            } else {
                edges.push(exit_edges[g]);
            }
        }
        paths.push(WeightedPath { edges, weight: 2 });
    }
    for g in 0..gadgets {
        let is_flank = g == 0 || g == gadgets - 1;
        let weight = if is_flank { 3 } else { 3 * ki };
        for &wing in &wing_edges[g] {
            paths.push(WeightedPath {
                edges: vec![source_edges[g], wing, collector_edges[g], exit_edges[g]],
                weight,
            });
        }
    }
    let mut totals = vec![0i64; arcs.len()];
    for p in &paths {
        for &e in &p.edges {
            totals[e] += p.weight;
        }
    }
    let network = FlowNetwork::new(dag, Flow::from_pairs(totals.into_iter().enumerate()))?;
    let witness = Decomposition { paths, provenance: Provenance::External };

    assert_eq!(witness.size(), 5 * k + 2 * l);
    assert!(verify(&network, &witness).is_pass(), "adversarial witness must reconstruct the flow");
    assert_eq!(network.max_norm(), 8 * ki);
    assert_eq!(network.dag().out_degree(0), gadgets);
    let flow3 = network.flow().iter().filter(|&(_, v)| v == 3).count();
    assert_eq!(flow3, 4 * k);
    let flow3k = network.flow().iter().filter(|&(_, v)| v == 3 * ki).count();
    assert_eq!(flow3k, 2 * l);
    // exact cut search is cheap enough below ~18 internal vertices
    if 3 * gadgets <= 16 {
        let pw = parallel_width(network.dag(), &SearchBudget::default());
        assert!(pw.exact && pw.lower == (6 * k + l * (k + 2)) as i64);
    }
    Ok((network, witness))
}

/// Random union of k weighted source-to-sink paths on a layered random
/// topology. The flow is the weighted sum of the returned witness paths, so
/// its minimum decomposition size is at most k.
pub fn gen_random_paths(
    n: usize,
    k: usize,
    max_weight: i64,
    seed: u64,
) -> Result<(FlowNetwork, Decomposition)> {
    if n < 2 || k < 1 || max_weight < 1 {
        return Err(invalid("random family needs n >= 2, k >= 1, max_weight >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vertex_paths: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut weights = Vec::with_capacity(k);
    for _ in 0..k {
        let mut path = vec![0];
        for v in 1..n - 1 {
            if rng.gen_bool(0.5) {
                path.push(v);
            }
        }
        path.push(n - 1);
        vertex_paths.push(path);
        weights.push(rng.gen_range(1..=max_weight));
    }

    let mut arc_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for path in &vertex_paths {
        for pair in path.windows(2) {
            arc_set.insert((pair[0], pair[1]));
        }
    }
    let mut used: Vec<usize> = vertex_paths.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let relabel = |v: usize| used.binary_search(&v).unwrap();
    let arcs: Vec<(VertexId, VertexId)> =
        arc_set.iter().map(|&(u, v)| (relabel(u), relabel(v))).collect();
    let edge_of = |u: usize, v: usize| arc_set.iter().position(|&a| a == (u, v)).unwrap();

    let mut totals = vec![0i64; arcs.len()];
    let mut paths = Vec::with_capacity(k);
    for (path, &weight) in vertex_paths.iter().zip(&weights) {
        let edges: Vec<EdgeId> =
            path.windows(2).map(|pair| edge_of(pair[0], pair[1])).collect();
        for &e in &edges {
            totals[e] += weight;
        }
        paths.push(WeightedPath { edges, weight });
    }
    let dag = MultiDag::new(used.len(), &arcs)?;
    let network = FlowNetwork::new(dag, Flow::from_pairs(totals.into_iter().enumerate()))?;
    let witness = Decomposition { paths, provenance: Provenance::External };
    debug_assert!(verify(&network, &witness).is_pass());
    Ok((network, witness))
}

/// Random series-parallel DAG built by recursive composition from single
/// edges. Vertex 0 is the source and vertex 1 the sink; edge ids follow the
/// recursive construction order. Every output is width-stable.
pub fn gen_series_parallel(depth: usize, seed: u64) -> MultiDag {
    enum Term {
        Leaf,
        Series(Box<Term>, Box<Term>),
        Parallel(Box<Term>, Box<Term>),
    }
    fn build(depth: usize, rng: &mut ChaCha8Rng) -> Term {
        if depth == 0 {
            return Term::Leaf;
        }
        match rng.gen_range(0..5) {
            0 => Term::Leaf,
            1 | 2 => Term::Series(
                Box::new(build(depth - 1, rng)),
                Box::new(build(depth - 1, rng)),
            ),
            _ => Term::Parallel(
                Box::new(build(depth - 1, rng)),
                Box::new(build(depth - 1, rng)),
            ),
        }
    }
    fn realize(term: &Term, s: usize, t: usize, next: &mut usize, arcs: &mut Vec<(usize, usize)>) {
        match term {
            Term::Leaf => arcs.push((s, t)),
            Term::Series(left, right) => {
                let mid = *next;
                *next += 1;
                realize(left, s, mid, next, arcs);
                realize(right, mid, t, next, arcs);
            }
            Term::Parallel(left, right) => {
                realize(left, s, t, next, arcs);
                realize(right, s, t, next, arcs);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let term = build(depth, &mut rng);
    let mut arcs = Vec::new();
    let mut next = 2;
    realize(&term, 0, 1, &mut next, &mut arcs);
    MultiDag::new(next, &arcs).expect("series-parallel composition is always valid")
}

/// Samples k weighted random walks from source to sink on an existing graph
/// and returns their induced flow (zero on unvisited edges) plus the walks as
/// a witness decomposition.
pub fn sample_path_flow(
    dag: &MultiDag,
    k: usize,
    max_weight: i64,
    seed: u64,
) -> Result<(Flow, Decomposition)> {
    if k < 1 || max_weight < 1 {
        return Err(invalid("need k >= 1 and max_weight >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut totals: std::collections::BTreeMap<EdgeId, i64> =
        dag.edges().iter().map(|e| (e.id, 0)).collect();
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let weight = rng.gen_range(1..=max_weight);
        let mut edges = Vec::new();
        let mut v = dag.source();
        while v != dag.sink() {
            let out: Vec<&crate::graph::Edge> = dag.out_edges(v).collect();
            let e = out[rng.gen_range(0..out.len())];
            edges.push(e.id);
            v = e.head;
        }
        for &e in &edges {
            *totals.get_mut(&e).unwrap() += weight;
        }
        paths.push(WeightedPath { edges, weight });
    }
    Ok((Flow::from_pairs(totals), Decomposition { paths, provenance: Provenance::External }))
}

/// The generator families the command line and the benchmark harness expose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFamily {
    Genset,
    ThreePartition,
    Chk,
    Pc,
    RandomPaths,
    SeriesParallel,
    Adversarial,
}

impl InstanceFamily {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "genset" => Ok(InstanceFamily::Genset),
            "threepart" => Ok(InstanceFamily::ThreePartition),
            "chk" => Ok(InstanceFamily::Chk),
            "pc" => Ok(InstanceFamily::Pc),
            "random_paths" => Ok(InstanceFamily::RandomPaths),
            "series_parallel" => Ok(InstanceFamily::SeriesParallel),
            "adversarial" => Ok(InstanceFamily::Adversarial),
            other => Err(invalid(format!(
                "unknown family '{other}'; expected genset, threepart, chk, pc, random_paths, series_parallel or adversarial"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InstanceFamily::Genset => "genset",
            InstanceFamily::ThreePartition => "threepart",
            InstanceFamily::Chk => "chk",
            InstanceFamily::Pc => "pc",
            InstanceFamily::RandomPaths => "random_paths",
            InstanceFamily::SeriesParallel => "series_parallel",
            InstanceFamily::Adversarial => "adversarial",
        }
    }
}

/// Family plus parameters plus seed; the full recipe for one instance.
///
/// Parameter conventions: `genset` takes the element list; `threepart` takes
/// the 3q elements followed by B; `chk`/`pc` take k/c; `random_paths` takes n,
/// k, max_weight; `series_parallel` takes depth and optionally the number of
/// sampled flow paths and their max weight (default 3 and 50); `adversarial`
/// takes k and l. Only the random families consume the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub family: InstanceFamily,
    pub parameters: Vec<i64>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub label: String,
    pub network: FlowNetwork,
    pub witness: Option<Decomposition>,
}

impl InstanceSpec {
    pub fn new(family: InstanceFamily, parameters: Vec<i64>, seed: u64) -> Self {
        InstanceSpec { family, parameters, seed }
    }

    fn param_usize(&self, idx: usize, what: &str) -> Result<usize> {
        let v = *self
            .parameters
            .get(idx)
            .ok_or_else(|| invalid(format!("missing parameter: {what}")))?;
        usize::try_from(v).map_err(|_| invalid(format!("{what} must be non-negative")))
    }

    pub fn generate(&self) -> Result<GeneratedInstance> {
        let label = self
            .parameters
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        match self.family {
            InstanceFamily::Genset => {
                let (network, witness) = gen_genset(&self.parameters)?;
                Ok(GeneratedInstance { label, network, witness: Some(witness) })
            }
            InstanceFamily::ThreePartition => {
                if self.parameters.len() < 4 {
                    return Err(invalid("threepart needs 3q elements followed by B"));
                }
                let (a, b) = self.parameters.split_at(self.parameters.len() - 1);
                let inst = gen_3partition(a, b[0])?;
                Ok(GeneratedInstance {
                    label,
                    network: inst.network,
                    witness: inst.witness_decomposition,
                })
            }
            InstanceFamily::Chk => {
                let k = self.param_usize(0, "k")?;
                let dag = make_chk(k)?;
                let (flow, witness) = sample_path_flow(&dag, k + 2, 5, self.seed)?;
                Ok(GeneratedInstance {
                    label,
                    network: FlowNetwork::new(dag, flow)?,
                    witness: Some(witness),
                })
            }
            InstanceFamily::Pc => {
                let c = self.param_usize(0, "c")?;
                let dag = make_pc(c)?;
                let flow = Flow::from_pairs((0..c).map(|i| (i, i as i64 + 1)));
                let witness = Decomposition {
                    paths: (0..c)
                        .map(|i| WeightedPath { edges: vec![i], weight: i as i64 + 1 })
                        .collect(),
                    provenance: Provenance::External,
                };
                Ok(GeneratedInstance {
                    label,
                    network: FlowNetwork::new(dag, flow)?,
                    witness: Some(witness),
                })
            }
            InstanceFamily::RandomPaths => {
                if self.parameters.len() != 3 {
                    return Err(invalid("random_paths needs n, k, max_weight"));
                }
                let n = self.param_usize(0, "n")?;
                let k = self.param_usize(1, "k")?;
                let (network, witness) = gen_random_paths(n, k, self.parameters[2], self.seed)?;
                Ok(GeneratedInstance { label, network, witness: Some(witness) })
            }
            InstanceFamily::SeriesParallel => {
                if self.parameters.is_empty() || self.parameters.len() > 3 {
                    return Err(invalid("series_parallel needs depth [paths [max_weight]]"));
                }
                let depth = self.param_usize(0, "depth")?;
                let paths =
                    if self.parameters.len() > 1 { self.param_usize(1, "paths")? } else { 3 };
                let max_weight = if self.parameters.len() > 2 { self.parameters[2] } else { 50 };
                let dag = gen_series_parallel(depth, self.seed);
                let (flow, witness) = sample_path_flow(&dag, paths, max_weight, self.seed)?;
                Ok(GeneratedInstance {
                    label,
                    network: FlowNetwork::new(dag, flow)?,
                    witness: Some(witness),
                })
            }
            InstanceFamily::Adversarial => {
                if self.parameters.len() != 2 {
                    return Err(invalid("adversarial needs k and l"));
                }
                let k = self.param_usize(0, "k")?;
                let l = self.param_usize(1, "l")?;
                let (network, witness) = gen_adversarial(k, l)?;
                Ok(GeneratedInstance { label, network, witness: Some(witness) })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{exact_mfd, ExactBudget};

    #[test]
    fn genset_reference_values() {
        let (net, witness) = gen_genset(&[1, 2, 3]).unwrap();
        assert_eq!(net.dag().vertex_count(), 4);
        assert_eq!(net.dag().edge_count(), 6);
        assert_eq!(net.value(), 7);
        assert_eq!(witness.size(), 4);
        assert_eq!(
            net.flow().iter().map(|(_, v)| v).collect::<Vec<_>>(),
            vec![1, 6, 2, 5, 3, 4]
        );

        let out = exact_mfd(&net, &ExactBudget::default()).unwrap();
        assert!(out.optimal);
        assert_eq!(out.decomposition.size(), 3); // {1,2} generates {1,2,3}
    }

    #[test]
    fn genset_singletons() {
        let (net, _) = gen_genset(&[1]).unwrap();
        let out = exact_mfd(&net, &ExactBudget::default()).unwrap();
        assert!(out.optimal);
        assert_eq!(out.decomposition.size(), 2);

        let (net, _) = gen_genset(&[2]).unwrap();
        let out = exact_mfd(&net, &ExactBudget::default()).unwrap();
        assert!(out.optimal);
        assert_eq!(out.decomposition.size(), 2);

        assert!(gen_genset(&[]).is_err());
        assert!(gen_genset(&[0]).is_err());
    }

    #[test]
    fn threepartition_q1_has_mfd_4() {
        let inst = gen_3partition(&[3, 3, 3], 9).unwrap();
        let net = &inst.network;
        assert_eq!(width(net.dag()).unwrap().0, 3);
        assert!(inst.witness_partition.is_some());
        let witness = inst.witness_decomposition.as_ref().unwrap();
        assert_eq!(witness.size(), 4);

        let out = exact_mfd(net, &ExactBudget::default()).unwrap();
        assert!(out.optimal);
        assert_eq!(out.decomposition.size(), 4);
    }

    #[test]
    fn threepartition_validates_parameters() {
        assert!(gen_3partition(&[3, 3], 6).is_err()); // not 3q elements
        assert!(gen_3partition(&[3, 3, 3], 8).is_err()); // sum mismatch
        assert!(gen_3partition(&[2, 3, 3], 8).is_err()); // 2 not in (2, 4)
        assert!(gen_3partition(&[1, 1, 1, 1, 1, 1], 2).is_err()); // bounds empty
    }

    #[test]
    fn threepartition_no_instance_still_generates() {
        // parity blocks any triple from summing to 15
        let inst = gen_3partition(&[4, 4, 4, 6, 6, 6], 15).unwrap();
        assert!(inst.witness_partition.is_none());
        assert!(inst.witness_decomposition.is_none());
        assert_eq!(width(inst.network.dag()).unwrap().0, 3);
    }

    #[test]
    fn adversarial_pins() {
        let (net, witness) = gen_adversarial(3, 3).unwrap();
        assert_eq!(witness.size(), 21); // 5k + 2l
        assert_eq!(net.max_norm(), 24); // 8k
        assert_eq!(net.dag().out_degree(net.dag().source()), 5); // l + 2
        assert!(gen_adversarial(2, 3).is_err());
        assert!(gen_adversarial(3, 0).is_err());
    }

    #[test]
    fn random_paths_deterministic_and_bounded() {
        let (net_a, wit_a) = gen_random_paths(10, 4, 9, 42).unwrap();
        let (net_b, _) = gen_random_paths(10, 4, 9, 42).unwrap();
        assert_eq!(net_a, net_b);
        assert_eq!(wit_a.size(), 4);
        assert!(verify(&net_a, &wit_a).is_pass());

        let out = exact_mfd(&net_a, &ExactBudget::default()).unwrap();
        if out.optimal {
            assert!(out.decomposition.size() <= 4);
        }
    }

    #[test]
    fn series_parallel_outputs_are_width_stable() {
        for seed in 0..10 {
            let dag = gen_series_parallel(4, seed);
            assert!(is_width_stable(&dag).0, "seed {seed} produced an unstable graph");
        }
        let trivial = gen_series_parallel(0, 7);
        assert_eq!(trivial.edge_count(), 1);
    }

    #[test]
    fn instance_spec_round_trip() {
        let spec = InstanceSpec::new(InstanceFamily::Genset, vec![1, 2, 3], 0);
        let inst = spec.generate().unwrap();
        assert_eq!(inst.label, "1 2 3");
        assert!(inst.witness.is_some());

        assert!(InstanceFamily::parse("genset").is_ok());
        assert!(InstanceFamily::parse("nope").is_err());
    }
}

//! Shared instance corpus for the integration suites.

use flowdec::decompose::Decomposition;
use flowdec::generate::{
    gen_adversarial, gen_genset, gen_random_paths, gen_3partition, sample_path_flow,
};
use flowdec::graph::{FlowNetwork, MultiDag};
use flowdec::structure::{make_chk, make_pc};
use flowdec::Flow;

pub struct CorpusInstance {
    pub label: String,
    pub network: FlowNetwork,
    pub witness: Option<Decomposition>,
}

fn instance(label: impl Into<String>, network: FlowNetwork, witness: Option<Decomposition>) -> CorpusInstance {
    CorpusInstance { label: label.into(), network, witness }
}

/// The desk-scale corpus: every generator family plus 100 seeded random
/// instances.
pub fn corpus() -> Vec<CorpusInstance> {
    let mut out = Vec::new();

    let genset_inputs: [&[i64]; 8] =
        [&[1], &[2], &[2, 2], &[1, 2, 3], &[3, 5, 7], &[1, 2, 4, 8], &[1, 1, 2, 3, 5], &[1, 2, 3, 4, 5, 6, 7, 8]];
    for a in genset_inputs {
        let (net, wit) = gen_genset(a).unwrap();
        out.push(instance(format!("genset{a:?}"), net, Some(wit)));
    }

    for (a, b) in [
        (vec![3i64, 3, 3], 9i64),
        (vec![5, 5, 5, 5, 5, 5], 15),
        (vec![4, 4, 4, 6, 6, 6], 15), // no partition exists
    ] {
        let inst = gen_3partition(&a, b).unwrap();
        out.push(instance(format!("threepart{a:?},B={b}"), inst.network, inst.witness_decomposition));
    }

    for k in 1..=6usize {
        let dag = make_chk(k).unwrap();
        let (flow, wit) = sample_path_flow(&dag, k + 2, 5, k as u64).unwrap();
        let net = FlowNetwork::new(dag, flow).unwrap();
        out.push(instance(format!("chk{k}"), net, Some(wit)));
    }

    for c in 1..=8usize {
        let dag = make_pc(c).unwrap();
        let flow = Flow::from_pairs((0..c).map(|i| (i, i as i64 + 1)));
        let net = FlowNetwork::new(dag, flow).unwrap();
        out.push(instance(format!("pc{c}"), net, None));
    }

    for (k, l) in [(3, 3), (5, 5)] {
        let (net, wit) = gen_adversarial(k, l).unwrap();
        out.push(instance(format!("adversarial({k},{l})"), net, Some(wit)));
    }

    for seed in 0..100u64 {
        let n = 4 + (seed as usize) % 9;
        let k = 1 + (seed as usize) % 6;
        let max_weight = 1 + ((seed as i64) * 7) % 50;
        let (net, wit) = gen_random_paths(n, k, max_weight, seed).unwrap();
        out.push(instance(format!("random(n={n},k={k},seed={seed})"), net, Some(wit)));
    }

    out
}

/// Enumerated mini-corpus of all small multigraphs: every valid s-t DAG on 3
/// vertices with edge multiplicities up to 2, every one on 4 topologically
/// ordered vertices with multiplicities up to 2 and at most 8 edges, plus the
/// reference gadgets. All members have at most 10 edges.
pub fn mini_corpus() -> Vec<MultiDag> {
    let mut graphs = Vec::new();

    let pairs3 = [(0, 1), (0, 2), (1, 2)];
    for counts in counts_up_to(pairs3.len(), 2) {
        if let Some(dag) = from_counts(3, &pairs3, &counts) {
            graphs.push(dag);
        }
    }

    let pairs4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for counts in counts_up_to(pairs4.len(), 2) {
        if counts.iter().sum::<usize>() > 8 {
            continue;
        }
        if let Some(dag) = from_counts(4, &pairs4, &counts) {
            graphs.push(dag);
        }
    }

    for k in 1..=3usize {
        graphs.push(make_chk(k).unwrap()); // CH_3 has 9 edges
    }
    for c in 1..=8usize {
        graphs.push(make_pc(c).unwrap());
    }
    graphs
}

fn counts_up_to(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for prefix in &out {
            for c in 0..=max {
                let mut p = prefix.clone();
                p.push(c);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn from_counts(n: usize, pairs: &[(usize, usize)], counts: &[usize]) -> Option<MultiDag> {
    let mut arcs = Vec::new();
    for (&(u, v), &c) in pairs.iter().zip(counts) {
        for _ in 0..c {
            arcs.push((u, v));
        }
    }
    MultiDag::new(n, &arcs).ok()
}

//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities.

mod common;

use std::time::Instant;

use common::{corpus, mini_corpus};
use flowdec::decompose::{
    exact_mfd, greedy_decompose, log_factor, parity_fix_decompose, verify, ExactBudget,
};
use flowdec::generate::{gen_adversarial, gen_genset, gen_random_paths, gen_series_parallel, gen_3partition, sample_path_flow};
use flowdec::graph::{Flow, FlowNetwork, MultiDag};
use flowdec::minflow::{flow_width, support_width, width};
use flowdec::oracle::{
    is_width_stable_definitional, max_minimal_flow_value, min_positive_minimal_flow_value,
};
use flowdec::structure::{is_width_stable, make_chk, parallel_width, SearchBudget};

const CORPUS_EXACT_BUDGET: ExactBudget = ExactBudget { max_nodes: 50_000 };

#[test]
fn criterion_01_reconstruction_exactness() {
    let start = Instant::now();
    let corpus = corpus();
    assert!(corpus.len() >= 100 + 25, "corpus spans all families");
    for inst in &corpus {
        let net = &inst.network;
        let (parity, _) = parity_fix_decompose(net).unwrap();
        assert!(verify(net, &parity).is_pass(), "parity fails on {}", inst.label);
        let greedy = greedy_decompose(net).unwrap();
        assert!(verify(net, &greedy).is_pass(), "greedy fails on {}", inst.label);
        let exact = exact_mfd(net, &CORPUS_EXACT_BUDGET).unwrap();
        assert!(verify(net, &exact.decomposition).is_pass(), "exact fails on {}", inst.label);
        if let Some(wit) = &inst.witness {
            assert!(verify(net, wit).is_pass(), "witness fails on {}", inst.label);
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 1 must finish under 60 s, took {elapsed:?}");
    println!(
        "PASS criterion 1: {} instances x 3 algorithms reconstruct exactly in {:.1?}",
        corpus.len(),
        elapsed
    );
}

#[test]
fn criterion_02_per_iteration_bound() {
    let mut rounds = 0usize;
    for inst in &corpus() {
        let (_, stats) = parity_fix_decompose(&inst.network).unwrap();
        for record in &stats.iterations {
            assert!(
                record.parity_value <= record.flow_width_bound,
                "{}: round {} has val(f_i) = {} > fwidth = {}",
                inst.label,
                record.index,
                record.parity_value,
                record.flow_width_bound
            );
            rounds += 1;
        }
    }
    println!("PASS criterion 2: val(f_i) <= fwidth(f^(i)) over {rounds} halving rounds");
}

#[test]
fn criterion_03_general_size_bound() {
    let mut checked = 0usize;
    for inst in &corpus() {
        let net = &inst.network;
        if net.dag().edge_count() > 25 {
            continue;
        }
        let pw = parallel_width(net.dag(), &SearchBudget::default());
        if !pw.exact {
            continue;
        }
        let (parity, stats) = parity_fix_decompose(net).unwrap();
        let bound = (stats.log_factor as i64) * pw.lower;
        assert!(
            (parity.size() as i64) <= bound,
            "{}: parity size {} exceeds (log+1)*pw = {}",
            inst.label,
            parity.size(),
            bound
        );
        checked += 1;
    }
    assert!(checked >= 100, "most corpus instances have exact parallel-width");
    println!("PASS criterion 3: parity size <= (log2||f||+1)*pw on {checked} instances");
}

#[test]
fn criterion_04_width_stable_bound() {
    let start = Instant::now();
    let budget = ExactBudget { max_nodes: 200_000 };
    let mut oracle_checked = 0usize;
    for seed in 0..50u64 {
        let depth = 3 + (seed as usize) % 4;
        let dag = gen_series_parallel(depth, seed);
        assert!(is_width_stable(&dag).0, "series-parallel output must be width-stable");
        let paths = 2 + (seed as usize) % 4;
        let (flow, _) = sample_path_flow(&dag, paths, 200_000, seed).unwrap();
        let net = FlowNetwork::new(dag, flow).unwrap();
        assert!(net.max_norm() <= 1_000_000);

        let (parity, _) = parity_fix_decompose(&net).unwrap();
        let logf = log_factor(net.max_norm()) as i64;
        let (w, _) = support_width(&net).unwrap();
        assert!(
            (parity.size() as i64) <= logf * w,
            "seed {seed}: parity size {} exceeds (log+1)*width(G|_f) = {}",
            parity.size(),
            logf * w
        );

        let exact = exact_mfd(&net, &budget).unwrap();
        if exact.optimal && exact.decomposition.size() <= 8 {
            assert!(
                (parity.size() as i64) <= logf * exact.decomposition.size() as i64,
                "seed {seed}: approximation ratio above log bound"
            );
            oracle_checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 4 must finish under 120 s, took {elapsed:?}");
    println!(
        "PASS criterion 4: 50 width-stable instances within the log bound ({oracle_checked} checked against the exact oracle) in {:.1?}",
        elapsed
    );
}

#[test]
fn criterion_05_sandwich_and_monotonicity() {
    let mut solved = 0usize;
    for inst in &corpus() {
        let net = &inst.network;
        let exact = exact_mfd(net, &CORPUS_EXACT_BUDGET).unwrap();
        if !exact.optimal {
            continue;
        }
        let (sw, _) = support_width(net).unwrap();
        let (fw, _) = flow_width(net).unwrap();
        assert!(sw <= fw, "{}: width(G|_f) > fwidth", inst.label);
        assert!(
            fw <= exact.decomposition.size() as i64,
            "{}: fwidth {} exceeds optimum {}",
            inst.label,
            fw,
            exact.decomposition.size()
        );
        solved += 1;
    }
    assert!(solved >= 60, "the oracle solves a sizable share of the corpus, got {solved}");

    let mut pairs = 0usize;
    for seed in 0..200u64 {
        let n = 4 + (seed as usize) % 7;
        let k = 1 + (seed as usize) % 5;
        let (net, _) = gen_random_paths(n, k, 9, seed).unwrap();
        let multiplier = 2 + (seed as i64) % 5;
        let scaled = net.with_flow(net.flow().scaled(multiplier).unwrap()).unwrap();
        let (fw, _) = flow_width(&net).unwrap();
        let (fw_scaled, _) = flow_width(&scaled).unwrap();
        assert!(
            fw >= fw_scaled,
            "seed {seed}: fwidth must be anti-monotone under scaling on a fixed support"
        );
        pairs += 1;
    }
    assert_eq!(pairs, 200);
    println!(
        "PASS criterion 5: sandwich on {solved} oracle-solved instances; anti-monotonicity on 200 scaled pairs"
    );
}

#[test]
fn criterion_06_minimal_flow_oracle_equivalence() {
    let start = Instant::now();
    let graphs = mini_corpus();
    let mut checked = 0usize;
    for dag in &graphs {
        if dag.edge_count() > 10 {
            continue;
        }
        let pw = parallel_width(dag, &SearchBudget::default());
        assert!(pw.exact, "mini-corpus graphs are within the default budget");
        assert_eq!(
            pw.lower,
            max_minimal_flow_value(dag),
            "parallel-width mismatch on {:?}",
            dag.edges()
        );
        let (w, _) = width(dag).unwrap();
        assert_eq!(
            Some(w),
            min_positive_minimal_flow_value(dag),
            "width mismatch on {:?}",
            dag.edges()
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "criterion 6 must finish under 300 s, took {elapsed:?}");
    assert!(checked >= 200, "the enumerated mini-corpus is substantial, got {checked}");
    println!(
        "PASS criterion 6: width and parallel-width match brute-forced minimal flows on {checked} graphs in {:.1?}",
        elapsed
    );
}

#[test]
fn criterion_07_width_stability_detector() {
    let mut checked = 0usize;
    for dag in &mini_corpus() {
        if dag.vertex_count() > 8 || dag.edge_count() > 12 {
            continue;
        }
        let (detected, witness) = is_width_stable(dag);
        let definitional = is_width_stable_definitional(dag);
        assert_eq!(
            detected,
            definitional,
            "detector disagrees with the definition on {:?} (witness {witness:?})",
            dag.edges()
        );
        checked += 1;
    }
    let (stable, witness) = is_width_stable(&make_chk(2).unwrap());
    assert!(!stable);
    assert_eq!(witness, Some((1, 2)));
    for seed in 0..50u64 {
        let dag = gen_series_parallel(3 + (seed as usize) % 3, seed);
        assert!(is_width_stable(&dag).0, "series-parallel seed {seed} must be stable");
    }
    println!(
        "PASS criterion 7: detector equals the definitional check on {checked} graphs; CH2 unstable, 50 series-parallel stable"
    );
}

#[test]
fn criterion_08_hardness_reduction_semantics() {
    let start = Instant::now();
    let budget = ExactBudget { max_nodes: 5_000_000 };

    let (net, _) = gen_genset(&[1, 2, 3]).unwrap();
    assert_eq!(width(net.dag()).unwrap().0, 2);
    let out = exact_mfd(&net, &budget).unwrap();
    assert!(out.optimal);
    assert_eq!(out.decomposition.size(), 3);

    let (net, _) = gen_genset(&[1]).unwrap();
    assert_eq!(width(net.dag()).unwrap().0, 2);
    let out = exact_mfd(&net, &budget).unwrap();
    assert!(out.optimal);
    assert_eq!(out.decomposition.size(), 2);

    let inst = gen_3partition(&[3, 3, 3], 9).unwrap();
    assert_eq!(width(inst.network.dag()).unwrap().0, 3);
    let out = exact_mfd(&inst.network, &budget).unwrap();
    assert!(out.optimal);
    assert_eq!(out.decomposition.size(), 4);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "criterion 8 must finish under 30 s, took {elapsed:?}");
    println!(
        "PASS criterion 8: generating-set optima 3 and 2 at width 2; three-partition optimum 4 = 3q+1 at width 3 in {:.1?}",
        elapsed
    );
}

#[test]
fn criterion_09_adversarial_family() {
    let start = Instant::now();

    let (net, witness) = gen_adversarial(3, 3).unwrap();
    let pw = parallel_width(net.dag(), &SearchBudget { max_nodes: 10_000_000 });
    assert!(pw.exact, "exact search must finish on (3,3)");
    assert_eq!(pw.lower, 33);
    assert_eq!(witness.size(), 21);
    assert!(verify(&net, &witness).is_pass());

    let mut ratios: Vec<(usize, usize)> = Vec::new(); // (parity size, witness size)
    for (k, l) in [(3usize, 3usize), (5, 5), (7, 7)] {
        let (net, witness) = gen_adversarial(k, l).unwrap();
        let (parity, _) = parity_fix_decompose(&net).unwrap();
        assert!(verify(&net, &parity).is_pass());
        if (k, l) == (3, 3) {
            assert!(
                parity.size() > witness.size(),
                "parity fixing must exceed the witness on (3,3)"
            );
        }
        ratios.push((parity.size(), witness.size()));
    }
    for pair in ratios.windows(2) {
        let (p0, w0) = pair[0];
        let (p1, w1) = pair[1];
        // p0/w0 <= p1/w1 compared without rounding
        assert!(
            p0 * w1 <= p1 * w0,
            "excess ratio must be non-decreasing: {:?}",
            ratios
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "criterion 9 must finish under 120 s, took {elapsed:?}");
    println!(
        "PASS criterion 9: pw(3,3)=33, witness 21, parity sizes {:?} with non-decreasing ratios in {:.1?}",
        ratios, elapsed
    );
}

#[test]
fn criterion_10_constant_parallel_width_bound() {
    let mut checked = 0usize;
    for inst in &corpus() {
        let net = &inst.network;
        if net.dag().edge_count() > 25 {
            continue;
        }
        let pw = parallel_width(net.dag(), &SearchBudget::default());
        if !pw.exact || pw.lower > 4 {
            continue;
        }
        let (parity, stats) = parity_fix_decompose(net).unwrap();
        let bound = 4 * stats.log_factor as i64;
        assert!(
            (parity.size() as i64) <= bound,
            "{}: size {} exceeds 4*(log2||f||+1) = {}",
            inst.label,
            parity.size(),
            bound
        );
        checked += 1;
    }
    assert!(checked >= 60, "plenty of corpus instances have pw <= 4, got {checked}");
    println!("PASS criterion 10: parity size <= 4*(log2||f||+1) on {checked} instances with pw <= 4");
}

#[test]
fn criterion_11_command_determinism() {
    let bin = env!("CARGO_BIN_EXE_flowdec");
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).display().to_string();
    let run = |args: &[&str]| {
        let out = std::process::Command::new(bin).args(args).output().unwrap();
        assert!(
            out.status.success(),
            "command {:?} failed: {}",
            args,
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };

    // gen: byte-identical graph and witness files across runs
    for (name, args) in [
        ("g1", vec!["gen", "genset", "1", "2", "3"]),
        ("g2", vec!["gen", "adversarial", "3", "3"]),
        ("g3", vec!["gen", "random_paths", "10", "4", "9", "--seed", "42"]),
        ("g4", vec!["gen", "series_parallel", "4", "--seed", "7"]),
        ("g5", vec!["gen", "threepart", "3", "3", "3", "9"]),
    ] {
        let (a, b) = (path(&format!("{name}_a")), path(&format!("{name}_b")));
        let mut run_a = args.clone();
        run_a.extend(["--out", &a]);
        run(&run_a);
        let mut run_b = args.clone();
        run_b.extend(["--out", &b]);
        run(&run_b);
        let bytes_a = std::fs::read(&a).unwrap();
        assert_eq!(bytes_a, std::fs::read(&b).unwrap(), "{name} graph differs");
        assert!(!bytes_a.is_empty());
        for suffix in [".witness"] {
            let wa = std::fs::read(format!("{a}{suffix}"));
            let wb = std::fs::read(format!("{b}{suffix}"));
            match (wa, wb) {
                (Ok(x), Ok(y)) => assert_eq!(x, y, "{name} witness differs"),
                (Err(_), Err(_)) => {}
                _ => panic!("{name}: witness present in one run only"),
            }
        }
    }

    // decompose: identical decomposition files per algorithm
    let g = path("net");
    run(&["gen", "genset", "1", "2", "3", "--out", &g]);
    for algo in ["parityfix", "greedy", "exact"] {
        let (a, b) = (path(&format!("d_{algo}_a")), path(&format!("d_{algo}_b")));
        run(&["decompose", &g, "--algo", algo, "--out", &a]);
        run(&["decompose", &g, "--algo", algo, "--out", &b]);
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{algo} differs");
    }

    // analyze: identical JSON
    let j1 = run(&["analyze", &g, "--json"]);
    let j2 = run(&["analyze", &g, "--json"]);
    assert_eq!(j1, j2);

    // bench: identical CSV apart from the wall-clock column
    let (c1, c2) = (path("b1.csv"), path("b2.csv"));
    let bench = |out: &str| {
        run(&[
            "bench",
            "--families",
            "genset,pc,random_paths",
            "--sizes",
            "3,5",
            "--algos",
            "parityfix,greedy,exact",
            "--seed",
            "11",
            "--out",
            out,
        ]);
    };
    bench(&c1);
    bench(&c2);
    let strip_wall = |path: &str| {
        std::fs::read_to_string(path)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect::<Vec<_>>()
    };
    let rows = strip_wall(&c1);
    assert_eq!(rows, strip_wall(&c2), "bench rows differ beyond wall_ms");
    assert_eq!(rows.len(), 1 + 3 * 2 * 3);
    println!("PASS criterion 11: gen/decompose/analyze/bench outputs are reproducible byte-for-byte (bench timing column excluded)");
}

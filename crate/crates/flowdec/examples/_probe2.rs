use flowdec::decompose::{exact_mfd, ExactBudget};
use flowdec::generate::gen_3partition;

fn main() {
    let inst = gen_3partition(&[5, 5, 5, 5, 5, 5], 15).unwrap();
    for budget in [1_000_000u64, 10_000_000, 50_000_000] {
        let t = std::time::Instant::now();
        let out = exact_mfd(&inst.network, &ExactBudget { max_nodes: budget }).unwrap();
        println!(
            "budget {budget}: size={} optimal={} nodes={} [{:?}]",
            out.decomposition.size(),
            out.optimal,
            out.explored_nodes,
            t.elapsed()
        );
        if out.optimal { break; }
    }
}

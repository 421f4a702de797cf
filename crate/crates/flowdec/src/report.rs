//! Combined structural and flow report for one network.

use serde::Serialize;

use crate::decompose::log_factor;
use crate::error::Result;
use crate::graph::{FlowNetwork, VertexId};
use crate::minflow::flow_width;
use crate::structure::{analyze_structure, SearchBudget};

/// Everything `analyze` prints: graph size, flow metrics, widths, the
/// parallel-width (exact or bounds) and the width-stability verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub val: i64,
    pub max_flow: i64,
    pub width: i64,
    pub flow_width: i64,
    pub log_factor: u32,
    pub pw_lower: i64,
    pub pw_upper: i64,
    pub pw_exact: bool,
    pub width_stable: bool,
    pub ch2_witness: Option<(VertexId, VertexId)>,
}

pub fn build_report(net: &FlowNetwork, budget: &SearchBudget) -> Result<AnalysisReport> {
    let structure = analyze_structure(net.dag(), budget)?;
    let (fw, _) = flow_width(net)?;
    Ok(AnalysisReport {
        n: net.dag().vertex_count(),
        m: net.dag().edge_count(),
        val: net.value(),
        max_flow: net.max_norm(),
        width: structure.width,
        flow_width: fw,
        log_factor: log_factor(net.max_norm()),
        pw_lower: structure.parallel_width.lower,
        pw_upper: structure.parallel_width.upper,
        pw_exact: structure.parallel_width.exact,
        width_stable: structure.width_stable,
        ch2_witness: structure.ch2_witness,
    })
}

impl AnalysisReport {
    pub fn to_table(&self) -> String {
        let pw = if self.pw_exact {
            format!("{} (exact)", self.pw_lower)
        } else {
            format!("{}..{} (bounds)", self.pw_lower, self.pw_upper)
        };
        let witness = match self.ch2_witness {
            Some((u, v)) => format!("({u}, {v})"),
            None => "none".into(),
        };
        format!(
            "vertices        {}\n\
             edges           {}\n\
             flow value      {}\n\
             max flow        {}\n\
             width           {}\n\
             flow width      {}\n\
             log factor      {}\n\
             parallel width  {}\n\
             width stable    {}\n\
             ch2 witness     {}\n",
            self.n,
            self.m,
            self.val,
            self.max_flow,
            self.width,
            self.flow_width,
            self.log_factor,
            pw,
            self.width_stable,
            witness
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Flow, FlowNetwork};
    use crate::structure::make_chk;

    #[test]
    fn report_for_ch2_with_value_4_flow() {
        let flow = Flow::from_pairs([(0, 1), (1, 1), (2, 1), (3, 1), (4, 2), (5, 0), (6, 2)]);
        let net = FlowNetwork::new(make_chk(2).unwrap(), flow).unwrap();
        let report = build_report(&net, &SearchBudget::default()).unwrap();
        assert_eq!(report.width, 3);
        assert_eq!(report.flow_width, 4);
        assert_eq!((report.pw_lower, report.pw_exact), (4, true));
        assert!(!report.width_stable);
        assert_eq!(report.ch2_witness, Some((1, 2)));
        assert_eq!(report.log_factor, 2);

        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with("{\"n\":4,\"m\":7,"));
        assert!(report.to_table().contains("parallel width  4 (exact)"));
    }
}

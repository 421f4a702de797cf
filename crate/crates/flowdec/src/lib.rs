//! flowdec: structural widths of flow networks on s-t DAG multigraphs and
//! decomposition of integer flows into weighted paths.
//!
//! The crate provides
//! - validated flow networks with topological/reachability primitives,
//! - min-value integral flows under per-edge lower/upper bounds, from which
//!   the width, the flow-width and parity cover flows are derived,
//! - three decomposers: the parity-fixing approximation, a widest-path greedy
//!   baseline and a budgeted exact search,
//! - structural detectors: width-stability via CH2 minor detection,
//!   parallel-width, d-minor operations,
//! - deterministic instance generators (generating-set and three-partition
//!   reductions, CH_k and parallel-edge reference graphs, an adversarial
//!   family, random path sums, series-parallel graphs),
//! - plain-text graph and decomposition file formats, a report builder, and a
//!   CSV benchmark harness behind the `flowdec` binary.
//!
//! See the `examples/` directory for one runnable walk-through per capability.

pub mod bench;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod formats;
pub mod generate;
pub mod graph;
pub mod minflow;
pub mod oracle;
pub mod report;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{ContractionMap, Edge, EdgeId, Flow, FlowNetwork, MultiDag, VertexId};

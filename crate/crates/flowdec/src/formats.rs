//! Plain-text graph and decomposition files.
//!
//! Graph files: optional `#` comment lines, then the vertex count, then one
//! `tail head flow` line per edge. Edge ids are assigned by line order, the
//! source and sink are inferred as the unique degree-zero endpoints, and
//! duplicate `tail head` lines denote parallel edges.
//!
//! Decomposition files: one `weight : e0,e1,...` line per path over edge ids,
//! with an optional ` # v0 v1 ...` vertex-walk comment for human readers. The
//! edge-id form is authoritative; parallel edges make vertex walks ambiguous.

use crate::decompose::{Decomposition, Provenance, WeightedPath};
use crate::error::{Error, Result};
use crate::graph::{Flow, FlowNetwork, MultiDag, VertexId};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_flow_value(token: &str, line: usize) -> Result<i64> {
    match token.parse::<i64>() {
        Ok(v) => Ok(v),
        Err(_) => {
            let digits = token.strip_prefix('-').unwrap_or(token);
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                // syntactically a number, too large for this build's integers
                Err(parse_err(line, format!("IntegerOverflow: '{token}' exceeds 64-bit range")))
            } else {
                Err(parse_err(line, format!("expected an integer, got '{token}'")))
            }
        }
    }
}

/// Parses a graph file into a validated flow network.
pub fn parse_graph_file(text: &str) -> Result<FlowNetwork> {
    let mut vertex_count: Option<usize> = None;
    let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
    let mut values: Vec<i64> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match vertex_count {
            None => {
                let n = line
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("expected vertex count, got '{line}'")))?;
                vertex_count = Some(n);
            }
            Some(n) => {
                let mut tokens = line.split_whitespace();
                let mut next = |what: &str| {
                    tokens
                        .next()
                        .ok_or_else(|| parse_err(line_no, format!("missing {what} column")))
                };
                let tail = next("tail")?
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, "tail must be a vertex index"))?;
                let head = next("head")?
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, "head must be a vertex index"))?;
                let flow = parse_flow_value(next("flow")?, line_no)?;
                if tokens.next().is_some() {
                    return Err(parse_err(line_no, "expected exactly 'tail head flow'"));
                }
                if tail >= n || head >= n {
                    return Err(parse_err(line_no, format!("vertex out of range 0..{n}")));
                }
                arcs.push((tail, head));
                values.push(flow);
            }
        }
    }
    let Some(n) = vertex_count else {
        return Err(parse_err(0, "empty file"));
    };
    let dag = MultiDag::new(n, &arcs)?;
    FlowNetwork::new(dag, Flow::from_pairs(values.into_iter().enumerate()))
}

/// Serializes a dense network; `parse_graph_file` restores it byte-for-byte.
pub fn serialize_graph_file(net: &FlowNetwork) -> Result<String> {
    if !net.dag().is_dense() {
        return Err(Error::InvalidParameters(
            "only graphs with contiguous vertex and edge ids can be serialized".into(),
        ));
    }
    let mut out = String::new();
    out.push_str(&format!("{}\n", net.dag().vertex_count()));
    for e in net.dag().edges() {
        out.push_str(&format!("{} {} {}\n", e.tail, e.head, net.flow_of(e.id)));
    }
    Ok(out)
}

/// Parses a decomposition file against a graph; referencing an edge id that
/// does not exist in the graph is a parse error.
pub fn parse_decomposition_file(text: &str, dag: &MultiDag) -> Result<Decomposition> {
    let mut paths = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (weight_part, edges_part) = line
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, "expected 'weight : e0,e1,...'"))?;
        let weight = parse_flow_value(weight_part.trim(), line_no)?;
        let mut edges = Vec::new();
        for token in edges_part.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(parse_err(line_no, "empty edge id"));
            }
            let id = token
                .parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("invalid edge id '{token}'")))?;
            if dag.edge(id).is_none() {
                return Err(parse_err(line_no, format!("unknown edge id {id}")));
            }
            edges.push(id);
        }
        if edges.is_empty() {
            return Err(parse_err(line_no, "path has no edges"));
        }
        paths.push(WeightedPath { edges, weight });
    }
    Ok(Decomposition { paths, provenance: Provenance::External })
}

/// Serializes a decomposition with a vertex-walk comment per line.
pub fn serialize_decomposition_file(d: &Decomposition, dag: &MultiDag) -> String {
    let mut out = String::new();
    for path in &d.paths {
        let ids: Vec<String> = path.edges.iter().map(|e| e.to_string()).collect();
        let mut walk: Vec<String> = Vec::new();
        for (i, &e) in path.edges.iter().enumerate() {
            if let Some(edge) = dag.edge(e) {
                if i == 0 {
                    walk.push(edge.tail.to_string());
                }
                walk.push(edge.head.to_string());
            }
        }
        out.push_str(&format!("{} : {}  # {}\n", path.weight, ids.join(","), walk.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{greedy_decompose, verify};
    use crate::generate::gen_genset;

    #[test]
    fn graph_round_trip_is_exact() {
        let (net, _) = gen_genset(&[1, 2, 3]).unwrap();
        let text = serialize_graph_file(&net).unwrap();
        let parsed = parse_graph_file(&text).unwrap();
        assert_eq!(parsed, net);
        assert_eq!(serialize_graph_file(&parsed).unwrap(), text);
    }

    #[test]
    fn graph_parser_reports_line_numbers() {
        let err = parse_graph_file("2\n0 1 5\n0 x 1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 3, message: "head must be a vertex index".into() }
        );
        let err = parse_graph_file("# header\n2\n0 7 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn graph_parser_flags_oversized_values() {
        let err = parse_graph_file("2\n0 1 99999999999999999999999\n").unwrap_err();
        match err {
            Error::Parse { line: 2, message } => assert!(message.contains("IntegerOverflow")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn graph_parser_accepts_comments_and_parallel_edges() {
        let net = parse_graph_file("# two parallel edges\n2\n0 1 5\n0 1 3\n").unwrap();
        assert_eq!(net.dag().edge_count(), 2);
        assert_eq!(net.value(), 8);
    }

    #[test]
    fn decomposition_round_trip() {
        let (net, _) = gen_genset(&[1, 2, 3]).unwrap();
        let d = greedy_decompose(&net).unwrap();
        let text = serialize_decomposition_file(&d, net.dag());
        let parsed = parse_decomposition_file(&text, net.dag()).unwrap();
        assert_eq!(parsed.paths, d.paths);
        assert!(verify(&net, &parsed).is_pass());
        assert_eq!(serialize_decomposition_file(&parsed, net.dag()), text);
    }

    #[test]
    fn decomposition_parser_rejects_unknown_edges() {
        let (net, _) = gen_genset(&[1]).unwrap();
        let err = parse_decomposition_file("1 : 0,9\n", net.dag()).unwrap_err();
        assert_eq!(err, Error::Parse { line: 1, message: "unknown edge id 9".into() });
    }
}

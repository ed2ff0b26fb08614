//! On-disk artifact formats. Text, LF, UTF-8 throughout; writers emit
//! canonical byte-stable encodings (sorted entries, shortest round-trip
//! float literals) so identical runs produce identical files.
//!
//! Cascade file: a header of `node_id,label` lines (ids dense from 0), one
//! blank separator line, then one cascade per line as
//! `node_id,time;node_id,time;...` listing only infected nodes.
//!
//! Network file: one `src,dst` edge per line. Inferred-edge files append the
//! selection gain and iteration: `src,dst,delta,iteration`.

use std::fmt::Write as _;

use netinf_core::{
    AccuracyReport, AuditRecord, BoundReport, Cascade, CascadeSet, CoverageStats,
    DirectedNetwork, NodeId, PrCurve,
};

use crate::CliError;

fn format_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Format(format!("line {line}: {}", message.into()))
}

/// Parse a cascade file. Validates dense header ids, node ranges, duplicate
/// nodes within a cascade, negative or non-finite times, and that every
/// cascade has a unique earliest hit; all errors carry 1-based line numbers.
pub fn parse_cascades(text: &str) -> Result<CascadeSet, CliError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut labels: Vec<String> = Vec::new();
    let mut idx = 0;
    while idx < lines.len() && !lines[idx].is_empty() {
        let line_no = idx + 1;
        let line = lines[idx];
        let (id, label) = line
            .split_once(',')
            .ok_or_else(|| format_error(line_no, "expected `node_id,label`"))?;
        let id: usize = id
            .parse()
            .map_err(|_| format_error(line_no, format!("invalid node id `{id}`")))?;
        if id != labels.len() {
            return Err(format_error(
                line_no,
                format!("node ids must be dense and ascending; expected {}", labels.len()),
            ));
        }
        labels.push(label.to_string());
        idx += 1;
    }
    if labels.is_empty() {
        return Err(format_error(1, "empty node header"));
    }
    if idx >= lines.len() {
        return Err(format_error(
            lines.len(),
            "missing blank separator after the node header",
        ));
    }
    idx += 1; // blank separator

    let n = labels.len();
    let mut cascades = Vec::new();
    for (offset, line) in lines[idx..].iter().enumerate() {
        let line_no = idx + offset + 1;
        if line.is_empty() {
            // Tolerate trailing blank lines only.
            if lines[idx + offset..].iter().all(|l| l.is_empty()) {
                break;
            }
            return Err(format_error(line_no, "blank line inside the cascade section"));
        }
        let mut hit_times = vec![f64::INFINITY; n];
        for entry in line.split(';') {
            let (node, time) = entry.split_once(',').ok_or_else(|| {
                format_error(line_no, format!("expected `node,time`, got `{entry}`"))
            })?;
            let node: usize = node
                .parse()
                .map_err(|_| format_error(line_no, format!("invalid node id `{node}`")))?;
            if node >= n {
                return Err(format_error(
                    line_no,
                    format!("node {node} outside the {n}-node universe"),
                ));
            }
            let time: f64 = time
                .parse()
                .map_err(|_| format_error(line_no, format!("invalid time `{time}`")))?;
            if !time.is_finite() || time < 0.0 {
                return Err(format_error(line_no, format!("invalid time `{time}`")));
            }
            if hit_times[node].is_finite() {
                return Err(format_error(line_no, format!("duplicate node {node} in cascade")));
            }
            hit_times[node] = time;
        }
        let cascade =
            Cascade::new(hit_times).map_err(|e| format_error(line_no, e.to_string()))?;
        if !cascade.has_unique_minimum() {
            return Err(format_error(line_no, "cascade has no unique earliest hit"));
        }
        cascades.push(cascade);
    }

    let set = CascadeSet::new(n, cascades)
        .and_then(|s| s.with_labels(labels))
        .map_err(|e| CliError::Format(e.to_string()))?;
    Ok(set)
}

/// Canonical cascade-file encoding: header in id order, entries per cascade
/// sorted by (time, node id).
pub fn write_cascades(set: &CascadeSet) -> String {
    let mut out = String::new();
    for v in 0..set.node_count() {
        match set.labels() {
            Some(labels) => {
                let _ = writeln!(out, "{v},{}", labels[v]);
            }
            None => {
                let _ = writeln!(out, "{v},n{v}");
            }
        }
    }
    out.push('\n');
    for cascade in set.iter() {
        let entries: Vec<String> = cascade
            .infected_sorted()
            .into_iter()
            .map(|(v, t)| format!("{v},{t}"))
            .collect();
        let _ = writeln!(out, "{}", entries.join(";"));
    }
    out
}

/// Parse a network edge list; the node universe is `0..=max id`.
pub fn parse_network(text: &str) -> Result<DirectedNetwork, CliError> {
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut max_id: Option<NodeId> = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let (src, dst) = line
            .split_once(',')
            .ok_or_else(|| format_error(line_no, "expected `src,dst`"))?;
        let src: NodeId = src
            .parse()
            .map_err(|_| format_error(line_no, format!("invalid node id `{src}`")))?;
        let dst: NodeId = dst
            .parse()
            .map_err(|_| format_error(line_no, format!("invalid node id `{dst}`")))?;
        max_id = Some(max_id.map_or(src.max(dst), |m| m.max(src).max(dst)));
        edges.push((src, dst));
    }
    let n = max_id.map_or(0, |m| m as usize + 1);
    DirectedNetwork::from_edges(n, edges).map_err(|e| CliError::Format(e.to_string()))
}

/// Canonical edge-list encoding in ascending `(src, dst)` order.
pub fn write_network(network: &DirectedNetwork) -> String {
    let mut out = String::new();
    for (u, v) in network.edges() {
        let _ = writeln!(out, "{u},{v}");
    }
    out
}

/// One ranked inferred edge: selection order plus its score or gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedEdge {
    pub edge: (NodeId, NodeId),
    pub delta: f64,
    pub iteration: usize,
}

pub fn parse_ranked_edges(text: &str) -> Result<Vec<RankedEdge>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 4 {
            return Err(format_error(line_no, "expected `src,dst,delta,iteration`"));
        }
        let src: NodeId = parts[0]
            .parse()
            .map_err(|_| format_error(line_no, format!("invalid node id `{}`", parts[0])))?;
        let dst: NodeId = parts[1]
            .parse()
            .map_err(|_| format_error(line_no, format!("invalid node id `{}`", parts[1])))?;
        let delta: f64 = parts[2]
            .parse()
            .map_err(|_| format_error(line_no, format!("invalid delta `{}`", parts[2])))?;
        let iteration: usize = parts[3]
            .parse()
            .map_err(|_| format_error(line_no, format!("invalid iteration `{}`", parts[3])))?;
        out.push(RankedEdge { edge: (src, dst), delta, iteration });
    }
    Ok(out)
}

pub fn write_ranked_edges(edges: &[RankedEdge]) -> String {
    let mut out = String::new();
    for e in edges {
        let _ = writeln!(out, "{},{},{},{}", e.edge.0, e.edge.1, e.delta, e.iteration);
    }
    out
}

pub fn write_audit(records: &[AuditRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.iteration, r.edge.0, r.edge.1, r.gain, r.objective, r.bound
        );
    }
    out
}

pub fn write_bounds(reports: &[BoundReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{},{},{},{}", r.k, r.objective, r.bound, r.ratio);
    }
    out
}

pub fn write_curve(curve: &PrCurve) -> String {
    let mut out = String::new();
    for p in &curve.points {
        let _ = writeln!(out, "{},{},{}", p.k, p.precision, p.recall);
    }
    out
}

pub fn write_metrics(report: &AccuracyReport) -> String {
    format!(
        "bep={}\nauc={}\nk_at_bep={}\ncrossed={}\n",
        report.bep, report.auc, report.k_at_bep, report.crossed
    )
}

pub fn write_coverage(stats: &CoverageStats) -> String {
    let mut out = format!(
        "num_cascades={}\ntransmissions={}\ncovered_fraction={}\ntarget_reached={}\n",
        stats.num_cascades,
        stats.total_transmissions,
        stats.covered_fraction,
        stats.target_reached
    );
    for (i, count) in stats.edge_participation.iter().enumerate() {
        let _ = writeln!(out, "E,{},{}", i + 1, count);
    }
    out
}

pub fn write_influence(rows: &[(NodeId, f64)]) -> String {
    let mut out = String::new();
    for (node, index) in rows {
        let _ = writeln!(out, "{node},{index}");
    }
    out
}

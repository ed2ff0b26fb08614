//! Accuracy of an inferred edge ranking against the ground truth, plus
//! structural analytics of the inferred network.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{DirectedNetwork, NodeId};

/// One prefix of the ranked edge list scored against the truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrPoint {
    pub k: usize,
    pub precision: f64,
    pub recall: f64,
}

/// Precision/recall along the ranking order, one point per prefix length.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PrCurve {
    pub points: Vec<PrPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricsError {
    /// Recall is undefined against an edgeless truth network.
    EmptyTruth,
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::EmptyTruth => write!(f, "truth network has no edges"),
        }
    }
}

impl core::error::Error for MetricsError {}

/// Score every prefix of `ordered` against the truth edge set. An empty
/// ranking yields an empty curve.
pub fn pr_sweep(
    ordered: &[(NodeId, NodeId)],
    truth: &DirectedNetwork,
) -> Result<PrCurve, MetricsError> {
    let total = truth.edge_count();
    if total == 0 {
        return Err(MetricsError::EmptyTruth);
    }
    let mut seen: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    let mut hits = 0usize;
    let mut points = Vec::with_capacity(ordered.len());
    for (idx, &(u, v)) in ordered.iter().enumerate() {
        if seen.insert((u, v)) && truth.contains_edge(u, v) {
            hits += 1;
        }
        let k = idx + 1;
        points.push(PrPoint {
            k,
            precision: hits as f64 / k as f64,
            recall: hits as f64 / total as f64,
        });
    }
    Ok(PrCurve { points })
}

/// The precision/recall break-even point of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BreakEven {
    /// Precision (= recall) where the curves cross.
    pub value: f64,
    /// Possibly fractional prefix length at the crossing.
    pub k_at: f64,
    /// False when precision stays above recall through the whole sweep; the
    /// value then falls back to the final `min(precision, recall)`.
    pub crossed: bool,
}

/// Find the first point where precision drops to recall, linearly
/// interpolating between adjacent prefix lengths when the crossing falls
/// strictly between them. An empty curve reports zero.
///
/// A prefix with no correct edge yet (precision = recall = 0) does not count
/// as a crossing: otherwise a single wrong guess at the top would zero the
/// break-even point of an arbitrarily good ranking. A curve that never
/// crosses reports the final `min(precision, recall)` with `crossed` unset.
pub fn break_even(curve: &PrCurve) -> BreakEven {
    let points = &curve.points;
    let crossing = |p: &PrPoint| p.precision > 0.0 && p.precision <= p.recall;
    let Some(first) = points.first() else {
        return BreakEven { value: 0.0, k_at: 0.0, crossed: false };
    };
    if crossing(first) {
        return BreakEven { value: first.precision, k_at: first.k as f64, crossed: true };
    }
    for w in points.windows(2) {
        let (prev, cur) = (w[0], w[1]);
        if !crossing(&cur) {
            continue;
        }
        if prev.precision > prev.recall {
            let gap_prev = prev.precision - prev.recall; // > 0
            let gap_cur = cur.precision - cur.recall; // <= 0
            let t = gap_prev / (gap_prev - gap_cur);
            return BreakEven {
                value: prev.precision + t * (cur.precision - prev.precision),
                k_at: prev.k as f64 + t * (cur.k - prev.k) as f64,
                crossed: true,
            };
        }
        // Predecessor was a degenerate zero-hit prefix; no segment to
        // interpolate over.
        return BreakEven { value: cur.precision, k_at: cur.k as f64, crossed: true };
    }
    let last = points.last().unwrap();
    BreakEven {
        value: last.precision.min(last.recall),
        k_at: last.k as f64,
        crossed: false,
    }
}

/// Trapezoidal area under precision as a function of recall over
/// `[0, max recall]`. The first point contributes a rectangle from recall 0,
/// so a single point `(p, r)` yields `p * r`.
pub fn pr_auc(curve: &PrCurve) -> f64 {
    let points = &curve.points;
    let Some(first) = points.first() else { return 0.0 };
    let mut area = first.precision * first.recall;
    for w in points.windows(2) {
        area += (w[1].recall - w[0].recall) * (w[0].precision + w[1].precision) / 2.0;
    }
    area
}

/// Break-even point and area under the curve in one report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyReport {
    pub bep: f64,
    pub auc: f64,
    pub k_at_bep: f64,
    pub crossed: bool,
}

pub fn accuracy_report(curve: &PrCurve) -> AccuracyReport {
    let be = break_even(curve);
    AccuracyReport { bep: be.value, auc: pr_auc(curve), k_at_bep: be.k_at, crossed: be.crossed }
}

/// Influence index of `w`: the sum over nodes reachable from `w` of the
/// reciprocal hop distance. Nodes spreading to many close nodes score high;
/// sinks score zero.
pub fn influence_index(network: &DirectedNetwork, w: NodeId) -> f64 {
    let mut dist = vec![usize::MAX; network.node_count()];
    let mut queue = VecDeque::new();
    dist[w as usize] = 0;
    queue.push_back(w);
    let mut index = 0.0;
    while let Some(u) = queue.pop_front() {
        for v in network.out_neighbors(u) {
            if dist[v as usize] == usize::MAX {
                dist[v as usize] = dist[u as usize] + 1;
                index += 1.0 / dist[v as usize] as f64;
                queue.push_back(v);
            }
        }
    }
    index
}

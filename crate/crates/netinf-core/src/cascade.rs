//! Observed cascades: per-node hit times with an infinity sentinel for nodes
//! the contagion never reached.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::NodeId;

/// One observed cascade over a node universe of size `n`: `hit_times[v]` is
/// the time the contagion reached node `v`, or `f64::INFINITY` if it never
/// did. The root is the earliest hit (ties broken by smallest node id).
#[derive(Debug, Clone, PartialEq)]
pub struct Cascade {
    hit_times: Vec<f64>,
    root: NodeId,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CascadeError {
    /// No node has a finite hit time.
    NoFiniteHit,
    /// A finite hit time is negative or NaN.
    InvalidTime { node: NodeId, time: f64 },
}

impl fmt::Display for CascadeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CascadeError::NoFiniteHit => write!(f, "cascade has no finite hit time"),
            CascadeError::InvalidTime { node, time } => {
                write!(f, "invalid hit time {time} for node {node}")
            }
        }
    }
}

impl core::error::Error for CascadeError {}

impl Cascade {
    /// Validate and wrap a hit-time vector. Finite times must be
    /// non-negative; at least one node must be hit.
    pub fn new(hit_times: Vec<f64>) -> Result<Self, CascadeError> {
        let mut root: Option<(f64, NodeId)> = None;
        for (i, &t) in hit_times.iter().enumerate() {
            if t.is_nan() || (t.is_finite() && t < 0.0) || t == f64::NEG_INFINITY {
                return Err(CascadeError::InvalidTime { node: i as NodeId, time: t });
            }
            if t.is_finite() && root.is_none_or(|(rt, _)| t < rt) {
                root = Some((t, i as NodeId));
            }
        }
        let (_, root) = root.ok_or(CascadeError::NoFiniteHit)?;
        Ok(Self { hit_times, root })
    }

    pub fn node_count(&self) -> usize {
        self.hit_times.len()
    }

    /// Earliest-hit node.
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn hit_time(&self, v: NodeId) -> f64 {
        self.hit_times[v as usize]
    }

    pub fn is_infected(&self, v: NodeId) -> bool {
        self.hit_times[v as usize].is_finite()
    }

    /// Number of infected nodes.
    pub fn size(&self) -> usize {
        self.hit_times.iter().filter(|t| t.is_finite()).count()
    }

    pub fn hit_times(&self) -> &[f64] {
        &self.hit_times
    }

    /// Infected nodes with their times, unordered (node-id order).
    pub fn infected(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.hit_times
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_finite())
            .map(|(i, &t)| (i as NodeId, t))
    }

    /// Infected nodes sorted by ascending hit time, ties by node id.
    pub fn infected_sorted(&self) -> Vec<(NodeId, f64)> {
        let mut nodes: Vec<(NodeId, f64)> = self.infected().collect();
        nodes.sort_unstable_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        nodes
    }

    /// True when no other node shares the root's hit time.
    pub fn has_unique_minimum(&self) -> bool {
        let t0 = self.hit_times[self.root as usize];
        self.infected().filter(|&(_, t)| t == t0).count() == 1
    }
}

/// A corpus of cascades over one shared node universe, with optional display
/// labels per node.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeSet {
    n: usize,
    cascades: Vec<Cascade>,
    node_labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CascadeSetError {
    /// Cascade at this index has a hit-time vector of the wrong length.
    LengthMismatch { index: usize, len: usize, expected: usize },
    /// Label vector length differs from the node count.
    LabelLengthMismatch { len: usize, expected: usize },
}

impl fmt::Display for CascadeSetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CascadeSetError::LengthMismatch { index, len, expected } => write!(
                f,
                "cascade {index} covers {len} nodes, expected {expected}"
            ),
            CascadeSetError::LabelLengthMismatch { len, expected } => {
                write!(f, "{len} labels for {expected} nodes")
            }
        }
    }
}

impl core::error::Error for CascadeSetError {}

impl CascadeSet {
    pub fn new(n: usize, cascades: Vec<Cascade>) -> Result<Self, CascadeSetError> {
        for (index, c) in cascades.iter().enumerate() {
            if c.node_count() != n {
                return Err(CascadeSetError::LengthMismatch {
                    index,
                    len: c.node_count(),
                    expected: n,
                });
            }
        }
        Ok(Self { n, cascades, node_labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, CascadeSetError> {
        if labels.len() != self.n {
            return Err(CascadeSetError::LabelLengthMismatch {
                len: labels.len(),
                expected: self.n,
            });
        }
        self.node_labels = Some(labels);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.cascades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cascades.is_empty()
    }

    pub fn cascades(&self) -> &[Cascade] {
        &self.cascades
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.node_labels.as_deref()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cascade> {
        self.cascades.iter()
    }
}

//! Directed network over a dense node universe.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

/// Node index, dense in `[0, n)` for a fixed experiment.
pub type NodeId = u32;

/// A directed graph: node count plus an ordered-pair edge set. Cycles and
/// reciprocal edges are allowed; self-loops and duplicates are not. Any
/// ordered pair absent from the edge set is implicitly an epsilon edge, so
/// epsilon edges are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedNetwork {
    n: usize,
    edges: BTreeSet<(NodeId, NodeId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop(NodeId),
    DuplicateEdge(NodeId, NodeId),
    NodeOutOfRange(NodeId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop(u) => write!(f, "self-loop on node {u}"),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::NodeOutOfRange(u) => write!(f, "node {u} out of range"),
        }
    }
}

impl core::error::Error for GraphError {}

impl DirectedNetwork {
    /// An edgeless network on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Self { n, edges: BTreeSet::new() }
    }

    /// Build from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.try_insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn try_insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if (u as usize) >= self.n {
            return Err(GraphError::NodeOutOfRange(u));
        }
        if (v as usize) >= self.n {
            return Err(GraphError::NodeOutOfRange(v));
        }
        if !self.edges.insert((u, v)) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        Ok(())
    }

    /// Insert an edge known to be valid; returns whether it was new.
    pub fn insert_edge(&mut self, u: NodeId, v: NodeId) -> bool {
        debug_assert!(u != v && (u as usize) < self.n && (v as usize) < self.n);
        self.edges.insert((u, v))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.n as NodeId
    }

    /// Edges in ascending `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }

    /// Out-neighbors of `u` in ascending order.
    pub fn out_neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.edges
            .range((u, NodeId::MIN)..=(u, NodeId::MAX))
            .map(|&(_, v)| v)
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_neighbors(u).count()
    }

    /// Edge set as a sorted vector.
    pub fn edge_vec(&self) -> Vec<(NodeId, NodeId)> {
        self.edges.iter().copied().collect()
    }
}

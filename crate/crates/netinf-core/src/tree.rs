//! Per-cascade likelihood machinery: the weighted DAG of feasible
//! parent-child pairs, the maximum-weight propagation tree over it, and the
//! exact all-trees likelihood used as a validation oracle.
//!
//! Within one cascade every weighted pair points forward in time, so the
//! candidate graph is a DAG and the maximum-weight arborescence decomposes
//! per node: each non-root infected node independently picks its best
//! incoming candidate.

use alloc::vec::Vec;

use crate::cascade::{Cascade, CascadeSet};
use crate::graph::{DirectedNetwork, NodeId};
use crate::transmission::TransmissionConfig;

/// One parent candidate for a non-root infected node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub parent: NodeId,
    /// Log-likelihood improvement weight of the pair (nats).
    pub weight: f64,
}

/// Weighted DAG of feasible transmissions within one cascade under a given
/// network: for every ordered infected pair `(u, v)` with `t_u < t_v` there
/// is a candidate edge weighted as a network edge if `(u, v)` is in the
/// network and as an epsilon edge otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeDag {
    root: NodeId,
    /// Non-root infected nodes in ascending (time, id) order, each with its
    /// candidate parents.
    children: Vec<(NodeId, Vec<Candidate>)>,
    /// Infected nodes dropped because they have no strictly earlier
    /// candidate (exact time tie with the earliest hit).
    excluded: Vec<NodeId>,
}

impl CascadeDag {
    pub fn root(&self) -> NodeId {
        self.root
    }

    /// Non-root nodes with candidates, ascending (time, id).
    pub fn children(&self) -> &[(NodeId, Vec<Candidate>)] {
        &self.children
    }

    /// Nodes excluded for lack of a strictly earlier candidate.
    pub fn excluded(&self) -> &[NodeId] {
        &self.excluded
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    #[cfg(test)]
    pub(crate) fn from_parts(
        root: NodeId,
        children: Vec<(NodeId, Vec<Candidate>)>,
    ) -> Self {
        Self { root, children, excluded: Vec::new() }
    }
}

/// A maximum-weight propagation tree: the chosen parent of every non-root
/// infected node, plus the summed edge weight.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeTree {
    root: NodeId,
    /// `(child, parent, weight)` in the DAG's child order.
    assignments: Vec<(NodeId, NodeId, f64)>,
    weight_sum: f64,
}

impl CascadeTree {
    pub(crate) fn from_assignments(
        root: NodeId,
        assignments: Vec<(NodeId, NodeId, f64)>,
    ) -> Self {
        let weight_sum = assignments.iter().map(|&(_, _, w)| w).sum();
        Self { root, assignments, weight_sum }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn assignments(&self) -> &[(NodeId, NodeId, f64)] {
        &self.assignments
    }

    /// Total weight of the chosen edges (the cascade's objective value).
    pub fn weight_sum(&self) -> f64 {
        self.weight_sum
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn parent_of(&self, child: NodeId) -> Option<NodeId> {
        self.assignments
            .iter()
            .find(|&&(c, _, _)| c == child)
            .map(|&(_, p, _)| p)
    }
}

/// Counts of the four edge types behind a tree's full likelihood: `q`
/// network and `q_prime` epsilon edges that transmitted, `s` network and
/// `s_prime` epsilon edges out of infected nodes that did not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LikelihoodBreakdown {
    pub q: usize,
    pub q_prime: usize,
    pub s: usize,
    pub s_prime: usize,
}

/// Build the weighted cascade DAG for `cascade` under `network`.
///
/// A cascade with fewer than two infected nodes yields an empty DAG (zero
/// objective contribution). Nodes that tie the earliest hit time exactly
/// have no strictly earlier candidate and are excluded.
pub fn build_cascade_dag(
    cascade: &Cascade,
    network: &DirectedNetwork,
    config: &TransmissionConfig,
) -> CascadeDag {
    let infected = cascade.infected_sorted();
    let root = cascade.root();
    let mut children = Vec::with_capacity(infected.len().saturating_sub(1));
    let mut excluded = Vec::new();
    for (idx, &(v, t_v)) in infected.iter().enumerate().skip(1) {
        let mut candidates = Vec::new();
        for &(u, t_u) in &infected[..idx] {
            let is_network = network.contains_edge(u, v);
            if let Some(weight) = config.edge_weight(is_network, t_u, t_v) {
                candidates.push(Candidate { parent: u, weight });
            }
        }
        if candidates.is_empty() {
            excluded.push(v);
        } else {
            children.push((v, candidates));
        }
    }
    CascadeDag { root, children, excluded }
}

/// Maximum-weight propagation tree of a cascade DAG: every node takes its
/// maximum-weight incoming candidate, ties broken by smaller parent id.
pub fn best_tree(dag: &CascadeDag) -> CascadeTree {
    let mut assignments = Vec::with_capacity(dag.children.len());
    let mut weight_sum = 0.0;
    for (child, candidates) in &dag.children {
        let mut best = candidates[0];
        for &c in &candidates[1..] {
            if c.weight > best.weight || (c.weight == best.weight && c.parent < best.parent) {
                best = c;
            }
        }
        assignments.push((*child, best.parent, best.weight));
        weight_sum += best.weight;
    }
    CascadeTree { root: dag.root, assignments, weight_sum }
}

/// Corpus objective `F_C(G)`: the summed best-tree weight of every cascade
/// under `network`. Constant per-cascade offsets cancel in the differences
/// the optimizer works with.
pub fn corpus_loglik(
    cascades: &CascadeSet,
    network: &DirectedNetwork,
    config: &TransmissionConfig,
) -> f64 {
    cascades
        .iter()
        .map(|c| best_tree(&build_cascade_dag(c, network, config)).weight_sum())
        .sum()
}

/// Exact log-likelihood of a cascade under `network`: the log of the sum,
/// over *all* propagation trees consistent with the hit times, of the
/// product of transmission probabilities.
///
/// Time-sorting the infected nodes makes the matrix-tree reduction upper
/// triangular, so the sum over trees collapses to a product over non-root
/// nodes of their incoming-probability sums. Returns negative infinity when
/// some non-root node has no feasible parent.
///
/// The constant factor contributed by non-transmitting edges is omitted; it
/// does not depend on which tree explains the cascade and
/// [`tree_likelihood_breakdown`] recovers the counts needed to restore it.
pub fn exact_cascade_loglik(
    cascade: &Cascade,
    network: &DirectedNetwork,
    config: &TransmissionConfig,
) -> f64 {
    let infected = cascade.infected_sorted();
    let mut log_sum = 0.0;
    for (idx, &(v, t_v)) in infected.iter().enumerate().skip(1) {
        let mut incoming = 0.0;
        for &(u, t_u) in &infected[..idx] {
            if t_u < t_v {
                let is_network = network.contains_edge(u, v);
                incoming += config
                    .transmission_probability(is_network, t_v - t_u)
                    .expect("positive finite gap");
            }
        }
        if incoming <= 0.0 {
            return f64::NEG_INFINITY;
        }
        log_sum += libm::log(incoming);
    }
    log_sum
}

/// Probability-scale view of [`exact_cascade_loglik`] for small cascades.
pub fn exact_cascade_likelihood(
    cascade: &Cascade,
    network: &DirectedNetwork,
    config: &TransmissionConfig,
) -> f64 {
    libm::exp(exact_cascade_loglik(cascade, network, config))
}

/// Count the edge types of a propagation tree: transmitting network/epsilon
/// edges (`q`, `q_prime`) and non-transmitting ones out of infected nodes
/// (`s`, `s_prime`).
pub fn tree_likelihood_breakdown(
    tree: &CascadeTree,
    network: &DirectedNetwork,
    cascade: &Cascade,
) -> LikelihoodBreakdown {
    let mut q = 0;
    for &(child, parent, _) in &tree.assignments {
        if network.contains_edge(parent, child) {
            q += 1;
        }
    }
    let q_prime = tree.assignments.len() - q;

    // Every ordered pair out of an infected tree node is either a network or
    // an epsilon edge; subtract the ones the tree used.
    let mut infected_nodes: Vec<NodeId> = Vec::with_capacity(tree.assignments.len() + 1);
    infected_nodes.push(tree.root);
    infected_nodes.extend(tree.assignments.iter().map(|&(c, _, _)| c));
    let mut network_out = 0;
    for &u in &infected_nodes {
        network_out += network.out_degree(u);
    }
    let s = network_out - q;
    let s_prime = infected_nodes.len() * (cascade.node_count() - 1) - network_out - q_prime;
    LikelihoodBreakdown { q, q_prime, s, s_prime }
}

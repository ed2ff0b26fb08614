//! Greedy network inference from a cascade corpus.
//!
//! The corpus objective is submodular and monotone in the inferred edge set,
//! so greedy edge selection is within `(1 - 1/e)` of the unknown optimum and
//! admits a data-dependent online bound. Two equivalent strategies are
//! provided: a reference sweep that re-evaluates every candidate each
//! iteration, and a lazy priority-queue strategy that reuses stale gains as
//! upper bounds and only touches the trees of cascades the selected edge can
//! affect. Both emit identical edge sequences and gains.
//!
//! Candidates are restricted to ordered pairs co-infected in the correct
//! time order in at least one cascade; every other pair has zero marginal
//! gain forever.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::cascade::CascadeSet;
use crate::graph::{DirectedNetwork, NodeId};
use crate::transmission::TransmissionConfig;
use crate::tree::CascadeTree;

/// How marginal gains are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Re-evaluate every candidate each iteration.
    Naive,
    /// Lazy priority queue over stale gains plus localized tree updates.
    LazyLocalized,
}

/// When the greedy loop stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StoppingRule {
    /// Stop after exactly this many edges (or earlier if gains run out).
    FixedK(usize),
    /// Stop once the objective reaches this fraction of the online bound,
    /// evaluated exactly after every selection. In `(0, 1)`.
    BoundFraction(f64),
    /// Run until no candidate strictly improves the objective.
    NonpositiveGain,
}

/// Objective value against the online upper bound after `k` selections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub k: usize,
    pub objective: f64,
    pub bound: f64,
    /// `objective / bound`, 1 when no positive gain remains.
    pub ratio: f64,
}

/// One greedy selection: the edge, its exact marginal gain, and the
/// objective and a valid upper bound at that iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditRecord {
    pub iteration: usize,
    pub edge: (NodeId, NodeId),
    pub gain: f64,
    pub objective: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    ReachedEdgeBudget,
    BoundFractionMet,
    GainsExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InferError {
    /// Inference needs at least one cascade with two or more infected nodes.
    NoMultiNodeCascade,
    /// Bound fraction outside `(0, 1)`.
    InvalidBoundFraction(f64),
}

impl fmt::Display for InferError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InferError::NoMultiNodeCascade => {
                write!(f, "no cascade with at least two infected nodes")
            }
            InferError::InvalidBoundFraction(x) => {
                write!(f, "bound fraction {x} outside (0, 1)")
            }
        }
    }
}

impl core::error::Error for InferError {}

/// One co-infection of a candidate pair: the cascade and the pair's
/// epsilon-edge weight there. Flipping the pair to a network edge adds the
/// constant `ln(beta/epsilon)` on top.
#[derive(Debug, Clone, Copy)]
struct PairOccurrence {
    cascade: u32,
    base_weight: f64,
}

/// Per-cascade parent assignment maintained incrementally by the optimizer.
#[derive(Debug, Clone)]
struct TreeAssign {
    root: NodeId,
    /// `(child, parent, weight)` sorted by child id.
    entries: Vec<(NodeId, NodeId, f64)>,
}

impl TreeAssign {
    fn parent_of(&self, child: NodeId) -> (NodeId, f64) {
        let idx = self
            .entries
            .binary_search_by_key(&child, |e| e.0)
            .expect("candidate pair child always has a tree entry");
        (self.entries[idx].1, self.entries[idx].2)
    }

    fn assign(&mut self, child: NodeId, parent: NodeId, weight: f64) {
        let idx = self
            .entries
            .binary_search_by_key(&child, |e| e.0)
            .expect("candidate pair child always has a tree entry");
        self.entries[idx] = (child, parent, weight);
    }
}

/// Optimizer state: the inferred network so far, per-cascade propagation
/// trees, the candidate-pair index with per-node cascade lists, and the
/// audit log of selections.
pub struct GreedyState {
    advantage: f64,
    pairs: BTreeMap<(NodeId, NodeId), Vec<PairOccurrence>>,
    trees: Vec<TreeAssign>,
    per_node_cascades: Vec<Vec<u32>>,
    network: DirectedNetwork,
    chosen: Vec<AuditRecord>,
    objective: f64,
    gain_evaluations: u64,
    stop_reason: StopReason,
}

/// Result of a greedy run.
pub struct GreedyRun {
    pub network: DirectedNetwork,
    pub bound_reports: Vec<BoundReport>,
    pub state: GreedyState,
}

struct GainEval {
    gain: f64,
    /// Cascades whose tree must reassign to the candidate, with the weight
    /// the new parent edge takes there and whether the improvement is
    /// strict. Equal-weight reassignments toward a smaller parent id carry
    /// zero gain but keep the maintained trees identical to a from-scratch
    /// rebuild, which breaks ties the same way.
    improved: Vec<(u32, f64, bool)>,
}

impl GreedyState {
    fn build(cascades: &CascadeSet, config: &TransmissionConfig) -> Result<Self, InferError> {
        let n = cascades.node_count();
        let advantage = config.network_edge_advantage();
        let mut pairs: BTreeMap<(NodeId, NodeId), Vec<PairOccurrence>> = BTreeMap::new();
        let mut trees = Vec::with_capacity(cascades.len());
        let mut per_node_cascades = alloc::vec![Vec::new(); n];
        let mut any_multi = false;

        for (ci, cascade) in cascades.iter().enumerate() {
            let infected = cascade.infected_sorted();
            if infected.len() >= 2 {
                any_multi = true;
            }
            for &(v, _) in &infected {
                per_node_cascades[v as usize].push(ci as u32);
            }
            let mut entries: Vec<(NodeId, NodeId, f64)> = Vec::new();
            for (idx, &(v, t_v)) in infected.iter().enumerate().skip(1) {
                let mut best: Option<(NodeId, f64)> = None;
                for &(u, t_u) in &infected[..idx] {
                    let Some(base) = config.edge_weight(false, t_u, t_v) else {
                        continue; // exact time tie
                    };
                    pairs
                        .entry((u, v))
                        .or_default()
                        .push(PairOccurrence { cascade: ci as u32, base_weight: base });
                    let better = match best {
                        None => true,
                        Some((bu, bw)) => base > bw || (base == bw && u < bu),
                    };
                    if better {
                        best = Some((u, base));
                    }
                }
                if let Some((u, w)) = best {
                    entries.push((v, u, w));
                }
            }
            entries.sort_unstable_by_key(|e| e.0);
            trees.push(TreeAssign { root: cascade.root(), entries });
        }

        if !any_multi {
            return Err(InferError::NoMultiNodeCascade);
        }

        Ok(Self {
            advantage,
            pairs,
            trees,
            per_node_cascades,
            network: DirectedNetwork::empty(n),
            chosen: Vec::new(),
            objective: 0.0,
            gain_evaluations: 0,
            stop_reason: StopReason::GainsExhausted,
        })
    }

    fn eval_gain(&self, edge: (NodeId, NodeId)) -> GainEval {
        let mut gain = 0.0;
        let mut improved = Vec::new();
        if let Some(occurrences) = self.pairs.get(&edge) {
            for occ in occurrences {
                let new_weight = occ.base_weight + self.advantage;
                let tree = &self.trees[occ.cascade as usize];
                let (current_parent, current) = tree.parent_of(edge.1);
                if new_weight > current {
                    gain += new_weight - current;
                    improved.push((occ.cascade, new_weight, true));
                } else if new_weight == current && edge.0 < current_parent {
                    improved.push((occ.cascade, new_weight, false));
                }
            }
        }
        GainEval { gain, improved }
    }

    /// Localized update: adding `(j, i)` can only change the optimal parent
    /// of `i`, and only in the cascades where the new weight wins.
    fn apply(&mut self, edge: (NodeId, NodeId), eval: &GainEval) {
        self.network.insert_edge(edge.0, edge.1);
        for &(cascade, new_weight, _) in &eval.improved {
            self.trees[cascade as usize].assign(edge.1, edge.0, new_weight);
        }
        self.objective += eval.gain;
    }

    /// Current inferred network.
    pub fn network(&self) -> &DirectedNetwork {
        &self.network
    }

    /// Objective improvement over the empty (all-epsilon) graph.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Selections in order, with exact gains.
    pub fn audit(&self) -> &[AuditRecord] {
        &self.chosen
    }

    /// Number of marginal-gain evaluations the strategy performed.
    pub fn gain_evaluations(&self) -> u64 {
        self.gain_evaluations
    }

    pub fn stop_reason(&self) -> StopReason {
        self.stop_reason
    }

    /// Number of candidate pairs (ordered pairs co-infected in time order in
    /// at least one cascade).
    pub fn candidate_count(&self) -> usize {
        self.pairs.len()
    }

    /// Cascades in which `node` is infected.
    pub fn cascades_containing(&self, node: NodeId) -> &[u32] {
        &self.per_node_cascades[node as usize]
    }

    /// The optimizer's current propagation tree for cascade `index`.
    pub fn tree(&self, index: usize) -> CascadeTree {
        let t = &self.trees[index];
        CascadeTree::from_assignments(t.root, t.entries.clone())
    }

    pub fn num_trees(&self) -> usize {
        self.trees.len()
    }
}

/// Marginal gain of adding `edge` to the state's network: the summed strict
/// improvement over the current parents, plus the cascades it strictly
/// improves. Pairs never co-infected in time order gain exactly zero.
pub fn marginal_gain(state: &GreedyState, edge: (NodeId, NodeId)) -> (f64, Vec<u32>) {
    let eval = state.eval_gain(edge);
    (
        eval.gain,
        eval.improved
            .iter()
            .filter(|&&(_, _, strict)| strict)
            .map(|&(c, _, _)| c)
            .collect(),
    )
}

/// Exact online bound at `k`: current objective plus the `min(k, B)` largest
/// positive marginal gains over all unchosen candidates, where `B` counts
/// the positive ones. The unknown optimum over `k`-edge networks lies
/// between `objective` and `bound`.
pub fn online_bound(state: &GreedyState, k: usize) -> BoundReport {
    let gains: Vec<f64> = state
        .pairs
        .keys()
        .filter(|&&(u, v)| !state.network.contains_edge(u, v))
        .map(|&edge| state.eval_gain(edge).gain)
        .collect();
    bound_from_gains(state.objective, gains, k)
}

fn bound_from_gains(objective: f64, mut gains: Vec<f64>, k: usize) -> BoundReport {
    gains.retain(|&g| g > 0.0);
    let take = k.min(gains.len());
    if take > 0 {
        gains.select_nth_unstable_by(take - 1, |a, b| b.total_cmp(a));
    }
    let bound = objective + gains[..take].iter().sum::<f64>();
    let ratio = if bound > 0.0 { objective / bound } else { 1.0 };
    BoundReport { k, objective, bound, ratio }
}

/// Lazy-queue entry: a gain upper bound for a candidate, stamped with the
/// selection round it was computed at. Max-heap on gain; ties pop in
/// ascending `(src, dst)` order to match the reference strategy exactly.
#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    gain: f64,
    edge: (NodeId, NodeId),
    round: u32,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.gain == other.gain && self.edge == other.edge
    }
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.edge.cmp(&self.edge))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Run the greedy optimizer over a cascade corpus.
///
/// Returns the inferred network, the online-bound reports (one per
/// iteration under [`StoppingRule::BoundFraction`], otherwise a single
/// exact report at the final size), and the full optimizer state with its
/// audit log. Regardless of the stopping rule the loop halts when no
/// candidate has strictly positive gain.
pub fn run_greedy(
    cascades: &CascadeSet,
    config: &TransmissionConfig,
    stopping: StoppingRule,
    strategy: Strategy,
) -> Result<GreedyRun, InferError> {
    if let StoppingRule::BoundFraction(x) = stopping {
        if !(x > 0.0 && x < 1.0) {
            return Err(InferError::InvalidBoundFraction(x));
        }
    }
    let mut state = GreedyState::build(cascades, config)?;
    let mut reports = Vec::new();

    let budget = match stopping {
        StoppingRule::FixedK(k) => k,
        _ => usize::MAX,
    };

    match strategy {
        Strategy::Naive => run_naive(&mut state, stopping, budget, &mut reports),
        Strategy::LazyLocalized => run_lazy(&mut state, stopping, budget, &mut reports),
    }

    if !matches!(stopping, StoppingRule::BoundFraction(_)) {
        reports.push(online_bound(&state, state.chosen.len()));
    }

    Ok(GreedyRun { network: state.network.clone(), bound_reports: reports, state })
}

fn run_naive(
    state: &mut GreedyState,
    stopping: StoppingRule,
    budget: usize,
    reports: &mut Vec<BoundReport>,
) {
    while state.chosen.len() < budget {
        let mut best: Option<((NodeId, NodeId), GainEval)> = None;
        let mut gains: Vec<f64> = Vec::with_capacity(state.pairs.len());
        let candidates: Vec<(NodeId, NodeId)> = state
            .pairs
            .keys()
            .filter(|&&(u, v)| !state.network.contains_edge(u, v))
            .copied()
            .collect();
        for edge in candidates {
            let eval = state.eval_gain(edge);
            state.gain_evaluations += 1;
            gains.push(eval.gain);
            // Strict improvement keeps the first (lexicographically
            // smallest) maximizer.
            if best.as_ref().is_none_or(|(_, b)| eval.gain > b.gain) {
                best = Some((edge, eval));
            }
        }
        let Some((edge, eval)) = best else {
            state.stop_reason = StopReason::GainsExhausted;
            return;
        };
        if eval.gain <= 0.0 {
            state.stop_reason = StopReason::GainsExhausted;
            return;
        }
        let iteration = state.chosen.len() + 1;
        let cheap = bound_from_gains(state.objective, gains, iteration);
        state.apply(edge, &eval);
        state.chosen.push(AuditRecord {
            iteration,
            edge,
            gain: eval.gain,
            objective: state.objective,
            bound: cheap.bound,
        });
        if stop_after_selection(state, stopping, iteration, reports) {
            return;
        }
    }
    state.stop_reason = StopReason::ReachedEdgeBudget;
}

fn run_lazy(
    state: &mut GreedyState,
    stopping: StoppingRule,
    budget: usize,
    reports: &mut Vec<BoundReport>,
) {
    let mut queue: BinaryHeap<QueueEntry> = BinaryHeap::with_capacity(state.pairs.len());
    let seed_edges: Vec<(NodeId, NodeId)> = state.pairs.keys().copied().collect();
    for edge in seed_edges {
        let eval = state.eval_gain(edge);
        state.gain_evaluations += 1;
        queue.push(QueueEntry { gain: eval.gain, edge, round: 0 });
    }

    let mut round: u32 = 0;
    while state.chosen.len() < budget {
        let Some(top) = queue.pop() else {
            state.stop_reason = StopReason::GainsExhausted;
            return;
        };
        if top.round != round {
            // Stale upper bound: refresh and reinsert.
            let eval = state.eval_gain(top.edge);
            state.gain_evaluations += 1;
            queue.push(QueueEntry { gain: eval.gain, edge: top.edge, round });
            continue;
        }
        if top.gain <= 0.0 {
            state.stop_reason = StopReason::GainsExhausted;
            return;
        }
        // Fresh entry at the top: exact gain dominating every upper bound.
        let eval = state.eval_gain(top.edge);
        state.gain_evaluations += 1;
        let iteration = state.chosen.len() + 1;
        let remaining: Vec<f64> = queue.iter().map(|e| e.gain).collect();
        let cheap = bound_from_gains(state.objective + eval.gain, remaining, iteration - 1);
        state.apply(top.edge, &eval);
        round += 1;
        state.chosen.push(AuditRecord {
            iteration,
            edge: top.edge,
            gain: eval.gain,
            objective: state.objective,
            bound: cheap.bound,
        });
        if stop_after_selection(state, stopping, iteration, reports) {
            return;
        }
    }
    state.stop_reason = StopReason::ReachedEdgeBudget;
}

/// Bound-fraction stopping: after each selection compare the objective with
/// the exact online bound at `k = iteration`.
fn stop_after_selection(
    state: &mut GreedyState,
    stopping: StoppingRule,
    iteration: usize,
    reports: &mut Vec<BoundReport>,
) -> bool {
    let StoppingRule::BoundFraction(x) = stopping else {
        return false;
    };
    let report = online_bound(state, iteration);
    let met = report.objective >= x * report.bound;
    reports.push(report);
    if met {
        state.stop_reason = StopReason::BoundFractionMet;
    }
    met
}

/// An edge with its heuristic score, as ranked by [`baseline_infer`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredEdge {
    pub edge: (NodeId, NodeId),
    pub score: f64,
}

/// Baseline heuristic: score every ordered pair by the summed incubation
/// density over the cascades where it is co-infected in time order, and
/// return the top `k` (ties in ascending edge order). Pairs that never
/// co-occur score zero and are omitted, so they can never outrank a
/// positive pair.
pub fn baseline_infer(
    cascades: &CascadeSet,
    config: &TransmissionConfig,
    k: usize,
) -> Vec<ScoredEdge> {
    let mut scores: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
    for cascade in cascades.iter() {
        let infected = cascade.infected_sorted();
        for (idx, &(v, t_v)) in infected.iter().enumerate().skip(1) {
            for &(u, t_u) in &infected[..idx] {
                if t_u < t_v {
                    let density = config
                        .incubation_density(t_v - t_u)
                        .expect("positive finite gap");
                    *scores.entry((u, v)).or_insert(0.0) += density;
                }
            }
        }
    }
    let mut ranked: Vec<ScoredEdge> = scores
        .into_iter()
        .map(|(edge, score)| ScoredEdge { edge, score })
        .collect();
    // Descending score; BTreeMap order plus stable sort keeps ties in
    // ascending edge order.
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score));
    ranked.truncate(k);
    ranked
}

//! Generative cascade simulation, corpus assembly with coverage accounting,
//! and robustness perturbations.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::cascade::{Cascade, CascadeSet};
use crate::graph::{DirectedNetwork, NodeId};
use crate::transmission::TransmissionConfig;

use super::SynthError;

/// Parameters of a corpus simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationParams {
    pub config: TransmissionConfig,
    /// Stop once this fraction of the true edges has transmitted in at least
    /// one cascade. In `[0, 1]`.
    pub coverage_target: f64,
    /// Hard cap on the number of kept (multi-node) cascades.
    pub max_cascades: usize,
    /// Fraction of infected nodes per cascade whose hit times are erased to
    /// infinity after simulation. In `[0, 1)`.
    pub missing_fraction: f64,
    /// Fraction of infected nodes per cascade whose hit times are re-drawn
    /// uniformly over the cascade's observed time span, as if infected by an
    /// exogenous source. In `[0, 1)`.
    pub external_fraction: f64,
    pub rng_seed: u64,
}

/// How much evidence a simulated corpus carries about the true network.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageStats {
    /// Number of kept cascades (single-node cascades are discarded: they
    /// carry no pairwise evidence).
    pub num_cascades: usize,
    /// Total transmission events, i.e. the sum of cascade sizes minus one,
    /// counted before any perturbation.
    pub total_transmissions: usize,
    /// Fraction of true edges that transmitted in at least one cascade.
    pub covered_fraction: f64,
    /// `edge_participation[l - 1]` is the number of true edges that
    /// transmitted in at least `l` cascades.
    pub edge_participation: Vec<usize>,
    /// False when the loop gave up (cap or attempt budget) before reaching
    /// the coverage target.
    pub target_reached: bool,
}

/// Heap entry for pending infections, ordered so the earliest tentative
/// arrival pops first (ties by node, then parent, for determinism).
#[derive(Debug, Clone, Copy, PartialEq)]
struct Arrival {
    time: f64,
    node: NodeId,
    parent: NodeId,
}

impl Eq for Arrival {}

impl Ord for Arrival {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap and we want the minimum time.
        other
            .time
            .total_cmp(&self.time)
            .then(other.node.cmp(&self.node))
            .then(other.parent.cmp(&self.parent))
    }
}

impl PartialOrd for Arrival {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Simulate one cascade from `root`: the root is hit at time 0; whenever a
/// node is infected, each of its currently uninfected out-neighbors is
/// independently infected with probability `beta` after an incubation delay
/// drawn from the configured density. Pending infections are processed in
/// ascending tentative time, so every node keeps the earliest successful
/// transmission and the cascade is a tree.
pub fn simulate_cascade<R: Rng + ?Sized>(
    network: &DirectedNetwork,
    config: &TransmissionConfig,
    root: NodeId,
    rng: &mut R,
) -> Result<Cascade, SynthError> {
    simulate_cascade_with_edges(network, config, root, rng).map(|(c, _)| c)
}

/// As [`simulate_cascade`], additionally reporting the `(parent, child)`
/// transmission edges for coverage accounting.
fn simulate_cascade_with_edges<R: Rng + ?Sized>(
    network: &DirectedNetwork,
    config: &TransmissionConfig,
    root: NodeId,
    rng: &mut R,
) -> Result<(Cascade, Vec<(NodeId, NodeId)>), SynthError> {
    let n = network.node_count();
    if root as usize >= n {
        return Err(SynthError::RootOutOfRange(root));
    }
    let mut hit_times = vec![f64::INFINITY; n];
    let mut transmissions = Vec::new();
    let mut pending = BinaryHeap::new();
    pending.push(Arrival { time: 0.0, node: root, parent: root });

    while let Some(Arrival { time, node, parent }) = pending.pop() {
        if hit_times[node as usize].is_finite() {
            continue; // an earlier transmission already won this node
        }
        hit_times[node as usize] = time;
        if node != parent {
            transmissions.push((parent, node));
        }
        for w in network.out_neighbors(node) {
            if hit_times[w as usize].is_finite() {
                continue;
            }
            if rng.gen::<f64>() < config.beta {
                let delta = config.sample_incubation(rng);
                pending.push(Arrival { time: time + delta, node: w, parent: node });
            }
        }
    }

    let cascade = Cascade::new(hit_times).expect("root always has a finite time");
    Ok((cascade, transmissions))
}

/// Simulate a cascade corpus: roots are drawn uniformly at random and
/// single-node cascades discarded until the coverage target is met or the
/// cascade cap is reached, then the perturbation passes run. Each attempt
/// uses an independent RNG stream derived from `(rng_seed, attempt)`, so
/// corpora are reproducible and nested across growing caps.
pub fn simulate_corpus(
    network: &DirectedNetwork,
    params: &SimulationParams,
) -> Result<(CascadeSet, CoverageStats), SynthError> {
    if !(0.0..=1.0).contains(&params.coverage_target) {
        return Err(SynthError::FractionOutOfRange(params.coverage_target));
    }
    for frac in [params.missing_fraction, params.external_fraction] {
        if !(0.0..1.0).contains(&frac) {
            return Err(SynthError::FractionOutOfRange(frac));
        }
    }

    let n = network.node_count();
    if n < 2 {
        return Err(SynthError::TooFewNodes(n));
    }
    let true_edges = network.edge_vec();
    let mut participation = vec![0usize; true_edges.len()];
    let edge_slot = |edge: &(NodeId, NodeId)| true_edges.binary_search(edge).ok();

    let covered = |participation: &[usize]| -> f64 {
        if true_edges.is_empty() {
            return 1.0;
        }
        let hit = participation.iter().filter(|&&c| c > 0).count();
        hit as f64 / true_edges.len() as f64
    };

    let mut kept: Vec<(u64, Cascade)> = Vec::new();
    let mut total_transmissions = 0usize;
    // Attempts that produce singleton cascades do not count toward the cap;
    // bound them so degenerate setups (e.g. beta so small nothing spreads)
    // terminate.
    let attempt_budget = params.max_cascades.saturating_mul(50).max(10_000) as u64;
    let mut attempt: u64 = 0;
    while kept.len() < params.max_cascades && covered(&participation) < params.coverage_target {
        if attempt >= attempt_budget {
            break;
        }
        let mut rng = stream_rng(params.rng_seed, attempt, StreamKind::Simulate);
        attempt += 1;
        let root = rng.gen_range(0..n) as NodeId;
        let (cascade, transmissions) =
            simulate_cascade_with_edges(network, &params.config, root, &mut rng)?;
        if cascade.size() < 2 {
            continue;
        }
        total_transmissions += transmissions.len();
        for edge in &transmissions {
            if let Some(slot) = edge_slot(edge) {
                participation[slot] += 1;
            }
        }
        kept.push((attempt - 1, cascade));
    }
    let target_reached = covered(&participation) >= params.coverage_target;

    let cascades: Vec<Cascade> = kept
        .into_iter()
        .map(|(attempt, cascade)| perturb(cascade, params, attempt))
        .collect();

    let max_count = participation.iter().copied().max().unwrap_or(0);
    let edge_participation = (1..=max_count)
        .map(|l| participation.iter().filter(|&&c| c >= l).count())
        .collect();

    let stats = CoverageStats {
        num_cascades: cascades.len(),
        total_transmissions,
        covered_fraction: covered(&participation),
        edge_participation,
        target_reached,
    };
    let set = CascadeSet::new(n, cascades).expect("cascades share the network's node universe");
    Ok((set, stats))
}

enum StreamKind {
    Simulate = 0,
    Missing = 1,
    External = 2,
    ExternalTimes = 3,
}

fn stream_rng(seed: u64, attempt: u64, kind: StreamKind) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(attempt * 4 + kind as u64);
    rng
}

/// Apply the missing-node and external-source perturbations to one cascade.
///
/// Victim counts are `ceil(fraction * size)`. Victims are prefixes of a
/// seeded shuffle that does not depend on the fraction, so the perturbed
/// information content shrinks monotonically as the fraction grows.
fn perturb(cascade: Cascade, params: &SimulationParams, attempt: u64) -> Cascade {
    if params.missing_fraction == 0.0 && params.external_fraction == 0.0 {
        return cascade;
    }
    let mut hit_times = cascade.hit_times().to_vec();

    if params.missing_fraction > 0.0 {
        let mut infected: Vec<NodeId> = cascade.infected().map(|(v, _)| v).collect();
        let size = infected.len();
        // Keep at least one finite time so the cascade stays well formed.
        let victims = ceil_count(params.missing_fraction, size).min(size - 1);
        infected.shuffle(&mut stream_rng(params.rng_seed, attempt, StreamKind::Missing));
        for &v in &infected[..victims] {
            hit_times[v as usize] = f64::INFINITY;
        }
    }

    if params.external_fraction > 0.0 {
        let mut infected: Vec<NodeId> = hit_times
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_finite())
            .map(|(v, _)| v as NodeId)
            .collect();
        let size = infected.len();
        let victims = ceil_count(params.external_fraction, size).min(size);
        let span_min = infected.iter().map(|&v| hit_times[v as usize]).fold(f64::MAX, f64::min);
        let span_max = infected.iter().map(|&v| hit_times[v as usize]).fold(f64::MIN, f64::max);
        infected.shuffle(&mut stream_rng(params.rng_seed, attempt, StreamKind::External));
        let mut times = stream_rng(params.rng_seed, attempt, StreamKind::ExternalTimes);
        for &v in &infected[..victims] {
            if span_max > span_min {
                hit_times[v as usize] = span_min + times.gen::<f64>() * (span_max - span_min);
            }
        }
    }

    Cascade::new(hit_times).expect("perturbation keeps at least one finite time")
}

fn ceil_count(fraction: f64, size: usize) -> usize {
    libm::ceil(fraction * size as f64) as usize
}

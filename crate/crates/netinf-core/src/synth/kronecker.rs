//! Stochastic Kronecker graph sampling from a 2x2 probability seed.

use alloc::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::graph::{DirectedNetwork, NodeId};

use super::SynthError;

/// Largest power for which the dense per-pair sweep stays tractable.
const MAX_DENSE_POWER: u32 = 12;
/// Largest supported power overall (node ids stay well inside u32).
const MAX_POWER: u32 = 24;

/// Parameters of the stochastic Kronecker generator. The network has
/// `2^power` nodes; the probability of an ordered pair `(u, v)` is the
/// product over bit positions `b` of `seed_matrix[u_b][v_b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KroneckerParams {
    /// Row-major 2x2 matrix of probabilities in `[0, 1]`.
    pub seed_matrix: [[f64; 2]; 2],
    /// Kronecker power; the node count is `2^power`.
    pub power: u32,
    /// When set, sample exactly this many distinct edges proportional to the
    /// pair probabilities instead of including each pair independently.
    pub target_edges: Option<usize>,
}

/// Sample a Kronecker network.
///
/// Without a target, every ordered non-loop pair is included independently
/// with its product probability. With `target_edges = m`, pairs are drawn by
/// descending the seed matrix `power` times (each level picking a quadrant
/// proportional to its entry) and rejected on self-loops and duplicates
/// until `m` distinct edges are placed; this honors exact edge-count
/// targets.
pub fn generate_kronecker(
    params: &KroneckerParams,
    rng_seed: u64,
) -> Result<DirectedNetwork, SynthError> {
    for row in &params.seed_matrix {
        for &p in row {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(SynthError::ProbabilityOutOfRange(p));
            }
        }
    }
    if params.power < 1 || params.power > MAX_POWER {
        return Err(SynthError::PowerOutOfRange { power: params.power, max: MAX_POWER });
    }
    let n: usize = 1usize << params.power;
    let max_edges = n * (n - 1);
    let mut rng = ChaCha12Rng::seed_from_u64(rng_seed);

    match params.target_edges {
        None => {
            if params.power > MAX_DENSE_POWER {
                return Err(SynthError::PowerOutOfRange {
                    power: params.power,
                    max: MAX_DENSE_POWER,
                });
            }
            let mut g = DirectedNetwork::empty(n);
            for u in 0..n as NodeId {
                for v in 0..n as NodeId {
                    if u == v {
                        continue;
                    }
                    if rng.gen::<f64>() < pair_probability(&params.seed_matrix, params.power, u, v)
                    {
                        g.insert_edge(u, v);
                    }
                }
            }
            Ok(g)
        }
        Some(target) => {
            if target > max_edges {
                return Err(SynthError::InfeasibleEdgeTarget { target, max: max_edges });
            }
            let total: f64 = params.seed_matrix.iter().flatten().sum();
            if total <= 0.0 && target > 0 {
                return Err(SynthError::EdgeTargetUnreachable { target, placed: 0 });
            }
            let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
            let attempt_cap = (target.saturating_mul(1000)).max(1_000_000);
            let mut attempts = 0usize;
            while edges.len() < target {
                if attempts >= attempt_cap {
                    return Err(SynthError::EdgeTargetUnreachable {
                        target,
                        placed: edges.len(),
                    });
                }
                attempts += 1;
                let (u, v) = descend(&params.seed_matrix, total, params.power, &mut rng);
                if u != v {
                    edges.insert((u, v));
                }
            }
            Ok(DirectedNetwork::from_edges(n, edges).expect("sampled edges are valid"))
        }
    }
}

fn pair_probability(seed: &[[f64; 2]; 2], power: u32, u: NodeId, v: NodeId) -> f64 {
    let mut p = 1.0;
    for b in 0..power {
        let ub = ((u >> b) & 1) as usize;
        let vb = ((v >> b) & 1) as usize;
        p *= seed[ub][vb];
    }
    p
}

/// Pick one ordered pair with probability proportional to its seed product.
fn descend<R: Rng>(seed: &[[f64; 2]; 2], total: f64, power: u32, rng: &mut R) -> (NodeId, NodeId) {
    let mut u: NodeId = 0;
    let mut v: NodeId = 0;
    for _ in 0..power {
        let mut r = rng.gen::<f64>() * total;
        let mut picked = (1, 1);
        'outer: for (i, row) in seed.iter().enumerate() {
            for (j, &p) in row.iter().enumerate() {
                r -= p;
                if r < 0.0 {
                    picked = (i, j);
                    break 'outer;
                }
            }
        }
        u = (u << 1) | picked.0 as NodeId;
        v = (v << 1) | picked.1 as NodeId;
    }
    (u, v)
}

//! Forest Fire growth model for directed networks with heavy-tailed degrees.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::graph::{DirectedNetwork, NodeId};

use super::SynthError;

/// Forest Fire parameters: each arriving node links a uniformly chosen
/// ambassador, then recursively "burns" outward, linking every burned node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestFireParams {
    pub n: usize,
    /// Forward burning probability: out-neighbor burn counts are geometric
    /// with mean `p / (1 - p)`. Zero disables burning entirely, leaving a
    /// pure ambassador tree.
    pub forward_prob: f64,
    /// Backward burning probability, applied to in-neighbors the same way.
    pub backward_prob: f64,
}

/// Grow a Forest Fire network. Edges point from the arriving node to the
/// nodes it burned.
pub fn generate_forest_fire(
    params: &ForestFireParams,
    rng_seed: u64,
) -> Result<DirectedNetwork, SynthError> {
    for p in [params.forward_prob, params.backward_prob] {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(SynthError::ProbabilityOutOfRange(p));
        }
    }
    if params.n < 2 {
        return Err(SynthError::TooFewNodes(params.n));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(rng_seed);
    let mut out_adj: Vec<Vec<NodeId>> = vec![Vec::new(); params.n];
    let mut in_adj: Vec<Vec<NodeId>> = vec![Vec::new(); params.n];
    let mut visited = vec![0u32; params.n];
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();

    for t in 1..params.n {
        let newcomer = t as NodeId;
        let ambassador = rng.gen_range(0..t) as NodeId;
        let mut burned = vec![ambassador];
        visited[ambassador as usize] = t as u32;

        if params.forward_prob > 0.0 {
            let mut frontier = VecDeque::from([ambassador]);
            while let Some(w) = frontier.pop_front() {
                let fresh = visited.as_slice();
                let mut forward: Vec<NodeId> = out_adj[w as usize]
                    .iter()
                    .copied()
                    .filter(|&x| fresh[x as usize] != t as u32)
                    .collect();
                let mut backward: Vec<NodeId> = in_adj[w as usize]
                    .iter()
                    .copied()
                    .filter(|&x| fresh[x as usize] != t as u32)
                    .collect();
                let n_fwd = geometric_capped(&mut rng, params.forward_prob, forward.len());
                let n_bwd = geometric_capped(&mut rng, params.backward_prob, backward.len());
                pick_in_place(&mut rng, &mut forward, n_fwd);
                pick_in_place(&mut rng, &mut backward, n_bwd);
                for x in forward.into_iter().chain(backward) {
                    if visited[x as usize] != t as u32 {
                        visited[x as usize] = t as u32;
                        burned.push(x);
                        frontier.push_back(x);
                    }
                }
            }
        }

        for target in burned {
            edges.push((newcomer, target));
            out_adj[newcomer as usize].push(target);
            in_adj[target as usize].push(newcomer);
        }
    }

    Ok(DirectedNetwork::from_edges(params.n, edges).expect("growth produces valid edges"))
}

/// Geometric draw with success probability `p` (mean `p / (1 - p)`),
/// truncated at `cap`.
fn geometric_capped<R: Rng>(rng: &mut R, p: f64, cap: usize) -> usize {
    let mut k = 0;
    while k < cap && rng.gen::<f64>() < p {
        k += 1;
    }
    k
}

/// Keep a uniform sample of `amount` items at the front of `items`.
fn pick_in_place<R: Rng>(rng: &mut R, items: &mut Vec<NodeId>, amount: usize) {
    for i in 0..amount {
        let j = rng.gen_range(i..items.len());
        items.swap(i, j);
    }
    items.truncate(amount);
}

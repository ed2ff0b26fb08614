//! Independent oracles and helpers shared by the property and acceptance
//! suites. Everything here recomputes results from first principles, staying
//! off the library's own fast paths.

#![allow(dead_code)]

use netinf_core::{Cascade, DirectedNetwork, NodeId, TransmissionConfig};

/// Brute-force cascade likelihood: enumerate every combination of parent
/// choices (each non-root infected node picks any strictly earlier infected
/// node), multiply the per-edge transmission probabilities, and sum over
/// combinations. Exponential in cascade size; keep sizes small.
pub fn brute_force_likelihood(
    cascade: &Cascade,
    network: &DirectedNetwork,
    config: &TransmissionConfig,
) -> f64 {
    let infected = cascade.infected_sorted();
    let mut choice_probs: Vec<Vec<f64>> = Vec::new();
    for (idx, &(v, t_v)) in infected.iter().enumerate().skip(1) {
        let mut probs = Vec::new();
        for &(u, t_u) in &infected[..idx] {
            if t_u < t_v {
                let p = config
                    .transmission_probability(network.contains_edge(u, v), t_v - t_u)
                    .unwrap();
                probs.push(p);
            }
        }
        choice_probs.push(probs);
    }
    // A node with no feasible parent forces likelihood zero.
    if choice_probs.iter().any(|p| p.is_empty()) {
        return 0.0;
    }
    let mut total = 0.0;
    let mut stack: Vec<usize> = vec![0; choice_probs.len()];
    'outer: loop {
        let mut product = 1.0;
        for (node, &pick) in stack.iter().enumerate() {
            product *= choice_probs[node][pick];
        }
        total += product;
        // Odometer increment over the choice indices.
        for node in 0..stack.len() {
            stack[node] += 1;
            if stack[node] < choice_probs[node].len() {
                continue 'outer;
            }
            stack[node] = 0;
        }
        break;
    }
    total
}

/// Exhaustive maximum-weight propagation tree: enumerate every parent
/// assignment over the cascade's feasible pairs and return the best summed
/// weight. Mirrors the per-node candidate construction but optimizes by
/// enumeration rather than per-node argmax.
pub fn brute_force_best_tree_weight(
    cascade: &Cascade,
    network: &DirectedNetwork,
    config: &TransmissionConfig,
) -> Option<f64> {
    let infected = cascade.infected_sorted();
    let mut choice_weights: Vec<Vec<f64>> = Vec::new();
    for (idx, &(v, t_v)) in infected.iter().enumerate().skip(1) {
        let mut weights = Vec::new();
        for &(u, t_u) in &infected[..idx] {
            if let Some(w) = config.edge_weight(network.contains_edge(u, v), t_u, t_v) {
                weights.push(w);
            }
        }
        if !weights.is_empty() {
            choice_weights.push(weights);
        }
    }
    if choice_weights.is_empty() {
        return Some(0.0);
    }
    let mut best: Option<f64> = None;
    let mut stack: Vec<usize> = vec![0; choice_weights.len()];
    'outer: loop {
        let mut sum = 0.0;
        for (node, &pick) in stack.iter().enumerate() {
            sum += choice_weights[node][pick];
        }
        if best.is_none_or(|b| sum > b) {
            best = Some(sum);
        }
        for node in 0..stack.len() {
            stack[node] += 1;
            if stack[node] < choice_weights[node].len() {
                continue 'outer;
            }
            stack[node] = 0;
        }
        break;
    }
    best
}

/// Spearman rank correlation with average ranks on ties.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let rx = ranks(xs);
    let ry = ranks(ys);
    pearson(&rx, &ry)
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return 0.0;
    }
    cov / (vx * vy).sqrt()
}

/// Deterministic pseudo-random cascade over `n` nodes for oracle tests:
/// `size` infected nodes with distinct times on a fixed grid.
pub fn synthetic_cascade(n: usize, size: usize, salt: u64) -> Cascade {
    assert!(size <= n);
    let mut state = salt.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut nodes: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = i + (next() as usize) % (n - i);
        nodes.swap(i, j);
    }
    let mut times = vec![f64::INFINITY; n];
    for (slot, &v) in nodes[..size].iter().enumerate() {
        // Distinct, irregular, strictly increasing times.
        times[v] = slot as f64 + ((next() % 1000) as f64) / 1001.0;
    }
    Cascade::new(times).unwrap()
}

/// Deterministic pseudo-random network on `n` nodes with roughly
/// `density * n * (n-1)` edges.
pub fn synthetic_network(n: usize, density: f64, salt: u64) -> DirectedNetwork {
    let mut state = salt.wrapping_mul(0xD130_2B97_9AF6_8C25).wrapping_add(7);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut g = DirectedNetwork::empty(n);
    for u in 0..n as NodeId {
        for v in 0..n as NodeId {
            if u != v && ((next() % 10_000) as f64) / 10_000.0 < density {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

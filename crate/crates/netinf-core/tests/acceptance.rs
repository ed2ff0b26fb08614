//! Acceptance suite: one test per criterion, each printing a summary line.
//!
//! Every tolerance is pinned in the assertions. The desk-scale experiments
//! freeze their RNG seeds; all randomness flows through seeded generators,
//! so each criterion is deterministic.

mod common;

use std::time::Instant;

use common::{brute_force_best_tree_weight, brute_force_likelihood, spearman};
use netinf_core::*;

fn exp_config(beta: f64) -> TransmissionConfig {
    TransmissionConfig::new(IncubationModel::Exponential, 1.0, beta, 1e-9).unwrap()
}

/// 256-node core-periphery Kronecker instance with 360 edges.
fn desk_network() -> DirectedNetwork {
    generate_kronecker(
        &KroneckerParams {
            seed_matrix: [[0.962, 0.535], [0.535, 0.107]],
            power: 8,
            target_edges: Some(360),
        },
        8,
    )
    .unwrap()
}

fn desk_corpus(config: TransmissionConfig) -> (CascadeSet, CoverageStats) {
    let params = SimulationParams {
        config,
        coverage_target: 0.99,
        max_cascades: 20_000,
        missing_fraction: 0.0,
        external_fraction: 0.0,
        rng_seed: 7,
    };
    simulate_corpus(&desk_network(), &params).unwrap()
}

/// Greedy ranking of `k` edges and its break-even point against `truth`.
fn netinf_break_even(
    truth: &DirectedNetwork,
    set: &CascadeSet,
    config: &TransmissionConfig,
    k: usize,
) -> (f64, GreedyRun) {
    let run = run_greedy(set, config, StoppingRule::FixedK(k), Strategy::LazyLocalized).unwrap();
    let ordered: Vec<(NodeId, NodeId)> = run.state.audit().iter().map(|r| r.edge).collect();
    let bep = break_even(&pr_sweep(&ordered, truth).unwrap()).value;
    (bep, run)
}

fn baseline_break_even(
    truth: &DirectedNetwork,
    set: &CascadeSet,
    config: &TransmissionConfig,
    k: usize,
) -> f64 {
    let ordered: Vec<(NodeId, NodeId)> =
        baseline_infer(set, config, k).iter().map(|s| s.edge).collect();
    break_even(&pr_sweep(&ordered, truth).unwrap()).value
}

// Criterion 1: on 100 random cascades with at most 7 infected nodes over
// random 10-node networks, the triangular-product exact likelihood matches
// brute-force enumeration over all parent assignments to relative 1e-9,
// within a minute.
#[test]
fn criterion_01_exact_likelihood_matches_brute_force() {
    let start = Instant::now();
    let mut checked = 0;
    for case in 0..100u64 {
        let size = 2 + (case % 6) as usize; // 2..=7 infected
        let cascade = common::synthetic_cascade(10, size, case * 31 + 5);
        let network = common::synthetic_network(10, 0.3, case * 17 + 1);
        let config = if case % 3 == 0 {
            TransmissionConfig::new(IncubationModel::PowerLaw, 2.0, 0.4, 1e-9).unwrap()
        } else {
            exp_config(0.5)
        };
        let exact = exact_cascade_likelihood(&cascade, &network, &config);
        let brute = brute_force_likelihood(&cascade, &network, &config);
        let rel = if brute == 0.0 {
            (exact - brute).abs()
        } else {
            ((exact - brute) / brute).abs()
        };
        assert!(
            rel <= 1e-9,
            "case {case}: exact {exact:e} vs brute force {brute:e} (rel {rel:e})"
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 1 PASS: {checked} cascades, exact == brute force @1e-9, {elapsed:?}");
}

// Criterion 2: on 500 random cascade DAGs with at most 6 infected nodes,
// best_tree's weight matches exhaustive enumeration over all arborescences
// exactly, within a minute.
#[test]
fn criterion_02_best_tree_matches_enumeration() {
    let start = Instant::now();
    let mut checked = 0;
    for case in 0..500u64 {
        let n = 6 + (case % 5) as usize;
        let size = 2 + (case % 5) as usize; // 2..=6 infected
        let cascade = common::synthetic_cascade(n, size, case * 13 + 3);
        let network = common::synthetic_network(n, 0.35, case * 7 + 2);
        let config = if case % 4 == 0 {
            TransmissionConfig::new(IncubationModel::PowerLaw, 2.5, 0.6, 1e-6).unwrap()
        } else {
            exp_config(0.5)
        };
        let tree = best_tree(&build_cascade_dag(&cascade, &network, &config));
        let brute = brute_force_best_tree_weight(&cascade, &network, &config).unwrap();
        assert_eq!(
            tree.weight_sum(),
            brute,
            "case {case}: greedy tree weight differs from enumeration"
        );
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 2 PASS: {checked} DAGs, best_tree == enumeration exactly, {elapsed:?}");
}

// Criterion 3: naive and lazy_localized emit identical edge sequences and
// gains on a 50-node, 200-cascade corpus, and the lazy strategy performs at
// least 10x fewer marginal-gain evaluations.
#[test]
fn criterion_03_strategy_equivalence_and_work_reduction() {
    let network = generate_forest_fire(
        &ForestFireParams { n: 50, forward_prob: 0.25, backward_prob: 0.2 },
        5,
    )
    .unwrap();
    let config = exp_config(0.4);
    let params = SimulationParams {
        config,
        coverage_target: 1.0,
        max_cascades: 200,
        missing_fraction: 0.0,
        external_fraction: 0.0,
        rng_seed: 3,
    };
    let (set, stats) = simulate_corpus(&network, &params).unwrap();
    assert_eq!(stats.num_cascades, 200);

    let k = 40;
    let naive = run_greedy(&set, &config, StoppingRule::FixedK(k), Strategy::Naive).unwrap();
    let lazy =
        run_greedy(&set, &config, StoppingRule::FixedK(k), Strategy::LazyLocalized).unwrap();

    let seq_naive: Vec<_> = naive.state.audit().iter().map(|r| (r.edge, r.gain)).collect();
    let seq_lazy: Vec<_> = lazy.state.audit().iter().map(|r| (r.edge, r.gain)).collect();
    assert_eq!(seq_naive, seq_lazy, "strategies diverged");
    assert_eq!(naive.network, lazy.network);

    let (ne, le) = (naive.state.gain_evaluations(), lazy.state.gain_evaluations());
    assert!(
        ne >= 10 * le,
        "lazy evaluations {le} not 10x under naive {ne} (ratio {:.1})",
        ne as f64 / le as f64
    );
    println!(
        "criterion 3 PASS: identical {}-edge sequences; evaluations naive {ne} vs lazy {le} ({:.1}x)",
        seq_naive.len(),
        ne as f64 / le as f64
    );
}

// Criterion 4: desk-scale recovery on the 256-node core-periphery Kronecker
// network (exponential alpha 1, beta 0.5, epsilon 1e-9, coverage 0.99):
// NetInf break-even at least 0.85, baseline at most 0.60, inside 10 minutes.
#[test]
fn criterion_04_desk_scale_recovery() {
    let start = Instant::now();
    let truth = desk_network();
    let config = exp_config(0.5);
    let (set, stats) = desk_corpus(config);
    assert!(stats.target_reached, "coverage target not reached");
    assert!(stats.covered_fraction >= 0.99);

    let (netinf_bep, _) = netinf_break_even(&truth, &set, &config, truth.edge_count());
    let baseline_bep = baseline_break_even(&truth, &set, &config, 2 * truth.edge_count());
    let elapsed = start.elapsed();
    assert!(netinf_bep >= 0.85, "NetInf BEP {netinf_bep:.4} below 0.85");
    assert!(baseline_bep <= 0.60, "baseline BEP {baseline_bep:.4} above 0.60");
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}");
    println!(
        "criterion 4 PASS: NetInf BEP {netinf_bep:.3} >= 0.85, baseline {baseline_bep:.3} <= 0.60, {elapsed:?}"
    );
}

// Full-scale variant of criterion 4 (optional check): 1024 nodes and 1446
// edges, break-even within 0.08 of the reference 0.98. Heavier, so not part
// of the default run: `cargo test -p netinf-core --test acceptance --release
// -- --ignored criterion_04_full_scale`.
#[test]
#[ignore = "full-scale optional check; run explicitly"]
fn criterion_04_full_scale_recovery() {
    let start = Instant::now();
    let truth = generate_kronecker(
        &KroneckerParams {
            seed_matrix: [[0.962, 0.535], [0.535, 0.107]],
            power: 10,
            target_edges: Some(1446),
        },
        8,
    )
    .unwrap();
    // beta 0.2 puts the corpus in the reference regime (about 3k cascades,
    // average size 10) at this scale.
    let config = exp_config(0.2);
    let params = SimulationParams {
        config,
        coverage_target: 0.99,
        max_cascades: 60_000,
        missing_fraction: 0.0,
        external_fraction: 0.0,
        rng_seed: 7,
    };
    let (set, stats) = simulate_corpus(&truth, &params).unwrap();
    assert!(stats.target_reached);
    let (bep, _) = netinf_break_even(&truth, &set, &config, truth.edge_count());
    let elapsed = start.elapsed();
    assert!(
        (bep - 0.98).abs() <= 0.08,
        "full-scale BEP {bep:.4} outside 0.98 +/- 0.08"
    );
    println!("criterion 4 (full-scale) PASS: BEP {bep:.3} within 0.98 +/- 0.08, {elapsed:?}");
}

// Companion to the full-scale check: the hierarchical 1024-node reference
// network at coverage 0.99 needs a corpus of a few thousand cascades,
// recovers with BEP about 0.98, and its PR area tracks the break-even
// point.
#[test]
#[ignore = "full-scale optional check; run explicitly"]
fn full_scale_hierarchical_reference_regime() {
    let truth = generate_kronecker(
        &KroneckerParams {
            seed_matrix: [[0.962, 0.107], [0.107, 0.962]],
            power: 10,
            target_edges: Some(1446),
        },
        8,
    )
    .unwrap();
    let config = exp_config(0.3);
    let params = SimulationParams {
        config,
        coverage_target: 0.99,
        max_cascades: 60_000,
        missing_fraction: 0.0,
        external_fraction: 0.0,
        rng_seed: 7,
    };
    let (set, stats) = simulate_corpus(&truth, &params).unwrap();
    assert!(stats.target_reached);
    assert!(
        (1_000..10_000).contains(&stats.num_cascades),
        "|C| = {} outside the low thousands",
        stats.num_cascades
    );
    let run = run_greedy(
        &set,
        &config,
        StoppingRule::FixedK(truth.edge_count()),
        Strategy::LazyLocalized,
    )
    .unwrap();
    let ordered: Vec<(NodeId, NodeId)> = run.state.audit().iter().map(|r| r.edge).collect();
    let curve = pr_sweep(&ordered, &truth).unwrap();
    let bep = break_even(&curve).value;
    let auc = pr_auc(&curve);
    assert!((bep - 0.98).abs() <= 0.08, "BEP {bep:.4} outside 0.98 +/- 0.08");
    assert!((auc - bep).abs() <= 0.08, "AUC {auc:.4} drifts from BEP {bep:.4}");
    println!(
        "hierarchical full-scale PASS: |C|={} r={} BEP {bep:.3} AUC {auc:.3}",
        stats.num_cascades, stats.total_transmissions
    );
}

// PR area stays close to the break-even point on a desk-scale run (the two
// summaries agree on well-recovered networks).
#[test]
fn auc_tracks_break_even_on_desk_scale_run() {
    let truth = generate_kronecker(
        &KroneckerParams {
            seed_matrix: [[0.962, 0.107], [0.107, 0.962]],
            power: 8,
            target_edges: Some(360),
        },
        8,
    )
    .unwrap();
    let config = exp_config(0.5);
    let params = SimulationParams {
        config,
        coverage_target: 0.99,
        max_cascades: 20_000,
        missing_fraction: 0.0,
        external_fraction: 0.0,
        rng_seed: 7,
    };
    let (set, _) = simulate_corpus(&truth, &params).unwrap();
    let run = run_greedy(
        &set,
        &config,
        StoppingRule::FixedK(truth.edge_count()),
        Strategy::LazyLocalized,
    )
    .unwrap();
    let ordered: Vec<(NodeId, NodeId)> = run.state.audit().iter().map(|r| r.edge).collect();
    let curve = pr_sweep(&ordered, &truth).unwrap();
    let bep = break_even(&curve).value;
    let auc = pr_auc(&curve);
    assert!((auc - bep).abs() <= 0.08, "AUC {auc:.4} vs BEP {bep:.4}");
}

// Criterion 5: with power-law incubation (alpha 2) on the same network the
// baseline collapses (BEP <= 0.4) while NetInf stays accurate (>= 0.75).
#[test]
fn criterion_05_power_law_separation() {
    let truth = desk_network();
    let config = TransmissionConfig::new(IncubationModel::PowerLaw, 2.0, 0.5, 1e-9).unwrap();
    let (set, stats) = desk_corpus(config);
    assert!(stats.target_reached);

    let (netinf_bep, _) = netinf_break_even(&truth, &set, &config, truth.edge_count());
    let baseline_bep = baseline_break_even(&truth, &set, &config, 2 * truth.edge_count());
    assert!(netinf_bep >= 0.75, "NetInf BEP {netinf_bep:.4} below 0.75");
    assert!(baseline_bep <= 0.40, "baseline BEP {baseline_bep:.4} above 0.40");
    println!(
        "criterion 5 PASS: power-law NetInf BEP {netinf_bep:.3} >= 0.75, baseline {baseline_bep:.3} <= 0.40"
    );
}

// Criterion 6: on the desk-scale run at k = |E*| the objective reaches at
// least 90% of the online bound.
#[test]
fn criterion_06_online_bound_tightness() {
    let truth = desk_network();
    let config = exp_config(0.5);
    let (set, _) = desk_corpus(config);
    let (_, run) = netinf_break_even(&truth, &set, &config, truth.edge_count());
    let report = run.bound_reports.last().expect("final exact bound report");
    assert_eq!(report.k, truth.edge_count());
    assert!(report.bound >= report.objective);
    assert!(
        report.ratio >= 0.90,
        "objective/bound ratio {:.4} below 0.90",
        report.ratio
    );
    println!(
        "criterion 6 PASS: objective {:.1} / bound {:.1} = {:.3} >= 0.90 at k = {}",
        report.objective, report.bound, report.ratio, report.k
    );
}

// Criterion 7: break-even as a function of total transmissions r is monotone
// (Spearman rho > 0.9 over 8 corpus sizes) and reaches 0.85 once r >= 3|E*|
// at beta = 0.1.
#[test]
fn criterion_07_data_efficiency() {
    let truth = desk_network();
    let e_star = truth.edge_count();
    let config = exp_config(0.1);
    let mut rs = Vec::new();
    let mut beps = Vec::new();
    for cap in [100usize, 200, 400, 700, 1000, 1400, 1900, 2600] {
        let mut bep_acc = 0.0;
        let mut r_acc = 0usize;
        let seeds = [1u64, 2, 3];
        for &seed in &seeds {
            let params = SimulationParams {
                config,
                coverage_target: 1.0,
                max_cascades: cap,
                missing_fraction: 0.0,
                external_fraction: 0.0,
                rng_seed: seed,
            };
            let (set, stats) = simulate_corpus(&truth, &params).unwrap();
            let (bep, _) = netinf_break_even(&truth, &set, &config, e_star);
            bep_acc += bep;
            r_acc += stats.total_transmissions;
        }
        rs.push(r_acc as f64 / seeds.len() as f64);
        beps.push(bep_acc / seeds.len() as f64);
    }
    let rho = spearman(&rs, &beps);
    assert!(rho > 0.9, "Spearman rho {rho:.3} not above 0.9: r {rs:?} bep {beps:?}");
    for (&r, &bep) in rs.iter().zip(&beps) {
        if r >= 3.0 * e_star as f64 {
            assert!(
                bep >= 0.85,
                "BEP {bep:.3} below 0.85 at r = {r:.0} >= 3|E*| = {}",
                3 * e_star
            );
        }
    }
    assert!(rs.last().unwrap() >= &(3.0 * e_star as f64), "sweep never reached r = 3|E*|");
    println!(
        "criterion 7 PASS: Spearman {rho:.3} > 0.9 over 8 sizes; BEP at r/|E*| {:.1} is {:.3}",
        rs.last().unwrap() / e_star as f64,
        beps.last().unwrap()
    );
}

// Criterion 8 (core side): submodularity spot check on 1000 random triples
// G subset G' and candidate e outside G', with delta_e(G) >= delta_e(G') up
// to 1e-9. The remaining always-on properties live in the property suite
// and the CLI acceptance suite.
#[test]
fn criterion_08_submodularity_spot_check() {
    let network = generate_forest_fire(
        &ForestFireParams { n: 32, forward_prob: 0.3, backward_prob: 0.2 },
        2,
    )
    .unwrap();
    let config = exp_config(0.5);
    let params = SimulationParams {
        config,
        coverage_target: 1.0,
        max_cascades: 60,
        missing_fraction: 0.0,
        external_fraction: 0.0,
        rng_seed: 11,
    };
    let (set, _) = simulate_corpus(&network, &params).unwrap();
    let n = set.node_count() as NodeId;

    // Deterministic xorshift stream for triple construction.
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    while checked < 1000 {
        let mut small = DirectedNetwork::empty(n as usize);
        let mut large = DirectedNetwork::empty(n as usize);
        let edges = 1 + (next() % 8) as usize;
        for _ in 0..edges {
            let u = (next() % n as u64) as NodeId;
            let v = (next() % n as u64) as NodeId;
            if u != v {
                if next() % 2 == 0 {
                    small.insert_edge(u, v);
                }
                large.insert_edge(u, v);
            }
        }
        for (a, b) in small.edge_vec() {
            large.insert_edge(a, b);
        }
        let e = ((next() % n as u64) as NodeId, (next() % n as u64) as NodeId);
        if e.0 == e.1 || large.contains_edge(e.0, e.1) {
            continue;
        }
        let gain = |g: &DirectedNetwork| {
            let mut with = g.clone();
            with.insert_edge(e.0, e.1);
            corpus_loglik(&set, &with, &config) - corpus_loglik(&set, g, &config)
        };
        let violation = gain(&large) - gain(&small);
        worst = worst.max(violation);
        assert!(
            violation <= 1e-9,
            "submodularity violated by {violation:e} on triple {checked}"
        );
        checked += 1;
    }
    println!("criterion 8 PASS: 1000 triples, worst violation {worst:e} <= 1e-9");
}

// Criterion 9: the 5-seed average break-even degrades monotonically as the
// missing-node and external-source fractions sweep 0 -> 0.5.
#[test]
fn criterion_09_robustness_degrades_monotonically() {
    let truth = generate_kronecker(
        &KroneckerParams {
            seed_matrix: [[0.962, 0.535], [0.535, 0.107]],
            power: 7,
            target_edges: Some(180),
        },
        11,
    )
    .unwrap();
    let config = exp_config(0.5);
    let fractions = [0.0, 0.125, 0.25, 0.375, 0.5];
    for missing_mode in [true, false] {
        let label = if missing_mode { "missing" } else { "external" };
        let mut prev = f64::INFINITY;
        let mut curve = Vec::new();
        for &frac in &fractions {
            let mut acc = 0.0;
            for seed in [1u64, 2, 3, 4, 5] {
                let params = SimulationParams {
                    config,
                    coverage_target: 0.99,
                    max_cascades: 20_000,
                    missing_fraction: if missing_mode { frac } else { 0.0 },
                    external_fraction: if missing_mode { 0.0 } else { frac },
                    rng_seed: seed,
                };
                let (set, _) = simulate_corpus(&truth, &params).unwrap();
                let (bep, _) = netinf_break_even(&truth, &set, &config, truth.edge_count());
                acc += bep;
            }
            let avg = acc / 5.0;
            assert!(
                avg <= prev,
                "{label} sweep not monotone at fraction {frac}: {prev:.4} -> {avg:.4}"
            );
            prev = avg;
            curve.push(avg);
        }
        println!(
            "criterion 9 PASS ({label}): avg BEP {:?} non-increasing over {fractions:?}",
            curve.iter().map(|b| (b * 1000.0).round() / 1000.0).collect::<Vec<_>>()
        );
    }
}

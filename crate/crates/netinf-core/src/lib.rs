//! Inference of latent diffusion networks from observed cascade infection
//! times.
//!
//! A contagion spreading over a hidden directed graph leaves a *cascade*: the
//! times at which nodes got infected, with no record of who infected whom.
//! Given many cascades, this crate recovers the hidden graph by maximizing an
//! approximate log-likelihood in which each cascade is explained by its most
//! likely propagation tree. The objective is submodular, so a greedy edge
//! selection with lazy evaluation and localized tree updates carries a
//! `(1 - 1/e)` approximation guarantee and a data-dependent online bound.
//!
//! The crate also ships the synthetic-evaluation toolkit used to validate the
//! optimizer: stochastic Kronecker and Forest Fire ground-truth generators, a
//! generative cascade simulator with coverage accounting and robustness
//! perturbations, and precision/recall accuracy metrics.
//!
//! The crate is `no_std` (with `alloc`); all I/O and file formats live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cascade;
pub mod graph;
pub mod infer;
pub mod metrics;
pub mod synth;
pub mod transmission;
pub mod tree;

pub use cascade::{Cascade, CascadeError, CascadeSet};
pub use graph::{DirectedNetwork, GraphError, NodeId};
pub use infer::{
    baseline_infer, online_bound, run_greedy, AuditRecord, BoundReport, GreedyRun, GreedyState,
    InferError, ScoredEdge, StopReason, StoppingRule, Strategy,
};
pub use metrics::{
    accuracy_report, break_even, influence_index, pr_auc, pr_sweep, AccuracyReport, BreakEven,
    PrCurve, PrPoint,
};
pub use synth::{
    generate_forest_fire, generate_kronecker, simulate_cascade, simulate_corpus, CoverageStats,
    ForestFireParams, KroneckerParams, SimulationParams, SynthError,
};
pub use transmission::{ConfigError, IncubationModel, TransmissionConfig};
pub use tree::{
    best_tree, build_cascade_dag, corpus_loglik, exact_cascade_likelihood, exact_cascade_loglik,
    tree_likelihood_breakdown, CascadeDag, CascadeTree, LikelihoodBreakdown,
};

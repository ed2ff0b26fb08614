//! Synthetic ground-truth networks and the generative cascade simulator.
//!
//! Two network generators cover the structures used in evaluation:
//! stochastic Kronecker graphs (random, core-periphery and hierarchical
//! depending on the 2x2 seed) and the Forest Fire growth model. The
//! simulator propagates contagions over a ground-truth network, accounts for
//! how much of the network the cascades cover, and can perturb the resulting
//! corpus to study robustness to missing observations and external
//! infections.

use core::fmt;

mod forest_fire;
mod kronecker;
mod simulate;

pub use forest_fire::{generate_forest_fire, ForestFireParams};
pub use kronecker::{generate_kronecker, KroneckerParams};
pub use simulate::{simulate_cascade, simulate_corpus, CoverageStats, SimulationParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SynthError {
    /// A probability parameter lies outside `[0, 1]`.
    ProbabilityOutOfRange(f64),
    /// Requested more edges than the node universe admits.
    InfeasibleEdgeTarget { target: usize, max: usize },
    /// Rejection sampling failed to reach the requested edge count (the seed
    /// matrix concentrates too much mass on too few pairs).
    EdgeTargetUnreachable { target: usize, placed: usize },
    /// Kronecker power too large for the requested sampling mode.
    PowerOutOfRange { power: u32, max: u32 },
    /// Generators need at least two nodes.
    TooFewNodes(usize),
    /// A fraction parameter lies outside its domain.
    FractionOutOfRange(f64),
    /// Cascade root is not a node of the network.
    RootOutOfRange(u32),
}

impl fmt::Display for SynthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SynthError::ProbabilityOutOfRange(p) => {
                write!(f, "probability {p} outside [0, 1]")
            }
            SynthError::InfeasibleEdgeTarget { target, max } => {
                write!(f, "cannot place {target} edges, universe admits at most {max}")
            }
            SynthError::EdgeTargetUnreachable { target, placed } => write!(
                f,
                "edge sampling stalled at {placed} of {target} requested edges"
            ),
            SynthError::PowerOutOfRange { power, max } => {
                write!(f, "kronecker power {power} exceeds supported maximum {max}")
            }
            SynthError::TooFewNodes(n) => write!(f, "need at least 2 nodes, got {n}"),
            SynthError::FractionOutOfRange(x) => write!(f, "fraction {x} outside its domain"),
            SynthError::RootOutOfRange(v) => write!(f, "root {v} outside the node universe"),
        }
    }
}

impl core::error::Error for SynthError {}

//! Contagion transmission model: incubation time densities, per-pair
//! transmission probabilities, and the log-space edge weights that drive both
//! tree likelihoods and the greedy objective.
//!
//! Every ordered pair of nodes carries one of two edge kinds. A *network*
//! edge transmits with probability `beta`; any pair without a network edge is
//! an implicit *epsilon* edge that transmits with a much smaller probability
//! `epsilon`, modeling influence from outside the observed network. In both
//! cases the incubation time between parent and child infections follows the
//! configured density.

use core::fmt;

use rand::Rng;

/// Incubation time distribution family for the gap between a parent's and a
/// child's infection times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncubationModel {
    /// Density `(1/alpha) * exp(-delta/alpha)` on `(0, inf)`.
    Exponential,
    /// Density `(alpha-1) * delta^(-alpha)` on `[1, inf)`. Gaps below the
    /// support score as the extrapolated power law down to a small floor
    /// ([`PL_DENSITY_FLOOR`]) so weights stay finite.
    PowerLaw,
}

/// Smallest gap the power-law density distinguishes. Sampled gaps always lie
/// on the `[1, inf)` support; sub-support gaps only arise between nodes that
/// were infected side by side (e.g. siblings), and extrapolating the power
/// law keeps those near-coincidences strongly scored while bounding every
/// weight.
pub const PL_DENSITY_FLOOR: f64 = 1e-6;

/// Parameters of the cascade transmission model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionConfig {
    pub model: IncubationModel,
    /// Incubation parameter. Must be positive; for `PowerLaw` it must exceed
    /// 1 so the density normalizes on `[1, inf)`.
    pub alpha: f64,
    /// Transmission probability over a network edge, in `(0, 1]`.
    pub beta: f64,
    /// Transmission probability over an epsilon edge, in `(0, beta)`.
    pub epsilon: f64,
}

/// Invalid transmission parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigError {
    AlphaNotPositive,
    PowerLawAlphaTooSmall,
    BetaOutOfRange,
    EpsilonOutOfRange,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::AlphaNotPositive => write!(f, "alpha must be positive and finite"),
            ConfigError::PowerLawAlphaTooSmall => {
                write!(f, "power-law alpha must exceed 1 for a normalizable density")
            }
            ConfigError::BetaOutOfRange => write!(f, "beta must lie in (0, 1]"),
            ConfigError::EpsilonOutOfRange => write!(f, "epsilon must lie in (0, beta)"),
        }
    }
}

impl core::error::Error for ConfigError {}

/// A time gap outside the domain of the incubation density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvalidDelta(pub f64);

impl fmt::Display for InvalidDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "incubation gap must be positive and finite, got {}", self.0)
    }
}

impl core::error::Error for InvalidDelta {}

impl TransmissionConfig {
    pub fn new(
        model: IncubationModel,
        alpha: f64,
        beta: f64,
        epsilon: f64,
    ) -> Result<Self, ConfigError> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(ConfigError::AlphaNotPositive);
        }
        if model == IncubationModel::PowerLaw && alpha <= 1.0 {
            return Err(ConfigError::PowerLawAlphaTooSmall);
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(ConfigError::BetaOutOfRange);
        }
        if !(epsilon > 0.0 && epsilon < beta) {
            return Err(ConfigError::EpsilonOutOfRange);
        }
        Ok(Self { model, alpha, beta, epsilon })
    }

    /// Probability density of an incubation gap `delta`.
    pub fn incubation_density(&self, delta: f64) -> Result<f64, InvalidDelta> {
        self.log_incubation_density(delta).map(libm::exp)
    }

    /// `ln` of the incubation density. Weight computations stay in log space
    /// so that epsilon-scale probabilities never underflow.
    pub fn log_incubation_density(&self, delta: f64) -> Result<f64, InvalidDelta> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(InvalidDelta(delta));
        }
        Ok(match self.model {
            IncubationModel::Exponential => -libm::log(self.alpha) - delta / self.alpha,
            IncubationModel::PowerLaw => {
                libm::log(self.alpha - 1.0)
                    - self.alpha * libm::log(delta.max(PL_DENSITY_FLOOR))
            }
        })
    }

    /// Probability that the contagion transmits over an edge of the given
    /// kind with incubation gap `delta`: `beta * f(delta)` for network edges
    /// and `epsilon * f(delta)` for epsilon edges.
    pub fn transmission_probability(
        &self,
        is_network_edge: bool,
        delta: f64,
    ) -> Result<f64, InvalidDelta> {
        let rate = if is_network_edge { self.beta } else { self.epsilon };
        self.log_incubation_density(delta)
            .map(|ld| libm::exp(libm::log(rate) + ld))
    }

    /// Log-likelihood improvement weight of the directed pair `(u, v)` inside
    /// one cascade: `ln P'(u,v) - ln epsilon`, where `P'` is the transmission
    /// probability for the pair's edge kind.
    ///
    /// Returns `None` when the pair carries no weight, i.e. `t_u >= t_v` or
    /// either time is non-finite: influence only points forward in time, so
    /// the weighted pairs of a cascade always form a DAG.
    pub fn edge_weight(&self, is_network_edge: bool, t_u: f64, t_v: f64) -> Option<f64> {
        if !t_u.is_finite() || !t_v.is_finite() || t_u >= t_v {
            return None;
        }
        let log_density = self
            .log_incubation_density(t_v - t_u)
            .expect("positive finite gap");
        Some(if is_network_edge {
            // Same floating-point expression the optimizer uses when it
            // flips an epsilon edge to a network edge, so both paths agree
            // bit for bit.
            log_density + self.network_edge_advantage()
        } else {
            log_density
        })
    }

    /// Constant weight advantage of a network edge over an epsilon edge at
    /// equal gap: `ln(beta / epsilon)`.
    pub fn network_edge_advantage(&self) -> f64 {
        libm::log(self.beta) - libm::log(self.epsilon)
    }

    /// Draw an incubation gap from the density by inverse transform.
    pub fn sample_incubation<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let u: f64 = rng.gen();
            let delta = match self.model {
                IncubationModel::Exponential => -self.alpha * libm::log(1.0 - u),
                IncubationModel::PowerLaw => libm::pow(1.0 - u, -1.0 / (self.alpha - 1.0)),
            };
            // u == 0 maps to the boundary of the exponential support; redraw.
            if delta > 0.0 {
                return delta;
            }
        }
    }
}

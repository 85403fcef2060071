//! Stochastic Pauli noise model driven by the technology failure rates.

use super::pauli::{two_qubit_pauli, PauliKind};
use crate::params::TechnologyParams;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Error channel applied at fault locations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseChannel {
    /// X, Y or Z with probability p/3 each (single-qubit); the 15
    /// non-identity Paulis uniformly (two-qubit).
    Depolarizing,
    /// X with probability p; used by the validation code oracles.
    BitFlip,
}

/// Per-operation failure probabilities and the channel shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p_single: f64,
    pub p_double: f64,
    pub p_measure: f64,
    /// Per cell traversed.
    pub p_move: f64,
    /// Depolarizing rate per second of idle schedule time; zero disables
    /// idle noise (the threshold experiment baseline).
    pub idle_rate_per_s: f64,
    pub channel: NoiseChannel,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        NoiseModel {
            p_single: 0.0,
            p_double: 0.0,
            p_measure: 0.0,
            p_move: 0.0,
            idle_rate_per_s: 0.0,
            channel: NoiseChannel::Depolarizing,
        }
    }

    /// Gate, measurement and movement rates from a technology profile.
    /// Idle noise is off by default; enable it with [`NoiseModel::with_idle`].
    pub fn from_params(params: &TechnologyParams) -> Self {
        NoiseModel {
            p_single: params.p_single,
            p_double: params.p_double,
            p_measure: params.p_measure,
            p_move: params.p_move,
            idle_rate_per_s: 0.0,
            channel: NoiseChannel::Depolarizing,
        }
    }

    pub fn with_idle(mut self, rate_per_s: f64) -> Self {
        self.idle_rate_per_s = rate_per_s;
        self
    }

    /// Sample the fault (if any) after a single-qubit gate.
    pub fn sample_single(&self, rng: &mut impl Rng) -> Option<PauliKind> {
        sample_channel(self.p_single, self.channel, rng)
    }

    /// Sample the fault pair (if any) after a two-qubit gate.
    pub fn sample_double(&self, rng: &mut impl Rng) -> Option<(PauliKind, PauliKind)> {
        if self.p_double <= 0.0 || rng.gen::<f64>() >= self.p_double {
            return None;
        }
        match self.channel {
            NoiseChannel::Depolarizing => Some(two_qubit_pauli(rng.gen_range(0..15))),
            NoiseChannel::BitFlip => Some((PauliKind::X, PauliKind::X)),
        }
    }

    /// Whether a classical measurement outcome flips.
    pub fn sample_measure_flip(&self, rng: &mut impl Rng) -> bool {
        self.p_measure > 0.0 && rng.gen::<f64>() < self.p_measure
    }

    /// Net fault from `cells` independent per-cell channels, via the closed
    /// form of the composed channel.
    pub fn sample_move(&self, cells: u32, rng: &mut impl Rng) -> Option<PauliKind> {
        if self.p_move <= 0.0 || cells == 0 {
            return None;
        }
        let p_net = compose_cells(self.p_move, cells, self.channel);
        sample_channel(p_net, self.channel, rng)
    }

    /// Sample idle (memory) decay over an exposure of `seconds`.
    pub fn sample_idle(&self, seconds: f64, rng: &mut impl Rng) -> Option<PauliKind> {
        if self.idle_rate_per_s <= 0.0 || seconds <= 0.0 {
            return None;
        }
        let p = (self.idle_rate_per_s * seconds).min(1.0);
        sample_channel(p, self.channel, rng)
    }
}

fn sample_channel(p: f64, channel: NoiseChannel, rng: &mut impl Rng) -> Option<PauliKind> {
    if p <= 0.0 || rng.gen::<f64>() >= p {
        return None;
    }
    Some(match channel {
        NoiseChannel::Depolarizing => PauliKind::non_identity(rng.gen_range(0..3)),
        NoiseChannel::BitFlip => PauliKind::X,
    })
}

/// Probability that the composition of `cells` independent per-cell channels
/// at rate `p` is a non-identity Pauli. Depolarizing composes inside the
/// Pauli group with identity weight `1/4 + 3/4 (1 - 4p/3)^k`; bit flips
/// compose by parity.
pub fn compose_cells(p: f64, cells: u32, channel: NoiseChannel) -> f64 {
    let k = cells as f64;
    match channel {
        NoiseChannel::Depolarizing => 0.75 * (1.0 - (1.0 - 4.0 * p / 3.0).powf(k)),
        NoiseChannel::BitFlip => 0.5 * (1.0 - (1.0 - 2.0 * p).powf(k)),
    }
}

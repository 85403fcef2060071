//! Analytic error-correction models for the Steane `[[7,1,3]]` logical qubit:
//! per-level EC latency from the scheduled syndrome-extraction circuit, and
//! recursive reliability / feasibility from the local-architecture estimate.

use crate::layout::{CodeKind, LogicalQubitTile};
use crate::params::{ballistic_latency, TechnologyParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Non-trivial syndrome rate per extraction at level 1, from simulation.
pub const NONTRIVIAL_RATE_L1: f64 = 3.35e-4;
/// Non-trivial syndrome rate per extraction at level 2, from simulation.
pub const NONTRIVIAL_RATE_L2: f64 = 7.92e-4;
/// Theoretical threshold for the Steane `[[7,1,3]]` circuit with movement.
pub const P_TH_THEORETICAL: f64 = 7.5e-5;
/// Empirical threshold from the Monte Carlo threshold experiment.
pub const P_TH_EMPIRICAL: f64 = 2.1e-3;
/// Average communication distance between aligned level-1 blocks (cells).
pub const BLOCK_HOP_CELLS: u64 = 12;

#[derive(Debug, Error)]
pub enum EccError {
    #[error("no timing data for level {0} (populated through level {1})")]
    LevelWithoutTiming(u8, u8),
    #[error("syndrome time model supports levels 1 and 2, got {0}")]
    UnsupportedLevel(u8),
    #[error("syndrome time model requires a Steane tile, got {0:?}")]
    UnsupportedCode(CodeKind),
}

/// Per-level timing inputs for the EC latency recurrence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EccTiming {
    /// `t_syndrome_s[L-1]` is the time to extract one syndrome at level L (s).
    pub t_syndrome_s: Vec<f64>,
    /// Time of a transversal logical one-qubit gate (s).
    pub t_logical_gate_s: f64,
    /// `nontrivial_rate[L-1]` is the probability a level-L extraction yields
    /// a non-trivial syndrome.
    pub nontrivial_rate: Vec<f64>,
}

impl EccTiming {
    pub fn max_level(&self) -> u8 {
        self.t_syndrome_s.len() as u8
    }

    /// Build timing for levels 1..=2 from the scheduled syndrome-extraction
    /// circuit on the given tile.
    pub fn from_layout(params: &TechnologyParams, tile: &LogicalQubitTile) -> Result<Self, EccError> {
        let s1 = syndrome_time(1, params, tile)?;
        let s2 = syndrome_time(2, params, tile)?;
        Ok(EccTiming {
            t_syndrome_s: vec![s1, s2],
            t_logical_gate_s: params.single_gate_us * 1e-6,
            nontrivial_rate: vec![NONTRIVIAL_RATE_L1, NONTRIVIAL_RATE_L2],
        })
    }

    /// Timing for the expected technology profile on the level-2 Steane tile.
    pub fn expected() -> Self {
        Self::from_layout(
            &TechnologyParams::expected(),
            &LogicalQubitTile::steane_level2(),
        )
        .expect("built-in tile is supported")
    }
}

/// Expected latency of one error correction step at recursion level `level`:
/// the weighted average of the trivial branch (two serial syndrome
/// extractions) and the non-trivial branch (repeat extraction, correct, and
/// error correct one level down). The serial-extraction factor of two is
/// kept at level 2 even though its ancilla are parallel, making this an
/// acknowledged overestimate.
pub fn ecc_latency(level: u8, timing: &EccTiming) -> Result<f64, EccError> {
    if level == 0 {
        return Ok(0.0);
    }
    if level > timing.max_level() || level as usize > timing.nontrivial_rate.len() {
        return Err(EccError::LevelWithoutTiming(level, timing.max_level()));
    }
    let t_synd = timing.t_syndrome_s[level as usize - 1];
    let q = timing.nontrivial_rate[level as usize - 1];
    let lower = ecc_latency(level - 1, timing)?;
    let trivial = 2.0 * t_synd;
    let nontrivial = 2.0 * (2.0 * t_synd + timing.t_logical_gate_s + lower);
    Ok((1.0 - q) * trivial + q * nontrivial)
}

/// Stage accounting for one syndrome extraction, in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyndromeBreakdown {
    pub level: u8,
    /// Ancilla preparation including encoding verification.
    pub prep_s: f64,
    /// Transversal data-ancilla interaction.
    pub interact_s: f64,
    /// Lower-level EC of the sub-blocks after the interaction (level 2 only).
    pub sub_ecc_s: f64,
    /// Ancilla readout.
    pub readout_s: f64,
}

impl SyndromeBreakdown {
    pub fn total_s(&self) -> f64 {
        self.prep_s + self.interact_s + self.sub_ecc_s + self.readout_s
    }
}

// Frozen stage schedule for the Steane ancilla-verification circuit. Counts
// are per syndrome extraction; gates inside a block execute serially, block
// readout is serial over the 7 ions, and the 7 sub-block preparations of a
// level-2 ancilla conglomeration share control resources and serialize.
const ENCODE_CNOT_ROUNDS: u64 = 9;
const ENCODE_H_ROUNDS: u64 = 3;
const VERIFY_CNOT_ROUNDS: u64 = 7;
const BLOCK_IONS: u64 = 7;
/// Level-1 EC rounds per group after a level-2 interaction: the data block
/// and the two flanking ancilla blocks of a group serialize on the group's
/// verification resources.
const GROUP_SUB_ECC_ROUNDS: u64 = 3;

/// Scheduled time of one syndrome extraction at `level` on the Steane tile.
pub fn syndrome_breakdown(
    level: u8,
    params: &TechnologyParams,
    tile: &LogicalQubitTile,
) -> Result<SyndromeBreakdown, EccError> {
    if tile.code != CodeKind::Steane713 {
        return Err(EccError::UnsupportedCode(tile.code));
    }
    if !(1..=2).contains(&level) {
        return Err(EccError::UnsupportedLevel(level));
    }
    let us = 1e-6;
    // An intra-tile hop: split, traverse the average block distance, one turn.
    let hop = ballistic_latency(tile.avg_hop_cells, 1, params);
    let t1 = params.single_gate_us;
    let t2 = params.double_gate_us;
    let tm = params.measure_us;

    let encode = ENCODE_CNOT_ROUNDS as f64 * (hop + t2) + ENCODE_H_ROUNDS as f64 * t1;
    let verify = VERIFY_CNOT_ROUNDS as f64 * (hop + t2) + BLOCK_IONS as f64 * tm;
    let block_prep = encode + verify;
    let interact = hop + t2;
    let block_readout = BLOCK_IONS as f64 * tm;

    let b = match level {
        1 => SyndromeBreakdown {
            level,
            prep_s: block_prep * us,
            interact_s: interact * us,
            sub_ecc_s: 0.0,
            readout_s: block_readout * us,
        },
        _ => {
            // Level-2 ancilla: 7 serialized block preparations, the logical
            // encoding circuit applied transversally, and logical verification.
            let prep = BLOCK_IONS as f64 * block_prep + encode + (interact + block_readout);
            let timing_l1 = EccTiming {
                t_syndrome_s: vec![syndrome_breakdown(1, params, tile)?.total_s()],
                t_logical_gate_s: t1 * us,
                nontrivial_rate: vec![NONTRIVIAL_RATE_L1],
            };
            let ecc1 = ecc_latency(1, &timing_l1)?;
            SyndromeBreakdown {
                level,
                prep_s: prep * us,
                interact_s: interact * us,
                sub_ecc_s: GROUP_SUB_ECC_ROUNDS as f64 * ecc1,
                readout_s: block_readout * us,
            }
        }
    };
    Ok(b)
}

/// Time of one syndrome extraction at `level` (s).
pub fn syndrome_time(
    level: u8,
    params: &TechnologyParams,
    tile: &LogicalQubitTile,
) -> Result<f64, EccError> {
    Ok(syndrome_breakdown(level, params, tile)?.total_s())
}

/// Inputs to the recursive failure estimate for local architectures.
///
/// The estimate's constant `c` is absorbed into the threshold as
/// `p_th = 1/(c r²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecursionModel {
    /// Elementary component failure probability.
    pub p0: f64,
    /// Threshold failure probability.
    pub p_th: f64,
    /// Communication distance between level-1 blocks (cells).
    pub r_cells: u64,
    /// Recursion level.
    pub level: u8,
}

impl RecursionModel {
    /// Model with `p0` taken as the mean of the profile's component failure
    /// probabilities and the theoretical threshold.
    pub fn from_params(params: &TechnologyParams, level: u8) -> Self {
        RecursionModel {
            p0: params.mean_failure_rate(),
            p_th: P_TH_THEORETICAL,
            r_cells: BLOCK_HOP_CELLS,
            level,
        }
    }
}

/// Failure probability per elementary step at recursion level L:
/// `(p_th / r^L) * (p0 / p_th)^(2^L)`.
pub fn recursive_failure(model: &RecursionModel) -> f64 {
    let r = model.r_cells as f64;
    let l = model.level as i32;
    (model.p_th / r.powi(l)) * (model.p0 / model.p_th).powi(1 << model.level)
}

/// Largest computation size S = KQ whose failure budget 1/S the encoded
/// component failure rate satisfies.
pub fn feasible_computation_size(model: &RecursionModel) -> f64 {
    1.0 / recursive_failure(model)
}

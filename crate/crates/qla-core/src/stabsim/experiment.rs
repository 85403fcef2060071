//! The logical-qubit benchmark: one transversal logical gate followed by
//! recursive error correction, Monte Carlo-sampled to estimate logical
//! failure rates at recursion levels 0, 1 and 2 and locate the threshold
//! crossing.
//!
//! Circuits follow the ancilla-verification error-correction procedure
//! mapped onto the tile geometry: every two-qubit gate is preceded by a
//! ballistic hop of the moving ion, ancilla travel the inter-block distance
//! to interact with data, and readout happens in place.

use super::codes::CssCode;
use super::frame::PauliFrame;
use super::noise::NoiseModel;
use super::pauli::PauliKind;
use crate::layout::{CodeKind, LogicalQubitTile};
use crate::params::TechnologyParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("recursion level {0} not supported (levels 0-2)")]
    UnsupportedLevel(u8),
    #[error("level-2 experiments require the Steane tile")]
    Level2NeedsSteane,
    #[error("p grid must be non-empty and sorted ascending")]
    BadGrid,
}

/// Ballistic hop lengths used when mapping circuits onto the tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExperimentGeometry {
    /// Hop for gates between ions of the same block (cells).
    pub intra_hop_cells: u32,
    /// Hop between blocks: ancilla-to-data travel and logical two-qubit
    /// gates (cells).
    pub block_hop_cells: u32,
    /// Corner turns per hop; each charges one split-time idle window.
    pub turns_per_hop: u32,
}

impl ExperimentGeometry {
    pub fn from_tile(tile: &LogicalQubitTile) -> Self {
        // Every ballistic hop in the mapped circuit averages the tile's
        // block-alignment distance.
        ExperimentGeometry {
            intra_hop_cells: tile.avg_hop_cells as u32,
            block_hop_cells: tile.avg_hop_cells as u32,
            turns_per_hop: 1,
        }
    }
}

const MAX_PREP_ATTEMPTS: u32 = 8;
const MAX_L2_PREP_ATTEMPTS: u32 = 8;
const MAX_EXTRACTIONS: u32 = 3;
const BLOCK: usize = 7;

/// Which error species an extraction round targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExtractKind {
    /// X errors: ancilla in logical |+>, data-controlled transversal CNOT,
    /// Z-basis readout, X corrections.
    Bit,
    /// Z errors: ancilla in logical |0>, ancilla-controlled transversal
    /// CNOT, X-basis readout, Z corrections.
    Phase,
}

#[derive(Debug, Default, Clone, Copy)]
struct TrialStats {
    first_extractions: u64,
    nontrivial_firsts: u64,
}

struct Trial<'a> {
    frame: PauliFrame,
    noise: &'a NoiseModel,
    code: &'a CssCode,
    geom: ExperimentGeometry,
    split_idle_s: f64,
    rng: ChaCha8Rng,
    stats: TrialStats,
}

impl<'a> Trial<'a> {
    fn new(
        n_qubits: usize,
        noise: &'a NoiseModel,
        code: &'a CssCode,
        geom: ExperimentGeometry,
        params: &TechnologyParams,
        rng: ChaCha8Rng,
    ) -> Self {
        Trial {
            frame: PauliFrame::new(n_qubits),
            noise,
            code,
            geom,
            split_idle_s: params.split_us * 1e-6,
            rng,
            stats: TrialStats::default(),
        }
    }

    #[inline]
    fn fault(&mut self, q: usize, p: Option<PauliKind>) {
        if let Some(p) = p {
            self.frame.inject(q, p);
        }
    }

    fn pauli_gate(&mut self, q: usize) {
        let f = self.noise.sample_single(&mut self.rng);
        self.fault(q, f);
    }

    fn h_gate(&mut self, q: usize) {
        self.frame.h(q);
        let f = self.noise.sample_single(&mut self.rng);
        self.fault(q, f);
    }

    fn cnot_gate(&mut self, c: usize, t: usize) {
        self.frame.cnot(c, t);
        if let Some((pc, pt)) = self.noise.sample_double(&mut self.rng) {
            self.fault(c, Some(pc));
            self.fault(t, Some(pt));
        }
    }

    /// CNOT between two ancilla-side ions: merging the interaction chain
    /// shuttles both participants one intra-block hop. Data ions never move;
    /// interactions with data charge transit to the ancilla side only.
    fn cnot_intra(&mut self, c: usize, t: usize) {
        let hop = self.geom.intra_hop_cells;
        self.move_ion(c, hop);
        self.move_ion(t, hop);
        self.cnot_gate(c, t);
    }

    fn move_ion(&mut self, q: usize, cells: u32) {
        let f = self.noise.sample_move(cells, &mut self.rng);
        self.fault(q, f);
        if self.noise.idle_rate_per_s > 0.0 && self.geom.turns_per_hop > 0 {
            let idle = self.split_idle_s * self.geom.turns_per_hop as f64;
            let f = self.noise.sample_idle(idle, &mut self.rng);
            self.fault(q, f);
        }
    }

    fn measure_flip(&mut self, q: usize, kind: ExtractKind) -> bool {
        let flip = match kind {
            ExtractKind::Bit => self.frame.z_flip(q), // Z-basis readout
            ExtractKind::Phase => self.frame.x_flip(q), // X-basis readout
        };
        flip ^ self.noise.sample_measure_flip(&mut self.rng)
    }

    /// Run a logical-state preparation circuit on the block at `base`;
    /// every CNOT target hops within the block first.
    fn prep_block(&mut self, base: usize, kind: ExtractKind) {
        for q in base..base + self.code.n {
            self.frame.reset(q);
        }
        let code = self.code;
        let gates = match kind {
            ExtractKind::Bit => &code.plus_prep,
            ExtractKind::Phase => &code.zero_prep,
        };
        for gate in gates {
            match *gate {
                super::codes::PrepGate::H(q) => self.h_gate(base + q),
                super::codes::PrepGate::Cnot(c, t) => self.cnot_intra(base + c, base + t),
            }
        }
    }

    /// Prepare and verify an encoded ancilla block against a verification
    /// block, retrying on a detected encoding error.
    fn verified_prep(&mut self, anc: usize, ver: usize, kind: ExtractKind) {
        if self.code.kind != CodeKind::Steane713 {
            self.prep_block(anc, kind);
            return;
        }
        for _ in 0..MAX_PREP_ATTEMPTS {
            self.prep_block(anc, kind);
            self.prep_block(ver, kind);
            // Verification reads the error species that would leak into the
            // data through the extraction CNOT.
            let mut word = 0u32;
            for i in 0..self.code.n {
                match kind {
                    // |+>-type ancilla leaks Z errors; copy them onto the
                    // verifier and read it out in the X basis.
                    ExtractKind::Bit => self.cnot_intra(ver + i, anc + i),
                    // |0>-type ancilla leaks X errors; Z-basis readout.
                    ExtractKind::Phase => self.cnot_intra(anc + i, ver + i),
                }
            }
            let read_kind = match kind {
                ExtractKind::Bit => ExtractKind::Phase, // X-basis
                ExtractKind::Phase => ExtractKind::Bit, // Z-basis
            };
            for i in 0..self.code.n {
                // basis bookkeeping: Bit reads Z flips, Phase reads X flips
                let flip = match read_kind {
                    ExtractKind::Bit => self.measure_flip(ver + i, ExtractKind::Bit),
                    ExtractKind::Phase => self.measure_flip(ver + i, ExtractKind::Phase),
                };
                word |= (flip as u32) << i;
            }
            if self.code.syndrome(word) == 0 {
                return;
            }
        }
    }

    /// One syndrome extraction for `kind` errors on the data block at
    /// `data`: verified ancilla prep, ancilla transit, transversal
    /// interaction, readout.
    fn extract(&mut self, data: usize, anc: usize, ver: usize, kind: ExtractKind) -> u32 {
        self.verified_prep(anc, ver, kind);
        for i in 0..self.code.n {
            self.move_ion(anc + i, self.geom.block_hop_cells);
        }
        for i in 0..self.code.n {
            match kind {
                ExtractKind::Bit => self.cnot_gate(data + i, anc + i),
                ExtractKind::Phase => self.cnot_gate(anc + i, data + i),
            }
        }
        let mut word = 0u32;
        for i in 0..self.code.n {
            word |= (self.measure_flip(anc + i, kind) as u32) << i;
        }
        self.code.syndrome(word)
    }

    /// Extract until two successive syndromes agree (capped), then apply
    /// the physical correction the agreed syndrome indicates.
    fn ec_step(&mut self, data: usize, anc: usize, ver: usize, kind: ExtractKind) {
        let s1 = self.extract(data, anc, ver, kind);
        self.stats.first_extractions += 1;
        if s1 != 0 {
            self.stats.nontrivial_firsts += 1;
        }
        let syndrome = if s1 == 0 {
            0
        } else {
            let mut prev = s1;
            let mut agreed = None;
            for _ in 1..MAX_EXTRACTIONS {
                let s = self.extract(data, anc, ver, kind);
                if s == prev {
                    agreed = Some(s);
                    break;
                }
                prev = s;
            }
            agreed.unwrap_or(prev)
        };
        if syndrome != 0 {
            if let Some(pos) = self.code.decode(syndrome) {
                let q = data + pos;
                let correction = match kind {
                    ExtractKind::Bit => PauliKind::X,
                    ExtractKind::Phase => PauliKind::Z,
                };
                // The reference run never corrects, so the correction enters
                // the frame along with its own gate noise.
                self.frame.inject(q, correction);
                self.pauli_gate(q);
            }
        }
    }

    fn level1_ec(&mut self, data: usize, anc: usize, ver: usize) {
        self.ec_step(data, anc, ver, ExtractKind::Bit);
        if self.code.corrects_phase {
            self.ec_step(data, anc, ver, ExtractKind::Phase);
        }
    }

    fn data_word(&self, base: usize, x_component: bool) -> u32 {
        let mut word = 0u32;
        for i in 0..self.code.n {
            let bit = if x_component {
                self.frame.x_bit(base + i)
            } else {
                self.frame.z_bit(base + i)
            };
            word |= (bit as u32) << i;
        }
        word
    }

    fn block_failure(&self, base: usize) -> bool {
        let x_fail = self.code.residual_logical(self.data_word(base, true));
        let z_fail =
            self.code.corrects_phase && self.code.residual_logical(self.data_word(base, false));
        x_fail || z_fail
    }
}

// Qubit map for the level-2 experiment: 49 blocks of 7 ions.
struct Level2Map;

impl Level2Map {
    const N: usize = 343;
    fn data(b: usize) -> usize {
        b * BLOCK
    }
    fn l1_anc(b: usize) -> usize {
        49 + b * BLOCK
    }
    fn l1_ver(b: usize) -> usize {
        98 + b * BLOCK
    }
    fn a2(b: usize) -> usize {
        147 + b * BLOCK
    }
    fn a2_ver(b: usize) -> usize {
        196 + b * BLOCK
    }
    fn v2(b: usize) -> usize {
        245 + b * BLOCK
    }
    fn v2_ver(b: usize) -> usize {
        294 + b * BLOCK
    }
}

struct Level2Trial<'a> {
    t: Trial<'a>,
}

impl<'a> Level2Trial<'a> {
    /// Prepare the seven blocks starting at `block_of(b)` as a verified
    /// level-2 logical ancilla in the outer |0> or |+> state.
    fn prep_outer(
        &mut self,
        block_of: fn(usize) -> usize,
        ver_of: fn(usize) -> usize,
        kind: ExtractKind,
    ) {
        // Inner blocks carry |0> and are verified against X leakage.
        for b in 0..BLOCK {
            self.t.verified_prep(block_of(b), ver_of(b), ExtractKind::Phase);
        }
        let code = self.t.code;
        let outer_gates = match kind {
            ExtractKind::Bit => &code.plus_prep,
            ExtractKind::Phase => &code.zero_prep,
        };
        for gate in outer_gates {
            match *gate {
                super::codes::PrepGate::H(b) => {
                    // transversal logical H
                    for i in 0..BLOCK {
                        self.t.h_gate(block_of(b) + i);
                    }
                }
                super::codes::PrepGate::Cnot(bc, bt) => {
                    // transversal logical CNOT; both ancilla blocks shuttle
                    // to the shared interaction channel
                    for i in 0..BLOCK {
                        let hop = self.t.geom.block_hop_cells;
                        self.t.move_ion(block_of(bc) + i, hop);
                        self.t.move_ion(block_of(bt) + i, hop);
                    }
                    for i in 0..BLOCK {
                        self.t.cnot_gate(block_of(bc) + i, block_of(bt) + i);
                    }
                }
            }
        }
    }

    /// Read out a seven-block register transversally and decode each block
    /// word to its logical flip bit.
    fn logical_readout(&mut self, block_of: fn(usize) -> usize, kind: ExtractKind) -> (u32, bool) {
        let mut outer_word = 0u32;
        let mut inner_clean = true;
        for b in 0..BLOCK {
            let mut word = 0u32;
            for i in 0..BLOCK {
                word |= (self.t.measure_flip(block_of(b) + i, kind) as u32) << i;
            }
            if self.t.code.syndrome(word) != 0 {
                inner_clean = false;
            }
            let corrected = self.t.code.correct(word);
            outer_word |= (self.t.code.logical_value(corrected) as u32) << b;
        }
        (outer_word, inner_clean)
    }

    /// Verified level-2 ancilla preparation: build the outer logical state
    /// twice and compare transversally, retrying on any detected deviation.
    fn verified_outer_prep(&mut self, kind: ExtractKind) {
        for _ in 0..MAX_L2_PREP_ATTEMPTS {
            self.prep_outer(Level2Map::a2, Level2Map::a2_ver, kind);
            self.prep_outer(Level2Map::v2, Level2Map::v2_ver, kind);
            for b in 0..BLOCK {
                for i in 0..BLOCK {
                    let hop = self.t.geom.block_hop_cells;
                    self.t.move_ion(Level2Map::a2(b) + i, hop);
                    self.t.move_ion(Level2Map::v2(b) + i, hop);
                }
                for i in 0..BLOCK {
                    let (a, v) = (Level2Map::a2(b) + i, Level2Map::v2(b) + i);
                    match kind {
                        ExtractKind::Bit => self.t.cnot_gate(v, a),
                        ExtractKind::Phase => self.t.cnot_gate(a, v),
                    }
                }
            }
            let read_kind = match kind {
                ExtractKind::Bit => ExtractKind::Phase,
                ExtractKind::Phase => ExtractKind::Bit,
            };
            let (outer_word, inner_clean) = self.logical_readout(Level2Map::v2, read_kind);
            if inner_clean && self.t.code.syndrome(outer_word) == 0 {
                return;
            }
        }
    }

    /// One level-2 syndrome extraction: verified logical ancilla, block
    /// transit, transversal logical interaction, logical readout.
    fn extract_outer(&mut self, kind: ExtractKind) -> u32 {
        self.verified_outer_prep(kind);
        for b in 0..BLOCK {
            for i in 0..BLOCK {
                self.t.move_ion(Level2Map::a2(b) + i, self.t.geom.block_hop_cells);
            }
        }
        for b in 0..BLOCK {
            for i in 0..BLOCK {
                let (d, a) = (Level2Map::data(b) + i, Level2Map::a2(b) + i);
                match kind {
                    ExtractKind::Bit => self.t.cnot_gate(d, a),
                    ExtractKind::Phase => self.t.cnot_gate(a, d),
                }
            }
        }
        let (outer_word, _) = self.logical_readout(Level2Map::a2, kind);
        self.t.code.syndrome(outer_word)
    }

    fn ec_step_outer(&mut self, kind: ExtractKind) {
        let s1 = self.extract_outer(kind);
        self.t.stats.first_extractions += 1;
        if s1 != 0 {
            self.t.stats.nontrivial_firsts += 1;
        }
        let syndrome = if s1 == 0 {
            0
        } else {
            let mut prev = s1;
            let mut agreed = None;
            for _ in 1..MAX_EXTRACTIONS {
                let s = self.extract_outer(kind);
                if s == prev {
                    agreed = Some(s);
                    break;
                }
                prev = s;
            }
            agreed.unwrap_or(prev)
        };
        if syndrome != 0 {
            if let Some(block) = self.t.code.decode(syndrome) {
                let correction = match kind {
                    ExtractKind::Bit => PauliKind::X,
                    ExtractKind::Phase => PauliKind::Z,
                };
                for i in 0..BLOCK {
                    let q = Level2Map::data(block) + i;
                    self.t.frame.inject(q, correction);
                    self.t.pauli_gate(q);
                }
            }
        }
        // Lower-level stabilization of the data after the logical
        // interaction, block by block on each block's own ancilla.
        for b in 0..BLOCK {
            self.t
                .level1_ec(Level2Map::data(b), Level2Map::l1_anc(b), Level2Map::l1_ver(b));
        }
    }

    fn failure(&self) -> bool {
        let mut outer_x = 0u32;
        let mut outer_z = 0u32;
        for b in 0..BLOCK {
            let x = self.t.code.correct(self.t.data_word(Level2Map::data(b), true));
            let z = self.t.code.correct(self.t.data_word(Level2Map::data(b), false));
            outer_x |= (self.t.code.logical_value(x) as u32) << b;
            outer_z |= (self.t.code.logical_value(z) as u32) << b;
        }
        self.t.code.residual_logical(outer_x) || self.t.code.residual_logical(outer_z)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct TrialOutcome {
    failure: bool,
    first_extractions: u64,
    nontrivial_firsts: u64,
}

fn run_trial(
    level: u8,
    code: &CssCode,
    geom: ExperimentGeometry,
    noise: &NoiseModel,
    params: &TechnologyParams,
    rng: ChaCha8Rng,
) -> TrialOutcome {
    match level {
        0 => {
            // Unencoded baseline: one physical gate, no correction.
            let mut t = Trial::new(1, noise, code, geom, params, rng);
            t.pauli_gate(0);
            TrialOutcome {
                failure: !t.frame.is_clean(),
                ..Default::default()
            }
        }
        1 => {
            let n = 3 * code.n;
            let mut t = Trial::new(n, noise, code, geom, params, rng);
            let (data, anc, ver) = (0, code.n, 2 * code.n);
            for i in 0..code.n {
                t.pauli_gate(data + i); // transversal logical gate
            }
            t.level1_ec(data, anc, ver);
            TrialOutcome {
                failure: t.block_failure(data),
                first_extractions: t.stats.first_extractions,
                nontrivial_firsts: t.stats.nontrivial_firsts,
            }
        }
        _ => {
            let t = Trial::new(Level2Map::N, noise, code, geom, params, rng);
            let mut l2 = Level2Trial { t };
            for b in 0..BLOCK {
                for i in 0..BLOCK {
                    l2.t.pauli_gate(Level2Map::data(b) + i);
                }
            }
            l2.ec_step_outer(ExtractKind::Bit);
            l2.ec_step_outer(ExtractKind::Phase);
            TrialOutcome {
                failure: l2.failure(),
                first_extractions: l2.t.stats.first_extractions,
                nontrivial_firsts: l2.t.stats.nontrivial_firsts,
            }
        }
    }
}

fn trial_rng(seed: u64, point: u64, level: u8, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&point.to_le_bytes());
    key[16] = level;
    key[17..25].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Monte Carlo estimate for one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdPoint {
    pub p: f64,
    pub level: u8,
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    pub stderr: f64,
    /// First-extraction non-trivial syndrome rate observed at this point.
    pub nontrivial_syndrome_rate: f64,
}

/// Result of a threshold sweep, with a non-fatal precision warning when the
/// trial budget is below the recommended floor.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdSweep {
    pub points: Vec<ThresholdPoint>,
    pub warning: Option<String>,
}

/// Estimated level-1/level-2 crossing point with its uncertainty interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CrossingEstimate {
    pub p_star: f64,
    pub lo: f64,
    pub hi: f64,
}

fn run_point(
    code: &CssCode,
    geom: ExperimentGeometry,
    noise: &NoiseModel,
    params: &TechnologyParams,
    level: u8,
    trials: u64,
    seed: u64,
    point_idx: u64,
) -> (u64, u64, u64) {
    let one = |t: u64| {
        let rng = trial_rng(seed, point_idx, level, t);
        let out = run_trial(level, code, geom, noise, params, rng);
        (
            out.failure as u64,
            out.first_extractions,
            out.nontrivial_firsts,
        )
    };
    let fold = |acc: (u64, u64, u64), v: (u64, u64, u64)| (acc.0 + v.0, acc.1 + v.1, acc.2 + v.2);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(one)
            .reduce(|| (0, 0, 0), fold)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(one).fold((0, 0, 0), fold)
    }
}

/// Monte Carlo logical failure rates over a component-failure grid.
///
/// Gate and measurement failure probabilities track each grid value
/// jointly; movement failure stays pinned at the expected technology rate,
/// matching the published experimental baseline. Idle noise is off unless
/// the noise template enables it.
pub fn threshold_sweep(
    tile: &LogicalQubitTile,
    levels: &[u8],
    p_grid: &[f64],
    trials: u64,
    seed: u64,
) -> Result<ThresholdSweep, ExperimentError> {
    if p_grid.is_empty() || p_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(ExperimentError::BadGrid);
    }
    for &level in levels {
        if level > 2 {
            return Err(ExperimentError::UnsupportedLevel(level));
        }
        if level == 2 && tile.code != CodeKind::Steane713 {
            return Err(ExperimentError::Level2NeedsSteane);
        }
    }
    let warning = (trials < 1000).then(|| {
        format!("{trials} trials is below the 1000-trial floor; standard errors will be large")
    });
    let code = CssCode::for_kind(tile.code);
    let geom = ExperimentGeometry::from_tile(tile);
    let params = TechnologyParams::expected();
    let mut points = Vec::new();
    for (pi, &p) in p_grid.iter().enumerate() {
        let noise = NoiseModel {
            p_single: p,
            p_double: p,
            p_measure: p,
            p_move: params.p_move,
            idle_rate_per_s: 0.0,
            channel: super::noise::NoiseChannel::Depolarizing,
        };
        for &level in levels {
            let (failures, events, nontrivial) = run_point(
                &code, geom, &noise, &params, level, trials, seed, pi as u64,
            );
            let rate = failures as f64 / trials as f64;
            points.push(ThresholdPoint {
                p,
                level,
                trials,
                failures,
                failure_rate: rate,
                stderr: (rate * (1.0 - rate) / trials as f64).sqrt(),
                nontrivial_syndrome_rate: if events > 0 {
                    nontrivial as f64 / events as f64
                } else {
                    0.0
                },
            });
        }
    }
    Ok(ThresholdSweep { points, warning })
}

/// Run the expected-profile reliability experiment: logical failures and
/// the first-extraction non-trivial syndrome rate at one noise point.
pub fn reliability_at(
    tile: &LogicalQubitTile,
    level: u8,
    noise: &NoiseModel,
    trials: u64,
    seed: u64,
) -> Result<ThresholdPoint, ExperimentError> {
    if level > 2 {
        return Err(ExperimentError::UnsupportedLevel(level));
    }
    if level == 2 && tile.code != CodeKind::Steane713 {
        return Err(ExperimentError::Level2NeedsSteane);
    }
    let code = CssCode::for_kind(tile.code);
    let geom = ExperimentGeometry::from_tile(tile);
    let params = TechnologyParams::expected();
    let (failures, events, nontrivial) =
        run_point(&code, geom, noise, &params, level, trials, seed, 0);
    let rate = failures as f64 / trials as f64;
    Ok(ThresholdPoint {
        p: noise.p_double,
        level,
        trials,
        failures,
        failure_rate: rate,
        stderr: (rate * (1.0 - rate) / trials as f64).sqrt(),
        nontrivial_syndrome_rate: if events > 0 {
            nontrivial as f64 / events as f64
        } else {
            0.0
        },
    })
}

/// Locate the level-1/level-2 crossing in a sweep: the last grid interval
/// where level 2 goes from outperforming level 1 to underperforming it,
/// log-interpolated, with the interval endpoints stretched by the binomial
/// standard errors.
pub fn crossing_estimate(points: &[ThresholdPoint]) -> Option<CrossingEstimate> {
    let mut grid: Vec<f64> = points.iter().map(|pt| pt.p).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let at = |p: f64, level: u8| {
        points
            .iter()
            .find(|pt| pt.p == p && pt.level == level)
            .map(|pt| (pt.failure_rate, pt.stderr))
    };
    let mut rows = Vec::new();
    for &p in &grid {
        if let (Some((r1, s1)), Some((r2, s2))) = (at(p, 1), at(p, 2)) {
            rows.push((p, r1 - r2, s1 + s2));
        }
    }
    let mut bracket = None;
    for w in rows.windows(2) {
        let (_, d0, _) = w[0];
        let (_, d1, _) = w[1];
        if d0 > 0.0 && d1 <= 0.0 {
            bracket = Some((w[0], w[1]));
        }
    }
    let ((p0, d0, e0), (p1, d1, e1)) = bracket?;
    let interp = |d0: f64, d1: f64| -> f64 {
        if d0 <= 0.0 {
            return p0;
        }
        if d1 >= 0.0 {
            return p1;
        }
        let t = d0 / (d0 - d1);
        (p0.ln() + t * (p1.ln() - p0.ln())).exp()
    };
    let p_star = interp(d0, d1);
    let lo = interp(d0 - e0, d1 - e1).min(p_star);
    let hi = interp(d0 + e0, d1 + e1).max(p_star);
    Some(CrossingEstimate { p_star, lo, hi })
}

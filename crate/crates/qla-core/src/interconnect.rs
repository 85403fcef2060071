//! The teleportation-based long-range interconnect: EPR distribution over
//! two-way ballistic channels, Bennett-protocol entanglement purification,
//! logarithmic entanglement swapping across repeater islands, and the
//! island-spacing optimizer.
//!
//! All pairs are projected to Werner form after every operation, so a pair
//! is fully described by one fidelity. Purification happens only between
//! adjacent islands; the final long-range pair is never purified, so the
//! per-hop purification depth is chosen to make the swapped end-to-end pair
//! meet the target on its own.

use crate::params::{ballistic_latency, TechnologyParams};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Werner-state fidelity lower bound.
pub const WERNER_MIN_FIDELITY: f64 = 0.25;

/// Default end-to-end target fidelity for a teleported transfer. Chosen an
/// order of magnitude below the empirical threshold so that interconnect
/// infidelity stays negligible against gate error budgets.
pub const DEFAULT_TARGET_FIDELITY: f64 = 1.0 - 2e-4;

/// Purification depth cap; past this the map has long since stalled.
const MAX_PURIFICATION_ROUNDS: u32 = 500;

#[derive(Debug, Error)]
pub enum InterconnectError {
    #[error("pairs span different endpoints; purification needs matching endpoints")]
    MismatchedEndpoints,
    #[error("pairs share no middle endpoint; swapping needs a common station")]
    NoSharedEndpoint,
    #[error("pair endpoints must be distinct")]
    DegeneratePair,
    #[error("fidelity {0} below the Werner bound 0.25 or above 1")]
    FidelityOutOfRange(f64),
    #[error(
        "target fidelity {target} unreachable at spacing {spacing_cells} cells over \
         {distance_cells} cells; spacing is too large for the purification map"
    )]
    UnreachableTarget {
        spacing_cells: u64,
        distance_cells: u64,
        target: f64,
    },
    #[error("spacing {spacing_cells} cells exceeds total distance {distance_cells} cells")]
    SpacingExceedsDistance {
        spacing_cells: u64,
        distance_cells: u64,
    },
    #[error("no spacing candidate reaches the target fidelity")]
    AllCandidatesInfeasible,
    #[error("candidate list is empty")]
    NoCandidates,
}

/// One end of an EPR pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Endpoint {
    Island { index: u64 },
    Tile { row: u64, col: u64 },
}

/// A Werner-form entangled pair between two locations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EprPair {
    pub fidelity: f64,
    pub location_a: Endpoint,
    pub location_b: Endpoint,
}

impl EprPair {
    pub fn new(fidelity: f64, a: Endpoint, b: Endpoint) -> Result<Self, InterconnectError> {
        if a == b {
            return Err(InterconnectError::DegeneratePair);
        }
        if !(WERNER_MIN_FIDELITY..=1.0).contains(&fidelity) {
            return Err(InterconnectError::FidelityOutOfRange(fidelity));
        }
        Ok(EprPair {
            fidelity,
            location_a: a,
            location_b: b,
        })
    }

    fn same_span(&self, other: &EprPair) -> bool {
        (self.location_a == other.location_a && self.location_b == other.location_b)
            || (self.location_a == other.location_b && self.location_b == other.location_a)
    }
}

/// Local operation noise entering the purification and swap maps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateNoise {
    pub p_double: f64,
    pub p_measure: f64,
}

impl GateNoise {
    pub fn noiseless() -> Self {
        GateNoise {
            p_double: 0.0,
            p_measure: 0.0,
        }
    }

    pub fn from_params(params: &TechnologyParams) -> Self {
        GateNoise {
            p_double: params.p_double,
            p_measure: params.p_measure,
        }
    }

    fn q(&self) -> f64 {
        self.p_double + self.p_measure
    }
}

/// One-sided depolarization of a Werner pair: with probability `q` a random
/// Pauli hits one member, moving weight to the other Bell states.
pub fn degrade(fidelity: f64, q: f64) -> f64 {
    (1.0 - q) * fidelity + q * (1.0 - fidelity) / 3.0
}

/// Bennett-protocol purification map on Werner fidelities. Returns the
/// output fidelity and the success probability of the coincidence test.
pub fn bennett_map(fa: f64, fb: f64) -> (f64, f64) {
    let p_succ = fa * fb
        + fa * (1.0 - fb) / 3.0
        + fb * (1.0 - fa) / 3.0
        + 5.0 * (1.0 - fa) * (1.0 - fb) / 9.0;
    let f_out = (fa * fb + (1.0 - fa) * (1.0 - fb) / 9.0) / p_succ;
    (f_out, p_succ)
}

/// Werner composition of two pairs joined by a Bell measurement.
pub fn swap_compose(fa: f64, fb: f64) -> f64 {
    fa * fb + (1.0 - fa) * (1.0 - fb) / 3.0
}

/// Initial fidelity of a pair created at a channel midpoint whose members
/// ballistically travel half the distance each: cumulative depolarizing
/// probability `q = 1 - (1 - p_move)^distance` over both half-trips.
pub fn transport_fidelity(distance_cells: u64, params: &TechnologyParams) -> f64 {
    let q = 1.0 - (1.0 - params.p_move).powi(distance_cells as i32);
    1.0 - 0.75 * q
}

/// Outcome of one probabilistic purification attempt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurifyOutcome {
    pub pair: EprPair,
    pub success: bool,
    pub success_probability: f64,
}

/// Purify pair `a` with sacrificial pair `b` (consumed). Gate and
/// measurement noise depolarize both inputs before the ideal map. The
/// success flag is drawn from the map's coincidence probability.
pub fn purify(
    a: &EprPair,
    b: &EprPair,
    noise: &GateNoise,
    rng: &mut impl rand::Rng,
) -> Result<PurifyOutcome, InterconnectError> {
    if !a.same_span(b) {
        return Err(InterconnectError::MismatchedEndpoints);
    }
    let (f_out, p_succ) = bennett_map(degrade(a.fidelity, noise.q()), degrade(b.fidelity, noise.q()));
    Ok(PurifyOutcome {
        pair: EprPair {
            fidelity: f_out.clamp(WERNER_MIN_FIDELITY, 1.0),
            ..*a
        },
        success: rng.gen::<f64>() < p_succ,
        success_probability: p_succ,
    })
}

/// Join pairs a-b and b-c at their shared station into an a-c pair
/// (both inputs consumed), degraded by the station's gate and measurement
/// noise.
pub fn entanglement_swap(
    ab: &EprPair,
    bc: &EprPair,
    noise: &GateNoise,
) -> Result<EprPair, InterconnectError> {
    let ends = [ab.location_a, ab.location_b];
    let middle = if ends.contains(&bc.location_a) {
        bc.location_a
    } else if ends.contains(&bc.location_b) {
        bc.location_b
    } else {
        return Err(InterconnectError::NoSharedEndpoint);
    };
    let outer_a = if ab.location_a == middle {
        ab.location_b
    } else {
        ab.location_a
    };
    let outer_c = if bc.location_a == middle {
        bc.location_b
    } else {
        bc.location_a
    };
    let f = degrade(swap_compose(ab.fidelity, bc.fidelity), noise.q());
    EprPair::new(f.clamp(WERNER_MIN_FIDELITY, 1.0), outer_a, outer_c)
}

/// Channel-planning model constants, frozen against the published spacing
/// optimum (100 cells below ~6000 cells total distance, 350 above).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    /// Per-cell depolarizing probability on an EPR half in transit. The
    /// planning model operates in the purification map's nonlinear regime;
    /// the active profile's per-cell movement failure would put every
    /// candidate spacing in the flat regime where spacing barely matters.
    pub epr_cell_depolar: f64,
    /// Cells traversed through an island junction per swap, charged as
    /// movement noise on each merge.
    pub junction_cells: u64,
}

impl Default for ChannelModel {
    fn default() -> Self {
        ChannelModel {
            epr_cell_depolar: 1e-3,
            junction_cells: 2,
        }
    }
}

/// A planned repeater chain with its purification schedule and timing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RepeaterChannel {
    pub total_distance_cells: u64,
    pub island_spacing_cells: u64,
    pub hop_count: u64,
    pub per_hop_base_fidelity: f64,
    pub purification_rounds_per_hop: u32,
    /// Expected serial purification slots including restart-on-failure.
    pub expected_purification_slots: f64,
    pub purified_hop_fidelity: f64,
    pub swap_stages: u32,
    pub final_fidelity: f64,
    pub connection_time_us: f64,
}

/// Parallel swap stages needed to join `hops` pairs: ceil(log2(hops)).
pub fn swap_stage_count(hops: u64) -> u32 {
    if hops <= 1 {
        0
    } else {
        64 - (hops - 1).leading_zeros()
    }
}

fn end_to_end_fidelity(f_hop: f64, stages: u32, q_swap: f64) -> f64 {
    let mut f = f_hop;
    for _ in 0..stages {
        f = degrade(swap_compose(f, f), q_swap);
    }
    f
}

/// Plan the repeater chain for one connection: per-hop purification depth is
/// the minimum making the swapped end-to-end pair exceed the target without
/// terminal purification; time is pipelined EPR distribution over half a
/// hop, the expected purification slots, and the parallel swap ladder.
pub fn plan_channel(
    distance_cells: u64,
    spacing_cells: u64,
    target_fidelity: f64,
    params: &TechnologyParams,
    model: &ChannelModel,
) -> Result<RepeaterChannel, InterconnectError> {
    if spacing_cells > distance_cells || spacing_cells == 0 {
        return Err(InterconnectError::SpacingExceedsDistance {
            spacing_cells,
            distance_cells,
        });
    }
    let hops = distance_cells.div_ceil(spacing_cells);
    let stages = swap_stage_count(hops);
    let q_gate = params.p_double + params.p_measure;
    let q_swap = q_gate + model.junction_cells as f64 * params.p_move;

    let base = 1.0 - 0.75 * (1.0 - (1.0 - model.epr_cell_depolar).powi(spacing_cells as i32));
    let mut f_hop = base;
    let mut rounds = 0u32;
    let mut expected_slots = 0.0f64;
    loop {
        let f_end = end_to_end_fidelity(f_hop, stages, q_swap);
        if f_end >= target_fidelity {
            let unreachable = InterconnectError::UnreachableTarget {
                spacing_cells,
                distance_cells,
                target: target_fidelity,
            };
            let ballistic =
                ballistic_latency(spacing_cells.div_ceil(2), 0, params);
            let op = params.double_gate_us + params.measure_us;
            let time = ballistic + (expected_slots + stages as f64) * op;
            if !time.is_finite() {
                return Err(unreachable);
            }
            return Ok(RepeaterChannel {
                total_distance_cells: distance_cells,
                island_spacing_cells: spacing_cells,
                hop_count: hops,
                per_hop_base_fidelity: base,
                purification_rounds_per_hop: rounds,
                expected_purification_slots: expected_slots,
                purified_hop_fidelity: f_hop,
                swap_stages: stages,
                final_fidelity: f_end,
                connection_time_us: time,
            });
        }
        let f_in = degrade(f_hop, q_gate);
        let (f_next, p_succ) = bennett_map(f_in, f_in);
        if f_next <= f_hop || rounds >= MAX_PURIFICATION_ROUNDS {
            return Err(InterconnectError::UnreachableTarget {
                spacing_cells,
                distance_cells,
                target: target_fidelity,
            });
        }
        // A failed attempt discards the working pair; restart accounting.
        expected_slots = (expected_slots + 1.0) / p_succ;
        f_hop = f_next;
        rounds += 1;
    }
}

/// Total connection time in µs with the default channel model.
pub fn connection_time(
    distance_cells: u64,
    spacing_cells: u64,
    target_fidelity: f64,
    params: &TechnologyParams,
) -> Result<f64, InterconnectError> {
    plan_channel(
        distance_cells,
        spacing_cells,
        target_fidelity,
        params,
        &ChannelModel::default(),
    )
    .map(|c| c.connection_time_us)
}

/// Spacing candidate minimizing connection time; infeasible candidates are
/// skipped and ties break toward the smaller spacing.
pub fn optimal_spacing(
    distance_cells: u64,
    candidates: &[u64],
    target_fidelity: f64,
    params: &TechnologyParams,
    model: &ChannelModel,
) -> Result<u64, InterconnectError> {
    if candidates.is_empty() {
        return Err(InterconnectError::NoCandidates);
    }
    let mut best: Option<(f64, u64)> = None;
    let mut sorted: Vec<u64> = candidates.to_vec();
    sorted.sort_unstable();
    for &s in &sorted {
        if s > distance_cells {
            continue;
        }
        if let Ok(chan) = plan_channel(distance_cells, s, target_fidelity, params, model) {
            let better = match best {
                None => true,
                Some((t, _)) => chan.connection_time_us < t,
            };
            if better {
                best = Some((chan.connection_time_us, s));
            }
        }
    }
    best.map(|(_, s)| s)
        .ok_or(InterconnectError::AllCandidatesInfeasible)
}

/// One row of a spacing-sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacingRow {
    pub distance_cells: u64,
    pub spacing_cells: u64,
    pub feasible: bool,
    pub connection_time_us: Option<f64>,
    pub final_fidelity: Option<f64>,
    pub purification_rounds: Option<u32>,
    pub swap_stages: Option<u32>,
}

/// Connection-time family over a distance grid and spacing candidates, one
/// row per (distance, spacing); infeasible combinations are kept with their
/// feasibility flag cleared.
pub fn spacing_sweep_rows(
    distances: &[u64],
    candidates: &[u64],
    target_fidelity: f64,
    params: &TechnologyParams,
    model: &ChannelModel,
) -> Vec<SpacingRow> {
    let mut rows = Vec::new();
    for &d in distances {
        for &s in candidates {
            let row = match plan_channel(d, s, target_fidelity, params, model) {
                Ok(c) => SpacingRow {
                    distance_cells: d,
                    spacing_cells: s,
                    feasible: true,
                    connection_time_us: Some(c.connection_time_us),
                    final_fidelity: Some(c.final_fidelity),
                    purification_rounds: Some(c.purification_rounds_per_hop),
                    swap_stages: Some(c.swap_stages),
                },
                Err(_) => SpacingRow {
                    distance_cells: d,
                    spacing_cells: s,
                    feasible: false,
                    connection_time_us: None,
                    final_fidelity: None,
                    purification_rounds: None,
                    swap_stages: None,
                },
            };
            rows.push(row);
        }
    }
    rows
}

/// Smallest scanned distance at which the coarse spacing's connection time
/// drops to or below the fine spacing's (infeasible counts as infinite).
pub fn crossover_distance(
    fine_cells: u64,
    coarse_cells: u64,
    target_fidelity: f64,
    params: &TechnologyParams,
    model: &ChannelModel,
    scan_max_cells: u64,
    scan_step_cells: u64,
) -> Option<u64> {
    let time = |d: u64, s: u64| {
        plan_channel(d, s, target_fidelity, params, model)
            .map(|c| c.connection_time_us)
            .unwrap_or(f64::INFINITY)
    };
    let mut d = coarse_cells.max(fine_cells);
    let mut fine_has_won = false;
    while d <= scan_max_cells {
        let tf = time(d, fine_cells);
        let tc = time(d, coarse_cells);
        if tf < tc {
            fine_has_won = true;
        } else if fine_has_won {
            return Some(d);
        }
        d += scan_step_cells;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair(f: f64) -> EprPair {
        EprPair::new(
            f,
            Endpoint::Island { index: 0 },
            Endpoint::Island { index: 1 },
        )
        .unwrap()
    }

    #[test]
    fn transport_fidelity_examples() {
        let mut p = TechnologyParams::expected();
        assert_relative_eq!(transport_fidelity(0, &p), 1.0);
        let f = transport_fidelity(100, &p);
        assert_relative_eq!(f, 1.0 - 0.75e-4, max_relative = 1e-6);
        p.p_move = 0.0;
        assert_relative_eq!(transport_fidelity(1_000_000, &p), 1.0);
    }

    #[test]
    fn purify_fixed_points() {
        let noiseless = GateNoise::noiseless();
        let mut rng = ChaCha8Rng::seed_from_u64(0);

        let out = purify(&pair(1.0), &pair(1.0), &noiseless, &mut rng).unwrap();
        assert_relative_eq!(out.pair.fidelity, 1.0);
        assert_relative_eq!(out.success_probability, 1.0);

        let out = purify(&pair(0.9), &pair(0.9), &noiseless, &mut rng).unwrap();
        assert_relative_eq!(out.pair.fidelity, 0.9264, max_relative = 1e-4);

        let out = purify(&pair(0.5), &pair(0.5), &noiseless, &mut rng).unwrap();
        assert_relative_eq!(out.pair.fidelity, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn purify_requires_matching_endpoints() {
        let other = EprPair::new(
            0.9,
            Endpoint::Island { index: 0 },
            Endpoint::Island { index: 2 },
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            purify(&pair(0.9), &other, &GateNoise::noiseless(), &mut rng),
            Err(InterconnectError::MismatchedEndpoints)
        ));
    }

    #[test]
    fn swap_examples() {
        let noiseless = GateNoise::noiseless();
        let ab = EprPair::new(
            1.0,
            Endpoint::Island { index: 0 },
            Endpoint::Island { index: 1 },
        )
        .unwrap();
        let bc = EprPair::new(
            1.0,
            Endpoint::Island { index: 1 },
            Endpoint::Island { index: 2 },
        )
        .unwrap();
        let ac = entanglement_swap(&ab, &bc, &noiseless).unwrap();
        assert_relative_eq!(ac.fidelity, 1.0);
        assert_eq!(ac.location_a, Endpoint::Island { index: 0 });
        assert_eq!(ac.location_b, Endpoint::Island { index: 2 });

        let ab = EprPair::new(0.95, ab.location_a, ab.location_b).unwrap();
        let bc = EprPair::new(0.95, bc.location_a, bc.location_b).unwrap();
        let ac = entanglement_swap(&ab, &bc, &noiseless).unwrap();
        assert_relative_eq!(ac.fidelity, 0.9033, max_relative = 1e-4);
    }

    #[test]
    fn swap_chain_fidelity_non_increasing() {
        let noiseless = GateNoise::noiseless();
        let mut f = 0.97;
        for _ in 0..6 {
            let next = swap_compose(f, f);
            assert!(next <= f);
            f = degrade(next, noiseless.q());
        }
    }

    #[test]
    fn swap_without_shared_endpoint_fails() {
        let ab = pair(0.9);
        let cd = EprPair::new(
            0.9,
            Endpoint::Island { index: 5 },
            Endpoint::Island { index: 6 },
        )
        .unwrap();
        assert!(matches!(
            entanglement_swap(&ab, &cd, &GateNoise::noiseless()),
            Err(InterconnectError::NoSharedEndpoint)
        ));
    }

    #[test]
    fn single_hop_has_no_swap_stages() {
        let params = TechnologyParams::expected();
        let chan = plan_channel(
            100,
            100,
            DEFAULT_TARGET_FIDELITY,
            &params,
            &ChannelModel::default(),
        )
        .unwrap();
        assert_eq!(chan.hop_count, 1);
        assert_eq!(chan.swap_stages, 0);
        let op = params.double_gate_us + params.measure_us;
        let distribution = ballistic_latency(50, 0, &params);
        assert_relative_eq!(
            chan.connection_time_us,
            distribution + chan.expected_purification_slots * op,
            max_relative = 1e-12
        );
    }

    #[test]
    fn spacing_100_beats_350_below_crossover() {
        let params = TechnologyParams::expected();
        for d in [3000u64, 5000] {
            let t100 = connection_time(d, 100, DEFAULT_TARGET_FIDELITY, &params).unwrap();
            let t350 = connection_time(d, 350, DEFAULT_TARGET_FIDELITY, &params).unwrap();
            assert!(t100 < t350, "at {d} cells: {t100} vs {t350}");
        }
        for d in [8000u64, 15000] {
            let t100 = connection_time(d, 100, DEFAULT_TARGET_FIDELITY, &params)
                .map(|t| t)
                .unwrap_or(f64::INFINITY);
            let t350 = connection_time(d, 350, DEFAULT_TARGET_FIDELITY, &params).unwrap();
            assert!(t350 < t100, "at {d} cells: {t350} vs {t100}");
        }
    }

    #[test]
    fn optimal_spacing_examples() {
        let params = TechnologyParams::expected();
        let model = ChannelModel::default();
        let candidates = [35, 70, 100, 350, 500, 1000];
        assert_eq!(
            optimal_spacing(3000, &candidates, DEFAULT_TARGET_FIDELITY, &params, &model).unwrap(),
            100
        );
        assert_eq!(
            optimal_spacing(20000, &candidates, DEFAULT_TARGET_FIDELITY, &params, &model).unwrap(),
            350
        );
        assert_eq!(
            optimal_spacing(3000, &[350], DEFAULT_TARGET_FIDELITY, &params, &model).unwrap(),
            350
        );
    }

    #[test]
    fn crossover_lands_near_published_value() {
        let params = TechnologyParams::expected();
        let d = crossover_distance(
            100,
            350,
            DEFAULT_TARGET_FIDELITY,
            &params,
            &ChannelModel::default(),
            25_000,
            250,
        )
        .expect("crossover exists");
        assert!(
            (3000..=12000).contains(&d),
            "crossover at {d} cells outside [3000, 12000]"
        );
    }

    #[test]
    fn connection_time_unimodal_in_spacing() {
        let params = TechnologyParams::expected();
        let candidates = [35u64, 70, 100, 350, 500, 1000];
        for d in [2000u64, 3000, 6000, 10000, 20000] {
            let times: Vec<f64> = candidates
                .iter()
                .filter(|&&s| s <= d)
                .map(|&s| {
                    connection_time(d, s, DEFAULT_TARGET_FIDELITY, &params)
                        .unwrap_or(f64::INFINITY)
                })
                .collect();
            let min_idx = times
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0;
            for i in 0..min_idx {
                assert!(times[i] >= times[i + 1], "d={d}: {times:?}");
            }
            for i in min_idx..times.len() - 1 {
                assert!(times[i] <= times[i + 1], "d={d}: {times:?}");
            }
        }
    }

    #[test]
    fn unreachable_target_reported() {
        let params = TechnologyParams::expected();
        // 35-cell spacing over 20k cells: junction noise alone exceeds budget
        assert!(matches!(
            connection_time(20_000, 35, DEFAULT_TARGET_FIDELITY, &params),
            Err(InterconnectError::UnreachableTarget { .. })
        ));
    }

    #[test]
    fn swap_stage_counts() {
        assert_eq!(swap_stage_count(1), 0);
        assert_eq!(swap_stage_count(2), 1);
        assert_eq!(swap_stage_count(3), 2);
        assert_eq!(swap_stage_count(8), 3);
        assert_eq!(swap_stage_count(9), 4);
    }

    proptest! {
        #[test]
        fn purification_strictly_improves_above_half(f in 0.5001f64..0.9999) {
            let (out, _) = bennett_map(f, f);
            prop_assert!(out > f);
        }

        #[test]
        fn iterated_purification_converges_toward_one(f0 in 0.51f64..0.99) {
            let mut f = f0;
            let mut prev = 0.0;
            for _ in 0..200 {
                prev = f;
                f = bennett_map(f, f).0;
                prop_assert!(f >= prev);
            }
            prop_assert!(f > 0.999_999);
            prop_assert!(f >= prev);
        }

        #[test]
        fn swap_never_exceeds_weaker_input(
            fa in 0.5f64..1.0,
            fb in 0.5f64..1.0,
        ) {
            let f = swap_compose(fa, fb);
            prop_assert!(f <= fa.min(fb) + 1e-12);
        }

        #[test]
        fn planned_stage_count_matches_hops(
            d in 200u64..20000,
            s in 35u64..400,
        ) {
            prop_assume!(s <= d);
            let params = TechnologyParams::expected();
            if let Ok(chan) = plan_channel(d, s, 0.999, &params, &ChannelModel::default()) {
                prop_assert_eq!(chan.swap_stages, swap_stage_count(chan.hop_count));
                prop_assert_eq!(chan.hop_count, d.div_ceil(s));
            }
        }
    }
}

//! Greedy EPR-distribution scheduler: route entanglement requests over the
//! island grid under per-channel bandwidth limits so that communication
//! hides under error-correction windows.
//!
//! The grid has one node per logical-qubit site (each with its island);
//! adjacent sites are joined by a channel segment of one island spacing.
//! Each segment carries `bandwidth` outbound lanes per direction; a
//! delivery claims a lane on every segment of its route in consecutive
//! timesteps (a pipelined wavefront) and the used pair returns over the
//! reverse lanes. One timestep is one per-hop EPR distribution slot.

use crate::layout::TileCoordinate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchedulerError {
    #[error("request endpoint ({0}, {1}) outside the {2}x{3} grid")]
    EndpointOffGrid(u64, u64, u32, u32),
    #[error("request must need at least one pair")]
    ZeroPairs,
    #[error("deadline precedes release")]
    DeadlineBeforeRelease,
    #[error("workload parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("grid must be at least 2x2 to route")]
    GridTooSmall,
}

/// The island-grid channel fabric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelGraph {
    pub rows: u32,
    pub cols: u32,
    /// Concurrent lanes per segment per direction.
    pub bandwidth: u32,
    /// Island spacing: cell length of one segment.
    pub spacing_cells: u64,
}

impl ChannelGraph {
    pub fn new(
        rows: u32,
        cols: u32,
        bandwidth: u32,
        spacing_cells: u64,
    ) -> Result<Self, SchedulerError> {
        if rows < 2 || cols < 2 {
            return Err(SchedulerError::GridTooSmall);
        }
        Ok(ChannelGraph {
            rows,
            cols,
            bandwidth,
            spacing_cells,
        })
    }

    pub fn contains(&self, c: TileCoordinate) -> bool {
        c.row < self.rows as u64 && c.col < self.cols as u64
    }

    /// Undirected segment count.
    pub fn segment_count(&self) -> u64 {
        let r = self.rows as u64;
        let c = self.cols as u64;
        r * (c - 1) + c * (r - 1)
    }
}

/// One directed channel segment between adjacent sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub from: TileCoordinate,
    pub to: TileCoordinate,
}

/// A request to deliver `pairs` EPR pairs between two sites inside an EC
/// window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EprRequest {
    pub src: TileCoordinate,
    pub dst: TileCoordinate,
    pub pairs: u32,
    pub release_slot: u64,
    pub deadline_slot: u64,
}

impl EprRequest {
    pub fn validate(&self, graph: &ChannelGraph) -> Result<(), SchedulerError> {
        for c in [self.src, self.dst] {
            if !graph.contains(c) {
                return Err(SchedulerError::EndpointOffGrid(
                    c.row, c.col, graph.rows, graph.cols,
                ));
            }
        }
        if self.pairs == 0 {
            return Err(SchedulerError::ZeroPairs);
        }
        if self.deadline_slot < self.release_slot {
            return Err(SchedulerError::DeadlineBeforeRelease);
        }
        Ok(())
    }
}

/// Scheduled outcome for one request.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduledRequest {
    pub request: EprRequest,
    /// Directed segments from src to dst, x-leg first.
    pub route: Vec<DirectedEdge>,
    pub start_slot: u64,
    /// Slot at which the last pair finishes its forward trip.
    pub completion_slot: u64,
    /// Dispatch slot of each pair's forward wavefront.
    pub pair_dispatch_slots: Vec<u64>,
    pub met_deadline: bool,
    pub backoffs: u32,
}

/// Full schedule with utilization accounting and final qubit positions.
#[derive(Debug, Clone, Serialize)]
pub struct ScheduleResult {
    pub graph: ChannelGraph,
    pub scheduled: Vec<ScheduledRequest>,
    /// Occupied lane-slots / available lane-slots over the makespan.
    pub utilization: f64,
    pub deadline_hit_rate: f64,
    pub makespan_slots: u64,
    /// Total pair-segments claimed, forward plus return.
    pub lane_slots_used: u64,
    /// Total cells of EPR transport, forward plus return.
    pub pair_cells_moved: u64,
    /// Final site of each workload qubit, when a workload was scheduled.
    pub drift_map: Vec<TileCoordinate>,
}

/// L-shaped route, x-leg first; empty when src == dst.
pub fn manhattan_route(src: TileCoordinate, dst: TileCoordinate) -> Vec<DirectedEdge> {
    let mut route = Vec::new();
    let mut cur = src;
    while cur.col != dst.col {
        let next = TileCoordinate::new(
            cur.row,
            if dst.col > cur.col { cur.col + 1 } else { cur.col - 1 },
        );
        route.push(DirectedEdge { from: cur, to: next });
        cur = next;
    }
    while cur.row != dst.row {
        let next = TileCoordinate::new(
            if dst.row > cur.row { cur.row + 1 } else { cur.row - 1 },
            cur.col,
        );
        route.push(DirectedEdge { from: cur, to: next });
        cur = next;
    }
    route
}

#[derive(Default)]
struct LaneLedger {
    occupancy: HashMap<(DirectedEdge, u64), u32>,
}

impl LaneLedger {
    fn fits(&self, edge: DirectedEdge, slot: u64, bandwidth: u32) -> bool {
        self.occupancy.get(&(edge, slot)).copied().unwrap_or(0) < bandwidth
    }

    fn claim(&mut self, edge: DirectedEdge, slot: u64) {
        *self.occupancy.entry((edge, slot)).or_insert(0) += 1;
    }

    fn unclaim(&mut self, edge: DirectedEdge, slot: u64) {
        if let Some(n) = self.occupancy.get_mut(&(edge, slot)) {
            *n -= 1;
            if *n == 0 {
                self.occupancy.remove(&(edge, slot));
            }
        }
    }
}

fn reverse(edge: DirectedEdge) -> DirectedEdge {
    DirectedEdge {
        from: edge.to,
        to: edge.from,
    }
}

/// Earliest dispatch slot >= `from` at which one pair's forward wavefront
/// and return trip fit the lane budget.
fn pair_fits(ledger: &LaneLedger, route: &[DirectedEdge], t: u64, bandwidth: u32) -> bool {
    let hops = route.len() as u64;
    for (j, edge) in route.iter().enumerate() {
        if !ledger.fits(*edge, t + j as u64, bandwidth) {
            return false;
        }
        // return trip, one slot after delivery, reverse lanes
        let back = t + hops + (hops - 1 - j as u64) + 1;
        if !ledger.fits(reverse(*edge), back, bandwidth) {
            return false;
        }
    }
    true
}

fn claim_pair(ledger: &mut LaneLedger, route: &[DirectedEdge], t: u64) {
    let hops = route.len() as u64;
    for (j, edge) in route.iter().enumerate() {
        ledger.claim(*edge, t + j as u64);
        let back = t + hops + (hops - 1 - j as u64) + 1;
        ledger.claim(reverse(*edge), back);
    }
}

/// A claimed dispatch of one request: per-pair dispatch slots, undoable.
struct Dispatch {
    first: u64,
    completion: u64,
    pair_slots: Vec<u64>,
}

/// Dispatch all pairs of a request greedily, claiming every available lane
/// per slot. Pairs dispatch in non-decreasing slots, so the search resumes
/// where the previous pair landed.
fn dispatch_pairs(
    ledger: &mut LaneLedger,
    route: &[DirectedEdge],
    pairs: u32,
    release: u64,
    bandwidth: u32,
) -> Dispatch {
    let hops = route.len() as u64;
    let mut slot = release;
    let mut pair_slots = Vec::with_capacity(pairs as usize);
    for _ in 0..pairs {
        while !pair_fits(ledger, route, slot, bandwidth) {
            slot += 1;
        }
        claim_pair(ledger, route, slot);
        pair_slots.push(slot);
    }
    Dispatch {
        first: pair_slots.first().copied().unwrap_or(release),
        completion: slot + hops,
        pair_slots,
    }
}

fn undo_dispatch(ledger: &mut LaneLedger, route: &[DirectedEdge], dispatch: &Dispatch) {
    let hops = route.len() as u64;
    for &t in &dispatch.pair_slots {
        for (j, edge) in route.iter().enumerate() {
            ledger.unclaim(*edge, t + j as u64);
            let back = t + hops + (hops - 1 - j as u64) + 1;
            ledger.unclaim(reverse(*edge), back);
        }
    }
}

/// Greedy schedule: requests are processed in release order (stable on
/// input order), each claiming the maximally available shortest path. A
/// request that cannot meet its deadline backs off and retries with
/// neighboring endpoint assignments (drift candidates) up to three times,
/// then is scheduled at the earliest feasible slot and recorded late.
pub fn schedule(
    requests: &[EprRequest],
    graph: &ChannelGraph,
) -> Result<ScheduleResult, SchedulerError> {
    for r in requests {
        r.validate(graph)?;
    }
    let mut order: Vec<usize> = (0..requests.len()).collect();
    order.sort_by_key(|&i| (requests[i].release_slot, i));

    let mut ledger = LaneLedger::default();
    let mut scheduled: Vec<Option<ScheduledRequest>> = vec![None; requests.len()];
    for &i in &order {
        let req = requests[i];
        let mut candidates = vec![(req.src, req.dst)];
        candidates.extend(drift_candidates(req.src, req.dst, graph));

        // claim the best candidate: try each in order, rolling a claim back
        // when it misses the deadline and a later candidate might do better
        let mut best: Option<(Dispatch, Vec<DirectedEdge>, EprRequest)> = None;
        let mut backoffs = 0u32;
        for (ci, &(src, dst)) in candidates.iter().enumerate().take(4) {
            let route = manhattan_route(src, dst);
            let placed = EprRequest { src, dst, ..req };
            let dispatch = if route.is_empty() {
                Dispatch {
                    first: req.release_slot,
                    completion: req.release_slot,
                    pair_slots: Vec::new(),
                }
            } else {
                dispatch_pairs(&mut ledger, &route, req.pairs, req.release_slot, graph.bandwidth)
            };
            let met = dispatch.completion <= req.deadline_slot;
            let better = match &best {
                None => true,
                Some((bd, ..)) => dispatch.completion < bd.completion,
            };
            backoffs = ci as u32;
            if better {
                if let Some((bd, broute, _)) = best.take() {
                    undo_dispatch(&mut ledger, &broute, &bd);
                }
                best = Some((dispatch, route, placed));
            } else {
                undo_dispatch(&mut ledger, &route, &dispatch);
            }
            if met {
                break;
            }
        }
        let (dispatch, route, placed) = best.expect("the assigned endpoints always route");
        scheduled[i] = Some(ScheduledRequest {
            request: placed,
            met_deadline: dispatch.completion <= placed.deadline_slot,
            route,
            start_slot: dispatch.first,
            completion_slot: dispatch.completion,
            pair_dispatch_slots: dispatch.pair_slots,
            backoffs,
        });
    }
    let scheduled: Vec<ScheduledRequest> = scheduled.into_iter().map(|s| s.unwrap()).collect();
    Ok(finish(graph, scheduled, Vec::new()))
}

/// Alternative endpoint assignments for back-off: step one endpoint a site
/// toward the other along each axis.
fn drift_candidates(
    src: TileCoordinate,
    dst: TileCoordinate,
    graph: &ChannelGraph,
) -> Vec<(TileCoordinate, TileCoordinate)> {
    let step = |a: u64, b: u64| -> u64 {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => a + 1,
            Greater => a - 1,
            Equal => a,
        }
    };
    let s2 = TileCoordinate::new(src.row, step(src.col, dst.col));
    let s3 = TileCoordinate::new(step(src.row, dst.row), src.col);
    let d2 = TileCoordinate::new(dst.row, step(dst.col, src.col));
    [(s2, dst), (s3, dst), (src, d2)]
        .into_iter()
        .filter(|&(a, b)| a != b && graph.contains(a) && graph.contains(b))
        .collect()
}

fn finish(
    graph: &ChannelGraph,
    scheduled: Vec<ScheduledRequest>,
    drift_map: Vec<TileCoordinate>,
) -> ScheduleResult {
    let mut lane_slots_used = 0u64;
    let mut makespan = 0u64;
    let mut hits = 0u64;
    let mut cells = 0u64;
    for s in &scheduled {
        let hops = s.route.len() as u64;
        lane_slots_used += 2 * hops * s.request.pairs as u64;
        cells += 2 * hops * graph.spacing_cells * s.request.pairs as u64;
        // the last return wavefront clears at completion + hops + 1
        makespan = makespan.max(s.completion_slot + hops + 1);
        if s.met_deadline {
            hits += 1;
        }
    }
    let capacity = graph.segment_count() * 2 * graph.bandwidth as u64 * makespan.max(1);
    ScheduleResult {
        graph: *graph,
        utilization: lane_slots_used as f64 / capacity as f64,
        deadline_hit_rate: if scheduled.is_empty() {
            1.0
        } else {
            hits as f64 / scheduled.len() as f64
        },
        makespan_slots: makespan,
        lane_slots_used,
        pair_cells_moved: cells,
        drift_map,
        scheduled,
    }
}

/// Replay a schedule against the lane budget; true when no segment
/// direction ever exceeds the bandwidth.
pub fn replay_respects_capacity(result: &ScheduleResult) -> bool {
    let mut occupancy: HashMap<(DirectedEdge, u64), u32> = HashMap::new();
    for s in &result.scheduled {
        let hops = s.route.len() as u64;
        for &t in &s.pair_dispatch_slots {
            for (j, edge) in s.route.iter().enumerate() {
                *occupancy.entry((*edge, t + j as u64)).or_insert(0) += 1;
                let back = t + hops + (hops - 1 - j as u64) + 1;
                *occupancy.entry((reverse(*edge), back)).or_insert(0) += 1;
            }
        }
    }
    occupancy.values().all(|&c| c <= result.graph.bandwidth)
}

/// Aggregated schedule metrics.
#[derive(Debug, Clone, Serialize)]
pub struct UtilizationReport {
    pub aggregate_utilization: f64,
    pub deadline_hit_rate: f64,
    pub requests: usize,
    pub deadline_misses: usize,
    pub makespan_slots: u64,
    pub pair_cells_moved: u64,
    /// Lane-slots claimed per segment direction, for the per-edge histogram.
    pub per_edge_lane_slots: Vec<(String, u64)>,
}

pub fn utilization_report(result: &ScheduleResult) -> UtilizationReport {
    let mut per_edge: HashMap<DirectedEdge, u64> = HashMap::new();
    for s in &result.scheduled {
        for edge in &s.route {
            *per_edge.entry(*edge).or_insert(0) += s.request.pairs as u64;
            *per_edge.entry(reverse(*edge)).or_insert(0) += s.request.pairs as u64;
        }
    }
    let mut hist: Vec<(String, u64)> = per_edge
        .into_iter()
        .map(|(e, n)| {
            (
                format!(
                    "({},{})->({},{})",
                    e.from.row, e.from.col, e.to.row, e.to.col
                ),
                n,
            )
        })
        .collect();
    hist.sort();
    UtilizationReport {
        aggregate_utilization: result.utilization,
        deadline_hit_rate: result.deadline_hit_rate,
        requests: result.scheduled.len(),
        deadline_misses: result.scheduled.iter().filter(|s| !s.met_deadline).count(),
        makespan_slots: result.makespan_slots,
        pair_cells_moved: result.pair_cells_moved,
        per_edge_lane_slots: hist,
    }
}

/// A record of one two-qubit interaction for drift bookkeeping: qubit `a`
/// teleports to `b`'s site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateRecord {
    pub a: usize,
    pub b: usize,
}

/// Where each logical qubit currently sits.
pub type DriftMap = Vec<TileCoordinate>;

/// Outcome of one drift decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriftDecision {
    /// A stays at B's site; only the outbound trip was paid.
    Stayed,
    /// A later request claims A's old slot, so A returns home.
    Returned,
}

/// Logical qubits a tile site can host at once (the resident plus one
/// drifted visitor).
pub const SITE_CAPACITY: usize = 2;

/// After a gate teleports qubit `a` to `b`'s site, leave `a` there unless a
/// later request requires `a`'s original slot or the destination tile has
/// no room, in which case `a` returns.
pub fn apply_drift(
    drift_map: &mut DriftMap,
    gate: &GateRecord,
    later_site_claims: &[TileCoordinate],
) -> DriftDecision {
    let home = drift_map[gate.a];
    let there = drift_map[gate.b];
    let occupants = drift_map.iter().filter(|&&c| c == there).count();
    if later_site_claims.contains(&home) || occupants >= SITE_CAPACITY {
        DriftDecision::Returned
    } else {
        drift_map[gate.a] = there;
        DriftDecision::Stayed
    }
}

/// EPR pairs consumed per logical-qubit teleport: one per physical ion of
/// the level-2 logical qubit.
pub const LOGICAL_TELEPORT_PAIRS: u32 = 49;

/// Duration of one scheduling timestep in µs: a pipelined per-hop EPR
/// distribution slot, i.e. one purification stage (two-qubit gate plus
/// measurement) overlapped with half a hop of ballistic transport headway.
pub fn slot_duration_us(params: &crate::params::TechnologyParams, spacing_cells: u64) -> f64 {
    params.double_gate_us
        + params.measure_us
        + params.movement_per_cell_us * (spacing_cells as f64 / 2.0)
}

/// Number of scheduling timesteps in one level-2 error-correction window.
pub fn ec_window_slots(
    params: &crate::params::TechnologyParams,
    level2_ec_latency_s: f64,
    spacing_cells: u64,
) -> u64 {
    (level2_ec_latency_s * 1e6 / slot_duration_us(params, spacing_cells)).floor() as u64
}

/// A Toffoli-gate workload: each gate needs EPR deliveries to its three
/// operand qubits and six ancilla qubits, issued one EC window ahead of the
/// gate so communication overlaps error correction.
#[derive(Debug, Clone)]
pub struct ToffoliWorkload {
    /// gate[0..3] are operands, gate[3..9] ancilla.
    pub gates: Vec<[usize; 9]>,
    pub qubit_count: usize,
    /// Gates issued per EC window.
    pub gates_per_window: usize,
    pub window_slots: u64,
}

pub fn generate_toffoli_workload(
    graph: &ChannelGraph,
    gates: usize,
    gates_per_window: usize,
    window_slots: u64,
    seed: u64,
) -> ToffoliWorkload {
    let qubit_count = (graph.rows * graph.cols) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(gates);
    for _ in 0..gates {
        let mut chosen = [0usize; 9];
        let mut used = std::collections::HashSet::new();
        for slot in &mut chosen {
            loop {
                let q = rng.gen_range(0..qubit_count);
                if used.insert(q) {
                    *slot = q;
                    break;
                }
            }
        }
        out.push(chosen);
    }
    ToffoliWorkload {
        gates: out,
        qubit_count,
        gates_per_window,
        window_slots,
    }
}

/// Expand a Toffoli workload into EPR requests with the current drift map
/// and schedule it. Operand qubits teleport to the gate site and, without
/// drift, teleport back once the gate's EC window closes; with drift they
/// stay put unless an upcoming gate claims their home slot or the site is
/// full. Ancilla qubits are consumed by the gate and re-prepared locally,
/// so they never generate return traffic.
pub fn schedule_toffoli(
    workload: &ToffoliWorkload,
    graph: &ChannelGraph,
    drift: bool,
) -> Result<ScheduleResult, SchedulerError> {
    let home: Vec<TileCoordinate> = (0..workload.qubit_count)
        .map(|q| TileCoordinate::new(q as u64 / graph.cols as u64, q as u64 % graph.cols as u64))
        .collect();
    let mut positions = home.clone();
    let mut requests = Vec::new();
    for (gi, gate) in workload.gates.iter().enumerate() {
        // gates stagger evenly through their issue window, each with one
        // full EC window to receive its pairs
        let window = (gi / workload.gates_per_window) as u64;
        let phase = (gi % workload.gates_per_window) as u64 * workload.window_slots
            / workload.gates_per_window as u64;
        let release = window * workload.window_slots + phase;
        let deadline = release + workload.window_slots;
        // the second and third operands teleport to the first operand's
        // site; each ancilla qubit pairs off with one of the operands
        let transfers: [(usize, usize); 8] = [
            (gate[1], gate[0]),
            (gate[2], gate[0]),
            (gate[3], gate[0]),
            (gate[4], gate[1]),
            (gate[5], gate[2]),
            (gate[6], gate[0]),
            (gate[7], gate[1]),
            (gate[8], gate[2]),
        ];
        for (mover, host) in transfers {
            let src = positions[mover];
            let dst = positions[host];
            if src == dst {
                continue;
            }
            requests.push(EprRequest {
                src,
                dst,
                pairs: LOGICAL_TELEPORT_PAIRS,
                release_slot: release,
                deadline_slot: deadline,
            });
        }
        let gate_site = positions[gate[0]];
        let claims: Vec<TileCoordinate> = workload.gates[gi + 1..]
            .iter()
            .take(workload.gates_per_window)
            .map(|g| positions[g[0]])
            .collect();
        for &q in &gate[1..3] {
            let from = positions[q];
            if from == gate_site {
                continue;
            }
            let stays = drift
                && apply_drift(&mut positions, &GateRecord { a: q, b: gate[0] }, &claims)
                    == DriftDecision::Stayed;
            if !stays {
                // return teleport home once this gate's EC window closes
                requests.push(EprRequest {
                    src: gate_site,
                    dst: home[q],
                    pairs: LOGICAL_TELEPORT_PAIRS,
                    release_slot: deadline,
                    deadline_slot: deadline + workload.window_slots,
                });
                positions[q] = home[q];
            }
        }
    }
    let mut result = schedule(&requests, graph)?;
    result.drift_map = positions;
    Ok(result)
}

/// Parse a line-oriented workload file: whitespace-separated
/// `src_row src_col dst_row dst_col pairs release_slot`, `#` comments.
pub fn parse_workload(text: &str, window_slots: u64) -> Result<Vec<EprRequest>, SchedulerError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(SchedulerError::Parse {
                line: lineno + 1,
                reason: format!("expected 6 fields, got {}", fields.len()),
            });
        }
        let num = |i: usize| -> Result<u64, SchedulerError> {
            fields[i].parse().map_err(|e| SchedulerError::Parse {
                line: lineno + 1,
                reason: format!("field {}: {e}", i + 1),
            })
        };
        let release = num(5)?;
        out.push(EprRequest {
            src: TileCoordinate::new(num(0)?, num(1)?),
            dst: TileCoordinate::new(num(2)?, num(3)?),
            pairs: num(4)? as u32,
            release_slot: release,
            deadline_slot: release + window_slots,
        });
    }
    Ok(out)
}

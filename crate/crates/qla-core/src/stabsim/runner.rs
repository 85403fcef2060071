//! Noisy execution of circuit IR on the Pauli-frame engine, with a tableau
//! backend used to cross-check failure flags on small instances.
//!
//! Faults are sampled into an explicit plan first, so the same fault
//! realization can be replayed through either engine.

use super::circuit::{Basis, CircuitIr, CorrectionKind, Op};
use super::codes::CssCode;
use super::frame::PauliFrame;
use super::noise::NoiseModel;
use super::pauli::PauliKind;
use super::tableau::{GateKind, StabilizerTableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Idle window charged per corner turn, in seconds (the split time).
const SPLIT_IDLE_S: f64 = 10e-6;

/// One sampled fault, anchored to the op that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FaultEvent {
    pub op_index: usize,
    pub qubit: u32,
    pub pauli: PauliKind,
}

/// A complete noise realization for one run: Pauli faults per op and
/// classical flips per measurement op.
#[derive(Debug, Clone, Default)]
pub struct FaultPlan {
    pub faults: Vec<FaultEvent>,
    /// Parallel to the circuit's ops; true flips that op's recorded outcome.
    pub measure_flips: Vec<bool>,
}

/// Sample a fault plan for `circuit` under `noise`, deterministically in
/// `seed`.
pub fn sample_fault_plan(circuit: &CircuitIr, noise: &NoiseModel, seed: u64) -> FaultPlan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut plan = FaultPlan {
        faults: Vec::new(),
        measure_flips: vec![false; circuit.ops.len()],
    };
    for (i, op) in circuit.ops.iter().enumerate() {
        match op {
            Op::Gate { kind, targets } => match kind.arity() {
                1 => {
                    if let Some(p) = noise.sample_single(&mut rng) {
                        plan.faults.push(FaultEvent {
                            op_index: i,
                            qubit: targets[0],
                            pauli: p,
                        });
                    }
                }
                _ => {
                    if let Some((pc, pt)) = noise.sample_double(&mut rng) {
                        for (q, p) in [(targets[0], pc), (targets[1], pt)] {
                            if p != PauliKind::I {
                                plan.faults.push(FaultEvent {
                                    op_index: i,
                                    qubit: q,
                                    pauli: p,
                                });
                            }
                        }
                    }
                }
            },
            Op::Move {
                qubit,
                cells,
                turns,
            } => {
                if let Some(p) = noise.sample_move(*cells, &mut rng) {
                    plan.faults.push(FaultEvent {
                        op_index: i,
                        qubit: *qubit,
                        pauli: p,
                    });
                }
                // each corner turn parks the ion for one split window
                if *turns > 0 {
                    let idle_s = *turns as f64 * SPLIT_IDLE_S;
                    if let Some(p) = noise.sample_idle(idle_s, &mut rng) {
                        plan.faults.push(FaultEvent {
                            op_index: i,
                            qubit: *qubit,
                            pauli: p,
                        });
                    }
                }
            }
            Op::Measure { .. } => {
                plan.measure_flips[i] = noise.sample_measure_flip(&mut rng);
            }
            Op::CorrectFromSyndrome { .. } => {}
        }
    }
    plan
}

/// Record of one noisy run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Classical slot values at the end of the run.
    pub outcomes: Vec<bool>,
    pub injected: Vec<FaultEvent>,
    pub logical_failure: bool,
}

/// Run the circuit with noise on the frame engine. The record's outcomes
/// are relative to the noise-free reference run (a flipped bit means the
/// noisy run disagreed with the reference).
pub fn run_noisy(circuit: &CircuitIr, noise: &NoiseModel, seed: u64) -> RunRecord {
    let plan = sample_fault_plan(circuit, noise, seed);
    run_frame_with_plan(circuit, &plan)
}

/// Replay a fault plan through the Pauli-frame engine.
pub fn run_frame_with_plan(circuit: &CircuitIr, plan: &FaultPlan) -> RunRecord {
    let mut frame = PauliFrame::new(circuit.n_qubits as usize);
    let mut slots = vec![false; circuit.n_slots as usize];
    let mut fault_cursor = 0usize;
    for (i, op) in circuit.ops.iter().enumerate() {
        // pre-op faults for moves (noise occurs in transit, before use);
        // post-op for gates. Either order is equivalent for the frame when
        // the fault anchors to the op itself, so apply op first, then fault.
        match op {
            Op::Gate { kind, targets } => apply_frame_gate(&mut frame, *kind, targets),
            Op::Move { .. } => {}
            Op::Measure { qubit, basis, slot } => {
                let flip = match basis {
                    Basis::Z => frame.z_flip(*qubit as usize),
                    Basis::X => frame.x_flip(*qubit as usize),
                };
                slots[*slot as usize] = flip ^ plan.measure_flips[i];
            }
            Op::CorrectFromSyndrome {
                code,
                kind,
                syndrome_slots,
                data_qubits,
            } => {
                let css = CssCode::for_kind(*code);
                let syndrome = read_syndrome(&slots, syndrome_slots);
                if let Some(pos) = css.decode(syndrome) {
                    // The reference run never corrects, so the correction
                    // gate itself enters the frame.
                    let q = data_qubits[pos] as usize;
                    match kind {
                        CorrectionKind::FlipX => frame.inject(q, PauliKind::X),
                        CorrectionKind::FlipZ => frame.inject(q, PauliKind::Z),
                    }
                }
            }
        }
        while fault_cursor < plan.faults.len() && plan.faults[fault_cursor].op_index == i {
            let f = &plan.faults[fault_cursor];
            frame.inject(f.qubit as usize, f.pauli);
            fault_cursor += 1;
        }
    }
    let logical_failure = circuit.logical_check.as_ref().is_some_and(|check| {
        let css = CssCode::for_kind(check.code);
        let x_word = word_of(&check.data_qubits, |q| frame.x_bit(q));
        let z_word = word_of(&check.data_qubits, |q| frame.z_bit(q));
        let x_fail = css.residual_logical(x_word);
        let z_fail = css.corrects_phase && css.residual_logical(z_word);
        x_fail || z_fail
    });
    RunRecord {
        outcomes: slots,
        injected: plan.faults.clone(),
        logical_failure,
    }
}

/// Replay the same fault plan through the stabilizer tableau. Requires a
/// circuit whose noise-free reference outcomes are deterministically zero,
/// so syndrome slots coincide between engines.
pub fn run_tableau_with_plan(
    circuit: &CircuitIr,
    plan: &FaultPlan,
    rng: &mut impl Rng,
) -> RunRecord {
    let mut tab = StabilizerTableau::new(circuit.n_qubits as usize);
    let mut slots = vec![false; circuit.n_slots as usize];
    let mut fault_cursor = 0usize;
    for (i, op) in circuit.ops.iter().enumerate() {
        match op {
            Op::Gate { kind, targets } => {
                let t: Vec<usize> = targets.iter().map(|&q| q as usize).collect();
                tab.apply(*kind, &t).expect("validated circuit");
            }
            Op::Move { .. } => {}
            Op::Measure { qubit, basis, slot } => {
                let out = match basis {
                    Basis::Z => tab.measure_z(*qubit as usize, rng),
                    Basis::X => tab.measure_x(*qubit as usize, rng),
                };
                slots[*slot as usize] = out.value ^ plan.measure_flips[i];
            }
            Op::CorrectFromSyndrome {
                code,
                kind,
                syndrome_slots,
                data_qubits,
            } => {
                let css = CssCode::for_kind(*code);
                let syndrome = read_syndrome(&slots, syndrome_slots);
                if let Some(pos) = css.decode(syndrome) {
                    let gate = match kind {
                        CorrectionKind::FlipX => GateKind::X,
                        CorrectionKind::FlipZ => GateKind::Z,
                    };
                    tab.apply(gate, &[data_qubits[pos] as usize])
                        .expect("validated circuit");
                }
            }
        }
        while fault_cursor < plan.faults.len() && plan.faults[fault_cursor].op_index == i {
            let f = &plan.faults[fault_cursor];
            let gate = match f.pauli {
                PauliKind::I => None,
                PauliKind::X => Some(GateKind::X),
                PauliKind::Y => Some(GateKind::Y),
                PauliKind::Z => Some(GateKind::Z),
            };
            if let Some(g) = gate {
                tab.apply(g, &[f.qubit as usize]).expect("validated circuit");
            }
            fault_cursor += 1;
        }
    }
    // Final perfect decode: read the data block out in the Z basis, correct
    // the classical word, and compare the logical value against the ideal 0.
    let logical_failure = circuit.logical_check.as_ref().is_some_and(|check| {
        let css = CssCode::for_kind(check.code);
        let mut word = 0u32;
        for (bit, &q) in check.data_qubits.iter().enumerate() {
            if tab.measure_z(q as usize, rng).value {
                word |= 1 << bit;
            }
        }
        css.residual_logical(word)
    });
    RunRecord {
        outcomes: slots,
        injected: plan.faults.clone(),
        logical_failure,
    }
}

fn apply_frame_gate(frame: &mut PauliFrame, kind: GateKind, targets: &[u32]) {
    match kind {
        GateKind::H => frame.h(targets[0] as usize),
        GateKind::S => frame.s(targets[0] as usize),
        GateKind::Cnot => frame.cnot(targets[0] as usize, targets[1] as usize),
        // Pauli gates commute with the frame up to phase.
        GateKind::X | GateKind::Y | GateKind::Z => {}
    }
}

fn read_syndrome(slots: &[bool], syndrome_slots: &[u32]) -> u32 {
    syndrome_slots
        .iter()
        .enumerate()
        .fold(0, |s, (k, &slot)| s | ((slots[slot as usize] as u32) << k))
}

fn word_of(qubits: &[u32], bit: impl Fn(usize) -> bool) -> u32 {
    qubits
        .iter()
        .enumerate()
        .fold(0, |w, (k, &q)| w | ((bit(q as usize) as u32) << k))
}

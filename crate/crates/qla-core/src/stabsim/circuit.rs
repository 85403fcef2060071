//! Timed circuit representation consumed by the noisy runners: Clifford
//! gates, ballistic moves, basis measurements into classical slots, and
//! corrections conditioned on classical syndromes.

use super::tableau::GateKind;
use crate::layout::CodeKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("op {op_index}: qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange {
        op_index: usize,
        qubit: u32,
        n: u32,
    },
    #[error("op {op_index}: gate {gate} expects {expected} distinct target(s)")]
    BadTargets {
        op_index: usize,
        gate: &'static str,
        expected: usize,
    },
    #[error("op {op_index}: classical slot {slot} not yet written")]
    SlotNotWritten { op_index: usize, slot: u32 },
    #[error("op {op_index}: slot {slot} out of range for {slots} slots")]
    SlotOutOfRange {
        op_index: usize,
        slot: u32,
        slots: u32,
    },
    #[error("op {op_index}: syndrome width {got} does not match code checks {expected}")]
    SyndromeWidthMismatch {
        op_index: usize,
        got: usize,
        expected: usize,
    },
}

/// Measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Z,
    X,
}

/// Pauli species a conditional correction applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionKind {
    /// X gates fixing bit-flip errors.
    FlipX,
    /// Z gates fixing phase-flip errors.
    FlipZ,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Op {
    Gate { kind: GateKind, targets: Vec<u32> },
    Move { qubit: u32, cells: u32, turns: u32 },
    Measure { qubit: u32, basis: Basis, slot: u32 },
    /// Decode the syndrome bits recorded in `syndrome_slots` with the code's
    /// lookup table and apply the indicated physical correction gate.
    CorrectFromSyndrome {
        code: CodeKind,
        kind: CorrectionKind,
        syndrome_slots: Vec<u32>,
        data_qubits: Vec<u32>,
    },
}

/// Final perfect-decoding check defining the run's logical-failure flag.
#[derive(Debug, Clone, PartialEq)]
pub struct LogicalCheck {
    pub code: CodeKind,
    pub data_qubits: Vec<u32>,
}

/// An ordered, timed list of operations over `n_qubits` qubits and
/// `n_slots` classical bits.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitIr {
    pub n_qubits: u32,
    pub n_slots: u32,
    pub ops: Vec<Op>,
    pub logical_check: Option<LogicalCheck>,
}

impl CircuitIr {
    pub fn new(n_qubits: u32, n_slots: u32) -> Self {
        CircuitIr {
            n_qubits,
            n_slots,
            ops: Vec::new(),
            logical_check: None,
        }
    }

    pub fn gate(&mut self, kind: GateKind, targets: &[u32]) -> &mut Self {
        self.ops.push(Op::Gate {
            kind,
            targets: targets.to_vec(),
        });
        self
    }

    pub fn do_move(&mut self, qubit: u32, cells: u32, turns: u32) -> &mut Self {
        self.ops.push(Op::Move {
            qubit,
            cells,
            turns,
        });
        self
    }

    pub fn measure(&mut self, qubit: u32, basis: Basis, slot: u32) -> &mut Self {
        self.ops.push(Op::Measure { qubit, basis, slot });
        self
    }

    /// Validate qubit ranges, target arities, slot ranges, and that every
    /// syndrome slot is written before the correction that reads it.
    pub fn validate(&self) -> Result<(), CircuitError> {
        let mut written = vec![false; self.n_slots as usize];
        let check_qubit = |op_index: usize, q: u32| {
            if q >= self.n_qubits {
                Err(CircuitError::QubitOutOfRange {
                    op_index,
                    qubit: q,
                    n: self.n_qubits,
                })
            } else {
                Ok(())
            }
        };
        for (i, op) in self.ops.iter().enumerate() {
            match op {
                Op::Gate { kind, targets } => {
                    let distinct = targets.len() == 2 && targets[0] != targets[1];
                    if targets.len() != kind.arity() || (kind.arity() == 2 && !distinct) {
                        return Err(CircuitError::BadTargets {
                            op_index: i,
                            gate: kind.name(),
                            expected: kind.arity(),
                        });
                    }
                    for &q in targets {
                        check_qubit(i, q)?;
                    }
                }
                Op::Move { qubit, .. } => check_qubit(i, *qubit)?,
                Op::Measure { qubit, slot, .. } => {
                    check_qubit(i, *qubit)?;
                    if *slot >= self.n_slots {
                        return Err(CircuitError::SlotOutOfRange {
                            op_index: i,
                            slot: *slot,
                            slots: self.n_slots,
                        });
                    }
                    written[*slot as usize] = true;
                }
                Op::CorrectFromSyndrome {
                    code,
                    syndrome_slots,
                    data_qubits,
                    ..
                } => {
                    let checks = super::codes::CssCode::for_kind(*code).checks.len();
                    if syndrome_slots.len() != checks {
                        return Err(CircuitError::SyndromeWidthMismatch {
                            op_index: i,
                            got: syndrome_slots.len(),
                            expected: checks,
                        });
                    }
                    for &s in syndrome_slots {
                        if s >= self.n_slots {
                            return Err(CircuitError::SlotOutOfRange {
                                op_index: i,
                                slot: s,
                                slots: self.n_slots,
                            });
                        }
                        if !written[s as usize] {
                            return Err(CircuitError::SlotNotWritten { op_index: i, slot: s });
                        }
                    }
                    for &q in data_qubits {
                        check_qubit(i, q)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_bad_targets() {
        let mut c = CircuitIr::new(2, 1);
        c.gate(GateKind::Cnot, &[0, 0]);
        assert!(matches!(
            c.validate(),
            Err(CircuitError::BadTargets { .. })
        ));
    }

    #[test]
    fn validation_requires_written_slots() {
        let mut c = CircuitIr::new(3, 2);
        c.ops.push(Op::CorrectFromSyndrome {
            code: CodeKind::Bitflip31,
            kind: CorrectionKind::FlipX,
            syndrome_slots: vec![0, 1],
            data_qubits: vec![0, 1, 2],
        });
        assert!(matches!(
            c.validate(),
            Err(CircuitError::SlotNotWritten { .. })
        ));
    }

    #[test]
    fn valid_circuit_passes() {
        let mut c = CircuitIr::new(5, 2);
        c.do_move(0, 1, 0)
            .gate(GateKind::Cnot, &[0, 3])
            .measure(3, Basis::Z, 0)
            .measure(4, Basis::Z, 1);
        c.ops.push(Op::CorrectFromSyndrome {
            code: CodeKind::Bitflip31,
            kind: CorrectionKind::FlipX,
            syndrome_slots: vec![0, 1],
            data_qubits: vec![0, 1, 2],
        });
        assert!(c.validate().is_ok());
    }
}

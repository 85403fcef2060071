//! CSS code tables used by the error-correction circuits: parity checks,
//! single-error lookup decoding, and logical-state preparation circuits.

use crate::layout::CodeKind;

/// A gate in a logical-state preparation circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrepGate {
    H(usize),
    Cnot(usize, usize),
}

/// Parity checks and preparation circuits for a small CSS code. Words and
/// check rows are bitmasks with bit i = qubit i.
#[derive(Debug, Clone)]
pub struct CssCode {
    pub kind: CodeKind,
    pub n: usize,
    /// Parity-check rows; the Steane code is self-dual so the same rows
    /// check X and Z errors.
    pub checks: Vec<u32>,
    /// Circuit preparing logical |0>: the superposition of dual codewords.
    pub zero_prep: Vec<PrepGate>,
    /// Circuit preparing logical |+>: the superposition of all codewords.
    pub plus_prep: Vec<PrepGate>,
    /// Whether the code corrects Z errors (has X-type stabilizers).
    pub corrects_phase: bool,
    // syndrome -> flipped qubit
    lut: Vec<Option<usize>>,
}

impl CssCode {
    /// Steane `[[7,1,3]]`: checks are the Hamming(7,4) rows, qubit i sits at
    /// position i+1 whose binary representation is its syndrome.
    pub fn steane() -> Self {
        // check k covers the qubits whose (position = index+1) has bit k set
        let checks = vec![0b1010101, 0b1100110, 0b1111000];
        let zero_prep = vec![
            PrepGate::H(0),
            PrepGate::H(1),
            PrepGate::H(3),
            PrepGate::Cnot(0, 2),
            PrepGate::Cnot(0, 4),
            PrepGate::Cnot(0, 6),
            PrepGate::Cnot(1, 2),
            PrepGate::Cnot(1, 5),
            PrepGate::Cnot(1, 6),
            PrepGate::Cnot(3, 4),
            PrepGate::Cnot(3, 5),
            PrepGate::Cnot(3, 6),
        ];
        let plus_prep = vec![
            PrepGate::H(2),
            PrepGate::H(4),
            PrepGate::H(5),
            PrepGate::H(6),
            PrepGate::Cnot(2, 0),
            PrepGate::Cnot(2, 1),
            PrepGate::Cnot(4, 0),
            PrepGate::Cnot(4, 3),
            PrepGate::Cnot(5, 1),
            PrepGate::Cnot(5, 3),
            PrepGate::Cnot(6, 0),
            PrepGate::Cnot(6, 1),
            PrepGate::Cnot(6, 3),
        ];
        Self::build(CodeKind::Steane713, 7, checks, zero_prep, plus_prep, true)
    }

    /// 3-qubit bit-flip repetition code; corrects X errors only.
    pub fn bitflip() -> Self {
        let checks = vec![0b011, 0b110];
        // logical |0> = |000>
        let zero_prep = vec![];
        // logical |+> = (|000> + |111>)/sqrt(2)
        let plus_prep = vec![PrepGate::H(0), PrepGate::Cnot(0, 1), PrepGate::Cnot(0, 2)];
        Self::build(CodeKind::Bitflip31, 3, checks, zero_prep, plus_prep, false)
    }

    pub fn for_kind(kind: CodeKind) -> Self {
        match kind {
            CodeKind::Steane713 => Self::steane(),
            CodeKind::Bitflip31 => Self::bitflip(),
        }
    }

    fn build(
        kind: CodeKind,
        n: usize,
        checks: Vec<u32>,
        zero_prep: Vec<PrepGate>,
        plus_prep: Vec<PrepGate>,
        corrects_phase: bool,
    ) -> Self {
        let syndrome_of = |word: u32| -> u32 {
            checks
                .iter()
                .enumerate()
                .fold(0, |s, (k, row)| s | (((word & row).count_ones() & 1) << k))
        };
        let mut lut = vec![None; 1 << checks.len()];
        for q in 0..n {
            lut[syndrome_of(1 << q) as usize] = Some(q);
        }
        CssCode {
            kind,
            n,
            checks,
            zero_prep,
            plus_prep,
            corrects_phase,
            lut,
        }
    }

    /// Syndrome of an error word: one parity bit per check row.
    pub fn syndrome(&self, word: u32) -> u32 {
        let mut s = 0u32;
        for (k, row) in self.checks.iter().enumerate() {
            s |= (((word & row).count_ones() & 1) as u32) << k;
        }
        s
    }

    /// Qubit indicated by a non-trivial syndrome, assuming one error.
    pub fn decode(&self, syndrome: u32) -> Option<usize> {
        self.lut[syndrome as usize & (self.lut.len() - 1)]
    }

    /// Apply the lookup correction to a word.
    pub fn correct(&self, word: u32) -> u32 {
        match self.decode(self.syndrome(word)) {
            Some(q) => word ^ (1 << q),
            None => word,
        }
    }

    /// Logical value of a zero-syndrome word: trivial-class words have even
    /// overlap with the all-ones logical operator, the logical class odd.
    pub fn logical_value(&self, word: u32) -> bool {
        (word & ((1 << self.n) - 1)).count_ones() % 2 == 1
    }

    /// Residual logical error of a raw error word after one round of
    /// perfect decoding.
    pub fn residual_logical(&self, word: u32) -> bool {
        self.logical_value(self.correct(word))
    }
}

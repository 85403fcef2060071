//! Binary symplectic stabilizer tableau with destabilizers, after the
//! standard CHP construction: 2n generator rows (destabilizers then
//! stabilizers) of X/Z bits plus a sign bit, updated by Clifford
//! conjugation in O(n) per gate and O(n²) per measurement.

use super::pauli::PauliKind;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableauError {
    #[error("qubit {0} out of range for {1}-qubit tableau")]
    QubitOutOfRange(usize, usize),
    #[error("gate targets must be distinct")]
    DuplicateTargets,
    #[error("gate {0} expects {1} target(s)")]
    WrongArity(&'static str, usize),
}

/// Clifford gates supported by the engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    H,
    S,
    X,
    Y,
    Z,
    Cnot,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Cnot => "CNOT",
        }
    }
}

/// Outcome of a Pauli-basis measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureOutcome {
    pub value: bool,
    /// True when the observable commuted with every stabilizer and the
    /// outcome was forced.
    pub deterministic: bool,
}

const SYMPLECTIC_CHECK_INTERVAL: u64 = 1024;

/// Stabilizer state of `n` qubits, initialized to |0…0⟩.
#[derive(Debug, Clone)]
pub struct StabilizerTableau {
    n: usize,
    // rows 0..n destabilizers, n..2n stabilizers
    xs: Vec<Vec<bool>>,
    zs: Vec<Vec<bool>>,
    signs: Vec<bool>,
    ops_since_check: u64,
}

impl StabilizerTableau {
    pub fn new(n: usize) -> Self {
        let mut xs = vec![vec![false; n]; 2 * n];
        let mut zs = vec![vec![false; n]; 2 * n];
        for i in 0..n {
            xs[i][i] = true; // destabilizer X_i
            zs[n + i][i] = true; // stabilizer Z_i
        }
        StabilizerTableau {
            n,
            xs,
            zs,
            signs: vec![false; 2 * n],
            ops_since_check: 0,
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    /// Conjugate every generator by the gate.
    pub fn apply(&mut self, gate: GateKind, targets: &[usize]) -> Result<(), TableauError> {
        if targets.len() != gate.arity() {
            return Err(TableauError::WrongArity(gate.name(), gate.arity()));
        }
        for &q in targets {
            if q >= self.n {
                return Err(TableauError::QubitOutOfRange(q, self.n));
            }
        }
        match gate {
            GateKind::H => self.h(targets[0]),
            GateKind::S => self.s(targets[0]),
            GateKind::X => self.pauli(targets[0], PauliKind::X),
            GateKind::Y => self.pauli(targets[0], PauliKind::Y),
            GateKind::Z => self.pauli(targets[0], PauliKind::Z),
            GateKind::Cnot => {
                if targets[0] == targets[1] {
                    return Err(TableauError::DuplicateTargets);
                }
                self.cnot(targets[0], targets[1]);
            }
        }
        self.after_op();
        Ok(())
    }

    pub fn h(&mut self, q: usize) {
        for i in 0..2 * self.n {
            let (x, z) = (self.xs[i][q], self.zs[i][q]);
            self.signs[i] ^= x && z;
            self.xs[i][q] = z;
            self.zs[i][q] = x;
        }
    }

    pub fn s(&mut self, q: usize) {
        for i in 0..2 * self.n {
            let (x, z) = (self.xs[i][q], self.zs[i][q]);
            self.signs[i] ^= x && z;
            self.zs[i][q] = z ^ x;
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        for i in 0..2 * self.n {
            let (xc, zc) = (self.xs[i][c], self.zs[i][c]);
            let (xt, zt) = (self.xs[i][t], self.zs[i][t]);
            self.signs[i] ^= xc && zt && (xt == zc);
            self.xs[i][t] = xt ^ xc;
            self.zs[i][c] = zc ^ zt;
        }
    }

    /// Pauli gates only flip signs of anticommuting generators.
    pub fn pauli(&mut self, q: usize, p: PauliKind) {
        for i in 0..2 * self.n {
            let flips = match p {
                PauliKind::I => false,
                PauliKind::X => self.zs[i][q],
                PauliKind::Z => self.xs[i][q],
                PauliKind::Y => self.xs[i][q] ^ self.zs[i][q],
            };
            self.signs[i] ^= flips;
        }
        self.after_op();
    }

    /// Measure qubit `q` in the Z basis.
    pub fn measure_z(&mut self, q: usize, rng: &mut impl Rng) -> MeasureOutcome {
        let n = self.n;
        // A stabilizer row with X support on q anticommutes with Z_q.
        let p = (n..2 * n).find(|&i| self.xs[i][q]);
        let outcome = match p {
            Some(p) => {
                // Random outcome: update the group.
                for i in 0..2 * n {
                    if i != p && self.xs[i][q] {
                        self.row_mult(i, p);
                    }
                }
                // Old stabilizer becomes the destabilizer.
                self.xs[p - n] = std::mem::take(&mut self.xs[p]);
                self.zs[p - n] = std::mem::take(&mut self.zs[p]);
                self.signs[p - n] = self.signs[p];
                self.xs[p] = vec![false; n];
                self.zs[p] = vec![false; n];
                self.zs[p][q] = true;
                let value = rng.gen::<bool>();
                self.signs[p] = value;
                MeasureOutcome {
                    value,
                    deterministic: false,
                }
            }
            None => {
                // Deterministic: accumulate stabilizer rows indicated by the
                // destabilizers that anticommute with Z_q.
                let mut acc_x = vec![false; n];
                let mut acc_z = vec![false; n];
                let mut phase = 0i32; // exponent of i, mod 4
                let mut sign = false;
                for i in 0..n {
                    if self.xs[i][q] {
                        sign ^= self.signs[n + i];
                        phase += Self::mult_phase(&acc_x, &acc_z, &self.xs[n + i], &self.zs[n + i]);
                        for k in 0..n {
                            acc_x[k] ^= self.xs[n + i][k];
                            acc_z[k] ^= self.zs[n + i][k];
                        }
                    }
                }
                debug_assert_eq!(phase.rem_euclid(4) % 2, 0);
                sign ^= phase.rem_euclid(4) == 2;
                MeasureOutcome {
                    value: sign,
                    deterministic: true,
                }
            }
        };
        self.after_op();
        outcome
    }

    /// Measure qubit `q` in the X basis by conjugating with H.
    pub fn measure_x(&mut self, q: usize, rng: &mut impl Rng) -> MeasureOutcome {
        self.h(q);
        let out = self.measure_z(q, rng);
        self.h(q);
        out
    }

    // row h *= row i, tracking the sign through the i-exponent bookkeeping.
    // Destabilizer rows may anticommute with the source row, leaving an odd
    // i-exponent; their signs are bookkeeping-irrelevant, so the exponent is
    // only guaranteed even when h is a stabilizer row.
    fn row_mult(&mut self, h: usize, i: usize) {
        let phase = Self::mult_phase(&self.xs[h], &self.zs[h], &self.xs[i], &self.zs[i]);
        let total = phase + if self.signs[h] { 2 } else { 0 } + if self.signs[i] { 2 } else { 0 };
        debug_assert!(h < self.n || total.rem_euclid(4) % 2 == 0);
        self.signs[h] = total.rem_euclid(4) == 2;
        let (xi, zi) = (self.xs[i].clone(), self.zs[i].clone());
        for k in 0..self.n {
            self.xs[h][k] ^= xi[k];
            self.zs[h][k] ^= zi[k];
        }
    }

    // i-exponent of multiplying Pauli (x1,z1) by (x2,z2), summed per qubit.
    fn mult_phase(x1: &[bool], z1: &[bool], x2: &[bool], z2: &[bool]) -> i32 {
        let mut g = 0i32;
        for k in 0..x1.len() {
            g += match (x1[k], z1[k]) {
                (false, false) => 0,
                (true, true) => (z2[k] as i32) - (x2[k] as i32),
                (true, false) => (z2[k] as i32) * (2 * (x2[k] as i32) - 1),
                (false, true) => (x2[k] as i32) * (1 - 2 * (z2[k] as i32)),
            };
        }
        g
    }

    fn after_op(&mut self) {
        self.ops_since_check += 1;
        if cfg!(debug_assertions) && self.ops_since_check >= SYMPLECTIC_CHECK_INTERVAL {
            self.ops_since_check = 0;
            debug_assert!(self.check_symplectic(), "tableau lost symplectic structure");
        }
    }

    /// Verify the defining symplectic relations: generator i commutes with
    /// generator j unless j is its conjugate partner (j = i ± n).
    pub fn check_symplectic(&self) -> bool {
        let n = self.n;
        for i in 0..2 * n {
            for j in i..2 * n {
                let mut sym = false;
                for k in 0..n {
                    sym ^= (self.xs[i][k] && self.zs[j][k]) ^ (self.zs[i][k] && self.xs[j][k]);
                }
                let expected = j == i + n;
                if sym != expected {
                    return false;
                }
            }
        }
        true
    }
}

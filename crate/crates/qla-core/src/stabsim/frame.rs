//! Pauli-frame engine: tracks the accumulated Pauli deviation of the noisy
//! run from the noise-free reference run. For Clifford circuits with Pauli
//! noise this reproduces the reference-relative measurement flips and
//! logical failure flags of full stabilizer simulation at O(1) per gate.

use super::pauli::PauliKind;

/// X/Z error components per qubit, conjugated through the circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliFrame {
    x: Vec<bool>,
    z: Vec<bool>,
}

impl PauliFrame {
    pub fn new(n: usize) -> Self {
        PauliFrame {
            x: vec![false; n],
            z: vec![false; n],
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_clean(&self) -> bool {
        !self.x.iter().chain(self.z.iter()).any(|&b| b)
    }

    /// Accumulate a Pauli fault on `q`.
    #[inline]
    pub fn inject(&mut self, q: usize, p: PauliKind) {
        self.x[q] ^= p.has_x();
        self.z[q] ^= p.has_z();
    }

    /// Clear a qubit's deviation; used when the qubit is freshly prepared.
    #[inline]
    pub fn reset(&mut self, q: usize) {
        self.x[q] = false;
        self.z[q] = false;
    }

    // Clifford conjugation: the circuit's gates transform accumulated
    // errors; Pauli gates commute up to phase and leave the frame unchanged.

    #[inline]
    pub fn h(&mut self, q: usize) {
        std::mem::swap(&mut self.x[q], &mut self.z[q]);
    }

    #[inline]
    pub fn s(&mut self, q: usize) {
        self.z[q] ^= self.x[q];
    }

    #[inline]
    pub fn cnot(&mut self, c: usize, t: usize) {
        self.x[t] ^= self.x[c];
        self.z[c] ^= self.z[t];
    }

    /// Whether a Z-basis measurement outcome on `q` flips relative to the
    /// reference run.
    #[inline]
    pub fn z_flip(&self, q: usize) -> bool {
        self.x[q]
    }

    /// Whether an X-basis measurement outcome on `q` flips.
    #[inline]
    pub fn x_flip(&self, q: usize) -> bool {
        self.z[q]
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q]
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_exchanges_components() {
        let mut f = PauliFrame::new(1);
        f.inject(0, PauliKind::X);
        f.h(0);
        assert!(!f.x_bit(0));
        assert!(f.z_bit(0));
        f.h(0);
        assert!(f.x_bit(0));
    }

    #[test]
    fn cnot_propagates_x_forward_z_backward() {
        let mut f = PauliFrame::new(2);
        f.inject(0, PauliKind::X);
        f.cnot(0, 1);
        assert!(f.x_bit(0) && f.x_bit(1));

        let mut f = PauliFrame::new(2);
        f.inject(1, PauliKind::Z);
        f.cnot(0, 1);
        assert!(f.z_bit(0) && f.z_bit(1));
    }

    #[test]
    fn y_sets_both_components() {
        let mut f = PauliFrame::new(1);
        f.inject(0, PauliKind::Y);
        assert!(f.x_bit(0) && f.z_bit(0));
        assert!(f.z_flip(0) && f.x_flip(0));
    }

    #[test]
    fn double_injection_cancels() {
        let mut f = PauliFrame::new(1);
        f.inject(0, PauliKind::Y);
        f.inject(0, PauliKind::Y);
        assert!(f.is_clean());
    }
}

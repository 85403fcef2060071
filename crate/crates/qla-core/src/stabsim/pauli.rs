//! Single-qubit Pauli labels shared by the noise model and both engines.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    /// The non-identity Paulis, indexable by a draw in 0..3.
    pub fn non_identity(idx: u8) -> PauliKind {
        match idx % 3 {
            0 => PauliKind::X,
            1 => PauliKind::Y,
            _ => PauliKind::Z,
        }
    }

    pub fn has_x(self) -> bool {
        matches!(self, PauliKind::X | PauliKind::Y)
    }

    pub fn has_z(self) -> bool {
        matches!(self, PauliKind::Z | PauliKind::Y)
    }
}

/// The 15 non-identity two-qubit Paulis, indexable by a draw in 0..15.
pub fn two_qubit_pauli(idx: u8) -> (PauliKind, PauliKind) {
    const P: [PauliKind; 4] = [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z];
    let idx = (idx % 15) + 1; // skip II
    (P[(idx >> 2) as usize], P[(idx & 3) as usize])
}

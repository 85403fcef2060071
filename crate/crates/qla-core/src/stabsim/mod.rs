//! Stabilizer-circuit Monte Carlo core: a Clifford tableau engine, a
//! Pauli-frame engine for fast noisy sampling, stochastic Pauli noise,
//! circuit IR, CSS code tables, and the recursive error-correction
//! threshold experiment.

pub mod circuit;
pub mod codes;
pub mod experiment;
pub mod frame;
pub mod noise;
pub mod pauli;
pub mod runner;
pub mod tableau;

pub use circuit::{Basis, CircuitIr, CorrectionKind, LogicalCheck, Op};
pub use codes::CssCode;
pub use experiment::{
    crossing_estimate, reliability_at, threshold_sweep, CrossingEstimate, ThresholdPoint,
    ThresholdSweep,
};
pub use frame::PauliFrame;
pub use noise::{NoiseChannel, NoiseModel};
pub use pauli::PauliKind;
pub use runner::{run_noisy, FaultEvent, FaultPlan, RunRecord};
pub use tableau::{GateKind, MeasureOutcome, StabilizerTableau};

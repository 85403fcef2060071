//! Core models for the QLA trapped-ion quantum computer microarchitecture:
//! technology parameters, tile layout geometry, error-correction latency and
//! reliability models, a stabilizer Monte Carlo engine for threshold
//! experiments, the teleportation/repeater interconnect, an EPR traffic
//! scheduler, and end-to-end resource estimates for Shor's algorithm.

pub mod ecc;
pub mod interconnect;
pub mod layout;
pub mod params;
pub mod report;
pub mod scheduler;
pub mod shor;
pub mod stabsim;

pub use ecc::{EccTiming, RecursionModel};
pub use layout::{LogicalQubitTile, TileLayout};
pub use params::{ParameterProfile, TechnologyParams};
pub use shor::{ShorCircuitModel, ShorEstimate};

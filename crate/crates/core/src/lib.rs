//! Pulse-level simulator for nonadiabatic geometric gates on transmons.
//!
//! The crate builds orange-slice pulse schedules for single transmons,
//! parametrically coupled pairs and decoherence-free logical qubits,
//! integrates them under Schrödinger or Lindblad dynamics, and scores the
//! result with state, averaged-gate and process-overlap fidelities.
//!
//! All frequencies are angular (rad/s) and all times are seconds. Use the
//! helpers in [`device::units`] to convert from the `2π × MHz` values used in
//! configuration files.

pub mod config;
pub mod device;
pub mod dfs;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod gates;
pub mod linalg;
pub mod metrics;
pub mod output;
pub mod schedule;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{
    eig_hermitian, kron, lowering, projector, DensityMatrix, Operator, StateVector, C64,
};

//! Simulation core for star-topology spin registers: one central spin-1/2
//! uniformly coupled to a set of indistinguishable ancillary spins.
//!
//! The crate provides two interchangeable density-matrix backends — a
//! symmetry-adapted block representation over ancilla Dicke sectors and a
//! brute-force dense representation — together with the state-preparation
//! circuits, coherence-order bookkeeping, and protocol-level experiments
//! (diffusion encoding, RF-inhomogeneity mapping, CPMG noise spectroscopy,
//! heat-bath algorithmic cooling, Fisher-information estimation, Floquet
//! time-crystal dynamics, and kicked-top chaos diagnostics) built on top of
//! them.
//!
//! Everything here is pure computation over immutable values: no IO, no
//! global state, and deterministic output for fixed seeds.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dicke;
pub mod error;
pub mod linalg;
pub mod operator;
pub mod register;
pub mod state;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use operator::{Backend, Operator, OperatorSet, Target};
pub use register::{Register, RegisterSpec, RotatingFrameParams};
pub use state::{CollectiveState, DenseState, State};
pub use tolerance::Tolerances;

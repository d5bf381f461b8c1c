//! Density-matrix simulation of a Bell pair sent through bit-flip and
//! phase-flip channels, with and without three-qubit error correction.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, density matrices, Kronecker
//!   products, partial traces and Hermitian eigendecomposition.
//! - [`quantum`]: Pauli matrices, Bell states, single-qubit states and
//!   gates embedded in a register.
//! - [`channels`]: the bit-flip and phase-flip maps and the two noise
//!   scenarios ([`Case::I`]: both qubits bit-flipped, [`Case::II`]: bit-flip
//!   on A, phase-flip on B).
//! - [`qec`]: three-qubit bit-flip and phase-flip codes and the six-qubit
//!   corrected-pair pipeline.
//! - [`metrics`]: concurrence and the maximal CHSH value, plus an explicit
//!   Bell-operator search used as a cross-check.
//! - [`protocols`]: superdense coding and teleportation on the noisy or
//!   corrected pair.
//!
//! Every quantity is computed by simulation. Nothing here evaluates the
//! closed-form curves; those live in the test suites and the CLI.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod protocols;
pub mod qec;
pub mod quantum;
pub mod tolerance;

pub use channels::{apply_channel, noisy_bell, Case, ChannelKind, PauliChannel, Probability};
pub use error::{Error, Result};
pub use linalg::{eig_hermitian, kron, partial_trace, sqrt_psd, ComplexMatrix, DensityMatrix};
pub use metrics::{bmax, bmax_oracle, case_curves, concurrence, MetricsPoint};
pub use protocols::{avg_teleport_fidelity, dense_coding, teleport};
pub use qec::{build_code, correction_probability, corrected_pair, CodeKind, QecCode, QecScheme};
pub use quantum::{bell_state, gate_at, pauli, qubit_state, BellIndex, BlochAngles, Gate, PauliIndex};

pub use num_complex::Complex64;

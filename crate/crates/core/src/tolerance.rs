//! Numerical tolerances shared by every module.
//!
//! All thresholds live here so that validation, clamping and the test
//! suites agree on what "zero" means.

/// Max entrywise |M − M†| for a matrix to count as a density matrix.
pub const HERMITIAN: f64 = 1e-12;

/// Max |Tr ρ − 1| for a density matrix.
pub const TRACE: f64 = 1e-12;

/// Eigenvalues of a density matrix may dip this far below zero.
pub const PSD_SLACK: f64 = 1e-10;

/// Max entrywise |M − M†| accepted by the Hermitian eigensolver.
pub const EIG_INPUT_HERMITIAN: f64 = 1e-10;

/// Eigenvalues below −this make `sqrt_psd` reject its input; anything
/// between −this and 0 is clamped to 0.
pub const SQRT_NEGATIVE_LIMIT: f64 = 1e-8;

/// Max unitarity defect |U†U − I| for gates and code unitaries.
pub const UNITARY: f64 = 1e-12;

/// Imaginary residue tolerated on eigenvalues of ρρ̃ before they are
/// taken as real.
pub const SPECTRUM_IMAG_RESIDUE: f64 = 1e-9;

/// Eigenvalues of ρρ̃ with magnitude below this are rounding noise and are
/// set to zero before the square root.
pub const SPECTRUM_ZERO: f64 = 1e-14;

/// Imaginary residue tolerated on Tr[ρ(σₙ⊗σₘ)].
pub const CORRELATION_IMAG_RESIDUE: f64 = 1e-10;

/// Probabilities below this are treated as exactly zero inside logarithms.
pub const PROBABILITY_FLOOR: f64 = 1e-15;

/// Measurement outcomes rarer than this carry no conditional state.
pub const OUTCOME_FLOOR: f64 = 1e-14;

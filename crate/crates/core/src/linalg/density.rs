use num_complex::Complex64;

use super::eigen::eig_hermitian;
use super::matrix::{qubit_count, ComplexMatrix};
use crate::error::{Error, Result};
use crate::tolerance;

/// A qubit-register state: Hermitian, unit trace, positive semidefinite.
///
/// Slot 0 is the most significant bit of the computational-basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    num_qubits: usize,
}

impl DensityMatrix {
    /// Validates `matrix` and wraps it.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self::from_matrix_unchecked(matrix)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Wraps `matrix` after checking only that its dimension is a power of
    /// two. For outputs of operations known to preserve the state
    /// invariants (unitary evolution, Pauli channels, partial traces).
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Result<Self> {
        let num_qubits = qubit_count(matrix.dim())?;
        if num_qubits == 0 {
            return Err(Error::invalid("a density matrix needs at least one qubit"));
        }
        Ok(Self { matrix, num_qubits })
    }

    /// |ψ⟩⟨ψ| for a unit-norm state vector.
    pub fn from_pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > tolerance::TRACE {
            return Err(Error::invalid(format!("state vector has squared norm {norm2}")));
        }
        Self::from_matrix_unchecked(ComplexMatrix::outer(amplitudes))
    }

    /// |0…0⟩⟨0…0| on `num_qubits` qubits.
    pub fn zero_state(num_qubits: usize) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(1 << num_qubits);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        Self::from_matrix_unchecked(m)
    }

    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        Self::from_matrix_unchecked(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// Checks hermiticity, unit trace and positivity against the shared
    /// tolerances.
    pub fn validate(&self) -> Result<()> {
        let deviation = self.matrix.hermitian_deviation();
        if deviation > tolerance::HERMITIAN {
            return Err(Error::NotHermitian(deviation));
        }
        let trace = self.matrix.trace();
        if (trace.re - 1.0).abs() > tolerance::TRACE || trace.im.abs() > tolerance::TRACE {
            return Err(Error::InvalidTrace(trace.re));
        }
        let lowest = self.min_eigenvalue()?;
        if lowest < -tolerance::PSD_SLACK {
            return Err(Error::NotPositive(lowest));
        }
        Ok(())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let eig = eig_hermitian(&self.matrix)?;
        Ok(eig.values.last().copied().unwrap_or(0.0))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.matrix[(i, j)] * self.matrix[(j, i)]).re;
            }
        }
        acc
    }

    /// Tr[ρ · op].
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<Complex64> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: op.dim(),
            });
        }
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix[(i, j)] * op[(j, i)];
            }
        }
        Ok(acc)
    }

    /// ⟨ψ|ρ|ψ⟩.
    pub fn overlap_with_pure(&self, psi: &[Complex64]) -> Result<f64> {
        let rho_psi = self.matrix.apply(psi)?;
        Ok(psi
            .iter()
            .zip(&rho_psi)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .re)
    }

    /// U ρ U†.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: unitary.dim(),
            });
        }
        Ok(Self {
            matrix: ComplexMatrix::conjugate_hermitian(unitary, &self.matrix),
            num_qubits: self.num_qubits,
        })
    }

    /// Convex combination `(1 − w)·self + w·other`.
    pub(crate) fn mix(&self, other: &ComplexMatrix, w: f64) -> Self {
        Self {
            matrix: &self.matrix.scale_real(1.0 - w) + &other.scale_real(w),
            num_qubits: self.num_qubits,
        }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &DensityMatrix) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
            num_qubits: self.num_qubits + other.num_qubits,
        }
    }

    /// Reorders qubits: slot `s` of the result holds slot `order[s]` of `self`.
    pub fn permute_qubits(&self, order: &[usize]) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.permute_qubits(order)?,
            num_qubits: self.num_qubits,
        })
    }
}

/// Reduced state on the slots in `keep`, ordered by ascending slot.
///
/// `keep` is a set: it must be non-empty, in range and free of duplicates.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    if keep.is_empty() {
        return Err(Error::invalid("partial trace must keep at least one qubit"));
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    if kept.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!("duplicate slot in {keep:?}")));
    }
    if let Some(&bad) = kept.iter().find(|&&s| s >= n) {
        return Err(Error::invalid(format!("slot {bad} out of range for {n} qubits")));
    }
    let traced: Vec<usize> = (0..n).filter(|s| !kept.contains(s)).collect();

    // Map a compact index over `slots` to the full register index.
    let scatter = |slots: &[usize]| -> Vec<usize> {
        (0..1usize << slots.len())
            .map(|x| {
                slots.iter().enumerate().fold(0, |acc, (pos, &slot)| {
                    let bit = (x >> (slots.len() - 1 - pos)) & 1;
                    acc | (bit << (n - 1 - slot))
                })
            })
            .collect()
    };
    let keep_idx = scatter(&kept);
    let trace_idx = scatter(&traced);

    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(keep_idx.len());
    for (i, &fi) in keep_idx.iter().enumerate() {
        for (j, &fj) in keep_idx.iter().enumerate() {
            out[(i, j)] = trace_idx.iter().map(|&t| m[(fi | t, fj | t)]).sum();
        }
    }
    DensityMatrix::from_matrix_unchecked(out)
}

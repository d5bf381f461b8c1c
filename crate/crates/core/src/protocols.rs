//! Superdense coding and teleportation over a noisy Bell pair.

use crate::channels::{Case, Probability};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix, DensityMatrix};
use crate::qec::{resource_state, standard_scheme, QecScheme};
use crate::quantum::{bell_state, layout::teleport, pauli, qubit_state, qubit_vector, BellIndex, BlochAngles};
use crate::tolerance;

/// Projective measurement onto the four Bell states of two qubits.
#[derive(Debug, Clone)]
pub struct BellMeasurement {
    projectors: [ComplexMatrix; 4],
}

impl BellMeasurement {
    pub fn new() -> Self {
        Self {
            projectors: BellIndex::ALL.map(|k| bell_state(k).into_matrix()),
        }
    }

    pub fn projectors(&self) -> &[ComplexMatrix; 4] {
        &self.projectors
    }

    pub fn projector(&self, k: BellIndex) -> &ComplexMatrix {
        &self.projectors[k.index()]
    }

    /// Outcome probabilities Tr[𝔹ₖρ] on a two-qubit state.
    pub fn probabilities(&self, rho: &DensityMatrix) -> Result<[f64; 4]> {
        if rho.num_qubits() != 2 {
            return Err(Error::DimensionMismatch { expected: 4, got: rho.dim() });
        }
        let mut out = [0.0; 4];
        for (slot, proj) in out.iter_mut().zip(&self.projectors) {
            *slot = rho.expectation(proj)?.re.max(0.0);
        }
        Ok(out)
    }
}

impl Default for BellMeasurement {
    fn default() -> Self {
        Self::new()
    }
}

/// Bob's statistics P(k|j) for Alice's message j, and the resulting
/// mutual information in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseCodingResult {
    pub conditional: [[f64; 4]; 4],
    pub mutual_information: f64,
}

/// ℐ = Σⱼₖ qⱼ P(k|j) log₂(P(k|j)/P(k)) with uniform qⱼ = 1/4.
pub fn mutual_information(conditional: &[[f64; 4]; 4]) -> f64 {
    let q = 0.25;
    let clamp = |x: f64| if x < tolerance::PROBABILITY_FLOOR { 0.0 } else { x };
    let marginal: [f64; 4] = std::array::from_fn(|k| conditional.iter().map(|row| q * clamp(row[k])).sum());
    let mut info = 0.0;
    for row in conditional {
        for (k, &pkj) in row.iter().enumerate() {
            let pkj = clamp(pkj);
            if pkj > 0.0 {
                info += q * pkj * (pkj / marginal[k]).log2();
            }
        }
    }
    info.clamp(0.0, 2.0)
}

/// Alice applies σⱼ to her half of |σ₀/√2⟩⟩ for each message j, the
/// pair crosses the channels of `case`, Bob measures in the Bell basis.
pub fn dense_coding(case: Case, p: Probability, with_qec: bool) -> DenseCodingResult {
    dense_coding_with(case, p, with_qec.then(standard_scheme))
}

/// [`dense_coding`] with an explicit correction scheme.
pub fn dense_coding_with(case: Case, p: Probability, qec: Option<&QecScheme>) -> DenseCodingResult {
    let measurement = BellMeasurement::new();
    let mut conditional = [[0.0; 4]; 4];
    for (j, row) in conditional.iter_mut().enumerate() {
        // σⱼ on A maps |σ₀/√2⟩⟩ to |σⱼ/√2⟩⟩
        let rho = resource_state(case, p, BellIndex::ALL[j], qec);
        *row = measurement.probabilities(&rho).expect("two-qubit resource");
    }
    DenseCodingResult {
        conditional,
        mutual_information: mutual_information(&conditional),
    }
}

/// Bob's corrected qubit averaged over Alice's outcomes.
#[derive(Debug, Clone)]
pub struct TeleportedState {
    pub bob: DensityMatrix,
    pub outcome_probs: [f64; 4],
}

/// Teleports the qubit with Bloch angles `angles` through the two-qubit
/// resource (A, B): Bell measurement on (C, A), then σₖ on B.
pub fn teleport_resource(resource: &DensityMatrix, angles: BlochAngles) -> Result<TeleportedState> {
    if resource.num_qubits() != 2 {
        return Err(Error::DimensionMismatch { expected: 4, got: resource.dim() });
    }
    let joint = qubit_state(angles).tensor(resource);
    let measurement = BellMeasurement::new();
    let id = ComplexMatrix::identity(2);

    let mut bob = ComplexMatrix::zeros(2);
    let mut outcome_probs = [0.0; 4];
    for k in BellIndex::ALL {
        let proj = measurement.projector(k).kron(&id);
        let collapsed = &(&proj * joint.matrix()) * &proj;
        let q = collapsed.trace().re;
        outcome_probs[k.index()] = q.max(0.0);
        if q < tolerance::OUTCOME_FLOOR {
            continue;
        }
        let reduced = partial_trace(&DensityMatrix::from_matrix_unchecked(collapsed)?, &[teleport::B])?;
        let fix = pauli(k.pauli());
        // q · (σₖ ρ_B(k) σₖ) with ρ_B(k) normalised
        bob = &bob + &(&(&fix * reduced.matrix()) * &fix);
    }
    Ok(TeleportedState {
        bob: DensityMatrix::from_matrix_unchecked(bob)?,
        outcome_probs,
    })
}

/// ⟨ψ|ρ_B|ψ⟩ for a single input state.
pub fn teleport(case: Case, p: Probability, with_qec: bool, angles: BlochAngles) -> f64 {
    teleport_with(case, p, with_qec.then(standard_scheme), angles)
}

pub fn teleport_with(case: Case, p: Probability, qec: Option<&QecScheme>, angles: BlochAngles) -> f64 {
    let resource = resource_state(case, p, BellIndex::ALL[0], qec);
    fidelity_through(&resource, angles)
}

fn fidelity_through(resource: &DensityMatrix, angles: BlochAngles) -> f64 {
    let out = teleport_resource(resource, angles).expect("two-qubit resource");
    out.bob.overlap_with_pure(&qubit_vector(angles)).expect("one-qubit state")
}

/// Fidelity averaged uniformly over the Bloch sphere.
pub fn avg_teleport_fidelity(case: Case, p: Probability, with_qec: bool) -> f64 {
    avg_teleport_fidelity_with(case, p, with_qec.then(standard_scheme))
}

pub fn avg_teleport_fidelity_with(case: Case, p: Probability, qec: Option<&QecScheme>) -> f64 {
    teleportation_with(case, p, qec).avg_fidelity
}

/// Average fidelity and the Bell-outcome probabilities of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportationResult {
    pub avg_fidelity: f64,
    pub per_outcome_prob: [f64; 4],
}

pub fn teleportation(case: Case, p: Probability, with_qec: bool) -> TeleportationResult {
    teleportation_with(case, p, with_qec.then(standard_scheme))
}

pub fn teleportation_with(case: Case, p: Probability, qec: Option<&QecScheme>) -> TeleportationResult {
    let resource = resource_state(case, p, BellIndex::ALL[0], qec);
    let design = BlochAngles::pauli_eigenstates();
    let mut total = 0.0;
    let mut per_outcome_prob = [0.0; 4];
    for &angles in &design {
        let out = teleport_resource(&resource, angles).expect("two-qubit resource");
        total += out.bob.overlap_with_pure(&qubit_vector(angles)).expect("one-qubit state");
        for (acc, q) in per_outcome_prob.iter_mut().zip(out.outcome_probs) {
            *acc += q / design.len() as f64;
        }
    }
    TeleportationResult {
        avg_fidelity: total / design.len() as f64,
        per_outcome_prob,
    }
}

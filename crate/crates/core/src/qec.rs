//! Three-qubit bit-flip and phase-flip codes and the corrected-pair
//! pipeline.
//!
//! Each logical qubit K is carried by slot K with ancillas K1, K2 prepared
//! in |0⟩. The bit-flip encoder copies the carrier onto both ancillas with
//! two CNOTs; the decoder repeats those CNOTs, which leaves the error
//! syndrome on the ancillas, and a Toffoli controlled by both ancillas
//! flips the carrier back. The phase-flip code wraps the same circuits in
//! Hadamards on all three qubits, turning phase errors into bit errors.
//!
//! The ancillas are traced out at the end, never measured.

use std::sync::OnceLock;

use crate::channels::{apply_channel, noisy_bell, Case, ChannelKind, PauliChannel, Probability};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, ComplexMatrix, DensityMatrix};
use crate::quantum::layout::{block, pair};
use crate::quantum::{bell_state, circuit, gate_at, BellIndex, Gate};

/// Bit-flip encoder: CNOT(K → K1) then CNOT(K → K2).
pub const BIT_FLIP_ENCODER: [Gate; 2] = [
    Gate::Cnot { control: block::CARRIER, target: block::ANCILLA_1 },
    Gate::Cnot { control: block::CARRIER, target: block::ANCILLA_2 },
];

/// Bit-flip decoder: the encoder CNOTs followed by a Toffoli on the carrier.
pub const BIT_FLIP_DECODER: [Gate; 3] = [
    Gate::Cnot { control: block::CARRIER, target: block::ANCILLA_1 },
    Gate::Cnot { control: block::CARRIER, target: block::ANCILLA_2 },
    Gate::Toffoli { controls: [block::ANCILLA_1, block::ANCILLA_2], target: block::CARRIER },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeKind {
    BitFlipCode,
    PhaseFlipCode,
}

impl CodeKind {
    /// The channel this code is designed against.
    pub fn protects_against(self) -> ChannelKind {
        match self {
            CodeKind::BitFlipCode => ChannelKind::BitFlip,
            CodeKind::PhaseFlipCode => ChannelKind::PhaseFlip,
        }
    }

    pub fn for_channel(kind: ChannelKind) -> Self {
        match kind {
            ChannelKind::BitFlip => CodeKind::BitFlipCode,
            ChannelKind::PhaseFlip => CodeKind::PhaseFlipCode,
        }
    }
}

/// A three-qubit code on the block (carrier, ancilla 1, ancilla 2).
#[derive(Debug, Clone, PartialEq)]
pub struct QecCode {
    kind: CodeKind,
    encoder: ComplexMatrix,
    decoder: ComplexMatrix,
}

impl QecCode {
    /// Wraps an arbitrary 8×8 encoder/decoder pair after checking unitarity.
    pub fn new(kind: CodeKind, encoder: ComplexMatrix, decoder: ComplexMatrix) -> Result<Self> {
        for m in [&encoder, &decoder] {
            if m.dim() != 1 << block::QUBITS {
                return Err(Error::DimensionMismatch {
                    expected: 1 << block::QUBITS,
                    got: m.dim(),
                });
            }
            let defect = m.unitarity_defect();
            if defect > crate::tolerance::UNITARY {
                return Err(Error::NotUnitary(defect));
            }
        }
        Ok(Self { kind, encoder, decoder })
    }

    /// Builds a code from gate lists on the three-qubit block; the
    /// phase-flip variant adds the Hadamard layers around them.
    pub fn from_circuits(kind: CodeKind, encoder: &[Gate], decoder: &[Gate]) -> Result<Self> {
        let mut u = circuit(encoder, block::QUBITS)?;
        let mut u_dec = circuit(decoder, block::QUBITS)?;
        if kind == CodeKind::PhaseFlipCode {
            let h3 = hadamard_layer();
            u = &h3 * &u;
            u_dec = &u_dec * &h3;
        }
        Self::new(kind, u, u_dec)
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn encoder(&self) -> &ComplexMatrix {
        &self.encoder
    }

    pub fn decoder(&self) -> &ComplexMatrix {
        &self.decoder
    }

    /// Encodes a single-qubit carrier state with fresh |00⟩ ancillas.
    pub fn encode(&self, carrier: &DensityMatrix) -> Result<DensityMatrix> {
        if carrier.num_qubits() != 1 {
            return Err(Error::invalid("carrier must be a single qubit"));
        }
        carrier.tensor(&DensityMatrix::zero_state(2)?).evolve(&self.encoder)
    }

    /// Applies the decoder to a three-qubit block.
    pub fn decode(&self, block_state: &DensityMatrix) -> Result<DensityMatrix> {
        block_state.evolve(&self.decoder)
    }

    /// Decodes and traces out the ancillas.
    pub fn recover(&self, block_state: &DensityMatrix) -> Result<DensityMatrix> {
        partial_trace(&self.decode(block_state)?, &[block::CARRIER])
    }
}

/// H ⊗ H ⊗ H on the code block.
fn hadamard_layer() -> ComplexMatrix {
    circuit(
        &[
            Gate::Hadamard(block::CARRIER),
            Gate::Hadamard(block::ANCILLA_1),
            Gate::Hadamard(block::ANCILLA_2),
        ],
        block::QUBITS,
    )
    .expect("three-qubit block")
}

/// The standard code of the given kind.
pub fn build_code(kind: CodeKind) -> QecCode {
    QecCode::from_circuits(kind, &BIT_FLIP_ENCODER, &BIT_FLIP_DECODER).expect("standard circuits are valid")
}

/// The pair of codes used by the pipeline: one per channel kind.
#[derive(Debug, Clone, PartialEq)]
pub struct QecScheme {
    bit_flip: QecCode,
    phase_flip: QecCode,
}

impl QecScheme {
    pub fn new(bit_flip: QecCode, phase_flip: QecCode) -> Result<Self> {
        if bit_flip.kind != CodeKind::BitFlipCode || phase_flip.kind != CodeKind::PhaseFlipCode {
            return Err(Error::invalid("scheme needs a bit-flip code and a phase-flip code"));
        }
        Ok(Self { bit_flip, phase_flip })
    }

    pub fn standard() -> Self {
        Self {
            bit_flip: build_code(CodeKind::BitFlipCode),
            phase_flip: build_code(CodeKind::PhaseFlipCode),
        }
    }

    pub fn code_for(&self, channel: ChannelKind) -> &QecCode {
        match channel {
            ChannelKind::BitFlip => &self.bit_flip,
            ChannelKind::PhaseFlip => &self.phase_flip,
        }
    }
}

pub(crate) fn standard_scheme() -> &'static QecScheme {
    static SCHEME: OnceLock<QecScheme> = OnceLock::new();
    SCHEME.get_or_init(QecScheme::standard)
}

/// Probability that at most one of three independent flips occurs:
/// (1 − p)²(1 + 2p).
pub fn correction_probability(p: Probability) -> f64 {
    let p = p.value();
    (1.0 - p) * (1.0 - p) * (1.0 + 2.0 * p)
}

/// Bell pair `input` protected by the standard codes on both sides.
pub fn corrected_pair(case: Case, p: Probability, input: BellIndex) -> DensityMatrix {
    corrected_pair_with(standard_scheme(), case, p, input)
}

/// Encodes both halves of Bell pair `input`, sends all six qubits through
/// the channels of `case`, decodes, and returns the reduced state of the
/// two carriers.
pub fn corrected_pair_with(scheme: &QecScheme, case: Case, p: Probability, input: BellIndex) -> DensityMatrix {
    let code_a = scheme.code_for(case.channel_a());
    let code_b = scheme.code_for(case.channel_b());

    let encoded = encoded_pair(code_a, code_b, input);
    let mut rho = encoded;
    for slot in [pair::A, pair::A1, pair::A2] {
        rho = apply_channel(&rho, PauliChannel::new(case.channel_a(), p), slot).expect("slot in range");
    }
    for slot in [pair::B, pair::B1, pair::B2] {
        rho = apply_channel(&rho, PauliChannel::new(case.channel_b(), p), slot).expect("slot in range");
    }
    let decoder = code_a.decoder().kron(code_b.decoder());
    let decoded = rho.evolve(&decoder).expect("64-dimensional decoder");
    partial_trace(&decoded, &[pair::A, pair::B]).expect("carrier slots")
}

/// (U_A ⊗ U_B)(|Bell⟩_AB ⊗ |0000⟩) on the (A, A1, A2, B, B1, B2) layout.
fn encoded_pair(code_a: &QecCode, code_b: &QecCode, input: BellIndex) -> DensityMatrix {
    // bell ⊗ ancillas is laid out (A, B, A1, A2, B1, B2)
    let initial = bell_state(input)
        .tensor(&DensityMatrix::zero_state(4).expect("four ancillas"))
        .permute_qubits(&[0, 2, 3, 1, 4, 5])
        .expect("six-qubit permutation");
    let encoder = code_a.encoder().kron(code_b.encoder());
    initial.evolve(&encoder).expect("64-dimensional encoder")
}

/// The two-qubit state delivered by the noisy link: plain channels when
/// `qec` is `None`, the corrected pipeline otherwise.
pub fn resource_state(case: Case, p: Probability, input: BellIndex, qec: Option<&QecScheme>) -> DensityMatrix {
    match qec {
        None => noisy_bell(case, p, input),
        Some(scheme) => corrected_pair_with(scheme, case, p, input),
    }
}

/// Injects the code's error Pauli on each listed slot of an encoded block.
pub fn inject_errors(code: &QecCode, block_state: &DensityMatrix, slots: &[usize]) -> Result<DensityMatrix> {
    let pauli = code.kind.protects_against().error_pauli();
    slots.iter().try_fold(block_state.clone(), |rho, &slot| {
        rho.evolve(&gate_at(Gate::Pauli(pauli, slot), block_state.num_qubits())?)
    })
}

//! Pauli matrices, Bell states, single-qubit pure states and gates
//! embedded at arbitrary register slots.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};

/// Register slots for the two fixed layouts used by the simulator.
pub mod layout {
    /// Six-qubit error-correction register: (A, A1, A2, B, B1, B2).
    pub mod pair {
        pub const A: usize = 0;
        pub const A1: usize = 1;
        pub const A2: usize = 2;
        pub const B: usize = 3;
        pub const B1: usize = 4;
        pub const B2: usize = 5;
        pub const QUBITS: usize = 6;
    }

    /// Teleportation register: (C, A, B).
    pub mod teleport {
        pub const C: usize = 0;
        pub const A: usize = 1;
        pub const B: usize = 2;
        pub const QUBITS: usize = 3;
    }

    /// Single three-qubit code block: carrier followed by its two ancillas.
    pub mod block {
        pub const CARRIER: usize = 0;
        pub const ANCILLA_1: usize = 1;
        pub const ANCILLA_2: usize = 2;
        pub const QUBITS: usize = 3;
    }
}

/// Index `k ∈ {0,1,2,3}` of σₖ (σ₀ = I).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliIndex(u8);

impl PauliIndex {
    pub const I: PauliIndex = PauliIndex(0);
    pub const X: PauliIndex = PauliIndex(1);
    pub const Y: PauliIndex = PauliIndex(2);
    pub const Z: PauliIndex = PauliIndex(3);
    pub const ALL: [PauliIndex; 4] = [Self::I, Self::X, Self::Y, Self::Z];

    pub fn new(k: usize) -> Result<Self> {
        if k < 4 {
            Ok(PauliIndex(k as u8))
        } else {
            Err(Error::invalid(format!("Pauli index {k} not in 0..4")))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index `k` of the Bell state |σₖ/√2⟩⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellIndex(u8);

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [BellIndex(0), BellIndex(1), BellIndex(2), BellIndex(3)];

    pub fn new(k: usize) -> Result<Self> {
        if k < 4 {
            Ok(BellIndex(k as u8))
        } else {
            Err(Error::invalid(format!("Bell index {k} not in 0..4")))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The Pauli matrix that labels this Bell state.
    pub fn pauli(self) -> PauliIndex {
        PauliIndex(self.0)
    }
}

impl From<PauliIndex> for BellIndex {
    fn from(k: PauliIndex) -> Self {
        BellIndex(k.0)
    }
}

/// Bloch-sphere angles of cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩,
/// with θ ∈ [0, π] and φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid(format!("theta = {theta} outside [0, π]")));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::invalid(format!("phi = {phi} outside [0, 2π)")));
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The six eigenstates of σ₁, σ₂, σ₃: a spherical 2-design.
    pub fn pauli_eigenstates() -> [BlochAngles; 6] {
        let h = PI / 2.0;
        [
            BlochAngles { theta: 0.0, phi: 0.0 },
            BlochAngles { theta: PI, phi: 0.0 },
            BlochAngles { theta: h, phi: 0.0 },
            BlochAngles { theta: h, phi: PI },
            BlochAngles { theta: h, phi: h },
            BlochAngles { theta: h, phi: 3.0 * h },
        ]
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The 2×2 Pauli matrix σₖ.
pub fn pauli(k: PauliIndex) -> ComplexMatrix {
    let entries = match k.0 {
        0 => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        1 => [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        2 => [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        _ => [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    };
    ComplexMatrix::from_vec(entries.to_vec()).expect("2x2")
}

/// Hadamard gate (σ₁ + σ₃)/√2.
pub fn hadamard() -> ComplexMatrix {
    (&pauli(PauliIndex::X) + &pauli(PauliIndex::Z)).scale_real(FRAC_1_SQRT_2)
}

/// Amplitudes of |σₖ/√2⟩⟩ = (1/√2) Σ_{lm} [σₖ]_{lm} |l⟩_A|m⟩_B.
pub fn bell_vector(k: BellIndex) -> [Complex64; 4] {
    let sigma = pauli(k.pauli());
    let mut amps = [c(0.0, 0.0); 4];
    for l in 0..2 {
        for m in 0..2 {
            amps[2 * l + m] = sigma[(l, m)] * FRAC_1_SQRT_2;
        }
    }
    amps
}

/// Projector onto the Bell state |σₖ/√2⟩⟩.
pub fn bell_state(k: BellIndex) -> DensityMatrix {
    DensityMatrix::from_pure(&bell_vector(k)).expect("Bell vectors are normalised")
}

/// Amplitudes of cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
pub fn qubit_vector(angles: BlochAngles) -> [Complex64; 2] {
    let (s, co) = (angles.theta / 2.0).sin_cos();
    [c(co, 0.0), Complex64::from_polar(s, angles.phi)]
}

pub fn qubit_state(angles: BlochAngles) -> DensityMatrix {
    DensityMatrix::from_pure(&qubit_vector(angles)).expect("qubit vectors are normalised")
}

/// A gate acting on named slots of a register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Toffoli { controls: [usize; 2], target: usize },
    Hadamard(usize),
    Pauli(PauliIndex, usize),
}

impl Gate {
    fn slots(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Toffoli { controls, target } => vec![controls[0], controls[1], target],
            Gate::Hadamard(s) | Gate::Pauli(_, s) => vec![s],
        }
    }
}

/// Full `2^n × 2^n` unitary of `gate` on an `n`-qubit register.
pub fn gate_at(gate: Gate, num_qubits: usize) -> Result<ComplexMatrix> {
    if num_qubits == 0 {
        return Err(Error::invalid("register must hold at least one qubit"));
    }
    let slots = gate.slots();
    for (i, &s) in slots.iter().enumerate() {
        if s >= num_qubits {
            return Err(Error::invalid(format!("slot {s} out of range for {num_qubits} qubits")));
        }
        if slots[..i].contains(&s) {
            return Err(Error::invalid(format!("slot {s} used twice in {gate:?}")));
        }
    }
    let bit = |slot: usize| 1usize << (num_qubits - 1 - slot);
    Ok(match gate {
        Gate::Cnot { control, target } => {
            permutation(num_qubits, |x| if x & bit(control) != 0 { x ^ bit(target) } else { x })
        }
        Gate::Toffoli { controls, target } => {
            let mask = bit(controls[0]) | bit(controls[1]);
            permutation(num_qubits, |x| if x & mask == mask { x ^ bit(target) } else { x })
        }
        Gate::Hadamard(slot) => embed(&hadamard(), slot, num_qubits),
        Gate::Pauli(k, slot) => embed(&pauli(k), slot, num_qubits),
    })
}

/// Product of gates applied left to right: `gates[0]` acts first.
pub fn circuit(gates: &[Gate], num_qubits: usize) -> Result<ComplexMatrix> {
    let mut u = ComplexMatrix::identity(1 << num_qubits);
    for &g in gates {
        u = &gate_at(g, num_qubits)? * &u;
    }
    Ok(u)
}

fn permutation(num_qubits: usize, f: impl Fn(usize) -> usize) -> ComplexMatrix {
    let dim = 1 << num_qubits;
    let mut m = ComplexMatrix::zeros(dim);
    for x in 0..dim {
        m[(f(x), x)] = c(1.0, 0.0);
    }
    m
}

/// I ⊗ … ⊗ op ⊗ … ⊗ I with `op` at `slot`.
fn embed(op: &ComplexMatrix, slot: usize, num_qubits: usize) -> ComplexMatrix {
    let left = ComplexMatrix::identity(1 << slot);
    let right = ComplexMatrix::identity(1 << (num_qubits - 1 - slot));
    left.kron(op).kron(&right)
}

//! Bit-flip and phase-flip channels and the two noise scenarios.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;
use crate::quantum::{bell_state, gate_at, BellIndex, Gate, PauliIndex};

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(Probability(p))
        } else {
            Err(Error::invalid(format!("probability {p} outside [0, 1]")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `steps` evenly spaced points from `min` to `max` inclusive; a single
    /// step yields just `min`.
    pub fn linspace(min: Probability, max: Probability, steps: usize) -> Result<Vec<Probability>> {
        if steps == 0 {
            return Err(Error::invalid("a grid needs at least one point"));
        }
        if min > max {
            return Err(Error::invalid(format!("p_min {} exceeds p_max {}", min.0, max.0)));
        }
        if steps == 1 {
            return Ok(vec![min]);
        }
        let span = max.0 - min.0;
        Ok((0..steps)
            .map(|i| {
                let p = if i + 1 == steps {
                    max.0
                } else {
                    min.0 + span * i as f64 / (steps - 1) as f64
                };
                Probability(p.clamp(min.0, max.0))
            })
            .collect())
    }

    /// `steps` evenly spaced points covering `[0, 1]`.
    pub fn grid(steps: usize) -> Result<Vec<Probability>> {
        Self::linspace(Self::ZERO, Self::ONE, steps)
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Probability::new(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    BitFlip,
    PhaseFlip,
}

impl ChannelKind {
    /// The Pauli applied when the channel errs.
    pub fn error_pauli(self) -> PauliIndex {
        match self {
            ChannelKind::BitFlip => PauliIndex::X,
            ChannelKind::PhaseFlip => PauliIndex::Z,
        }
    }
}

/// ρ ↦ (1 − p)ρ + p EρE with E = σ₁ (bit flip) or σ₃ (phase flip).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliChannel {
    pub kind: ChannelKind,
    pub p: Probability,
}

impl PauliChannel {
    pub fn new(kind: ChannelKind, p: Probability) -> Self {
        Self { kind, p }
    }

    pub fn bit_flip(p: Probability) -> Self {
        Self::new(ChannelKind::BitFlip, p)
    }

    pub fn phase_flip(p: Probability) -> Self {
        Self::new(ChannelKind::PhaseFlip, p)
    }
}

/// Noise scenario for the pair (A, B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// Bit flip on both qubits.
    I,
    /// Bit flip on A, phase flip on B.
    II,
}

impl Case {
    pub const ALL: [Case; 2] = [Case::I, Case::II];

    pub fn channel_a(self) -> ChannelKind {
        ChannelKind::BitFlip
    }

    pub fn channel_b(self) -> ChannelKind {
        match self {
            Case::I => ChannelKind::BitFlip,
            Case::II => ChannelKind::PhaseFlip,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
        })
    }
}

/// Applies `channel` to qubit `slot` of `rho`.
pub fn apply_channel(rho: &DensityMatrix, channel: PauliChannel, slot: usize) -> Result<DensityMatrix> {
    let error = gate_at(Gate::Pauli(channel.kind.error_pauli(), slot), rho.num_qubits())?;
    let p = channel.p.value();
    if p == 0.0 {
        return Ok(rho.clone());
    }
    let flipped = rho.evolve(&error)?;
    Ok(rho.mix(flipped.matrix(), p))
}

/// A Bell pair after one use of each channel of `case`.
pub fn noisy_bell(case: Case, p: Probability, input: BellIndex) -> DensityMatrix {
    let rho = bell_state(input);
    let rho = apply_channel(&rho, PauliChannel::new(case.channel_a(), p), 0).expect("slot 0 of 2");
    apply_channel(&rho, PauliChannel::new(case.channel_b(), p), 1).expect("slot 1 of 2")
}

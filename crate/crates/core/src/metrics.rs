//! Entanglement and nonlocality of two-qubit states.
//!
//! - Concurrence: C = max(0, λ₁ − λ₂ − λ₃ − λ₄), where λᵢ are the
//!   square roots of the eigenvalues of ρρ̃ and ρ̃ = (σ₂⊗σ₂)ρ*(σ₂⊗σ₂).
//!   [`concurrence_via_omega`] computes the same λᵢ as the spectrum of
//!   Ω = √(√ρ ρ̃ √ρ) and is kept as an independent route.
//! - Maximal CHSH value: B_max = 2√(μ₁ + μ₂) with μ₁ ≥ μ₂ the two largest
//!   eigenvalues of TᵀT, Tₙₘ = Tr[ρ(σₙ⊗σₘ)]. [`bmax_oracle`] instead
//!   searches measurement directions explicitly and evaluates the Bell
//!   operator on ρ.

use std::f64::consts::PI;

use crate::channels::{Case, Probability};
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, eigenvalues_general, sqrt_psd, ComplexMatrix, DensityMatrix};
use crate::qec::{resource_state, standard_scheme, QecScheme};
use crate::quantum::{pauli, BellIndex, PauliIndex};
use crate::tolerance;

/// Two-qubit correlation matrix Tₙₘ = Tr[ρ(σₙ⊗σₘ)], n, m ∈ {1, 2, 3}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix(pub [[f64; 3]; 3]);

impl CorrelationMatrix {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        require_two_qubits(rho)?;
        let sigmas = [pauli(PauliIndex::X), pauli(PauliIndex::Y), pauli(PauliIndex::Z)];
        let mut t = [[0.0; 3]; 3];
        for (n, sn) in sigmas.iter().enumerate() {
            for (m, sm) in sigmas.iter().enumerate() {
                let value = rho.expectation(&sn.kron(sm))?;
                if value.im.abs() > tolerance::CORRELATION_IMAG_RESIDUE {
                    return Err(Error::NotHermitian(value.im.abs()));
                }
                t[n][m] = value.re;
            }
        }
        Ok(Self(t))
    }

    /// T applied to a 3-vector.
    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let t = &self.0;
        [0, 1, 2].map(|n| t[n][0] * v[0] + t[n][1] * v[1] + t[n][2] * v[2])
    }

    /// R = TᵀT.
    pub fn gram(&self) -> [[f64; 3]; 3] {
        let t = &self.0;
        let mut r = [[0.0; 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| t[k][i] * t[k][j]).sum();
            }
        }
        r
    }

    /// Eigenvalues μ₁ ≥ μ₂ ≥ μ₃ of TᵀT, clamped at zero.
    pub fn gram_eigenvalues(&self) -> Result<[f64; 3]> {
        let r = self.gram();
        let flat: Vec<f64> = r.iter().flatten().copied().collect();
        let eig = eig_hermitian(&ComplexMatrix::from_real(&flat)?)?;
        Ok([0, 1, 2].map(|i| eig.values[i].max(0.0)))
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.num_qubits() != 2 {
        return Err(Error::invalid(format!(
            "expected a two-qubit state, got {} qubits",
            rho.num_qubits()
        )));
    }
    Ok(())
}

/// ρ̃ = (σ₂⊗σ₂) ρ* (σ₂⊗σ₂), conjugation taken in the computational basis.
pub fn spin_flip(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubits(rho)?;
    let yy = pauli(PauliIndex::Y).kron(&pauli(PauliIndex::Y));
    Ok(&(&yy * &rho.matrix().conj()) * &yy)
}

/// λ₁ − λ₂ − λ₃ − λ₄ clipped at zero; `lambdas` in any order.
fn wootters_combination(mut lambdas: Vec<f64>) -> f64 {
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let rest: f64 = lambdas[1..].iter().sum();
    (lambdas[0] - rest).max(0.0)
}

/// Wootters concurrence from the eigenvalues of ρρ̃.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let product = rho.matrix() * &spin_flip(rho)?;
    let mut lambdas = Vec::with_capacity(4);
    for z in eigenvalues_general(&product)? {
        if z.im.abs() > tolerance::SPECTRUM_IMAG_RESIDUE {
            return Err(Error::invalid(format!("ρρ̃ has non-real eigenvalue {z}")));
        }
        let mu = if z.re.abs() <= tolerance::SPECTRUM_ZERO { 0.0 } else { z.re };
        if mu < 0.0 {
            return Err(Error::NotPositive(mu));
        }
        lambdas.push(mu.sqrt());
    }
    Ok(wootters_combination(lambdas).min(1.0))
}

/// Wootters concurrence from the spectrum of Ω = √(√ρ ρ̃ √ρ).
pub fn concurrence_via_omega(rho: &DensityMatrix) -> Result<f64> {
    let root = sqrt_psd(rho.matrix())?;
    let mut inner = &(&root * &spin_flip(rho)?) * &root;
    let deviation = inner.hermitian_deviation();
    if deviation > tolerance::EIG_INPUT_HERMITIAN {
        return Err(Error::NotHermitian(deviation));
    }
    // clean up rounding so the second square root sees an exactly Hermitian matrix
    inner = (&inner + &inner.adjoint()).scale_real(0.5);
    let omega = sqrt_psd(&inner)?;
    let eig = eig_hermitian(&omega)?;
    Ok(wootters_combination(eig.values).min(1.0))
}

/// Maximal CHSH expectation 2√(μ₁ + μ₂).
pub fn bmax(rho: &DensityMatrix) -> Result<f64> {
    let mu = CorrelationMatrix::of(rho)?.gram_eigenvalues()?;
    Ok(2.0 * (mu[0] + mu[1]).sqrt())
}

/// Measurement directions for the two parties of a CHSH test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a1: [f64; 3],
    pub a2: [f64; 3],
    pub b1: [f64; 3],
    pub b2: [f64; 3],
}

impl ChshSettings {
    /// A₁⊗(B₁ + B₂) + A₂⊗(B₁ − B₂) with X = x̂·σ⃗.
    pub fn bell_operator(&self) -> ComplexMatrix {
        let sum = add(self.b1, self.b2);
        let diff = sub(self.b1, self.b2);
        let first = spin_along(self.a1).kron(&spin_along(sum));
        let second = spin_along(self.a2).kron(&spin_along(diff));
        &first + &second
    }

    /// ⟨B⟩ = Tr[ρ B].
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        require_two_qubits(rho)?;
        Ok(rho.expectation(&self.bell_operator())?.re)
    }
}

/// v·σ⃗ (not normalised).
fn spin_along(v: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    for (k, &x) in v.iter().enumerate() {
        m = &m + &pauli(PauliIndex::new(k + 1).expect("1..=3")).scale_real(x);
    }
    m
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalized(a: [f64; 3]) -> Option<[f64; 3]> {
    let n = dot(a, a).sqrt();
    (n > 1e-300).then(|| scale(a, 1.0 / n))
}

/// Orthonormal pair (ĉ₁, ĉ₂): ĉ₁ from polar angles, ĉ₂ at angle `psi` in
/// the tangent plane at ĉ₁, spanned by Gram–Schmidt on the azimuthal
/// direction and its cross product with ĉ₁.
fn frame(theta: f64, phi: f64, psi: f64) -> ([f64; 3], [f64; 3]) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let c1 = [st * cp, st * sp, ct];
    let e = [-sp, cp, 0.0];
    let u = normalized(sub(e, scale(c1, dot(e, c1)))).expect("azimuthal direction is never parallel to c1");
    let w = cross(c1, u);
    let (ss, cs) = psi.sin_cos();
    (c1, add(scale(u, cs), scale(w, ss)))
}

const ORACLE_GRID: usize = 24;
const ORACLE_REFINE_STEPS: usize = 50;

/// Maximal CHSH value found by direct search over measurement settings.
///
/// For fixed B-side directions the best A-side directions are T(b̂₁ ± b̂₂)
/// normalised, so ⟨B⟩ reduces to 2√(ĉ₁·Rĉ₁ + ĉ₂·Rĉ₂) over orthonormal
/// ĉ₁, ĉ₂ with R = TᵀT. That function is maximised by a 24 × 24 × 24 grid
/// over (θ, φ, ψ) followed by a shrinking pattern search; the winning
/// frame is turned back into explicit settings and ⟨B⟩ = Tr[ρB] is
/// returned, so the result is always attained by real measurements.
pub fn bmax_oracle(rho: &DensityMatrix) -> Result<f64> {
    Ok(bmax_oracle_settings(rho)?.1)
}

/// [`bmax_oracle`] together with the settings that attain it.
pub fn bmax_oracle_settings(rho: &DensityMatrix) -> Result<(ChshSettings, f64)> {
    let t = CorrelationMatrix::of(rho)?;
    let objective = |x: [f64; 3]| {
        let (c1, c2) = frame(x[0], x[1], x[2]);
        let (t1, t2) = (t.apply(c1), t.apply(c2));
        dot(t1, t1) + dot(t2, t2)
    };

    let step0 = PI / ORACLE_GRID as f64;
    let mut best = [0.0; 3];
    let mut best_value = f64::NEG_INFINITY;
    for i in 0..ORACLE_GRID {
        let theta = (i as f64 + 0.5) * step0;
        for j in 0..ORACLE_GRID {
            let phi = 2.0 * j as f64 * step0;
            for k in 0..ORACLE_GRID {
                let x = [theta, phi, k as f64 * step0];
                let value = objective(x);
                if value > best_value {
                    best_value = value;
                    best = x;
                }
            }
        }
    }

    // each level climbs at a fixed step until stuck, then halves it
    let mut step = step0;
    for _ in 0..ORACLE_REFINE_STEPS {
        let mut improved = true;
        while improved {
            improved = false;
            for axis in 0..3 {
                for sign in [1.0, -1.0] {
                    let mut x = best;
                    x[axis] += sign * step;
                    let value = objective(x);
                    if value > best_value {
                        best_value = value;
                        best = x;
                        improved = true;
                    }
                }
            }
        }
        step *= 0.5;
    }

    let (c1, c2) = frame(best[0], best[1], best[2]);
    let settings = settings_from_frame(&t, c1, c2);
    let value = settings.expectation(rho)?;
    Ok((settings, value))
}

fn settings_from_frame(t: &CorrelationMatrix, c1: [f64; 3], c2: [f64; 3]) -> ChshSettings {
    let (t1, t2) = (t.apply(c1), t.apply(c2));
    let (n1, n2) = (dot(t1, t1).sqrt(), dot(t2, t2).sqrt());
    let norm = n1.hypot(n2);
    let (cos, sin) = if norm > 0.0 { (n1 / norm, n2 / norm) } else { (1.0, 0.0) };
    // b̂₁ + b̂₂ = 2cos ĉ₁ and b̂₁ − b̂₂ = 2sin ĉ₂
    let b1 = add(scale(c1, cos), scale(c2, sin));
    let b2 = sub(scale(c1, cos), scale(c2, sin));
    let a1 = normalized(t1).unwrap_or(c1);
    let a2 = normalized(t2).unwrap_or(c2);
    ChshSettings { a1, a2, b1, b2 }
}

/// Concurrence and maximal CHSH value at one noise level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsPoint {
    pub p: f64,
    pub concurrence: f64,
    pub bmax: f64,
}

impl MetricsPoint {
    pub fn of(p: Probability, rho: &DensityMatrix) -> Result<Self> {
        Ok(Self {
            p: p.value(),
            concurrence: concurrence(rho)?,
            bmax: bmax(rho)?,
        })
    }

    pub fn is_entangled(&self) -> bool {
        self.concurrence > 0.0
    }

    pub fn is_nonlocal(&self) -> bool {
        self.bmax > 2.0
    }
}

/// Metrics of the |σ₀/√2⟩⟩ pair along a grid of noise levels, by full
/// simulation.
pub fn case_curves(case: Case, grid: &[Probability], with_qec: bool) -> Vec<MetricsPoint> {
    case_curves_with(case, grid, with_qec.then(standard_scheme))
}

/// [`case_curves`] with an explicit correction scheme (`None` for no QEC).
pub fn case_curves_with(case: Case, grid: &[Probability], qec: Option<&QecScheme>) -> Vec<MetricsPoint> {
    let input = BellIndex::ALL[0];
    grid.iter()
        .map(|&p| {
            let rho = resource_state(case, p, input, qec);
            MetricsPoint::of(p, &rho).expect("simulated states are valid two-qubit states")
        })
        .collect()
}

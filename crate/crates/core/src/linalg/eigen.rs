//! Eigenvalue routines for the small dense matrices used by the simulator.
//!
//! [`eig_hermitian`] is a cyclic complex Jacobi solver: slow for large
//! matrices but unconditionally stable, and the matrices here never exceed
//! 128 × 128. [`eigenvalues_general`] is a shifted Hessenberg QR iteration
//! kept crate-private; only the concurrence needs it.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance;

const MAX_SWEEPS: usize = 64;

/// Spectrum of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary whose `k`-th column is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V · diag(f(λ)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let weights: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, w) in weights.iter().enumerate() {
                    if *w != 0.0 {
                        acc += self.vectors[(i, k)] * self.vectors[(j, k)].conj() * *w;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
///
/// Fails with [`Error::NotHermitian`] if `m` deviates from its adjoint by
/// more than [`tolerance::EIG_INPUT_HERMITIAN`].
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let deviation = m.hermitian_deviation();
    if deviation > tolerance::EIG_INPUT_HERMITIAN {
        return Err(Error::NotHermitian(deviation));
    }
    let n = m.dim();
    let mut a = m.clone();
    a.symmetrize();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = scale == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if mag <= 1e-18 * scale
                    || (app.abs() + 100.0 * mag == app.abs() && aqq.abs() + 100.0 * mag == aqq.abs())
                {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                jacobi_rotate(&mut a, &mut v, p, q, apq / mag, mag);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// One complex Jacobi rotation annihilating `a[(p, q)]`.
///
/// The phase of `a[(p, q)]` is first moved onto column `q`, which leaves a
/// real symmetric 2×2 problem solved by the classical rotation.
fn jacobi_rotate(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    phase: Complex64,
    mag: f64,
) {
    let n = a.dim();
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    for k in 0..n {
        let (kp, kq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = kp * u_pp + kq * u_qp;
        a[(k, q)] = kp * u_pq + kq * u_qq;
        let (vp, vq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vp * u_pp + vq * u_qp;
        v[(k, q)] = vp * u_pq + vq * u_qq;
    }
    for k in 0..n {
        let (pk, qk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = u_pp.conj() * pk + u_qp.conj() * qk;
        a[(q, k)] = u_pq.conj() * pk + u_qq.conj() * qk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-SQRT_NEGATIVE_LIMIT, 0)` are clamped to zero; anything
/// more negative is rejected with [`Error::NotPositive`].
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eig_hermitian(m)?;
    if let Some(&lowest) = eig.values.last() {
        if lowest < -tolerance::SQRT_NEGATIVE_LIMIT {
            return Err(Error::NotPositive(lowest));
        }
    }
    Ok(eig.map_spectrum(|l| l.max(0.0).sqrt()))
}

/// Eigenvalues of a general complex matrix, in no particular order.
///
/// Householder reduction to Hessenberg form followed by single-shift QR
/// with Wilkinson shifts and deflation.
pub(crate) fn eigenvalues_general(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = m.dim();
    let mut h: Vec<Vec<Complex64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    reduce_to_hessenberg(&mut h);

    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let zero = Complex64::new(0.0, 0.0);
    let mut values = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iterations = 0;
    let max_iterations = 64 * n;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[lo - 1][lo - 1].norm() + h[lo][lo].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[lo][lo - 1].norm() <= f64::EPSILON * s {
                h[lo][lo - 1] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            values.push(h[hi][hi]);
            hi -= 1;
            iterations = 0;
            continue;
        }
        iterations += 1;
        if iterations > max_iterations {
            return Err(Error::NoConvergence(max_iterations));
        }

        let shift = if iterations % 11 == 0 {
            // exceptional shift to break cycles
            h[hi][hi] + Complex64::new(0.75 * h[hi][hi - 1].norm(), 0.0)
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        qr_step(&mut h, lo, hi, shift);
    }
    values.push(h[0][0]);
    Ok(values)
}

fn reduce_to_hessenberg(h: &mut [Vec<Complex64>]) {
    let n = h.len();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        let alpha = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let phase = if v[0].norm() > 0.0 {
            v[0] / v[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        v[0] += phase * alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // H ← P H
        for j in 0..n {
            let w: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[k + 1 + t][j]).sum();
            for (t, vi) in v.iter().enumerate() {
                h[k + 1 + t][j] -= vi * w * beta;
            }
        }
        // H ← H P
        for row in h.iter_mut() {
            let w: Complex64 = v.iter().enumerate().map(|(t, vj)| row[k + 1 + t] * vj).sum();
            for (t, vj) in v.iter().enumerate() {
                row[k + 1 + t] -= w * vj.conj() * beta;
            }
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * (a - d) * 0.25 + b * c).sqrt();
    let (mu1, mu2) = (half_tr + disc, half_tr - disc);
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// One shifted QR sweep on the active block `lo..=hi` via Givens rotations.
fn qr_step(h: &mut [Vec<Complex64>], lo: usize, hi: usize, shift: Complex64) {
    for i in lo..=hi {
        h[i][i] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (a, b) = (h[k][k], h[k + 1][k]);
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (a / r, b / r)
        };
        for j in k..=hi {
            let (x, y) = (h[k][j], h[k + 1][j]);
            h[k][j] = c.conj() * x + s.conj() * y;
            h[k + 1][j] = -s * x + c * y;
        }
        rotations.push((c, s));
    }
    for (offset, (c, s)) in rotations.into_iter().enumerate() {
        let k = lo + offset;
        for row in h.iter_mut().take((k + 2).min(hi) + 1).skip(lo) {
            let (x, y) = (row[k], row[k + 1]);
            row[k] = x * c + y * s;
            row[k + 1] = -x * s.conj() + y * c.conj();
        }
    }
    for i in lo..=hi {
        h[i][i] += shift;
    }
}

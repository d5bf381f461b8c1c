//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qecsim::linalg::{ComplexMatrix, DensityMatrix};
use qecsim::metrics::{bmax, bmax_oracle, case_curves, concurrence, concurrence_via_omega};
use qecsim::protocols::{dense_coding, teleportation, BellMeasurement};
use qecsim::qec::{build_code, correction_probability, corrected_pair, inject_errors, CodeKind};
use qecsim::quantum::{circuit, gate_at, layout::block, qubit_state, BellIndex, BlochAngles, Gate, PauliIndex};
use qecsim::{apply_channel, Case, PauliChannel, Probability};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const GRID_STEPS: usize = 101;
const SEED: u64 = 0x5eed_2024;

const TOL_CONCURRENCE: f64 = 1e-10;
const TOL_BMAX: f64 = 1e-9;
const TOL_QEC_METRICS: f64 = 1e-10;
const TOL_QEC_STATE: f64 = 1e-12;
const TOL_PCORR: f64 = 1e-15;
const TOL_MUTUAL_INFO: f64 = 1e-9;
const TOL_MUTUAL_INFO_QEC: f64 = 1e-10;
const TOL_FIDELITY: f64 = 1e-9;
const TOL_ORACLE_BMAX: f64 = 1e-3;
const TOL_DUAL_CONCURRENCE: f64 = 1e-8;
const TOL_TRACE: f64 = 1e-12;
const TOL_PSD: f64 = 1e-10;
const TOL_UNITARY: f64 = 1e-12;
const TOL_BELL_COMPLETE: f64 = 1e-12;
const TOL_OUTCOME: f64 = 1e-10;

const LIMIT_CRITERION_1: Duration = Duration::from_secs(1);
const LIMIT_CRITERION_5: Duration = Duration::from_secs(10);
const LIMIT_CRITERION_8: Duration = Duration::from_secs(20);
const LIMIT_TOTAL: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grid() -> Vec<Probability> {
    Probability::grid(GRID_STEPS).unwrap()
}

fn prob(p: f64) -> Probability {
    Probability::new(p).unwrap()
}

fn p0() -> f64 {
    (SQRT_2 - 1.0) / SQRT_2
}

/// Worst |got − want| over a grid, with the p where it occurs.
#[derive(Default)]
struct MaxError {
    err: f64,
    at: f64,
}

impl MaxError {
    fn push(&mut self, p: f64, got: f64, want: f64) {
        let e = (got - want).abs();
        if e > self.err || e.is_nan() {
            self.err = e;
            self.at = p;
        }
    }

    fn check(&self, label: &str, tol: f64) -> Result<String, String> {
        let msg = format!("{label} max err {:.2e} at p={:.4} (tol {tol:.0e})", self.err, self.at);
        if self.err <= tol {
            Ok(msg)
        } else {
            Err(msg)
        }
    }
}

fn join(parts: Vec<Result<String, String>>) -> Outcome {
    let failed = parts.iter().any(Result::is_err);
    let text = parts
        .into_iter()
        .map(|r| match r {
            Ok(s) | Err(s) => s,
        })
        .collect::<Vec<_>>()
        .join("; ");
    if failed {
        Err(text)
    } else {
        Ok(text)
    }
}

fn within_time(elapsed: Duration, limit: Duration) -> Result<String, String> {
    let msg = format!("{:.3}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs());
    if elapsed < limit {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let points = case_curves(Case::I, &grid(), false);
    let elapsed = start.elapsed();
    let mut c = MaxError::default();
    for pt in &points {
        c.push(pt.p, pt.concurrence, (1.0 - 2.0 * pt.p).powi(2));
    }
    join(vec![c.check("C", TOL_CONCURRENCE), within_time(elapsed, LIMIT_CRITERION_1)])
}

fn criterion_2() -> Outcome {
    let mut b = MaxError::default();
    for pt in case_curves(Case::I, &grid(), false) {
        b.push(pt.p, pt.bmax, 2.0 * (1.0 + (1.0 - 2.0 * pt.p).powi(4)).sqrt());
    }
    b.check("Bmax", TOL_BMAX)
}

fn case_two_concurrence(p: f64) -> f64 {
    if p <= p0() {
        2.0 * p * p - 4.0 * p + 1.0
    } else if p >= 1.0 - p0() {
        2.0 * p * p - 1.0
    } else {
        0.0
    }
}

fn criterion_3() -> Outcome {
    let mut c = MaxError::default();
    let mut b = MaxError::default();
    let mut nonzero_in_window = Vec::new();
    for pt in case_curves(Case::II, &grid(), false) {
        if pt.p >= p0() && pt.p <= 1.0 - p0() {
            if pt.concurrence != 0.0 {
                nonzero_in_window.push(pt.p);
            }
        } else {
            c.push(pt.p, pt.concurrence, case_two_concurrence(pt.p));
        }
        b.push(pt.p, pt.bmax, 2.0 * SQRT_2 * (1.0 - 2.0 * pt.p).abs());
    }
    let window = if nonzero_in_window.is_empty() {
        Ok("C = 0 on [p0, 1-p0]".to_string())
    } else {
        Err(format!("C != 0 at p = {nonzero_in_window:?}"))
    };
    join(vec![window, c.check("C outside window", TOL_CONCURRENCE), b.check("Bmax", TOL_BMAX)])
}

fn criterion_4() -> Outcome {
    let (lo, hi) = (p0() / 2.0, p0());
    let samples: Vec<Probability> = (1..=10).map(|i| prob(lo + (hi - lo) * i as f64 / 11.0)).collect();
    let bad: Vec<f64> = case_curves(Case::II, &samples, false)
        .into_iter()
        .filter(|pt| !(pt.concurrence > 0.0 && pt.bmax <= 2.0))
        .map(|pt| pt.p)
        .collect();
    if bad.is_empty() {
        Ok("10 points in (p0/2, p0): C > 0 and Bmax <= 2".into())
    } else {
        Err(format!("violations at p = {bad:?}"))
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let grid = grid();
    let points = case_curves(Case::I, &grid, true);
    let mut state = MaxError::default();
    for &p in &grid {
        let one = corrected_pair(Case::I, p, BellIndex::ALL[0]);
        let two = corrected_pair(Case::II, p, BellIndex::ALL[0]);
        state.push(p.value(), one.matrix().max_abs_diff(two.matrix()), 0.0);
    }
    let elapsed = start.elapsed();
    let mut c = MaxError::default();
    let mut b = MaxError::default();
    for pt in &points {
        let p = pt.p;
        let f = 1.0 - 6.0 * p * p + 4.0 * p * p * p;
        c.push(p, pt.concurrence, f * f);
        b.push(p, pt.bmax, 2.0 * (1.0 + f.powi(4)).sqrt());
    }
    join(vec![
        c.check("C~", TOL_QEC_METRICS),
        b.check("Bmax~", TOL_QEC_METRICS),
        state.check("|rho~(II) - rho~(I)|", TOL_QEC_STATE),
        within_time(elapsed, LIMIT_CRITERION_5),
    ])
}

/// Sums the probabilities of error patterns after which `recover` returns
/// the carrier, checked on several carriers for both codes.
fn enumerate_corrected(kind: CodeKind, p: f64) -> Result<f64, String> {
    let code = build_code(kind);
    let carriers: Vec<DensityMatrix> = [(0.0, 0.0), (std::f64::consts::PI, 0.0), (1.1, 0.4), (2.3, 4.0)]
        .iter()
        .map(|&(t, f)| qubit_state(BlochAngles::new(t, f).unwrap()))
        .collect();
    let mut total = 0.0;
    for pattern in 0u32..8 {
        let slots: Vec<usize> = (0..3).filter(|s| pattern >> s & 1 == 1).collect();
        let weight = p.powi(slots.len() as i32) * (1.0 - p).powi(3 - slots.len() as i32);
        let mut recovered_all = true;
        for carrier in &carriers {
            let encoded = code.encode(carrier).map_err(|e| e.to_string())?;
            let hit = inject_errors(&code, &encoded, &slots).map_err(|e| e.to_string())?;
            let out = code.recover(&hit).map_err(|e| e.to_string())?;
            let ok = out.matrix().max_abs_diff(carrier.matrix()) < 1e-12;
            recovered_all &= ok;
        }
        if recovered_all {
            total += weight;
        }
        if recovered_all != (slots.len() <= 1) {
            return Err(format!("{kind:?}: pattern {slots:?} corrected = {recovered_all}"));
        }
    }
    Ok(total)
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for p in [0.0, 0.1, 0.3, 1.0] {
        let closed = (1.0 - p) * (1.0 - p) * (1.0 + 2.0 * p);
        for kind in [CodeKind::BitFlipCode, CodeKind::PhaseFlipCode] {
            let enumerated = enumerate_corrected(kind, p)?;
            let library = correction_probability(prob(p));
            let err = (enumerated - closed).abs().max((library - closed).abs());
            if err > TOL_PCORR {
                parts.push(Err(format!("{kind:?} p={p}: enumerated {enumerated}, library {library}, closed {closed}")));
            }
        }
        parts.push(Ok(format!("p={p}: {closed}")));
    }
    join(parts)
}

fn criterion_7() -> Outcome {
    let mut ends = MaxError::default();
    ends.push(0.0, dense_coding(Case::I, Probability::ZERO, false).mutual_information, 2.0);
    ends.push(0.5, dense_coding(Case::I, prob(0.5), false).mutual_information, 1.0);
    ends.push(0.5, dense_coding(Case::II, prob(0.5), false).mutual_information, 0.0);

    let mut equal = MaxError::default();
    let mut below = Vec::new();
    for p in grid() {
        let one = dense_coding(Case::I, p, true).mutual_information;
        let two = dense_coding(Case::II, p, true).mutual_information;
        let plain = dense_coding(Case::II, p, false).mutual_information;
        equal.push(p.value(), one, two);
        if one < plain {
            below.push((p.value(), plain - one));
        }
    }
    let dominance = if below.is_empty() {
        Ok("I~ >= I(II) on grid".to_string())
    } else {
        Err(format!("I~ < I(II) at {below:?}"))
    };
    join(vec![
        ends.check("endpoints", TOL_MUTUAL_INFO),
        equal.check("I~(I) vs I~(II)", TOL_MUTUAL_INFO_QEC),
        dominance,
    ])
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut f1 = MaxError::default();
    let mut f2 = MaxError::default();
    let mut fq = MaxError::default();
    for p in grid() {
        let x = p.value();
        f1.push(x, teleportation(Case::I, p, false).avg_fidelity, 1.0 - 4.0 / 3.0 * x * (1.0 - x));
        f2.push(x, teleportation(Case::II, p, false).avg_fidelity, 1.0 - 2.0 / 3.0 * x * (2.0 - x));
        let want = 1.0 - 4.0 / 3.0 * x * x * (1.0 - x) * (1.0 - x) * (3.0 - 2.0 * x) * (1.0 + 2.0 * x);
        for case in Case::ALL {
            fq.push(x, teleportation(case, p, true).avg_fidelity, want);
        }
    }
    let elapsed = start.elapsed();
    let mut classical = MaxError::default();
    classical.push(0.5, teleportation(Case::I, prob(0.5), false).avg_fidelity, 2.0 / 3.0);
    classical.push(1.0, teleportation(Case::II, Probability::ONE, false).avg_fidelity, 1.0 / 3.0);
    join(vec![
        f1.check("F(I)", TOL_FIDELITY),
        f2.check("F(II)", TOL_FIDELITY),
        fq.check("F~", TOL_FIDELITY),
        classical.check("2/3 and 1/3 points", TOL_FIDELITY),
        within_time(elapsed, LIMIT_CRITERION_8),
    ])
}

/// GG†/Tr(GG†) with G a complex Ginibre matrix.
fn random_state(rng: &mut ChaCha8Rng, qubits: usize) -> DensityMatrix {
    let dim = 1 << qubits;
    let g: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let g = ComplexMatrix::from_vec(g).unwrap();
    let mut m = &g * &g.adjoint();
    let tr = m.trace().re;
    m = m.scale_real(1.0 / tr);
    for i in 0..dim {
        for j in 0..i {
            m[(i, j)] = m[(j, i)].conj();
        }
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    DensityMatrix::new(m).unwrap()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut oracle = MaxError::default();
    for i in 0..100 {
        let rho = random_state(&mut rng, 2);
        oracle.push(i as f64, bmax_oracle(&rho).unwrap(), bmax(&rho).unwrap());
    }
    let mut dual = MaxError::default();
    for i in 0..200 {
        let rho = random_state(&mut rng, 2);
        dual.push(i as f64, concurrence(&rho).unwrap(), concurrence_via_omega(&rho).unwrap());
    }
    let relabel = |m: MaxError, what: &str, tol: f64| {
        let msg = format!("{what} max err {:.2e} at sample {} (tol {tol:.0e})", m.err, m.at);
        if m.err <= tol {
            Ok(msg)
        } else {
            Err(msg)
        }
    };
    join(vec![
        relabel(oracle, "oracle vs Horodecki", TOL_ORACLE_BMAX),
        relabel(dual, "concurrence dual path", TOL_DUAL_CONCURRENCE),
    ])
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xa5a5);
    let mut trace = MaxError::default();
    let mut psd = 0.0f64;
    for _ in 0..100 {
        let qubits = rng.random_range(1..=4);
        let rho = random_state(&mut rng, qubits);
        let kind = if rng.random_bool(0.5) { PauliChannel::bit_flip } else { PauliChannel::phase_flip };
        let channel = kind(prob(rng.random::<f64>()));
        let out = apply_channel(&rho, channel, rng.random_range(0..qubits)).unwrap();
        trace.push(0.0, out.trace(), 1.0);
        psd = psd.min(out.min_eigenvalue().unwrap());
    }
    let psd_check = if psd >= -TOL_PSD {
        Ok(format!("min eigenvalue {psd:.2e}"))
    } else {
        Err(format!("min eigenvalue {psd:.2e} below -{TOL_PSD:.0e}"))
    };

    let mut unitary = 0.0f64;
    for n in 3..=7 {
        for _ in 0..20 {
            let a = rng.random_range(0..n);
            let b = (a + rng.random_range(1..n)) % n;
            let c = (0..n).find(|&s| s != a && s != b).unwrap();
            let pauli = PauliIndex::new(rng.random_range(0..4)).unwrap();
            for gate in [
                Gate::Cnot { control: a, target: b },
                Gate::Toffoli { controls: [a, b], target: c },
                Gate::Hadamard(a),
                Gate::Pauli(pauli, b),
            ] {
                unitary = unitary.max(gate_at(gate, n).unwrap().unitarity_defect());
            }
        }
    }
    for kind in [CodeKind::BitFlipCode, CodeKind::PhaseFlipCode] {
        let code = build_code(kind);
        unitary = unitary.max(code.encoder().unitarity_defect()).max(code.decoder().unitarity_defect());
    }
    unitary = unitary.max(
        circuit(&[Gate::Hadamard(block::CARRIER), Gate::Cnot { control: block::CARRIER, target: block::ANCILLA_2 }], 3)
            .unwrap()
            .unitarity_defect(),
    );

    let measurement = BellMeasurement::new();
    let sum = measurement.projectors().iter().fold(ComplexMatrix::zeros(4), |acc, p| &acc + p);
    let mut complete = sum.max_abs_diff(&ComplexMatrix::identity(4));
    for (j, pj) in measurement.projectors().iter().enumerate() {
        for (k, pk) in measurement.projectors().iter().enumerate() {
            let want = if j == k { pk.clone() } else { ComplexMatrix::zeros(4) };
            complete = complete.max((pj * pk).max_abs_diff(&want));
        }
    }

    let mut outcome = 0.0f64;
    for p in grid() {
        for case in Case::ALL {
            for qec in [false, true] {
                for q in teleportation(case, p, qec).per_outcome_prob {
                    outcome = outcome.max((q - 0.25).abs());
                }
            }
        }
    }

    let bound = |label: &str, v: f64, tol: f64| {
        let msg = format!("{label} {v:.2e} (tol {tol:.0e})");
        if v <= tol {
            Ok(msg)
        } else {
            Err(msg)
        }
    };
    join(vec![
        trace.check("trace", TOL_TRACE),
        psd_check,
        bound("unitarity defect", unitary, TOL_UNITARY),
        bound("Bell completeness", complete, TOL_BELL_COMPLETE),
        bound("outcome |q - 1/4|", outcome, TOL_OUTCOME),
    ])
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("case I concurrence", criterion_1),
        ("case I nonlocality", criterion_2),
        ("case II sudden death", criterion_3),
        ("entanglement without nonlocality", criterion_4),
        ("corrected metrics", criterion_5),
        ("correction probability", criterion_6),
        ("superdense coding", criterion_7),
        ("teleportation fidelity", criterion_8),
        ("oracle equivalence", criterion_9),
        ("property suite", criterion_10),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    match within_time(total, LIMIT_TOTAL) {
        Ok(d) => println!("PASS      total runtime: {d}"),
        Err(d) => {
            failures += 1;
            println!("FAIL      total runtime: {d}");
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance check(s) failed");
        ExitCode::FAILURE
    }
}

//! The kicked rotor (standard map) on the unit torus and its quantized
//! Floquet operator, as an application of the entangling-power machinery.
//!
//! Classical map (kick strength k):
//!
//! ```text
//! p' = p + (k/2π) sin(2πq)  mod 1
//! q' = q + p'               mod 1
//! ```
//!
//! Quantum version on an N-dimensional Hilbert space spanned by position
//! states at q_j = (j + 1/2)/N (N even):
//!
//! ```text
//! U[l, j] = N^{-1/2} e^{-i(kN/2π) cos 2πq_j} e^{iπ(l-j)²/N},
//! ```
//!
//! where the N^{-1/2} normalization makes the Gauss-sum kernel unitary
//! (the kernel as printed carries no normalization; the k = 0 matrix then
//! has positive trace, fixing the global phase, which no Q_m or e_p value
//! can see anyway). Choosing N = 2^n splits position into n qubits, with
//! qubit 1 addressing the coarsest scale, and `epower_sweep` tracks
//! e_p^{Q_m}(U^t) against the random-state baseline.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::Rng;
use thiserror::Error;

use crate::epower::{
    entangling_power_exact_multi, entangling_power_mc, EpowerError, UnitaryOperator,
};
use crate::linalg::unitarity_defect;
use crate::states::lubkin_average;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RotorError {
    #[error("Hilbert dimension must be even, got {0}")]
    OddDimension(usize),
    #[error("dimension {0} is not a power of two; cannot split into qubits")]
    NotPowerOfTwo(usize),
    #[error("constructed propagator is not unitary (defect {0:.2e})")]
    NotUnitary(f64),
    #[error("sweep needs at least one kick strength, one m, and t_max ≥ 1")]
    EmptySweep,
    #[error(transparent)]
    Epower(#[from] EpowerError),
}

/// A point on the toroidal phase space [0,1)².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalState {
    pub q: f64,
    pub p: f64,
}

impl ClassicalState {
    pub fn new(q: f64, p: f64) -> Self {
        ClassicalState {
            q: q.rem_euclid(1.0),
            p: p.rem_euclid(1.0),
        }
    }
}

/// One step of the standard map; the position update uses the new momentum.
pub fn classical_step(s: ClassicalState, k: f64) -> ClassicalState {
    let p = (s.p + k / (2.0 * PI) * (2.0 * PI * s.q).sin()).rem_euclid(1.0);
    let q = (s.q + p).rem_euclid(1.0);
    ClassicalState { q, p }
}

/// One sample of a phase-space portrait.
#[derive(Clone, Copy, Debug)]
pub struct PortraitPoint {
    pub trajectory: usize,
    pub step: usize,
    pub q: f64,
    pub p: f64,
}

/// Iterate trajectories from uniform random initial conditions, emitting
/// every point including step 0. Deterministic for a fixed generator.
pub fn phase_portrait<R: Rng + ?Sized>(
    k: f64,
    n_trajectories: usize,
    n_steps: usize,
    rng: &mut R,
) -> Vec<PortraitPoint> {
    let mut out = Vec::with_capacity(n_trajectories * (n_steps + 1));
    for traj in 0..n_trajectories {
        let mut s = ClassicalState::new(rng.gen::<f64>(), rng.gen::<f64>());
        out.push(PortraitPoint {
            trajectory: traj,
            step: 0,
            q: s.q,
            p: s.p,
        });
        for step in 1..=n_steps {
            s = classical_step(s, k);
            out.push(PortraitPoint {
                trajectory: traj,
                step,
                q: s.q,
                p: s.p,
            });
        }
    }
    out
}

/// The quantized kicked rotor's one-period propagator.
#[derive(Clone, Debug)]
pub struct RotorUnitary {
    n_dim: usize,
    k: f64,
    matrix: Array2<C64>,
}

impl RotorUnitary {
    pub fn dim(&self) -> usize {
        self.n_dim
    }

    pub fn kick_strength(&self) -> f64 {
        self.k
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    /// Reinterpret the position register as n qubits (N = 2^n), using the
    /// big-endian digit correspondence.
    pub fn to_qubit_unitary(&self) -> Result<UnitaryOperator, RotorError> {
        if !self.n_dim.is_power_of_two() {
            return Err(RotorError::NotPowerOfTwo(self.n_dim));
        }
        let n = self.n_dim.trailing_zeros() as usize;
        Ok(UnitaryOperator::new(2, n, self.matrix.clone())?)
    }
}

/// Build the N×N propagator at kick strength k (N even).
pub fn rotor_unitary(n_dim: usize, k: f64) -> Result<RotorUnitary, RotorError> {
    if n_dim == 0 || !n_dim.is_multiple_of(2) {
        return Err(RotorError::OddDimension(n_dim));
    }
    let nf = n_dim as f64;
    let norm = 1.0 / nf.sqrt();
    let mut m = Array2::zeros((n_dim, n_dim));
    for j in 0..n_dim {
        let qj = (j as f64 + 0.5) / nf;
        let kick = -k * nf / (2.0 * PI) * (2.0 * PI * qj).cos();
        for l in 0..n_dim {
            let diff = l as f64 - j as f64;
            let angle = kick + PI * diff * diff / nf;
            m[(l, j)] = C64::from_polar(norm, angle);
        }
    }
    let defect = unitarity_defect(&m);
    if defect > 1e-9 {
        return Err(RotorError::NotUnitary(defect));
    }
    Ok(RotorUnitary {
        n_dim,
        k,
        matrix: m,
    })
}

/// How a sweep evaluates e_p^{Q_m}(U^t).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepMethod {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

/// One cell of an entangling-power sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub k: f64,
    pub m: usize,
    pub t: usize,
    pub e_p: f64,
    /// Standard error for the Monte Carlo method, None for the exact path.
    pub std_error: Option<f64>,
    /// Haar random-state value of Q_m at these dimensions.
    pub baseline: f64,
}

/// Sweep e_p^{Q_m}(U^t) for the quantized kicked rotor on n qubits over
/// kick strengths, subset sizes, and iterates t = 1..t_max.
pub fn epower_sweep(
    n_qubits: usize,
    k_values: &[f64],
    m_values: &[usize],
    t_max: usize,
    method: SweepMethod,
) -> Result<Vec<SweepRow>, RotorError> {
    if k_values.is_empty() || m_values.is_empty() || t_max == 0 {
        return Err(RotorError::EmptySweep);
    }
    let n_dim = 1usize << n_qubits;
    let mut rows = Vec::with_capacity(k_values.len() * m_values.len() * t_max);
    for (ki, &k) in k_values.iter().enumerate() {
        let step = rotor_unitary(n_dim, k)?.to_qubit_unitary()?;
        let mut power = step.clone();
        for t in 1..=t_max {
            if t > 1 {
                power = step.compose(&power);
            }
            match method {
                SweepMethod::Exact => {
                    let values = entangling_power_exact_multi(&power, m_values)?;
                    for (&m, e_p) in m_values.iter().zip(values) {
                        rows.push(SweepRow {
                            k,
                            m,
                            t,
                            e_p,
                            std_error: None,
                            baseline: lubkin_average(2, n_qubits, m),
                        });
                    }
                }
                SweepMethod::MonteCarlo { samples, seed } => {
                    for (mi, &m) in m_values.iter().enumerate() {
                        use rand::SeedableRng;
                        // one deterministic stream per (k, t, m) cell
                        let cell = (ki as u64) << 40 | (t as u64) << 16 | mi as u64;
                        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(
                            seed ^ cell.wrapping_mul(0xD134_2543_DE82_EF95),
                        );
                        let (e_p, stderr) = entangling_power_mc(&power, m, samples, &mut rng)?;
                        rows.push(SweepRow {
                            k,
                            m,
                            t,
                            e_p,
                            std_error: Some(stderr),
                            baseline: lubkin_average(2, n_qubits, m),
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

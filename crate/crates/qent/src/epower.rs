//! Multipartite entangling power of a unitary: the average `Q_m` it
//! generates from Haar-random product inputs.
//!
//! The exact route evaluates the average subsystem purities
//!
//! ```text
//! R_S(U) = (2/(D(D+1)))^n tr[U^⊗2 (Π_i P_{i,i+n}) U†^⊗2 (Π_{i∈S} T_{i,i+n})]
//! ```
//!
//! without ever forming a D^{2n}-dimensional operator. Pairing copy slots
//! (i, i+n) turns `Π P_{i,i+n}` into a tensor product of per-site
//! symmetric-subspace projectors, each factored through an isometry with
//! s = D(D+1)/2 orthonormal columns. For every symmetric label vector k
//! the two-copy image `(U ⊗ U)(⊗_i j_{k_i})`, reshaped as the D^n × D^n
//! matrix `W_k = U M_k Uᵀ`, contributes `Σ_{a,b} W̄_k[a,b] W_k[a',b']`
//! where (a', b') exchange their digits on S. Entangling power follows as
//!
//! ```text
//! e_p^{Q_m}(U) = D^m/(D^m-1) (1 - ⟨R_S(U)⟩_{|S|=m}),
//! ```
//!
//! and a Monte Carlo estimator over explicit product states provides an
//! independent cross-check of the whole pipeline.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{gram_schmidt, kron, unitarity_defect, KahanSum};
use crate::states::{haar_state, lubkin_average, q_m, StateError, StateVector, Subset};

/// Unitarity tolerance for operator inputs.
pub const UNITARY_TOL: f64 = 1e-9;

/// Cap on the doubled dimension D^{2n} handled by the exact contraction.
pub const DOUBLED_DIM_CAP: u64 = 1 << 20;

/// Fixed block length for deterministic parallel Monte Carlo streams.
const MC_BLOCK: u64 = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EpowerError {
    #[error("operator is not unitary (defect {0:.2e})")]
    NotUnitary(f64),
    #[error("matrix is {rows}×{cols}, expected {expected}×{expected}")]
    BadShape {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("doubled dimension {dim} exceeds the exact-path cap {DOUBLED_DIM_CAP}")]
    DimCap { dim: u64 },
    #[error("m = {m} out of range 1..={max}")]
    MOutOfRange { m: usize, max: usize },
    #[error("Monte Carlo needs at least 2 samples, got {0}")]
    TooFewSamples(u64),
    #[error(transparent)]
    State(#[from] StateError),
}

/// A unitary on `(C^D)^⊗n`, validated to `U†U = I` within [`UNITARY_TOL`].
#[derive(Clone, Debug)]
pub struct UnitaryOperator {
    d: usize,
    n: usize,
    matrix: Array2<C64>,
}

impl UnitaryOperator {
    pub fn new(d: usize, n: usize, matrix: Array2<C64>) -> Result<Self, EpowerError> {
        let expected = d.pow(n as u32);
        let (rows, cols) = matrix.dim();
        if rows != expected || cols != expected {
            return Err(EpowerError::BadShape {
                expected,
                rows,
                cols,
            });
        }
        let defect = unitarity_defect(&matrix);
        if defect > UNITARY_TOL {
            return Err(EpowerError::NotUnitary(defect));
        }
        Ok(UnitaryOperator { d, n, matrix })
    }

    pub fn identity(d: usize, n: usize) -> Self {
        let dim = d.pow(n as u32);
        UnitaryOperator {
            d,
            n,
            matrix: Array2::eye(dim),
        }
    }

    /// The two-qubit controlled-NOT (control = qubit 1).
    pub fn cnot() -> Self {
        let mut m = Array2::zeros((4, 4));
        for (r, c) in [(0, 0), (1, 1), (3, 2), (2, 3)] {
            m[(r, c)] = C64::new(1.0, 0.0);
        }
        UnitaryOperator {
            d: 2,
            n: 2,
            matrix: m,
        }
    }

    /// Haar-random unitary on n qudits.
    pub fn haar<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> Self {
        let dim = d.pow(n as u32);
        UnitaryOperator {
            d,
            n,
            matrix: haar_unitary_matrix(dim, rng),
        }
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector, EpowerError> {
        let out = self.matrix.dot(psi.amplitudes());
        Ok(StateVector::new(self.d, self.n, out)?)
    }

    /// U·V as an operator on the same qudit layout.
    pub fn compose(&self, other: &UnitaryOperator) -> UnitaryOperator {
        UnitaryOperator {
            d: self.d,
            n: self.n,
            matrix: self.matrix.dot(&other.matrix),
        }
    }
}

/// A Haar-distributed unitary matrix: QR of a complex Gaussian matrix with
/// the positive-diagonal-R convention (Gram-Schmidt yields exactly that),
/// which makes the distribution rotation invariant.
pub fn haar_unitary_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Array2<C64> {
    use rand_distr::StandardNormal;
    loop {
        let mut a = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                a[(i, j)] = C64::new(re, im);
            }
        }
        if gram_schmidt(&mut a).is_ok() {
            return a;
        }
    }
}

/// Orthonormal basis columns of the symmetric subspace of C^D ⊗ C^D:
/// |ii⟩, then (|ij⟩ + |ji⟩)/√2 for i < j. Each column has length D².
fn symmetric_basis(d: usize) -> Vec<Vec<C64>> {
    let mut cols = Vec::with_capacity(d * (d + 1) / 2);
    for i in 0..d {
        let mut v = vec![C64::new(0.0, 0.0); d * d];
        v[i * d + i] = C64::new(1.0, 0.0);
        cols.push(v);
    }
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    for i in 0..d {
        for j in i + 1..d {
            let mut v = vec![C64::new(0.0, 0.0); d * d];
            v[i * d + j] = s;
            v[j * d + i] = s;
            cols.push(v);
        }
    }
    cols
}

/// Digit-exchange tables for a subset of positions: `a' = clr[a] + ins[ext[b]]`.
struct SwapTables {
    ext: Vec<usize>,
    clr: Vec<usize>,
    ins: Vec<usize>,
}

fn swap_tables(d: usize, n: usize, positions: &[usize]) -> SwapTables {
    let dim = d.pow(n as u32);
    let m = positions.len();
    let stride = |pos: usize| d.pow((n - 1 - pos) as u32);
    let mut ext = vec![0usize; dim];
    let mut clr = vec![0usize; dim];
    for a in 0..dim {
        let mut compact = 0usize;
        let mut cleared = a;
        for (t, &pos) in positions.iter().enumerate() {
            let digit = a / stride(pos) % d;
            compact += digit * d.pow((m - 1 - t) as u32);
            cleared -= digit * stride(pos);
        }
        ext[a] = compact;
        clr[a] = cleared;
    }
    let mut ins = vec![0usize; d.pow(m as u32)];
    for (compact, slot) in ins.iter_mut().enumerate() {
        let mut rem = compact;
        for (t, &pos) in positions.iter().enumerate() {
            let place = d.pow((m - 1 - t) as u32);
            let digit = rem / place;
            rem %= place;
            *slot += digit * stride(pos);
        }
    }
    SwapTables { ext, clr, ins }
}

fn check_exact_dims(u: &UnitaryOperator) -> Result<(), EpowerError> {
    let doubled = (u.d as u64).pow(2 * u.n as u32);
    if doubled > DOUBLED_DIM_CAP {
        return Err(EpowerError::DimCap { dim: doubled });
    }
    Ok(())
}

/// Core contraction: for each subset in `subsets`, the raw sum
/// `Σ_k Σ_{a,b} W̄_k[a,b] W_k[a',b']` before the `(2/(D(D+1)))^n` scale.
fn symmetric_contraction(u: &UnitaryOperator, subsets: &[Vec<usize>]) -> Vec<f64> {
    let d = u.d;
    let n = u.n;
    let dim = d.pow(n as u32);
    let basis = symmetric_basis(d);
    let s = basis.len();
    let columns: u64 = (s as u64).pow(n as u32);
    let tables: Vec<SwapTables> = subsets.iter().map(|p| swap_tables(d, n, p)).collect();
    let ut = u.matrix.t().to_owned();

    // per-site D×D reshapes of the symmetric basis columns
    let site_mats: Vec<Array2<C64>> = basis
        .iter()
        .map(|col| {
            let mut m = Array2::zeros((d, d));
            for alpha in 0..d {
                for beta in 0..d {
                    m[(alpha, beta)] = col[alpha * d + beta];
                }
            }
            m
        })
        .collect();

    // fixed-size blocks of symmetric labels, merged in order: results are
    // identical for any worker count
    let blocks: Vec<u64> = (0..columns.div_ceil(MC_BLOCK)).collect();
    let partials: Vec<Vec<C64>> = blocks
        .par_iter()
        .map(|&blk| {
            let start = blk * MC_BLOCK;
            let end = (start + MC_BLOCK).min(columns);
            let mut acc = vec![C64::new(0.0, 0.0); subsets.len()];
            for k in start..end {
                // decode the per-site symmetric labels of column k
                let mut labels = vec![0usize; n];
                let mut rem = k;
                for site in (0..n).rev() {
                    labels[site] = (rem % s as u64) as usize;
                    rem /= s as u64;
                }
                // M_k = ⊗_i m_{k_i}, W_k = U M_k Uᵀ
                let mut mk = site_mats[labels[0]].clone();
                for &l in &labels[1..] {
                    mk = kron(&mk, &site_mats[l]);
                }
                let w = u.matrix.dot(&mk).dot(&ut);
                for (t, tab) in tables.iter().enumerate() {
                    let mut sum = C64::new(0.0, 0.0);
                    for a in 0..dim {
                        let ca = tab.clr[a];
                        let ea = tab.ins[tab.ext[a]];
                        for b in 0..dim {
                            let ap = ca + tab.ins[tab.ext[b]];
                            let bp = tab.clr[b] + ea;
                            sum += w[(a, b)].conj() * w[(ap, bp)];
                        }
                    }
                    acc[t] += sum;
                }
            }
            acc
        })
        .collect();

    let mut totals = vec![KahanSum::new(); subsets.len()];
    for block in &partials {
        for (t, v) in block.iter().enumerate() {
            totals[t].add(v.re);
        }
    }
    totals.iter().map(|k| k.value()).collect()
}

/// Average subsystem purity `R_S(U)` over Haar product inputs.
pub fn subset_average_purity(u: &UnitaryOperator, s: &Subset) -> Result<f64, EpowerError> {
    check_exact_dims(u)?;
    let scale = (2.0 / (u.d as f64 * (u.d as f64 + 1.0))).powi(u.n as i32);
    let raw = symmetric_contraction(u, &[s.positions()]);
    Ok(scale * raw[0])
}

/// Exact multipartite entangling power `e_p^{Q_m}(U)`.
pub fn entangling_power_exact(u: &UnitaryOperator, m: usize) -> Result<f64, EpowerError> {
    Ok(entangling_power_exact_multi(u, &[m])?[0])
}

/// Exact `e_p^{Q_m}(U)` for several m at once, sharing one pass over the
/// symmetric columns.
pub fn entangling_power_exact_multi(
    u: &UnitaryOperator,
    ms: &[usize],
) -> Result<Vec<f64>, EpowerError> {
    for &m in ms {
        if m < 1 || m > u.n / 2 {
            return Err(EpowerError::MOutOfRange { m, max: u.n / 2 });
        }
    }
    check_exact_dims(u)?;
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut ranges = Vec::new();
    for &m in ms {
        let start = subsets.len();
        subsets.extend(Subset::all_of_size(u.n, m).map(|s| s.positions()));
        ranges.push(start..subsets.len());
    }
    let raw = symmetric_contraction(u, &subsets);
    let scale = (2.0 / (u.d as f64 * (u.d as f64 + 1.0))).powi(u.n as i32);
    Ok(ms
        .iter()
        .zip(ranges)
        .map(|(&m, range)| {
            let count = range.len() as f64;
            let mut acc = KahanSum::new();
            for r in &raw[range] {
                acc.add(scale * r);
            }
            let mean_purity = acc.value() / count;
            let dm = (u.d as f64).powi(m as i32);
            dm / (dm - 1.0) * (1.0 - mean_purity)
        })
        .collect())
}

/// A Haar-random product state ⊗_i ψ_i.
pub fn haar_product_state<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> StateVector {
    let mut amps = Array1::from_elem(1, C64::new(1.0, 0.0));
    for _ in 0..n {
        let local = haar_state(d, 1, rng);
        let mut next = Array1::zeros(amps.len() * d);
        for (i, a) in amps.iter().enumerate() {
            for (j, b) in local.amplitudes().iter().enumerate() {
                next[i * d + j] = a * b;
            }
        }
        amps = next;
    }
    StateVector::new(d, n, amps).expect("product of unit states is a unit state")
}

/// Monte Carlo estimate of `e_p^{Q_m}(U)`: mean and standard error of
/// `Q_m(U ψ_1 ⊗ … ⊗ ψ_n)` over independent Haar product inputs. Sampling
/// runs in fixed blocks with per-block RNG streams derived from the
/// caller's generator, so the result depends only on the seed, not on the
/// worker count.
pub fn entangling_power_mc<R: Rng + ?Sized>(
    u: &UnitaryOperator,
    m: usize,
    samples: u64,
    rng: &mut R,
) -> Result<(f64, f64), EpowerError> {
    if samples < 2 {
        return Err(EpowerError::TooFewSamples(samples));
    }
    if m < 1 || m > u.n / 2 {
        return Err(EpowerError::MOutOfRange { m, max: u.n / 2 });
    }
    use rand::SeedableRng;
    let root: u64 = rng.gen();
    let blocks: Vec<u64> = (0..samples.div_ceil(MC_BLOCK)).collect();
    let partials: Vec<(f64, f64, u64)> = blocks
        .par_iter()
        .map(|&blk| {
            let mut block_rng = rand_chacha::ChaCha12Rng::seed_from_u64(
                root ^ blk.wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            let start = blk * MC_BLOCK;
            let end = (start + MC_BLOCK).min(samples);
            let mut sum = KahanSum::new();
            let mut sum_sq = KahanSum::new();
            for _ in start..end {
                let psi = haar_product_state(u.d, u.n, &mut block_rng);
                let out = u.apply(&psi).expect("unitary preserves norm");
                let q = q_m(&out, m).expect("validated m");
                sum.add(q);
                sum_sq.add(q * q);
            }
            (sum.value(), sum_sq.value(), end - start)
        })
        .collect();
    let mut sum = KahanSum::new();
    let mut sum_sq = KahanSum::new();
    for (s1, s2, _) in &partials {
        sum.add(*s1);
        sum_sq.add(*s2);
    }
    let nf = samples as f64;
    let mean = sum.value() / nf;
    let var = (sum_sq.value() / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    Ok((mean, (var / nf).sqrt()))
}

/// Haar average of the entangling power over U(D^n), equal to the Haar
/// average of `Q_m` itself: `1 - (D^m+1)/(D^n+1)`.
pub fn unitary_average_closed(d: usize, n: usize, m: usize) -> f64 {
    lubkin_average(d, n, m)
}

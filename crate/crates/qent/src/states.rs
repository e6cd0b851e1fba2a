//! Pure states on `(C^D)^⊗n`: partial traces, subsystem linear entropies,
//! and the `Q_m` family of multipartite entanglement measures.
//!
//! `Q_m` is the normalized average of `1 - tr ρ_S²` over all size-`m`
//! subsets `S` of the `n` qudits,
//!
//! ```text
//! Q_m(ψ) = D^m/(D^m - 1) · (1 - ⟨tr ρ_S²⟩_{|S|=m}),    1 ≤ m ≤ ⌊n/2⌋,
//! ```
//!
//! which vanishes exactly on product states and reaches 1 exactly on
//! m-uniform states (every m-qudit marginal maximally mixed). For qubits
//! and m = 1 it coincides with the Meyer-Wallach measure, implemented here
//! independently via the ι_j maps ([`meyer_wallach_q`]) so the two routes
//! cross-check each other.
//!
//! Basis convention everywhere: qudit 1 is the most significant digit,
//! `j = Σ x_i D^{n-i}`.

use itertools::Itertools;
use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dagger, max_abs_diff, norm_sqr, KahanSum};

/// Normalization tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("state vector has squared norm {0}, expected 1 within {NORM_TOL}")]
    NotNormalized(f64),
    #[error("amplitude vector has length {got}, expected D^n = {expected}")]
    BadShape { expected: usize, got: usize },
    #[error("invalid dimensions: D = {d}, n = {n}")]
    BadDimensions { d: usize, n: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset member {member} out of range 1..={n}")]
    SubsetOutOfRange { member: usize, n: usize },
    #[error("subset size {size} invalid here (must be at most {max})")]
    SubsetTooLarge { size: usize, max: usize },
    #[error("m = {m} out of range 1..={max}")]
    MOutOfRange { m: usize, max: usize },
    #[error("operation requires qubits (D = 2), got D = {0}")]
    RequiresQubits(usize),
    #[error("subspace basis is not orthonormal (Gram defect {0:.2e})")]
    NonOrthonormalBasis(f64),
    #[error("basis has {rows} rows, expected {expected}")]
    BasisShape { expected: usize, rows: usize },
    #[error("state JSON: {0}")]
    Json(String),
}

/// A normalized pure state of `n` qudits of local dimension `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    d: usize,
    n: usize,
    amps: Array1<C64>,
}

/// Serialized form of a state vector.
#[derive(Serialize, Deserialize)]
struct StateFile {
    #[serde(rename = "D")]
    d: usize,
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl StateVector {
    /// Wrap an amplitude vector, requiring unit norm within [`NORM_TOL`].
    pub fn new(d: usize, n: usize, amps: Array1<C64>) -> Result<Self, StateError> {
        if d < 1 || n < 1 {
            return Err(StateError::BadDimensions { d, n });
        }
        let expected = d
            .checked_pow(n as u32)
            .ok_or(StateError::BadDimensions { d, n })?;
        if amps.len() != expected {
            return Err(StateError::BadShape {
                expected,
                got: amps.len(),
            });
        }
        let nrm = norm_sqr(&amps);
        if (nrm - 1.0).abs() > NORM_TOL {
            return Err(StateError::NotNormalized(nrm));
        }
        Ok(StateVector { d, n, amps })
    }

    /// Normalize and wrap an arbitrary nonzero amplitude vector.
    pub fn from_unnormalized(d: usize, n: usize, amps: Array1<C64>) -> Result<Self, StateError> {
        let nrm = norm_sqr(&amps).sqrt();
        if nrm == 0.0 {
            return Err(StateError::NotNormalized(0.0));
        }
        let scaled = amps.mapv(|z| z / nrm);
        StateVector::new(d, n, scaled)
    }

    /// Computational basis state |x⟩ for a flat index x.
    pub fn basis_state(d: usize, n: usize, index: usize) -> Result<Self, StateError> {
        let dim = d.pow(n as u32);
        let mut amps = Array1::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        StateVector::new(d, n, amps)
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    /// Density matrix |ψ⟩⟨ψ|.
    pub fn density_matrix(&self) -> Array2<C64> {
        let dim = self.dim();
        let mut out = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                out[(i, j)] = self.amps[i] * self.amps[j].conj();
            }
        }
        out
    }

    pub fn to_json_string(&self) -> String {
        let file = StateFile {
            d: self.d,
            n: self.n,
            re: self.amps.iter().map(|z| z.re).collect(),
            im: self.amps.iter().map(|z| z.im).collect(),
        };
        serde_json::to_string(&file).expect("state serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Self, StateError> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| StateError::Json(e.to_string()))?;
        if file.re.len() != file.im.len() {
            return Err(StateError::Json("re/im length mismatch".into()));
        }
        let amps: Array1<C64> = file
            .re
            .iter()
            .zip(&file.im)
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        StateVector::new(file.d, file.n, amps)
    }
}

/// A reduced density operator, tagged with the dimensions of the qudits
/// it retains. Hermitian with unit trace (within numerical tolerance) by
/// construction from [`partial_trace`].
#[derive(Clone, Debug)]
pub struct DensityOperator {
    pub dims: Vec<usize>,
    pub matrix: Array2<C64>,
}

impl DensityOperator {
    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// tr ρ² (real for Hermitian ρ).
    pub fn purity(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diag().iter().map(|z| z.re).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        max_abs_diff(&dagger(&self.matrix), &self.matrix)
    }
}

/// A subset S ⊆ {1..n} of qudit positions (1-based, stored sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    n: usize,
    members: Vec<usize>,
}

impl Subset {
    pub fn new(n: usize, members: &[usize]) -> Result<Self, StateError> {
        if members.is_empty() {
            return Err(StateError::EmptySubset);
        }
        for &m in members {
            if m == 0 || m > n {
                return Err(StateError::SubsetOutOfRange { member: m, n });
            }
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(Subset { n, members: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// 0-based positions (qudit 1 ↦ position 0).
    pub fn positions(&self) -> Vec<usize> {
        self.members.iter().map(|&m| m - 1).collect()
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|m| !self.members.contains(m)).collect()
    }

    /// All size-m subsets of {1..n} in lexicographic order.
    pub fn all_of_size(n: usize, m: usize) -> impl Iterator<Item = Subset> {
        (1..=n)
            .combinations(m)
            .map(move |members| Subset { n, members })
    }
}

fn digit_offsets(d: usize, n: usize, positions: &[usize]) -> Vec<usize> {
    let m = positions.len();
    let count = d.pow(m as u32);
    let mut offs = vec![0usize; count];
    for (idx, off) in offs.iter_mut().enumerate() {
        let mut rem = idx;
        for (t, &pos) in positions.iter().enumerate() {
            let place = d.pow((m - 1 - t) as u32);
            let digit = rem / place;
            rem %= place;
            *off += digit * d.pow((n - 1 - pos) as u32);
        }
    }
    offs
}

/// Reduced state ρ_S = tr_{S'} |ψ⟩⟨ψ| of the qudits in `keep`.
pub fn partial_trace(psi: &StateVector, keep: &Subset) -> Result<DensityOperator, StateError> {
    if keep.n() != psi.n() {
        return Err(StateError::SubsetOutOfRange {
            member: keep.n(),
            n: psi.n(),
        });
    }
    let d = psi.local_dim();
    let n = psi.n();
    let kept = keep.positions();
    let env: Vec<usize> = (0..n).filter(|p| !kept.contains(p)).collect();
    let keep_offs = digit_offsets(d, n, &kept);
    let env_offs = digit_offsets(d, n, &env);

    let kd = keep_offs.len();
    let mut rho = Array2::<C64>::zeros((kd, kd));
    let mut slice = vec![C64::new(0.0, 0.0); kd];
    for &oe in &env_offs {
        for (a, &oa) in keep_offs.iter().enumerate() {
            slice[a] = psi.amps[oa + oe];
        }
        for a in 0..kd {
            for b in 0..kd {
                rho[(a, b)] += slice[a] * slice[b].conj();
            }
        }
    }
    Ok(DensityOperator {
        dims: vec![d; kept.len()],
        matrix: rho,
    })
}

/// Normalized subsystem linear entropy `η (1 - tr ρ_S²)` with
/// `η = Dmin/(Dmin - 1)`, `Dmin = min(D^|S|, D^(n-|S|))`.
pub fn subsystem_linear_entropy(psi: &StateVector, s: &Subset) -> Result<f64, StateError> {
    let n = psi.n();
    if s.size() > n - 1 {
        return Err(StateError::SubsetTooLarge {
            size: s.size(),
            max: n - 1,
        });
    }
    let rho = partial_trace(psi, s)?;
    let d = psi.local_dim();
    let d_min = d.pow(s.size().min(n - s.size()) as u32) as f64;
    let eta = d_min / (d_min - 1.0);
    Ok(eta * (1.0 - rho.purity()))
}

/// The measure `Q_m(ψ)`: normalized average subsystem linear entropy over
/// all C(n,m) subsets of size m.
pub fn q_m(psi: &StateVector, m: usize) -> Result<f64, StateError> {
    let n = psi.n();
    let d = psi.local_dim();
    if d < 2 {
        return Err(StateError::BadDimensions { d, n });
    }
    if m < 1 || m > n / 2 {
        return Err(StateError::MOutOfRange { m, max: n / 2 });
    }
    let mut acc = KahanSum::new();
    let mut count = 0u64;
    for s in Subset::all_of_size(n, m) {
        acc.add(partial_trace(psi, &s)?.purity());
        count += 1;
    }
    let mean_purity = acc.value() / count as f64;
    let dm = (d as f64).powi(m as i32);
    Ok(dm / (dm - 1.0) * (1.0 - mean_purity))
}

/// The original Meyer-Wallach measure for qubits, computed through the
/// ι_j maps: `Q = (4/n) Σ_j D(ι_j(0)ψ, ι_j(1)ψ)` with
/// `D(u,v) = ⟨u|u⟩⟨v|v⟩ - |⟨u|v⟩|²`. Agrees with `q_m(ψ, 1)`.
pub fn meyer_wallach_q(psi: &StateVector) -> Result<f64, StateError> {
    if psi.local_dim() != 2 {
        return Err(StateError::RequiresQubits(psi.local_dim()));
    }
    let n = psi.n();
    let half = psi.dim() / 2;
    let mut total = KahanSum::new();
    for j in 1..=n {
        let shift = n - j;
        let mut u = vec![C64::new(0.0, 0.0); half]; // ι_j(0)ψ
        let mut v = vec![C64::new(0.0, 0.0); half]; // ι_j(1)ψ
        for i in 0..psi.dim() {
            let bit = i >> shift & 1;
            let low = i & ((1 << shift) - 1);
            let high = i >> (shift + 1);
            let reduced = high << shift | low;
            if bit == 0 {
                u[reduced] = psi.amps[i];
            } else {
                v[reduced] = psi.amps[i];
            }
        }
        let uu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let uv: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
        total.add(uu * vv - uv.norm_sqr());
    }
    Ok(4.0 / n as f64 * total.value())
}

/// Generalized GHZ state `Σ_j |j⟩^⊗n / √D`.
pub fn ghz(d: usize, n: usize) -> Result<StateVector, StateError> {
    if d < 2 || n < 2 {
        return Err(StateError::BadDimensions { d, n });
    }
    let dim = d.pow(n as u32);
    let repunit = (dim - 1) / (d - 1); // index of |j…j⟩ per unit j
    let mut amps = Array1::zeros(dim);
    let a = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for j in 0..d {
        amps[j * repunit] = a;
    }
    StateVector::new(d, n, amps)
}

/// Generalized W state `Σ_j |0…1…0⟩ / √n` (qubits).
pub fn w_state(n: usize) -> Result<StateVector, StateError> {
    if n < 2 {
        return Err(StateError::BadDimensions { d: 2, n });
    }
    let dim = 1usize << n;
    let mut amps = Array1::zeros(dim);
    let a = C64::new(1.0 / (n as f64).sqrt(), 0.0);
    for j in 1..=n {
        amps[1 << (n - j)] = a;
    }
    StateVector::new(2, n, amps)
}

/// Closed form `Q_m` of the generalized GHZ state: `1 - (D^{m-1}-1)/(D^m-1)`.
pub fn q_m_ghz_closed(d: usize, m: usize) -> f64 {
    let df = d as f64;
    1.0 - (df.powi(m as i32 - 1) - 1.0) / (df.powi(m as i32) - 1.0)
}

/// Closed form `Q_m` of the n-qubit W state:
/// `2^{m+1}/(2^m - 1) · (n-m)m/n²`.
pub fn q_m_w_closed(n: usize, m: usize) -> f64 {
    let p = 2f64.powi(m as i32);
    2.0 * p / (p - 1.0) * ((n - m) * m) as f64 / (n * n) as f64
}

/// Haar average of `Q_m` over all pure states: `1 - (D^m+1)/(D^n+1)`
/// (Lubkin's average subsystem purity).
pub fn lubkin_average(d: usize, n: usize, m: usize) -> f64 {
    let df = d as f64;
    1.0 - (df.powi(m as i32) + 1.0) / (df.powi(n as i32) + 1.0)
}

fn gaussian_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Array1<C64> {
    Array1::from_iter((0..len).map(|_| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    }))
}

/// A Haar-random pure state of n qudits: normalized i.i.d. complex
/// Gaussian amplitudes.
pub fn haar_state<R: Rng + ?Sized>(d: usize, n: usize, rng: &mut R) -> StateVector {
    let dim = d.pow(n as u32);
    loop {
        let amps = gaussian_vector(dim, rng);
        if let Ok(sv) = StateVector::from_unnormalized(d, n, amps) {
            return sv;
        }
    }
}

/// A Haar-random state supported on the span of the given orthonormal
/// columns. The basis must satisfy `B†B = I` within 1e-8.
pub fn haar_state_in_subspace<R: Rng + ?Sized>(
    d: usize,
    n: usize,
    basis: &Array2<C64>,
    rng: &mut R,
) -> Result<StateVector, StateError> {
    let dim = d.pow(n as u32);
    let (rows, cols) = basis.dim();
    if rows != dim {
        return Err(StateError::BasisShape {
            expected: dim,
            rows,
        });
    }
    let gram = dagger(basis).dot(basis);
    let defect = max_abs_diff(&gram, &Array2::eye(cols));
    if defect > 1e-8 {
        return Err(StateError::NonOrthonormalBasis(defect));
    }
    loop {
        let coeff = gaussian_vector(cols, rng);
        let amps = basis.dot(&coeff);
        if let Ok(sv) = StateVector::from_unnormalized(d, n, amps) {
            return Ok(sv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::partial_trace_op;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn bell_marginal_is_maximally_mixed() {
        let bell = ghz(2, 2).unwrap();
        let rho = partial_trace(&bell, &Subset::new(2, &[1]).unwrap()).unwrap();
        assert!((rho.matrix[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!((rho.matrix[(1, 1)].re - 0.5).abs() < 1e-12);
        assert!(rho.matrix[(0, 1)].norm() < 1e-12);
        assert_abs_diff_eq!(
            subsystem_linear_entropy(&bell, &Subset::new(2, &[1]).unwrap()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn product_state_marginal_is_pure() {
        let zero3 = StateVector::basis_state(2, 3, 0).unwrap();
        let rho = partial_trace(&zero3, &Subset::new(3, &[2]).unwrap()).unwrap();
        assert!((rho.matrix[(0, 0)].re - 1.0).abs() < 1e-12);
        assert_abs_diff_eq!(
            subsystem_linear_entropy(&zero3, &Subset::new(3, &[2]).unwrap()).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn ghz4_two_qubit_entropy() {
        // tr ρ_{12}² = 1/2, η = 4/3, so S_L = 2/3
        let g = ghz(2, 4).unwrap();
        let s = Subset::new(4, &[1, 2]).unwrap();
        let rho = partial_trace(&g, &s).unwrap();
        assert_abs_diff_eq!(rho.purity(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(
            subsystem_linear_entropy(&g, &s).unwrap(),
            2.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn q_m_of_named_states() {
        let g = ghz(2, 4).unwrap();
        assert_abs_diff_eq!(q_m(&g, 2).unwrap(), 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q_m(&g, 2).unwrap(), q_m_ghz_closed(2, 2), epsilon = 1e-12);

        let w = w_state(6).unwrap();
        assert_abs_diff_eq!(q_m(&w, 1).unwrap(), 5.0 / 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q_m(&w, 2).unwrap(), 16.0 / 27.0, epsilon = 1e-12);
        assert_abs_diff_eq!(q_m(&w, 3).unwrap(), 4.0 / 7.0, epsilon = 1e-12);
        // the measures do not order: Q_1 < Q_3 < Q_2 for the 6-qubit W state
        let (q1, q2, q3) = (
            q_m(&w, 1).unwrap(),
            q_m(&w, 2).unwrap(),
            q_m(&w, 3).unwrap(),
        );
        assert!(q1 < q3 && q3 < q2);

        // m out of range
        assert!(q_m(&g, 0).is_err());
        assert!(q_m(&g, 3).is_err());
    }

    #[test]
    fn closed_forms_match_direct_evaluation() {
        for n in [2usize, 4, 6] {
            let g = ghz(2, n).unwrap();
            for m in 1..=n / 2 {
                assert_abs_diff_eq!(q_m(&g, m).unwrap(), q_m_ghz_closed(2, m), epsilon = 1e-10);
            }
            let w = w_state(n).unwrap();
            for m in 1..=n / 2 {
                assert_abs_diff_eq!(q_m(&w, m).unwrap(), q_m_w_closed(n, m), epsilon = 1e-10);
            }
        }
        let g33 = ghz(3, 3).unwrap();
        assert_abs_diff_eq!(q_m(&g33, 1).unwrap(), q_m_ghz_closed(3, 1), epsilon = 1e-10);
        // GHZ amplitudes at D=3, n=3: 1/√3 on |000⟩, |111⟩, |222⟩
        let a = 1.0 / 3f64.sqrt();
        for j in [0usize, 13, 26] {
            assert!((g33.amplitudes()[j] - c(a, 0.)).norm() < 1e-12);
        }
        // GHZ saturates m = 1
        assert_abs_diff_eq!(q_m_ghz_closed(2, 1), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn w2_is_the_symmetric_bell_state() {
        let w = w_state(2).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((w.amplitudes()[1] - c(s, 0.)).norm() < 1e-12);
        assert!((w.amplitudes()[2] - c(s, 0.)).norm() < 1e-12);
    }

    #[test]
    fn meyer_wallach_examples() {
        let zero3 = StateVector::basis_state(2, 3, 0).unwrap();
        assert_abs_diff_eq!(meyer_wallach_q(&zero3).unwrap(), 0.0, epsilon = 1e-12);
        let g3 = ghz(2, 3).unwrap();
        assert_abs_diff_eq!(meyer_wallach_q(&g3).unwrap(), 1.0, epsilon = 1e-12);
        assert!(meyer_wallach_q(&ghz(3, 2).unwrap()).is_err());
    }

    #[test]
    fn brennen_identity_on_haar_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..100 {
            let psi = haar_state(2, 4, &mut rng);
            let mw = meyer_wallach_q(&psi).unwrap();
            let q1 = q_m(&psi, 1).unwrap();
            assert_abs_diff_eq!(mw, q1, epsilon = 1e-10);
        }
    }

    #[test]
    fn product_states_have_zero_q_m() {
        // ⊗ of random single-qubit states
        let mut rng = ChaCha12Rng::seed_from_u64(40);
        for _ in 0..10 {
            let n = 4;
            let mut amps = Array1::from_elem(1, c(1.0, 0.0));
            for _ in 0..n {
                let local = haar_state(2, 1, &mut rng);
                let mut next = Array1::zeros(amps.len() * 2);
                for (i, a) in amps.iter().enumerate() {
                    for (j, b) in local.amplitudes().iter().enumerate() {
                        next[i * 2 + j] = a * b;
                    }
                }
                amps = next;
            }
            let psi = StateVector::new(2, n, amps).unwrap();
            for m in 1..=2 {
                assert!(q_m(&psi, m).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn subsets_iterate_lexicographically() {
        let got: Vec<Vec<usize>> = Subset::all_of_size(4, 2)
            .map(|s| s.members().to_vec())
            .collect();
        let expect = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];
        assert_eq!(got, expect);
    }

    #[test]
    fn partial_trace_consistency() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let psi = haar_state(2, 5, &mut rng);
        let s = Subset::new(5, &[2, 4]).unwrap();
        let rho = partial_trace(&psi, &s).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-10);
        assert!(rho.hermiticity_defect() < 1e-12);
        // positive semidefiniteness spot check on random vectors
        for _ in 0..20 {
            let v = gaussian_vector(rho.dim(), &mut rng);
            let mut rv = Array1::<C64>::zeros(rho.dim());
            for i in 0..rho.dim() {
                for j in 0..rho.dim() {
                    rv[i] += rho.matrix[(i, j)] * v[j];
                }
            }
            let quad: C64 = v.iter().zip(&rv).map(|(a, b)| a.conj() * b).sum();
            assert!(quad.re >= -1e-10 && quad.im.abs() < 1e-10);
        }
        // independent route: partial trace of the dense density operator
        let dm = psi.density_matrix();
        let viaop = partial_trace_op(&dm, 2, 5, &s.positions());
        assert!(max_abs_diff(&rho.matrix, &viaop) < 1e-12);
        // two-stage reduction equals one-stage
        let big = partial_trace(&psi, &Subset::new(5, &[2, 3, 4]).unwrap()).unwrap();
        let two = partial_trace_op(&big.matrix, 2, 3, &[0, 2]);
        assert!(max_abs_diff(&two, &rho.matrix) < 1e-12);
    }

    #[test]
    fn lubkin_closed_form_values() {
        assert_abs_diff_eq!(lubkin_average(2, 6, 1), 62.0 / 65.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lubkin_average(2, 6, 3), 56.0 / 65.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lubkin_average(2, 2, 1), 2.0 / 5.0, epsilon = 1e-15);
    }

    #[test]
    fn haar_mean_purity_tracks_lubkin() {
        // light version of the Monte Carlo acceptance run
        let mut rng = ChaCha12Rng::seed_from_u64(1234);
        let samples = 600;
        let mut acc = KahanSum::new();
        for _ in 0..samples {
            let psi = haar_state(2, 6, &mut rng);
            acc.add(q_m(&psi, 1).unwrap());
        }
        let mean = acc.value() / samples as f64;
        let expect = lubkin_average(2, 6, 1);
        // crude bound: Q_1 varies little over Haar states at n = 6
        assert!((mean - expect).abs() < 5e-3, "mean {mean} vs {expect}");
    }

    #[test]
    fn haar_distribution_is_rotation_invariant() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        let dim = 8;
        let samples = 4000;
        // mean overlap with a fixed basis vector is 1/dim, rotated or not
        let mut plain = 0.0;
        let mut rotated = 0.0;
        // a fixed unitary: cyclic shift combined with phases
        let mut u = Array2::<C64>::zeros((dim, dim));
        for j in 0..dim {
            u[((j + 3) % dim, j)] = C64::from_polar(1.0, 0.7 * j as f64);
        }
        for _ in 0..samples {
            let psi = haar_state(2, 3, &mut rng);
            plain += psi.amplitudes()[0].norm_sqr();
            let v = u.dot(psi.amplitudes());
            rotated += v[0].norm_sqr();
        }
        plain /= samples as f64;
        rotated /= samples as f64;
        let sigma = (1.0 / dim as f64) / (samples as f64).sqrt() * 3.0;
        assert!((plain - 1.0 / dim as f64).abs() < 5.0 * sigma);
        assert!((rotated - 1.0 / dim as f64).abs() < 5.0 * sigma);
    }

    #[test]
    fn subspace_sampling() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        // one-dimensional subspace: sampling returns that state up to phase
        let g = ghz(2, 4).unwrap();
        let mut basis = Array2::zeros((16, 1));
        for (i, a) in g.amplitudes().iter().enumerate() {
            basis[(i, 0)] = *a;
        }
        let psi = haar_state_in_subspace(2, 4, &basis, &mut rng).unwrap();
        let overlap: C64 = g
            .amplitudes()
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-10);

        // non-orthonormal basis is rejected
        let mut bad = Array2::zeros((16, 2));
        bad[(0, 0)] = c(1.0, 0.0);
        bad[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(
            haar_state_in_subspace(2, 4, &bad, &mut rng),
            Err(StateError::NonOrthonormalBasis(_))
        ));

        // dim = 1 edge: the single basis state up to phase
        let tiny = haar_state(1, 1, &mut rng);
        assert!((tiny.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn state_vector_validation() {
        let bad = Array1::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            StateVector::new(2, 1, bad),
            Err(StateError::NotNormalized(_))
        ));
        let short = Array1::from_vec(vec![c(1.0, 0.0)]);
        assert!(matches!(
            StateVector::new(2, 2, short),
            Err(StateError::BadShape { .. })
        ));
        assert!(Subset::new(3, &[]).is_err());
        assert!(Subset::new(3, &[4]).is_err());
        assert!(Subset::new(3, &[0]).is_err());
        // entropy requires a proper bipartition: |S| ≤ n - 1
        let g = ghz(2, 2).unwrap();
        let full = Subset::new(2, &[1, 2]).unwrap();
        assert!(matches!(
            subsystem_linear_entropy(&g, &full),
            Err(StateError::SubsetTooLarge { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let w = w_state(3).unwrap();
        let text = w.to_json_string();
        assert!(text.contains("\"D\":2"));
        let back = StateVector::from_json_str(&text).unwrap();
        assert_eq!(w, back);
        assert!(StateVector::from_json_str("{}").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn brennen_identity_holds(seed in any::<u64>(), n in 2usize..=5) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let psi = haar_state(2, n, &mut rng);
            let mw = meyer_wallach_q(&psi).unwrap();
            let q1 = q_m(&psi, 1).unwrap();
            prop_assert!((mw - q1).abs() < 1e-10);
        }

        #[test]
        fn q_m_is_within_unit_interval(seed in any::<u64>(), n in 2usize..=6) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let psi = haar_state(2, n, &mut rng);
            for m in 1..=n/2 {
                let q = q_m(&psi, m).unwrap();
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&q));
            }
        }
    }
}

//! Displacement (generalized Pauli) operators on C^D and their n-fold
//! tensor products.
//!
//! The single-qudit basis is `D(μ,ν) = e^{iπμν/D} X^μ Z^ν` built from the
//! Weyl shift and clock operators; for qubits these are exactly the Pauli
//! matrices (in particular `D(1,1) = iXZ = Y`). The n-qudit operators
//! `𝒟(𝛍,𝛎) = D(μ₁,ν₁) ⊗ … ⊗ D(μₙ,νₙ)` form an orthonormal basis for all
//! n-qudit operators under `tr[𝒟†A]/Dⁿ`, and every one of them is a
//! *monomial* matrix (one nonzero entry per column), which the enumerator
//! sums exploit to avoid dense operator products.
//!
//! The map [`phi_map`] sends a GF(4) vector to the qubit displacement with
//! μ = ω-part and ν = ω̄-part, so weights agree coordinate-wise and the
//! trace inner product mirrors the commutator.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::gf4::Gf4Vec;

/// Hard cap on dense tensor-product dimension D^n.
pub const DIM_CAP: usize = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("local dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("label ({mu},{nu}) out of range for local dimension {d}")]
    LabelOutOfRange { d: usize, mu: usize, nu: usize },
    #[error("dense dimension {dim} exceeds the cap {DIM_CAP}")]
    DimCap { dim: usize },
    #[error("operator must be {expected}×{expected}, got {rows}×{cols}")]
    ShapeMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
}

/// Weyl shift operator: X|j⟩ = |j+1 mod D⟩.
pub fn weyl_x(d: usize) -> Result<Array2<C64>, BasisError> {
    if d < 2 {
        return Err(BasisError::DimensionTooSmall(d));
    }
    let mut x = Array2::zeros((d, d));
    for j in 0..d {
        x[((j + 1) % d, j)] = C64::new(1.0, 0.0);
    }
    Ok(x)
}

/// Weyl clock operator: Z|j⟩ = e^{2πij/D}|j⟩.
pub fn weyl_z(d: usize) -> Result<Array2<C64>, BasisError> {
    if d < 2 {
        return Err(BasisError::DimensionTooSmall(d));
    }
    let mut z = Array2::zeros((d, d));
    for j in 0..d {
        z[(j, j)] = C64::from_polar(1.0, 2.0 * PI * j as f64 / d as f64);
    }
    Ok(z)
}

/// Single-qudit displacement operator `D(μ,ν) = e^{iπμν/D} X^μ Z^ν` for
/// labels in [0, D).
pub fn displacement(d: usize, mu: usize, nu: usize) -> Result<Array2<C64>, BasisError> {
    if d < 2 {
        return Err(BasisError::DimensionTooSmall(d));
    }
    if mu >= d || nu >= d {
        return Err(BasisError::LabelOutOfRange { d, mu, nu });
    }
    Ok(displacement_any(d, mu as i64, nu as i64).expect("in-range labels"))
}

/// Displacement operator for arbitrary integer labels, using the defining
/// formula with X, Z of order D (so quasi-periodicity in the labels comes
/// out of the e^{iπμν/D} prefactor automatically).
pub fn displacement_any(d: usize, mu: i64, nu: i64) -> Result<Array2<C64>, BasisError> {
    if d < 2 {
        return Err(BasisError::DimensionTooSmall(d));
    }
    let dd = d as i64;
    let mu_red = mu.rem_euclid(dd) as usize;
    let nu_red = nu.rem_euclid(dd) as usize;
    let global = PI * (mu as f64) * (nu as f64) / d as f64;
    let mut m = Array2::zeros((d, d));
    for j in 0..d {
        // column j: entry at row (j + μ) mod D with phase e^{iπμν/D} e^{2πiνj/D}
        let angle = global + 2.0 * PI * (nu_red * j) as f64 / d as f64;
        m[((j + mu_red) % d, j)] = C64::from_polar(1.0, angle);
    }
    Ok(m)
}

/// Monomial form of a displacement tensor product: `op[perm[j], j] = phase[j]`.
#[derive(Clone, Debug)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phase: Vec<C64>,
}

/// A tensor product of single-qudit displacement operators, stored by its
/// label list (qudit 1 first, i.e. the most significant Kronecker factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDisplacement {
    d: usize,
    labels: Vec<(usize, usize)>,
}

impl MultiDisplacement {
    pub fn new(d: usize, labels: Vec<(usize, usize)>) -> Result<Self, BasisError> {
        if d < 2 {
            return Err(BasisError::DimensionTooSmall(d));
        }
        for &(mu, nu) in &labels {
            if mu >= d || nu >= d {
                return Err(BasisError::LabelOutOfRange { d, mu, nu });
            }
        }
        Ok(MultiDisplacement { d, labels })
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    /// Number of sites with label different from (0,0).
    pub fn weight(&self) -> usize {
        self.labels.iter().filter(|&&l| l != (0, 0)).count()
    }

    pub fn dim(&self) -> usize {
        self.d.pow(self.labels.len() as u32)
    }

    /// Monomial representation, built column-by-column from the per-site
    /// shifts and phases.
    pub fn monomial(&self) -> Monomial {
        let d = self.d;
        let n = self.labels.len();
        let dim = self.dim();
        let mut perm = vec![0usize; dim];
        let mut phase = vec![C64::new(1.0, 0.0); dim];
        let global: f64 = self
            .labels
            .iter()
            .map(|&(mu, nu)| PI * (mu * nu) as f64 / d as f64)
            .sum();
        for j in 0..dim {
            let mut row = 0usize;
            let mut angle = global;
            let mut rem = j;
            for k in 0..n {
                let s = d.pow((n - 1 - k) as u32);
                let digit = rem / s;
                rem %= s;
                let (mu, nu) = self.labels[k];
                row += ((digit + mu) % d) * s;
                angle += 2.0 * PI * (nu * digit) as f64 / d as f64;
            }
            perm[j] = row;
            phase[j] = C64::from_polar(1.0, angle);
        }
        Monomial { perm, phase }
    }

    /// Dense matrix (Kronecker product in qudit order 1..n).
    pub fn matrix(&self) -> Result<Array2<C64>, BasisError> {
        let dim = self.dim();
        if dim > DIM_CAP {
            return Err(BasisError::DimCap { dim });
        }
        let m = self.monomial();
        let mut out = Array2::zeros((dim, dim));
        for j in 0..dim {
            out[(m.perm[j], j)] = m.phase[j];
        }
        Ok(out)
    }
}

/// Iterate all D^{2n} label vectors in a fixed odometer order (site 1 most
/// significant, μ before ν within a site).
pub fn all_labels(d: usize, n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let total = ((d * d) as u64).pow(n as u32);
    (0..total).map(move |idx| {
        let mut labels = vec![(0usize, 0usize); n];
        let mut rem = idx;
        for k in (0..n).rev() {
            let t = (rem % (d * d) as u64) as usize;
            rem /= (d * d) as u64;
            labels[k] = (t / d, t % d);
        }
        labels
    })
}

/// Expand an n-qudit operator in the displacement basis:
/// `A = Σ c(𝛍,𝛎) 𝒟(𝛍,𝛎)` with `c = D^{-n} tr[𝒟†A]`. Returns all D^{2n}
/// coefficients in `all_labels` order.
pub fn expand_operator(
    a: &Array2<C64>,
    d: usize,
    n: usize,
) -> Result<Vec<(MultiDisplacement, C64)>, BasisError> {
    let dim = d.pow(n as u32);
    if dim > DIM_CAP {
        return Err(BasisError::DimCap { dim });
    }
    let (rows, cols) = a.dim();
    if rows != dim || cols != dim {
        return Err(BasisError::ShapeMismatch {
            expected: dim,
            rows,
            cols,
        });
    }
    let scale = 1.0 / dim as f64;
    let mut out = Vec::with_capacity((d * d).pow(n as u32));
    for labels in all_labels(d, n) {
        let md = MultiDisplacement::new(d, labels)?;
        let m = md.monomial();
        let mut tr = C64::new(0.0, 0.0);
        for j in 0..dim {
            tr += m.phase[j].conj() * a[(m.perm[j], j)];
        }
        out.push((md, tr * scale));
    }
    Ok(out)
}

/// Rebuild `Σ c 𝒟` from expansion coefficients (testing aid for the
/// orthonormal-basis property).
pub fn reconstruct_operator(
    d: usize,
    n: usize,
    coeffs: &[(MultiDisplacement, C64)],
) -> Array2<C64> {
    let dim = d.pow(n as u32);
    let mut out = Array2::zeros((dim, dim));
    for (md, c) in coeffs {
        if c.norm() == 0.0 {
            continue;
        }
        let m = md.monomial();
        for j in 0..dim {
            out[(m.perm[j], j)] += c * m.phase[j];
        }
    }
    out
}

/// The qubit correspondence Φ: GF(4)^n → displacement labels, taking the
/// ω-part to μ and the ω̄-part to ν coordinate-wise (ω → X, ω̄ → Z,
/// 1 → iXZ = Y, 0 → I), phases neglected.
pub fn phi_map(x: &Gf4Vec) -> MultiDisplacement {
    let labels: Vec<(usize, usize)> = (0..x.len())
        .map(|i| {
            let s = x.get(i);
            (s.mu_bit() as usize, s.nu_bit() as usize)
        })
        .collect();
    MultiDisplacement { d: 2, labels }
}

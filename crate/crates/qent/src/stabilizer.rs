//! From self-orthogonal GF(4) codes to stabilizer groups, code projectors,
//! and (for self-dual codes) explicit maximally entangled state vectors.
//!
//! Each generator row maps through Φ to a displacement operator, multiplied
//! by the unique phase in {1, i, -1, -i} that makes it Hermitian (at D = 2
//! the displacement convention already yields Hermitian Pauli strings, so
//! the phase is 1; it is still determined numerically and cached). A sign
//! choice s_i ∈ {±1} per generator picks one joint eigenspace; the default
//! is all +1. The projector is accumulated as the product of (1 + s·g)/2
//! over generators, using the monomial structure of g so no dense operator
//! product is ever formed, and its idempotency is verified afterwards.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::error_basis::{phi_map, Monomial, MultiDisplacement};
use crate::gf4::AdditiveCode;
use crate::linalg::{dagger, max_abs_diff};
use crate::states::{StateError, StateVector};

/// Cap on dense Hilbert dimension 2^n for projector/state extraction.
pub const STATE_DIM_CAP: usize = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilizerError {
    #[error("code is not self-orthogonal: generators {i} and {j} anticommute (x⋆y = 1)")]
    NotSelfOrthogonal { i: usize, j: usize },
    #[error("expected {expected} signs, got {got}")]
    SignCount { expected: usize, got: usize },
    #[error("signs must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("no phase in {{1, i, -1, -i}} makes generator {0} Hermitian")]
    NoHermitianPhase(usize),
    #[error("dense dimension {dim} exceeds the cap {STATE_DIM_CAP}")]
    DimCap { dim: usize },
    #[error("projector failed idempotency (defect {0:.2e}); phase closure is broken")]
    NotIdempotent(f64),
    #[error("projector trace {trace:.6} does not match 2^(n-k) = {expected}")]
    WrongRank { trace: f64, expected: u64 },
    #[error("stabilized state requires a rank-1 projector, got K = {0}")]
    RankNotOne(u64),
    #[error("extracted state violates g|ψ⟩ = s|ψ⟩ (defect {0:.2e})")]
    NotStabilized(f64),
    #[error(transparent)]
    State(#[from] StateError),
}

/// One Hermitized stabilizer generator: `sign · phase · 𝒟(Φ(row))`.
#[derive(Clone, Debug)]
pub struct StabilizerGenerator {
    pub sign: i8,
    /// Hermitization phase α with α𝒟 = (α𝒟)†.
    pub phase: C64,
    pub displacement: MultiDisplacement,
}

impl StabilizerGenerator {
    /// Monomial form of `sign · phase · 𝒟`.
    fn monomial(&self) -> Monomial {
        let mut m = self.displacement.monomial();
        let factor = self.phase * self.sign as f64;
        for p in &mut m.phase {
            *p *= factor;
        }
        m
    }

    /// Apply to a vector: `(g v)[π(j)] = c_j v[j]`.
    fn apply(&self, v: &Array1<C64>) -> Array1<C64> {
        let m = self.monomial();
        let mut out = Array1::zeros(v.len());
        for j in 0..v.len() {
            out[m.perm[j]] = m.phase[j] * v[j];
        }
        out
    }
}

/// An Abelian group of Hermitian displacement operators stabilizing a
/// quantum code; order 2^(number of generators) on n qubits.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<StabilizerGenerator>,
}

impl StabilizerGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[StabilizerGenerator] {
        &self.generators
    }

    /// Dimension 2^(n - #generators) of the stabilized subspace.
    pub fn code_dimension(&self) -> u64 {
        1u64 << (self.n - self.generators.len())
    }
}

/// A projector onto a stabilizer code subspace.
#[derive(Clone, Debug)]
pub struct CodeProjector {
    pub n: usize,
    /// Subspace dimension K = tr P (an exact power of two).
    pub k_dim: u64,
    pub matrix: Array2<C64>,
}

fn hermitization_phase(md: &MultiDisplacement, index: usize) -> Result<C64, StabilizerError> {
    let m = md.monomial();
    let candidates = [
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, -1.0),
    ];
    'outer: for alpha in candidates {
        for j in 0..m.perm.len() {
            let lhs = alpha * m.phase[j];
            let rhs = (alpha * m.phase[m.perm[j]]).conj();
            if (lhs - rhs).norm() > 1e-12 {
                continue 'outer;
            }
        }
        return Ok(alpha);
    }
    Err(StabilizerError::NoHermitianPhase(index))
}

/// Build the stabilizer group of a self-orthogonal additive code: each
/// generator is Φ(row) Hermitized, with eigenvalue signs defaulting to +1.
pub fn stabilizer_from_code(
    code: &AdditiveCode,
    signs: Option<&[i8]>,
) -> Result<StabilizerGroup, StabilizerError> {
    let gens = code.generators();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate().skip(i + 1) {
            if a.trace_inner_product(b).expect("equal lengths") != 0 {
                return Err(StabilizerError::NotSelfOrthogonal { i, j });
            }
        }
    }
    let signs = match signs {
        Some(s) => {
            if s.len() != gens.len() {
                return Err(StabilizerError::SignCount {
                    expected: gens.len(),
                    got: s.len(),
                });
            }
            for &x in s {
                if x != 1 && x != -1 {
                    return Err(StabilizerError::BadSign(x));
                }
            }
            s.to_vec()
        }
        None => vec![1i8; gens.len()],
    };
    let generators = gens
        .iter()
        .zip(&signs)
        .enumerate()
        .map(|(i, (row, &sign))| {
            let displacement = phi_map(row);
            let phase = hermitization_phase(&displacement, i)?;
            Ok(StabilizerGenerator {
                sign,
                phase,
                displacement,
            })
        })
        .collect::<Result<Vec<_>, StabilizerError>>()?;
    Ok(StabilizerGroup {
        n: code.len(),
        generators,
    })
}

/// Projector onto the joint eigenspace: `P = Π_i (1 + s_i g_i)/2`,
/// verified idempotent and of trace 2^(n - #generators).
pub fn code_projector(group: &StabilizerGroup) -> Result<CodeProjector, StabilizerError> {
    let dim = 1usize << group.n;
    if dim > STATE_DIM_CAP {
        return Err(StabilizerError::DimCap { dim });
    }
    let mut p: Array2<C64> = Array2::eye(dim);
    for g in &group.generators {
        let m = g.monomial();
        // P ← (P + g·P)/2, with g·P a phased row permutation of P
        let mut next = Array2::zeros((dim, dim));
        for j in 0..dim {
            let target = m.perm[j];
            let c = m.phase[j];
            for col in 0..dim {
                next[(target, col)] = (p[(target, col)] + c * p[(j, col)]) * 0.5;
            }
        }
        p = next;
    }
    let pp = p.dot(&p);
    let defect = max_abs_diff(&pp, &p).max(max_abs_diff(&dagger(&p), &p));
    if defect > 1e-10 {
        return Err(StabilizerError::NotIdempotent(defect));
    }
    let expected = group.code_dimension();
    let tr: f64 = p.diag().iter().map(|z| z.re).sum();
    if (tr - expected as f64).abs() > 1e-8 {
        return Err(StabilizerError::WrongRank {
            trace: tr,
            expected,
        });
    }
    Ok(CodeProjector {
        n: group.n,
        k_dim: expected,
        matrix: p,
    })
}

/// The unique (up to phase) state stabilized by a full set of n commuting
/// generators. The global phase is fixed by making the first nonzero
/// amplitude real and positive.
pub fn stabilized_state(group: &StabilizerGroup) -> Result<StateVector, StabilizerError> {
    if group.code_dimension() != 1 {
        return Err(StabilizerError::RankNotOne(group.code_dimension()));
    }
    let proj = code_projector(group)?;
    let dim = proj.matrix.nrows();
    // any nonzero column of a rank-1 projector is proportional to the state
    let (best_col, _) = (0..dim)
        .map(|j| {
            let nrm: f64 = (0..dim).map(|i| proj.matrix[(i, j)].norm_sqr()).sum();
            (j, nrm)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let mut amps: Array1<C64> = proj.matrix.column(best_col).to_owned();
    let nrm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amps.mapv_inplace(|z| z / nrm);
    // fix global phase
    let first = amps
        .iter()
        .find(|z| z.norm() > 1e-8)
        .copied()
        .expect("unit vector has a nonzero entry");
    let rot = first.conj() / first.norm();
    amps.mapv_inplace(|z| z * rot);
    // verify the eigenvalue equations g_i|ψ⟩ = s_i|ψ⟩
    for g in &group.generators {
        let gv = g.apply(&amps);
        let defect = gv
            .iter()
            .zip(&amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if defect > 1e-10 {
            return Err(StabilizerError::NotStabilized(defect));
        }
    }
    Ok(StateVector::new(2, group.n, amps)?)
}

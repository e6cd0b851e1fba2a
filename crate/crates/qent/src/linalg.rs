//! Small dense complex linear-algebra helpers shared across modules.
//!
//! Everything here works on `ndarray` arrays of `Complex64` and is sized for
//! the dense regime this crate targets (Hilbert dimensions up to a few
//! thousand). No external BLAS/LAPACK backend is used.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

/// Kronecker product `a ⊗ b`, with `a` supplying the most significant index.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Conjugate transpose.
pub fn dagger(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

pub fn trace(a: &Array2<C64>) -> C64 {
    a.diag().sum()
}

/// Largest entrywise absolute difference between two matrices.
pub fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Deviation of `u` from unitarity, as `max |(U†U - I)_ij|`.
pub fn unitarity_defect(u: &Array2<C64>) -> f64 {
    let (r, c) = u.dim();
    if r != c {
        return f64::INFINITY;
    }
    let utu = dagger(u).dot(u);
    let eye = Array2::<C64>::eye(r);
    max_abs_diff(&utu, &eye)
}

/// Deviation of `p` from being an orthogonal projector:
/// `max(|P² - P|, |P† - P|)` entrywise.
pub fn projector_defect(p: &Array2<C64>) -> f64 {
    let (r, c) = p.dim();
    if r != c {
        return f64::INFINITY;
    }
    let pp = p.dot(p);
    let idem = max_abs_diff(&pp, p);
    let herm = max_abs_diff(&dagger(p), p);
    idem.max(herm)
}

/// Partial trace of an operator on `(C^d)^⊗n` onto the positions in `keep`
/// (0-based, sorted ascending; position 0 is the most significant index
/// digit). The positions not in `keep` are traced out.
pub fn partial_trace_op(op: &Array2<C64>, d: usize, n: usize, keep: &[usize]) -> Array2<C64> {
    let dim: usize = d.pow(n as u32);
    assert_eq!(op.dim(), (dim, dim), "operator shape mismatch");
    debug_assert!(keep.windows(2).all(|w| w[0] < w[1]), "keep must be sorted");
    let env: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let stride = |pos: usize| d.pow((n - 1 - pos) as u32);

    // Flat offsets contributed by each kept / traced multi-index.
    let offsets = |positions: &[usize]| -> Vec<usize> {
        let m = positions.len();
        let count = d.pow(m as u32);
        let mut offs = vec![0usize; count];
        for (idx, off) in offs.iter_mut().enumerate() {
            let mut rem = idx;
            for (t, &pos) in positions.iter().enumerate() {
                let digit = rem / d.pow((m - 1 - t) as u32);
                rem %= d.pow((m - 1 - t) as u32);
                *off += digit * stride(pos);
            }
        }
        offs
    };
    let keep_offs = offsets(keep);
    let env_offs = offsets(&env);

    let kd = keep_offs.len();
    let mut out = Array2::<C64>::zeros((kd, kd));
    for (a, &oa) in keep_offs.iter().enumerate() {
        for (b, &ob) in keep_offs.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &oe in &env_offs {
                acc += op[(oa + oe, ob + oe)];
            }
            out[(a, b)] = acc;
        }
    }
    out
}

/// Orthonormalize the columns of `a` in place by modified Gram-Schmidt.
/// Returns an error message if a column is (numerically) dependent.
pub fn gram_schmidt(a: &mut Array2<C64>) -> Result<(), String> {
    let (rows, cols) = a.dim();
    for j in 0..cols {
        for i in 0..j {
            let mut dot = C64::new(0.0, 0.0);
            for r in 0..rows {
                dot += a[(r, i)].conj() * a[(r, j)];
            }
            for r in 0..rows {
                let v = a[(r, i)];
                a[(r, j)] -= dot * v;
            }
        }
        let norm: f64 = a.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(format!("column {j} is linearly dependent"));
        }
        for r in 0..rows {
            a[(r, j)] /= C64::new(norm, 0.0);
        }
    }
    Ok(())
}

/// Compensated (Kahan) accumulator for long real sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Squared Euclidean norm of a complex vector.
pub fn norm_sqr(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_2x2() {
        let x = array![[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]];
        let eye = Array2::<C64>::eye(2);
        let xi = kron(&x, &eye);
        assert_eq!(xi[(0, 2)], c(1., 0.));
        assert_eq!(xi[(1, 3)], c(1., 0.));
        assert_eq!(xi[(0, 1)], c(0., 0.));
        // x ⊗ I acts on the most significant qubit
        let ix = kron(&eye, &x);
        assert_eq!(ix[(0, 1)], c(1., 0.));
        assert_eq!(ix[(2, 3)], c(1., 0.));
    }

    #[test]
    fn partial_trace_of_bell_projector() {
        // |Φ+⟩⟨Φ+| on 2 qubits traced to either side is I/2.
        let s = 0.5;
        let mut p = Array2::<C64>::zeros((4, 4));
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                p[(i, j)] = c(s, 0.);
            }
        }
        for keep in [&[0usize][..], &[1usize][..]] {
            let r = partial_trace_op(&p, 2, 2, keep);
            assert!((r[(0, 0)].re - 0.5).abs() < 1e-14);
            assert!((r[(1, 1)].re - 0.5).abs() < 1e-14);
            assert!(r[(0, 1)].norm() < 1e-14);
        }
    }

    #[test]
    fn partial_trace_two_stage_matches_one_stage() {
        // random-ish Hermitian operator on 3 qubits
        let dim = 8;
        let mut m = Array2::<C64>::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                let v = c((i * 7 + j * 3) as f64 * 0.01, (i as f64 - j as f64) * 0.02);
                m[(i, j)] = v;
            }
        }
        let h = &m + &dagger(&m);
        let one = partial_trace_op(&h, 2, 3, &[0]);
        let two_a = partial_trace_op(&h, 2, 3, &[0, 2]);
        let two = partial_trace_op(&two_a, 2, 2, &[0]);
        assert!(max_abs_diff(&one, &two) < 1e-12);
    }

    #[test]
    fn kahan_beats_naive_on_adversarial_sum() {
        let mut k = KahanSum::new();
        k.add(1.0);
        for _ in 0..10 {
            k.add(1e-16);
        }
        assert!((k.value() - (1.0 + 10e-16)).abs() < 1e-18);
    }
}

//! Quantum weight enumerators of a code projector and the coding-theoretic
//! algebra built on them.
//!
//! For a projector P with tr P = K on n qudits of dimension D:
//!
//! - Shor-Laflamme: `A_i = K⁻² Σ_{wt 𝒟 = i} |tr[𝒟P]|²`,
//!   `B_i = K⁻¹ Σ_{wt 𝒟 = i} tr[𝒟P𝒟†P]`, summed over all D^{2n}
//!   displacement labels. Both sums exploit the monomial structure of 𝒟,
//!   never forming a dense operator product.
//! - Rains unitary: `A'_i = K⁻² Σ_{|S|=i} tr_S[(tr_{S'}P)²]` and `B'` with
//!   the subset roles swapped -- partial-trace purities, which stay cheap
//!   when the label sum does not.
//!
//! The two families are linearly related (`primed_from_unprimed`), the
//! minimum distance and purity fall out of `B = A` coincidences, and `Q_m`
//! of a K = 1 projector is an affine function of the weight distribution
//! ([`qm_from_weights`], with an exact-rational twin for integer inputs).
//! Averages of `Q_m` over a subspace or over encoded states close the loop
//! back to the entanglement measures.

// index loops mirror the i-indexed coefficient sums they implement
#![allow(clippy::needless_range_loop)]

use ndarray::Array2;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use num_complex::Complex64 as C64;
use serde::Serialize;
use thiserror::Error;

use crate::error_basis::{all_labels, MultiDisplacement};
use crate::linalg::{partial_trace_op, projector_defect, trace, KahanSum};
use crate::states::Subset;

/// Cap on the number of displacement labels D^{2n} visited by the
/// exhaustive Shor-Laflamme sums (n ≤ 7 at D = 2).
pub const LABEL_CAP: u64 = 1 << 14;

/// Idempotency/Hermiticity tolerance for projector inputs.
pub const PROJECTOR_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnumError {
    #[error("operator is not a projector (defect {0:.2e})")]
    NotAProjector(f64),
    #[error("projector trace {trace:.6} does not match K = {k}")]
    TraceMismatch { trace: f64, k: f64 },
    #[error("{needed} displacement labels exceed the cap {cap}")]
    LabelCap { needed: u64, cap: u64 },
    #[error("weight sequence has length {got}, expected n + 1 = {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("weight sequence is not normalized: A_0 = {0}, expected 1")]
    BadNormalization(f64),
    #[error("m = {m} out of range 1..={max}")]
    MOutOfRange { m: usize, max: usize },
    #[error("the two weight-to-Q_m routes disagree: {0} vs {1}")]
    RouteMismatch(f64, f64),
    #[error("distance {0} exceeds n, weight data inconsistent")]
    BadDistance(usize),
}

fn check_projector(p: &Array2<C64>, k: f64) -> Result<(), EnumError> {
    let defect = projector_defect(p);
    if defect > PROJECTOR_TOL {
        return Err(EnumError::NotAProjector(defect));
    }
    let tr = trace(p).re;
    if (tr - k).abs() > 1e-6 * k.max(1.0) {
        return Err(EnumError::TraceMismatch { trace: tr, k });
    }
    Ok(())
}

/// Shor-Laflamme enumerators (A, B) of a projector, by exhaustive
/// summation over all D^{2n} displacement labels.
pub fn shor_laflamme(
    p: &Array2<C64>,
    k: f64,
    d: usize,
    n: usize,
) -> Result<(Vec<f64>, Vec<f64>), EnumError> {
    check_projector(p, k)?;
    let labels_needed = ((d * d) as u64).pow(n as u32);
    if labels_needed > LABEL_CAP {
        return Err(EnumError::LabelCap {
            needed: labels_needed,
            cap: LABEL_CAP,
        });
    }
    let dim = d.pow(n as u32);
    let mut a = vec![KahanSum::new(); n + 1];
    let mut b = vec![KahanSum::new(); n + 1];
    for labels in all_labels(d, n) {
        let md = MultiDisplacement::new(d, labels).expect("labels in range");
        let w = md.weight();
        let mono = md.monomial();
        // tr[𝒟P] = Σ_k c_k P[k, π(k)]
        let mut t1 = C64::new(0.0, 0.0);
        for j in 0..dim {
            t1 += mono.phase[j] * p[(j, mono.perm[j])];
        }
        a[w].add(t1.norm_sqr());
        // tr[𝒟P𝒟†P] = Σ_{k,l} c_k c̄_l P[k,l] P[π(l), π(k)]
        let mut t2 = C64::new(0.0, 0.0);
        for k1 in 0..dim {
            let ck = mono.phase[k1];
            let pk = mono.perm[k1];
            let mut row = C64::new(0.0, 0.0);
            for l in 0..dim {
                row += mono.phase[l].conj() * p[(k1, l)] * p[(mono.perm[l], pk)];
            }
            t2 += ck * row;
        }
        b[w].add(t2.re);
    }
    let a_out: Vec<f64> = a.iter().map(|s| s.value() / (k * k)).collect();
    let b_out: Vec<f64> = b.iter().map(|s| s.value() / k).collect();
    Ok((a_out, b_out))
}

/// Rains unitary enumerators (A', B') of a projector, from partial-trace
/// purities over all subsets.
pub fn rains_unitary(
    p: &Array2<C64>,
    k: f64,
    d: usize,
    n: usize,
) -> Result<(Vec<f64>, Vec<f64>), EnumError> {
    check_projector(p, k)?;
    let mut a = vec![0.0f64; n + 1];
    let mut b = vec![0.0f64; n + 1];
    // S = ∅ and S = {1..n} reduce to scalars
    a[0] = 1.0;
    b[0] = 1.0;
    a[n] = 1.0 / k;
    b[n] = k;
    let op_purity = |m: &Array2<C64>| -> f64 { m.iter().map(|z| z.norm_sqr()).sum() };
    for i in 1..n {
        let mut sum_a = KahanSum::new();
        let mut sum_b = KahanSum::new();
        for s in Subset::all_of_size(n, i) {
            let keep: Vec<usize> = s.positions();
            let comp: Vec<usize> = (0..n).filter(|x| !keep.contains(x)).collect();
            sum_a.add(op_purity(&partial_trace_op(p, d, n, &keep)));
            sum_b.add(op_purity(&partial_trace_op(p, d, n, &comp)));
        }
        a[i] = sum_a.value() / (k * k);
        b[i] = sum_b.value() / k;
    }
    Ok((a, b))
}

fn big_factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient as BigInt.
fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    big_factorial(n) / (big_factorial(k) * big_factorial(n - k))
}

/// Convert the unprimed enumerator sequence to the primed one:
/// `A'_m = D^{-m} Σ_{i≤m} C(n-i, m-i) A_i`.
pub fn primed_from_unprimed(a: &[f64], d: usize, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|m| {
            let mut acc = KahanSum::new();
            for i in 0..=m {
                let coeff = binomial(n - i, m - i).to_f64().unwrap();
                acc.add(coeff * a[i]);
            }
            acc.value() / (d as f64).powi(m as i32)
        })
        .collect()
}

/// Exact-rational version of [`primed_from_unprimed`].
pub fn primed_from_unprimed_exact(a: &[BigRational], d: usize, n: usize) -> Vec<BigRational> {
    (0..=n)
        .map(|m| {
            let mut acc = BigRational::zero();
            for i in 0..=m {
                acc += BigRational::from_integer(binomial(n - i, m - i)) * &a[i];
            }
            acc / BigRational::from_integer(BigInt::from(d).pow(m as u32))
        })
        .collect()
}

fn qm_coefficient(n: usize, m: usize, i: usize) -> BigRational {
    // m!(n-i)!/(n!(m-i)!)
    let num = big_factorial(m) * big_factorial(n - i);
    let den = big_factorial(n) * big_factorial(m - i);
    BigRational::new(num, den)
}

/// `Q_m` of a K = 1 projector from its weight distribution, evaluated
/// through both equivalent expressions and cross-checked to 1e-12:
/// the primed route `D^m/(D^m-1) [1 - m!(n-m)!/n! · A'_m]` and the direct
/// sum `1 - Σ_{i=1}^m m!(n-i)!/(n!(m-i)!) A_i / (D^m-1)`.
pub fn qm_from_weights(a: &[f64], d: usize, n: usize, m: usize) -> Result<f64, EnumError> {
    if a.len() != n + 1 {
        return Err(EnumError::BadLength {
            expected: n + 1,
            got: a.len(),
        });
    }
    if (a[0] - 1.0).abs() > 1e-9 {
        return Err(EnumError::BadNormalization(a[0]));
    }
    if m < 1 || m > n / 2 {
        return Err(EnumError::MOutOfRange { m, max: n / 2 });
    }
    let dm = (d as f64).powi(m as i32);
    // route 1: through A'_m
    let a_primed = primed_from_unprimed(a, d, n);
    let pref = (big_factorial(m) * big_factorial(n - m)).to_f64().unwrap()
        / big_factorial(n).to_f64().unwrap();
    let r1 = dm / (dm - 1.0) * (1.0 - pref * a_primed[m]);
    // route 2: direct weighted sum
    let mut acc = KahanSum::new();
    for i in 1..=m {
        acc.add(qm_coefficient(n, m, i).to_f64().unwrap() * a[i]);
    }
    let r2 = 1.0 - acc.value() / (dm - 1.0);
    let scale = 1.0 + a.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    if (r1 - r2).abs() > 1e-12 * scale {
        return Err(EnumError::RouteMismatch(r1, r2));
    }
    Ok(r2)
}

/// Exact-rational `Q_m` from an integer weight distribution. The two
/// routes of the defining identity must agree exactly.
pub fn qm_from_weights_exact(
    a: &[i128],
    d: usize,
    n: usize,
    m: usize,
) -> Result<BigRational, EnumError> {
    if a.len() != n + 1 {
        return Err(EnumError::BadLength {
            expected: n + 1,
            got: a.len(),
        });
    }
    if a[0] != 1 {
        return Err(EnumError::BadNormalization(a[0] as f64));
    }
    if m < 1 || m > n / 2 {
        return Err(EnumError::MOutOfRange { m, max: n / 2 });
    }
    let rat = |x: i128| BigRational::from_integer(BigInt::from(x));
    let dm = BigInt::from(d).pow(m as u32);
    let dm_minus_1 = BigRational::from_integer(dm.clone() - BigInt::one());
    let a_rat: Vec<BigRational> = a.iter().map(|&x| rat(x)).collect();
    // route 1
    let a_primed = primed_from_unprimed_exact(&a_rat, d, n);
    let pref = BigRational::new(big_factorial(m) * big_factorial(n - m), big_factorial(n));
    let r1 =
        BigRational::from_integer(dm) / &dm_minus_1 * (BigRational::one() - pref * &a_primed[m]);
    // route 2
    let mut acc = BigRational::zero();
    for i in 1..=m {
        acc += qm_coefficient(n, m, i) * &a_rat[i];
    }
    let r2 = BigRational::one() - acc / dm_minus_1;
    if r1 != r2 {
        return Err(EnumError::RouteMismatch(
            r1.to_f64().unwrap_or(f64::NAN),
            r2.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(r2)
}

/// The four enumerator sequences of one projector, with shape metadata.
#[derive(Clone, Debug)]
pub struct EnumeratorSet {
    pub n: usize,
    pub d: usize,
    pub k: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub a_primed: Vec<f64>,
    pub b_primed: Vec<f64>,
}

impl EnumeratorSet {
    /// Compute all four sequences of a projector (K inferred from the
    /// trace). Subject to the Shor-Laflamme label cap.
    pub fn compute(p: &Array2<C64>, d: usize, n: usize) -> Result<Self, EnumError> {
        let k = trace(p).re;
        let (a, b) = shor_laflamme(p, k, d, n)?;
        let (a_primed, b_primed) = rains_unitary(p, k, d, n)?;
        Ok(EnumeratorSet {
            n,
            d,
            k,
            a,
            b,
            a_primed,
            b_primed,
        })
    }

    /// Minimum distance and purity read off the enumerators.
    ///
    /// For K > 1 the distance is the largest d with B_i = A_i for all
    /// 0 < i < d, and the code is pure when additionally A_i = 0 there.
    /// For K = 1 the B = A coincidence is identically true, so the
    /// distance follows the pure-code convention: the first nonzero A_i.
    /// Distance-1 codes are reported impure (the purity condition is
    /// vacuous there).
    pub fn min_distance_and_purity(&self) -> (usize, bool) {
        let tol = |x: f64| 1e-8 * x.abs().max(1.0);
        let k_round = self.k.round() as i64;
        let d = if k_round == 1 {
            (1..=self.n)
                .find(|&i| self.a[i] > tol(self.a[i]).max(1e-8))
                .unwrap_or(self.n + 1)
        } else {
            (1..=self.n)
                .find(|&i| (self.b[i] - self.a[i]).abs() > tol(self.b[i]))
                .unwrap_or(self.n + 1)
        };
        let pure = d > 1 && (1..d.min(self.n + 1)).all(|i| self.a[i].abs() <= 1e-8);
        (d, pure)
    }

    /// JSON-facing report with the per-m entanglement column: `Q_m` of the
    /// encoded state for K = 1, the encoded-state average for K > 1.
    pub fn report(&self) -> Result<EnumeratorReport, EnumError> {
        let (dist, pure) = self.min_distance_and_purity();
        let mut q = Vec::new();
        for m in 1..=self.n / 2 {
            if self.k.round() as i64 == 1 {
                q.push(qm_from_weights(&self.a, self.d, self.n, m)?);
            } else {
                q.push(code_average_qm(
                    &self.a, &self.b, self.k, self.d, self.n, m,
                )?);
            }
        }
        Ok(EnumeratorReport {
            n: self.n,
            d_local: self.d,
            k_dim: self.k,
            a: self.a.clone(),
            b: self.b.clone(),
            a_primed: self.a_primed.clone(),
            b_primed: self.b_primed.clone(),
            d: dist,
            pure,
            q,
        })
    }
}

/// Serializable enumerator report.
#[derive(Clone, Debug, Serialize)]
pub struct EnumeratorReport {
    pub n: usize,
    #[serde(rename = "D")]
    pub d_local: usize,
    #[serde(rename = "K")]
    pub k_dim: f64,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    #[serde(rename = "B")]
    pub b: Vec<f64>,
    #[serde(rename = "A_primed")]
    pub a_primed: Vec<f64>,
    #[serde(rename = "B_primed")]
    pub b_primed: Vec<f64>,
    pub d: usize,
    pub pure: bool,
    #[serde(rename = "Q")]
    pub q: Vec<f64>,
}

/// Haar average of `Q_m` over the subspace cut out by a projector:
///
/// `D^m/(D^m-1) {1 - m!(n-m)!/(n! K(K+1)) Σ_{|S|=m} (tr_S[(tr_{S'}P)²] + tr_{S'}[(tr_S P)²])}`.
pub fn subspace_average_qm(
    p: &Array2<C64>,
    d: usize,
    n: usize,
    m: usize,
) -> Result<f64, EnumError> {
    let k = trace(p).re;
    check_projector(p, k)?;
    if m < 1 || m > n / 2 {
        return Err(EnumError::MOutOfRange { m, max: n / 2 });
    }
    let op_purity = |mm: &Array2<C64>| -> f64 { mm.iter().map(|z| z.norm_sqr()).sum() };
    let mut sum = KahanSum::new();
    for s in Subset::all_of_size(n, m) {
        let keep = s.positions();
        let comp: Vec<usize> = (0..n).filter(|x| !keep.contains(x)).collect();
        sum.add(op_purity(&partial_trace_op(p, d, n, &keep)));
        sum.add(op_purity(&partial_trace_op(p, d, n, &comp)));
    }
    let pref = BigRational::new(big_factorial(m) * big_factorial(n - m), big_factorial(n))
        .to_f64()
        .unwrap();
    let dm = (d as f64).powi(m as i32);
    Ok(dm / (dm - 1.0) * (1.0 - pref / (k * (k + 1.0)) * sum.value()))
}

/// Average `Q_m` of encoded states of a code with enumerators (A, B) and
/// dimension K: `1 - Σ_{i=1}^m m!(n-i)!/(n!(m-i)!) (K A_i + B_i) / ((D^m-1)(K+1))`.
pub fn code_average_qm(
    a: &[f64],
    b: &[f64],
    k: f64,
    d: usize,
    n: usize,
    m: usize,
) -> Result<f64, EnumError> {
    if a.len() != n + 1 || b.len() != n + 1 {
        return Err(EnumError::BadLength {
            expected: n + 1,
            got: a.len().min(b.len()),
        });
    }
    if m < 1 || m > n / 2 {
        return Err(EnumError::MOutOfRange { m, max: n / 2 });
    }
    let mut acc = KahanSum::new();
    for i in 1..=m {
        let c = qm_coefficient(n, m, i).to_f64().unwrap();
        acc.add(c * (k * a[i] + b[i]));
    }
    let dm = (d as f64).powi(m as i32);
    Ok(1.0 - acc.value() / ((dm - 1.0) * (k + 1.0)))
}

/// The unique candidate weight distribution of a self-dual MDS code
/// (distance d = ⌊n/2⌋ + 1), with the nonnegativity verdict.
#[derive(Clone, Debug)]
pub struct MdsWeightDistribution {
    pub n: usize,
    pub d_local: usize,
    /// MDS distance ⌊n/2⌋ + 1.
    pub distance: usize,
    /// Exact weight distribution A_0..A_n.
    pub a: Vec<BigRational>,
    /// False when some A_i < 0, i.e. no pure code with these parameters
    /// can exist.
    pub feasible: bool,
}

impl MdsWeightDistribution {
    pub fn a_f64(&self) -> Vec<f64> {
        self.a.iter().map(|x| x.to_f64().unwrap()).collect()
    }
}

/// Solve the self-dual MDS constraints for the weight distribution:
/// `A_i = n!/(n-i)! Σ_{j=d}^i (-1)^{i-j} (D^{2j-n} - 1)/(j!(i-j)!)` for
/// d ≤ i ≤ n with d = ⌊n/2⌋ + 1, A_0 = 1 and zeros between.
pub fn mds_weight_distribution(
    n: usize,
    d_local: usize,
) -> Result<MdsWeightDistribution, EnumError> {
    if n < 2 {
        return Err(EnumError::BadLength {
            expected: 2,
            got: n,
        });
    }
    let dist = n / 2 + 1;
    let mut a = vec![BigRational::zero(); n + 1];
    a[0] = BigRational::one();
    for i in dist..=n {
        let mut sum = BigRational::zero();
        for j in dist..=i {
            // 2j - n ≥ 1 for j ≥ ⌊n/2⌋ + 1
            let power = BigInt::from(d_local).pow((2 * j - n) as u32) - BigInt::one();
            let term = BigRational::new(power, big_factorial(j) * big_factorial(i - j));
            if (i - j) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        a[i] = BigRational::new(big_factorial(n), big_factorial(n - i)) * sum;
    }
    let feasible = a.iter().all(|x| !x.is_negative());
    Ok(MdsWeightDistribution {
        n,
        d_local,
        distance: dist,
        a,
        feasible,
    })
}

/// Parity of the code length for the MDS existence bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Largest n for which a self-dual MDS code ((n,1,⌊n/2⌋+1))_D can exist:
/// `2(D²-1)` for even n, `2D(D+1)-1` for odd n.
pub fn mds_existence_bound(d_local: usize, parity: Parity) -> usize {
    match parity {
        Parity::Even => 2 * (d_local * d_local - 1),
        Parity::Odd => 2 * d_local * (d_local + 1) - 1,
    }
}

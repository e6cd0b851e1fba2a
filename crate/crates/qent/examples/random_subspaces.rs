//! Average entanglement of Haar-random states and of random subspaces:
//! Monte Carlo sampling against the closed formulas.
//!
//! Run with `cargo run --release --example random_subspaces`.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qent::enumerators::subspace_average_qm;
use qent::linalg::{dagger, gram_schmidt};
use qent::states::{haar_state, haar_state_in_subspace, lubkin_average, q_m};

const SAMPLES: usize = 2000;

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);

    println!("Haar-random 6-qubit states against 1 - (2^m + 1)/65 ({SAMPLES} samples):");
    let mut sums = [0.0f64; 3];
    for _ in 0..SAMPLES {
        let psi = haar_state(2, 6, &mut rng);
        for m in 1..=3usize {
            sums[m - 1] += q_m(&psi, m).unwrap();
        }
    }
    for m in 1..=3usize {
        let mean = sums[m - 1] / SAMPLES as f64;
        println!(
            "  m={m}: sampled {mean:.6}  closed {:.6}",
            lubkin_average(2, 6, m)
        );
    }

    println!("\nrandom K-dimensional subspaces of 4 qubits:");
    let n = 4;
    let dim = 16;
    for k in [2usize, 3, 4] {
        let mut basis = Array2::<C64>::zeros((dim, k));
        for col in 0..k {
            let psi = haar_state(2, n, &mut rng);
            for (i, z) in psi.amplitudes().iter().enumerate() {
                basis[(i, col)] = *z;
            }
        }
        gram_schmidt(&mut basis).unwrap();
        let projector = basis.dot(&dagger(&basis));
        for m in 1..=2usize {
            let closed = subspace_average_qm(&projector, 2, n, m).unwrap();
            let mut acc = 0.0;
            for _ in 0..SAMPLES {
                let psi = haar_state_in_subspace(2, n, &basis, &mut rng).unwrap();
                acc += q_m(&psi, m).unwrap();
            }
            let mean = acc / SAMPLES as f64;
            println!("  K={k} m={m}: sampled {mean:.6}  closed {closed:.6}");
        }
    }
}

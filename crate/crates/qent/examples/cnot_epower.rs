//! Entangling power: the exact swap-operator formula against Monte Carlo
//! sampling, and the Haar average over unitaries.
//!
//! Run with `cargo run --release --example cnot_epower`.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qent::epower::{
    entangling_power_exact, entangling_power_mc, subset_average_purity, unitary_average_closed,
    UnitaryOperator,
};
use qent::states::Subset;

fn main() {
    let mut rng = ChaCha12Rng::seed_from_u64(99);

    let cnot = UnitaryOperator::cnot();
    let r1 = subset_average_purity(&cnot, &Subset::new(2, &[1]).unwrap()).unwrap();
    println!(
        "CNOT average one-qubit purity R_S = {r1:.12} (7/9 = {:.12})",
        7.0 / 9.0
    );
    let exact = entangling_power_exact(&cnot, 1).unwrap();
    let (mc, se) = entangling_power_mc(&cnot, 1, 100_000, &mut rng).unwrap();
    println!("CNOT e_p^(Q_1): exact {exact:.12} (4/9)  mc {mc:.6} ± {se:.6}");

    let id = UnitaryOperator::identity(2, 3);
    println!(
        "\nidentity e_p^(Q_1) = {:.2e}",
        entangling_power_exact(&id, 1).unwrap()
    );

    println!("\nrandom 3-qubit unitaries, exact vs Monte Carlo:");
    for trial in 0..3 {
        let u = UnitaryOperator::haar(2, 3, &mut rng);
        let exact = entangling_power_exact(&u, 1).unwrap();
        let (mc, se) = entangling_power_mc(&u, 1, 20_000, &mut rng).unwrap();
        println!("  #{trial}: exact {exact:.6}  mc {mc:.6} ± {se:.6}");
    }

    println!("\nHaar average of e_p over 50 unitaries (4 qubits, m = 2):");
    let count = 50;
    let mut acc = 0.0;
    for _ in 0..count {
        let u = UnitaryOperator::haar(2, 4, &mut rng);
        acc += entangling_power_exact(&u, 2).unwrap();
    }
    println!(
        "  sampled {:.6}  closed 1 - (2^m+1)/(2^n+1) = {:.6}",
        acc / count as f64,
        unitary_average_closed(2, 4, 2)
    );
}

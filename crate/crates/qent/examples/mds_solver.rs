//! Candidate weight distributions of self-dual MDS codes and the length
//! bound beyond which no such code exists.
//!
//! Run with `cargo run --release --example mds_solver`.

use qent::enumerators::{mds_existence_bound, mds_weight_distribution, Parity};

fn main() {
    println!("self-dual MDS candidates at D = 2 (distance ⌊n/2⌋ + 1):");
    for n in 2..=11usize {
        let mds = mds_weight_distribution(n, 2).unwrap();
        let a: Vec<String> = mds.a.iter().map(|x| x.to_string()).collect();
        println!(
            "  n={n:2} d={}  {}  A = [{}]",
            mds.distance,
            if mds.feasible {
                "feasible  "
            } else {
                "NEGATIVE A"
            },
            a.join(", ")
        );
    }
    println!(
        "\nexistence bound at D = 2: n ≤ {} (even), n ≤ {} (odd)",
        mds_existence_bound(2, Parity::Even),
        mds_existence_bound(2, Parity::Odd)
    );
    println!(
        "existence bound at D = 3: n ≤ {} (even), n ≤ {} (odd)",
        mds_existence_bound(3, Parity::Even),
        mds_existence_bound(3, Parity::Odd)
    );
    println!("\nqutrit example (D = 3):");
    for n in [4usize, 6] {
        let mds = mds_weight_distribution(n, 3).unwrap();
        let a: Vec<String> = mds.a.iter().map(|x| x.to_string()).collect();
        println!(
            "  n={n} d={}  {}  A = [{}]",
            mds.distance,
            if mds.feasible { "feasible" } else { "NEGATIVE" },
            a.join(", ")
        );
    }
}

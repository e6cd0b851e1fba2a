//! Reproduce the extremal self-dual code table: weight distributions of
//! the built-in codes and the exact Q_m column for every printed row.
//!
//! Run with `cargo run --release --example code_tables`.

use qent::enumerators::qm_from_weights_exact;
use qent::gf4::{extremal_bound, AdditiveCode, BuiltinCode};

fn main() {
    println!("built-in codes");
    println!("--------------");
    for which in [
        BuiltinCode::Epr2,
        BuiltinCode::Triad3,
        BuiltinCode::Short5,
        BuiltinCode::Hexacode,
    ] {
        let code = AdditiveCode::builtin(which);
        let n = code.len();
        let wd = code.weight_distribution().unwrap();
        let ty = code.code_type().unwrap();
        println!(
            "{which:9} n={n}  |C|={:3}  d={}  type {ty:?}  extremal bound {}  A = {:?}",
            code.codeword_count(),
            code.distance().unwrap(),
            extremal_bound(n, ty).unwrap(),
            wd.counts,
        );
        let ints: Vec<i128> = wd.counts.iter().map(|&x| x as i128).collect();
        let q: Vec<String> = (1..=n / 2)
            .map(|m| qm_from_weights_exact(&ints, 2, n, m).unwrap().to_string())
            .collect();
        println!("          Q_m = {}", q.join(", "));
    }

    println!();
    println!("formula path on the printed extremal/optimal rows");
    println!("--------------------------------------------------");
    let rows: [(usize, Vec<i128>); 6] = [
        (4, vec![1, 0, 6, 0, 9]),
        (7, vec![1, 0, 0, 7, 21, 42, 42, 15]),
        (8, vec![1, 0, 0, 0, 26, 64, 72, 64, 29]),
        (10, vec![1, 0, 0, 0, 30, 0, 300, 0, 585, 0, 108]),
        (12, vec![1, 0, 0, 0, 0, 0, 396, 0, 1485, 0, 1980, 0, 234]),
        (
            13,
            vec![
                1, 0, 0, 0, 0, 15, 236, 356, 1197, 1530, 2012, 1956, 650, 239,
            ],
        ),
    ];
    for (n, a) in rows {
        let q: Vec<String> = (1..=n / 2)
            .map(|m| qm_from_weights_exact(&a, 2, n, m).unwrap().to_string())
            .collect();
        println!("n={n:2}  Q_m = {}", q.join(", "));
    }
}

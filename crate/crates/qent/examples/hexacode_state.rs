//! From the hexacode generator matrix to an explicit 6-qubit state whose
//! every 3-qubit marginal is maximally mixed.
//!
//! Run with `cargo run --release --example hexacode_state`.

use qent::gf4::{AdditiveCode, BuiltinCode};
use qent::stabilizer::{code_projector, stabilized_state, stabilizer_from_code};
use qent::states::{partial_trace, q_m, Subset};

fn main() {
    let code = AdditiveCode::builtin(BuiltinCode::Hexacode);
    println!("hexacode generator matrix:");
    print!("{}", code.to_file_string());

    let group = stabilizer_from_code(&code, None).unwrap();
    println!(
        "\nstabilizer generator weights: {:?}",
        group
            .generators()
            .iter()
            .map(|g| g.displacement.weight())
            .collect::<Vec<_>>()
    );

    let proj = code_projector(&group).unwrap();
    println!("projector rank K = {}", proj.k_dim);

    let psi = stabilized_state(&group).unwrap();
    let nonzero = psi.amplitudes().iter().filter(|z| z.norm() > 1e-12).count();
    println!("stabilized state has {nonzero} nonzero amplitudes");

    for m in 1..=3 {
        println!("Q_{m} = {:.12}", q_m(&psi, m).unwrap());
    }

    // every 3-qubit marginal is 1/8
    let mut worst: f64 = 0.0;
    for s in Subset::all_of_size(6, 3) {
        let rho = partial_trace(&psi, &s).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { 0.125 } else { 0.0 };
                worst = worst.max((rho.matrix[(i, j)].norm() - expect).abs());
            }
        }
    }
    println!("worst deviation of any 3-qubit marginal from 1/8: {worst:.2e}");

    // a different joint eigenspace is just as good
    let group = stabilizer_from_code(&code, Some(&[1, -1, 1, -1, 1, -1])).unwrap();
    let psi = stabilized_state(&group).unwrap();
    println!("alternate sign choice: Q_3 = {:.12}", q_m(&psi, 3).unwrap());
}

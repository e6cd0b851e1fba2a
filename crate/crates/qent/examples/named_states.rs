//! Q_m of the named state families against their closed forms, and the
//! Meyer-Wallach measure computed two independent ways.
//!
//! Run with `cargo run --release --example named_states`.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qent::states::{ghz, haar_state, meyer_wallach_q, q_m, q_m_ghz_closed, q_m_w_closed, w_state};

fn main() {
    println!("generalized GHZ states: Q_m vs 1 - (D^(m-1)-1)/(D^m-1)");
    for (d, n) in [(2usize, 4usize), (2, 6), (3, 4)] {
        let g = ghz(d, n).unwrap();
        for m in 1..=n / 2 {
            let direct = q_m(&g, m).unwrap();
            let closed = q_m_ghz_closed(d, m);
            println!("  D={d} n={n} m={m}: direct {direct:.12}  closed {closed:.12}");
        }
    }

    println!("\nW states: Q_m vs 2^(m+1)/(2^m-1) (n-m)m/n²");
    let n = 6;
    let w = w_state(n).unwrap();
    for m in 1..=n / 2 {
        let direct = q_m(&w, m).unwrap();
        let closed = q_m_w_closed(n, m);
        println!("  n={n} m={m}: direct {direct:.12}  closed {closed:.12}");
    }
    println!("  note the ordering: Q_1 = 5/9 < Q_3 = 4/7 < Q_2 = 16/27");

    println!("\nMeyer-Wallach via the ι_j maps equals q_m(ψ, 1):");
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for _ in 0..3 {
        let psi = haar_state(2, 4, &mut rng);
        let mw = meyer_wallach_q(&psi).unwrap();
        let q1 = q_m(&psi, 1).unwrap();
        println!("  random 4-qubit state: ι-form {mw:.12}  subset-form {q1:.12}");
    }
}

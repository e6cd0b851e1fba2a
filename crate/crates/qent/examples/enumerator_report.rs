//! Weight enumerators of code projectors: the Shor-Laflamme and Rains
//! families, their conversion identity, and distance/purity read-off.
//!
//! Run with `cargo run --release --example enumerator_report`.

use qent::enumerators::{primed_from_unprimed, EnumeratorSet};
use qent::gf4::AdditiveCode;
use qent::stabilizer::{code_projector, stabilizer_from_code};
use qent::states::ghz;

fn main() {
    // rank-1 projector: the Bell state is the [[2,0,2]] code
    let bell = ghz(2, 2).unwrap();
    let set = EnumeratorSet::compute(&bell.density_matrix(), 2, 2).unwrap();
    println!("Bell state enumerators: A = {:?}", rounded(&set.a));
    let (d, pure) = set.min_distance_and_purity();
    println!("distance {d}, pure {pure}");

    // K = 2 projector: the five-qubit code
    let five = AdditiveCode::parse_file_str("n=5\nwWWw0\n0wWWw\nw0wWW\nWw0wW\n").unwrap();
    let group = stabilizer_from_code(&five, None).unwrap();
    let proj = code_projector(&group).unwrap();
    let set = EnumeratorSet::compute(&proj.matrix, 2, 5).unwrap();
    println!("\nfive-qubit code (K = {}):", proj.k_dim);
    println!("  A  = {:?}", rounded(&set.a));
    println!("  B  = {:?}", rounded(&set.b));
    let (d, pure) = set.min_distance_and_purity();
    println!("  distance {d}, pure {pure}");

    // the primed enumerators follow linearly from the unprimed ones
    let converted = primed_from_unprimed(&set.a, 2, 5);
    let max_diff: f64 = set
        .a_primed
        .iter()
        .zip(&converted)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    println!("  |A' - converted(A)| = {max_diff:.2e}");

    // the full JSON report as files/pipelines see it
    let report = set.report().unwrap();
    println!(
        "\nJSON report:\n{}",
        serde_json::to_string_pretty(&report).unwrap()
    );
}

fn rounded(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|x| (x * 1e6).round() / 1e6).collect()
}

// Circuits, broken circuits and nbc sets, and how the nbc sets depend on the
// order of the forms while their counts do not.
//
// Run with `cargo run --example nbc_bases`.

use arrangements::matroid;
use arrangements::{BuiltinFamily, Lattice};

fn main() {
    let arr = BuiltinFamily::Generic { n: 4, dim: 2 }.build().unwrap();
    let lat = Lattice::new(&arr);

    let circuits: Vec<String> = matroid::circuits(&arr)
        .iter()
        .map(|c| format!("{:?}", c.indices))
        .collect();
    println!("circuits: {}", circuits.join(" "));
    println!("broken circuits: {:?}", matroid::broken_circuits(&arr));

    for (flat, sets) in matroid::nbc_sets(&arr, &lat) {
        let sets: Vec<String> = sets.iter().map(|s| format!("{:?}", s.indices)).collect();
        println!("flat {flat} (mu {}): {}", lat.mobius(flat), sets.join(" "));
    }

    for order in [vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![2, 0, 3, 1]] {
        let p = arr.permuted(&order).unwrap();
        let report = matroid::check_nbc_count(&p, &Lattice::new(&p));
        println!(
            "order {order:?}: counts by codim {:?}, |nbc| = |mu| everywhere: {}",
            report.counts_by_codim(),
            report.all_passed()
        );
    }
}

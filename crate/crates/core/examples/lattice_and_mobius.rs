// Intersection lattice of the braid arrangement in four variables.
//
// Run with `cargo run --example lattice_and_mobius`.

use arrangements::{BuiltinFamily, Lattice};

fn main() {
    let braid = BuiltinFamily::Braid(4).build().unwrap();
    let lat = Lattice::new(&braid);
    println!("{} forms, {} flats, rank {}", braid.len(), lat.len(), lat.rank());
    for f in lat.flats() {
        let support: Vec<String> = f.support.iter().map(|&i| braid.label(i)).collect();
        println!(
            "flat {:2}  codim {}  mu {:3}  {{{}}}",
            f.id,
            f.codim,
            lat.mobius(f.id),
            support.join(", ")
        );
    }
    // sum of mu(X) (-t)^codim X
    println!("Poincaré polynomial coefficients: {}", lat.poincare_polynomial());
}

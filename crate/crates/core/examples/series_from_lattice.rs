// Poincaré series of the reciprocal algebra, read off the intersection
// lattice, for a built-in family and for a hand-written arrangement.
//
// Run with `cargo run --example series_from_lattice`.

use arrangements::{lattice, series, Arrangement, BuiltinFamily};

fn main() {
    let braid = BuiltinFamily::Braid(3).build().unwrap();
    println!("braid:3      {}", series::series_of_c(&braid, 10));

    // x, y, x + y, x - y in the plane: four lines through the origin
    let arr = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]])
        .unwrap()
        .with_names(["x", "y", "x+y", "x-y"].map(String::from).to_vec())
        .unwrap();
    let poincare = lattice::poincare_polynomial(&arr);
    println!("four lines   Poincaré {poincare}");
    println!("four lines   series   {}", series::series_of_c(&arr, 10));
    println!("defining polynomial: {}", arr.defining_polynomial());
}

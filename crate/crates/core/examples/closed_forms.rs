// Closed-form series for free and generic arrangements, checked against the
// series computed from the lattice.
//
// Run with `cargo run --example closed_forms`.

use arrangements::{series, BuiltinFamily};

fn main() {
    for l in 2..=5 {
        let family = BuiltinFamily::Braid(l);
        let exps = family.exponents().unwrap();
        let free = series::free_poincare_series(&exps, 8);
        let lattice = series::series_of_c(&family.build().unwrap(), 8);
        println!("{family}  exponents {exps:?}  {free}  agrees: {}", free == lattice);
    }
    for (n, dim) in [(4, 2), (5, 2), (5, 3), (6, 3), (7, 4)] {
        let generic = series::generic_series(n, dim, 8).unwrap();
        let family = BuiltinFamily::Generic { n, dim };
        let lattice = series::series_of_c(&family.build().unwrap(), 8);
        println!("{family}  {generic}  agrees: {}", generic == lattice);
    }
}

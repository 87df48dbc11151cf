// Brute-force graded dimensions of the reciprocal algebra and its pieces,
// compared with the combinatorial predictions.
//
// Run with `cargo run --release --example oracle_verification`.

use arrangements::{series, BuiltinFamily, Oracle};

fn main() {
    let arr = BuiltinFamily::Boolean(3).build().unwrap();
    let predicted = series::series_of_c(&arr, 3);
    let o = Oracle::new(arr);
    println!("p  dimC  series  dimAO  dimJ  dimDel");
    for p in 0..=3 {
        println!(
            "{p}  {:4}  {:6}  {:5}  {:4}  {:6}",
            o.dim_c(p).unwrap(),
            predicted.coeff(p),
            o.dim_ao(p).unwrap(),
            o.dim_j(p).unwrap(),
            o.dim_del_plus_c(p).unwrap()
        );
    }

    let report = Oracle::new(BuiltinFamily::Braid(3).build().unwrap())
        .verify_all(3)
        .unwrap();
    println!("braid:3 up to degree 3: {} checks", report.checks.len());
    match report.first_failure() {
        None => println!("all passed"),
        Some(c) => println!("first failure: {} ({})", c.clause, c.detail),
    }

    // the guard refuses runs whose matrices would be too large
    let big = Oracle::new(BuiltinFamily::Generic { n: 8, dim: 4 }.build().unwrap());
    println!("generic:8,4 at degree 6: {}", big.dim_c(6).unwrap_err());
}

// Writing a product of reciprocals as a sum of derivatives of nbc reciprocals.
//
// Run with `cargo run --example nbc_decomposition`.

use arrangements::{BuiltinFamily, Oracle, ReciprocalTuple};

fn main() {
    let o = Oracle::new(BuiltinFamily::Braid(3).build().unwrap());
    for indices in [vec![1, 2], vec![0, 0], vec![0, 1, 2], vec![1, 1, 2]] {
        let target = ReciprocalTuple::new(indices);
        let d = o.decompose(&target).unwrap();
        println!("1/{target}:");
        for t in &d.terms {
            println!(
                "  {} * D{:?} 1/{:?}   (flat {}, directions {:?})",
                t.coefficient,
                t.exponents,
                t.nbc,
                t.flat,
                d.directions[&t.flat].iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>()
            );
        }
        if let Some(residue) = &d.residue {
            println!("  residue {residue:?}");
        }
        println!("  expansion reproduces the target: {}", d.reproduces_target(&o));
    }

    // coordinate hyperplanes span the dual space, so a residue is reported
    let o = Oracle::new(BuiltinFamily::Boolean(2).build().unwrap());
    let d = o.decompose(&ReciprocalTuple::new(vec![0, 1])).unwrap();
    for (nbc, c) in d.residue.unwrap() {
        println!("boolean:2, 1/(1,2): residue on {nbc:?} is {c}");
    }
}

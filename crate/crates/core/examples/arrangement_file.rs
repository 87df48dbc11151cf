// Reading an arrangement file and driving the command-line interface
// in-process.
//
// Run with `cargo run --example arrangement_file`.

use arrangements::cli;

const FILE: &str = "\
# three lines in the plane and the plane z = 0
3
1 0 0
0 1 0
1/2 -1/3 0
0 0 1
";

fn main() {
    let arr = cli::parse_arrangement(FILE).unwrap();
    println!("parsed {} forms in {} variables", arr.len(), arr.dim());
    print!("serialized:\n{}", arr.to_file_string());

    let path = std::env::temp_dir().join("arrangements-example.txt");
    std::fs::write(&path, FILE).unwrap();
    let path = path.to_str().unwrap();
    for args in [
        vec!["poincare", path],
        vec!["series", path, "--degree", "6"],
        vec!["nbc", path, "--order", "4,3,2,1"],
    ] {
        let out = cli::run(std::iter::once("arrangements").chain(args.iter().copied()));
        print!("$ arrangements {}\n{}", args.join(" "), out.stdout);
    }

    let bad = cli::parse_arrangement("2\n1 0\n2 0\n").unwrap_err();
    println!("proportional forms are rejected: {bad}");
}

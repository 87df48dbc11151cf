//! Command-line front end.
//!
//! Arrangement files are plain text: `#` starts a comment, the first
//! non-comment line is the dimension `l`, and every further non-comment line
//! holds the `l` coefficients of one form as integers or fractions `a/b`.
//!
//! Form indices on the command line and in reports are 1-based.
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::Rational;
use crate::matroid;
use crate::oracle::{self, GradedReport, Oracle, ReciprocalTuple};
use crate::series::{self, BuiltinFamily};

/// Parses one coefficient: an optionally signed integer or `a/b` with `b > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("malformed rational {s:?}");
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['-', '+']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        None => BigInt::from(1),
        Some(d) if digits(d) => BigInt::from_str(d).map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

/// Reads an arrangement file. Line numbers in errors are 1-based.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut dim: Option<usize> = None;
    let mut forms = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(l) = dim else {
            let l: usize = line.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected the dimension, found {line:?}"),
            })?;
            if l < 1 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "dimension must be at least 1".into(),
                });
            }
            dim = Some(l);
            continue;
        };
        let coeffs: Vec<Rational> = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<std::result::Result<_, _>>()
            .map_err(|message| Error::Parse {
                line: line_no,
                message,
            })?;
        if coeffs.len() != l {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {l} coefficients, found {}", coeffs.len()),
            });
        }
        forms.push(coeffs);
    }
    let dim = dim.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "empty arrangement file".into(),
    })?;
    Arrangement::new(dim, forms)
}

#[derive(Parser, Debug)]
#[command(name = "arrangements", version, about = "Invariants of rational hyperplane arrangements and their reciprocal algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Arrangement file.
    file: Option<PathBuf>,
    /// Built-in family: braid:L, boolean:L or generic:N,L.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Linear order of the forms as a 1-based permutation, e.g. 3,1,2.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Flats with codimensions and Möbius values.
    Lattice(Input),
    /// Coefficients of the Poincaré polynomial.
    Poincare(Input),
    /// nbc sets per flat, checked against the Möbius function.
    Nbc(Input),
    /// Coefficients of the Poincaré series of the reciprocal algebra.
    Series {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = series::DEFAULT_DEGREE)]
        degree: usize,
        /// Closed form for a free arrangement with these exponents.
        #[arg(long, value_delimiter = ',', conflicts_with = "generic")]
        free: Option<Vec<i64>>,
        /// Closed form for a generic arrangement of N forms in L variables.
        #[arg(long, value_delimiter = ',', num_args = 1..=2, value_names = ["N", "L"])]
        generic: Option<Vec<usize>>,
    },
    /// Exact oracle checks of the structure theorems up to a degree.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Entry budget for oracle matrices.
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Expansion of a reciprocal over the nbc basis.
    Decompose {
        #[command(flatten)]
        input: Input,
        /// 1-based form indices of the target, repeats allowed.
        #[arg(long, value_delimiter = ',')]
        tuple: Vec<usize>,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u128,
    },
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs the CLI on `args` (including the program name) without touching the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome::input_error(e),
    }
}

fn load(input: &Input) -> Result<Arrangement> {
    let arr = match (&input.builtin, &input.file) {
        (Some(spec), _) => spec.parse::<BuiltinFamily>()?.build()?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))?;
            parse_arrangement(&text)?
        }
        (None, None) => {
            return Err(Error::Contract(
                "no input: pass an arrangement file or --builtin".into(),
            ))
        }
    };
    match &input.order {
        None => Ok(arr),
        Some(order) => {
            let zero_based = order
                .iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| Error::Contract("order indices are 1-based".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            arr.permuted(&zero_based)
        }
    }
}

fn big(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) => json!(i),
        Err(_) => json!(v.to_string()),
    }
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn set_text(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn tuple_text(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

fn render(json_out: bool, value: Value, text: String) -> String {
    if json_out {
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Lattice(input) => {
            let arr = load(&input)?;
            let lat = Lattice::new(&arr);
            let mut text = format!("{} flats\nid codim mobius support\n", lat.len());
            let mut flats = Vec::new();
            for f in lat.flats() {
                text.push_str(&format!(
                    "{} {} {} {}\n",
                    f.id,
                    f.codim,
                    lat.mobius(f.id),
                    set_text(&f.support)
                ));
                flats.push(json!({
                    "id": f.id,
                    "codim": f.codim,
                    "mobius": big(lat.mobius(f.id)),
                    "support": one_based(&f.support),
                }));
            }
            Ok(Outcome::ok(render(input.json, json!({ "flats": flats }), text)))
        }
        Command::Poincare(input) => {
            let arr = load(&input)?;
            let p = crate::lattice::poincare_polynomial(&arr);
            let coeffs: Vec<Value> = p.coeffs().iter().map(big).collect();
            Ok(Outcome::ok(render(
                input.json,
                json!({ "coefficients": coeffs }),
                format!("{p}\n"),
            )))
        }
        Command::Nbc(input) => {
            let arr = load(&input)?;
            let lat = Lattice::new(&arr);
            let sets = matroid::nbc_sets(&arr, &lat);
            let report = matroid::check_nbc_count(&arr, &lat);
            let mut text = String::new();
            let mut rows = Vec::new();
            for r in &report.rows {
                let list: Vec<String> = sets[&r.flat].iter().map(|s| tuple_text(&s.indices)).collect();
                text.push_str(&format!(
                    "flat {} codim {} mobius {} nbc {} {}: {}\n",
                    r.flat,
                    r.codim,
                    r.mobius,
                    r.nbc_count,
                    if r.passed { "ok" } else { "MISMATCH" },
                    list.join(" ")
                ));
                rows.push(json!({
                    "flat": r.flat,
                    "codim": r.codim,
                    "mobius": big(&r.mobius),
                    "nbc_count": r.nbc_count,
                    "passed": r.passed,
                    "nbc_sets": sets[&r.flat].iter().map(|s| one_based(&s.indices)).collect::<Vec<_>>(),
                }));
            }
            let counts = report.counts_by_codim();
            let passed = report.all_passed();
            match report.first_failure() {
                None => text.push_str("all flats pass\n"),
                Some(f) => text.push_str(&format!("first failure: flat {}\n", f.flat)),
            }
            let value = json!({ "flats": rows, "counts_by_codim": counts, "passed": passed });
            Ok(Outcome {
                code: if passed { 0 } else { 1 },
                stdout: render(input.json, value, text),
                stderr: String::new(),
            })
        }
        Command::Series {
            input,
            degree,
            free,
            generic,
        } => {
            let (source, s) = match (free, generic) {
                (Some(exps), _) => ("free", series::free_poincare_series(&exps, degree)),
                (None, Some(g)) => {
                    let &[n, l] = g.as_slice() else {
                        return Err(Error::Contract("--generic takes N,L".into()));
                    };
                    ("generic", series::generic_series(n, l, degree)?)
                }
                (None, None) => ("lattice", series::series_of_c(&load(&input)?, degree)),
            };
            let coeffs: Vec<Value> = s.coeffs().iter().map(big).collect();
            Ok(Outcome::ok(render(
                input.json,
                json!({ "source": source, "degree": degree, "coefficients": coeffs }),
                format!("{s}\n"),
            )))
        }
        Command::Verify {
            input,
            max_degree,
            budget,
        } => {
            let arr = load(&input)?;
            let o = Oracle::new(arr).with_budget(budget);
            Ok(report_outcome(input.json, &o.verify_all(max_degree)?))
        }
        Command::Decompose {
            input,
            tuple,
            budget,
        } => {
            let arr = load(&input)?;
            let zero_based = tuple
                .iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| Error::Contract("tuple indices are 1-based".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let o = Oracle::new(arr).with_budget(budget);
            let target = ReciprocalTuple::new(zero_based);
            let d = o.decompose(&target)?;
            let ok = d.reproduces_target(&o);
            let mut text = format!("target {} degree {}\n", target, target.degree());
            let mut terms = Vec::new();
            for t in &d.terms {
                let exps: Vec<String> = t.exponents.iter().map(ToString::to_string).collect();
                text.push_str(&format!(
                    "{} * D[{}] phi{} = 1/{} on flat {}\n",
                    t.coefficient,
                    exps.join(","),
                    t.basis_index + 1,
                    tuple_text(&t.nbc),
                    t.flat
                ));
                terms.push(json!({
                    "basis_index": t.basis_index + 1,
                    "flat": t.flat,
                    "nbc": one_based(&t.nbc),
                    "exponents": t.exponents,
                    "coefficient": t.coefficient.to_string(),
                }));
            }
            let mut directions = serde_json::Map::new();
            for (flat, dirs) in &d.directions {
                let dirs: Vec<Vec<String>> = dirs
                    .iter()
                    .map(|v| v.iter().map(ToString::to_string).collect())
                    .collect();
                directions.insert(flat.to_string(), json!(dirs));
            }
            let residue = d.residue.as_ref().map(|r| {
                r.iter()
                    .map(|(s, c)| json!({ "nbc": one_based(s), "coefficient": c.to_string() }))
                    .collect::<Vec<_>>()
            });
            if let Some(r) = &d.residue {
                let parts: Vec<String> = r
                    .iter()
                    .map(|(s, c)| format!("{}:{c}", tuple_text(s)))
                    .collect();
                text.push_str(&format!("residue {}\n", parts.join(" ")));
            }
            text.push_str(if ok { "identity verified\n" } else { "identity FAILED\n" });
            let value = json!({
                "target": one_based(target.indices()),
                "terms": terms,
                "directions": directions,
                "residue": residue,
                "verified": ok,
            });
            Ok(Outcome {
                code: if ok { 0 } else { 1 },
                stdout: render(input.json, value, text),
                stderr: String::new(),
            })
        }
    }
}

fn report_outcome(json_out: bool, r: &GradedReport) -> Outcome {
    Outcome {
        code: if r.all_passed() { 0 } else { 1 },
        stdout: render(json_out, report_json(r), report_text(r)),
        stderr: String::new(),
    }
}

fn report_text(r: &GradedReport) -> String {
    let mut text = String::from("degree dimC dimAO dimJ dimDel per-flat\n");
    for row in &r.rows {
        let flats: Vec<String> = row.per_flat.iter().map(ToString::to_string).collect();
        text.push_str(&format!(
            "{} {} {} {} {} [{}]\n",
            row.degree,
            row.dim_c,
            row.dim_ao,
            row.dim_j,
            row.dim_del_plus_c,
            flats.join(" ")
        ));
    }
    for c in &r.checks {
        text.push_str(&format!(
            "{} degree {} flat {} {}: {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.degree.map_or("-".into(), |d| d.to_string()),
            c.flat.map_or("-".into(), |f| f.to_string()),
            c.clause,
            c.detail
        ));
    }
    match r.first_failure() {
        None => text.push_str(&format!("all {} checks passed\n", r.checks.len())),
        Some(c) => text.push_str(&format!(
            "first failure: degree {} flat {} {}\n",
            c.degree.map_or("-".into(), |d| d.to_string()),
            c.flat.map_or("-".into(), |f| f.to_string()),
            c.clause
        )),
    }
    text
}

fn report_json(r: &GradedReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "degree": row.degree,
                "dim_c": row.dim_c,
                "dim_ao": row.dim_ao,
                "dim_j": row.dim_j,
                "dim_del_plus_c": row.dim_del_plus_c,
                "per_flat": row.per_flat,
            })
        })
        .collect();
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "degree": c.degree,
                "flat": c.flat,
                "clause": c.clause.name(),
                "passed": c.passed,
                "detail": c.detail,
            })
        })
        .collect();
    json!({ "rows": rows, "checks": checks, "passed": r.all_passed() })
}

//! Command-line surface for the `uea` library.
//!
//! Subcommands: `act`, `verify`, `socle`, `reduce`, `gelfand`, `twist`.
//! Exit codes: 0 on success, 1 on a mathematical failure (a verification
//! counterexample or an action undefined for the given `Q`), 2 on usage or
//! parse errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use uea::action::{act, act_parabolic, twist, Mutation};
use uea::expr::{element_to_json, parse_gl2n, parse_scalar, parse_uea, print_normal};
use uea::verify::{
    check_bracket_axiom, check_degree_contract, check_equivalence, check_gelfand_central,
    check_glemma, check_mod_leading, check_rel_operator, check_singular_submodule, reduce_to_constant,
    socle_layers, VerificationReport,
};
use uea::{Element, Error, Gl2n, Rat, RatMatrix, Spec};

#[derive(Parser)]
#[command(name = "uea", version, about = "Exact computations in the gl_2n-modules M_Q on U(gl_n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Pretty,
    Json,
}

#[derive(Args)]
struct Common {
    /// Rank n of gl_n (the module lives on U(gl_n); gl_2n indices run to 2n)
    #[arg(long)]
    n: usize,
    /// Parameter matrix Q: inline JSON (entries integers or "p/q" strings) or @file; defaults to the identity
    #[arg(long)]
    q: Option<String>,
    #[arg(long, value_enum, default_value = "pretty")]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a gl_2n element to a module vector and print the normal form
    Act {
        #[command(flatten)]
        common: Common,
        /// gl_2n element (linear combination of e[i,j], indices up to 2n)
        #[arg(long)]
        element: String,
        /// module vector, an expression in U(gl_n)
        #[arg(long)]
        vector: String,
    },
    /// Run a verification suite
    Verify {
        #[command(flatten)]
        common: Common,
        /// one of: bracket, glemma, gelfand, rel, mod, equivalence, socle, singular, all
        #[arg(long)]
        suite: String,
        /// monomial degree bound
        #[arg(long, default_value_t = 2)]
        deg: usize,
        /// power bound m for the rel/glemma suites
        #[arg(long, default_value_t = 3)]
        m: u32,
        /// order bound k for the gelfand/socle suites
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// corrupt the action formula (diagnostics; bracket suite only)
        #[arg(long)]
        mutate: Option<String>,
    },
    /// Socle layer dimensions of M_Q
    Socle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
    },
    /// Reduce a nonzero vector to a constant over Q = I (simplicity witness)
    Reduce {
        /// Rank n of gl_n
        #[arg(long)]
        n: usize,
        #[arg(long)]
        vector: String,
        #[arg(long, value_enum, default_value = "pretty")]
        output: Output,
    },
    /// The Gelfand invariant tr(F^k)
    Gelfand {
        /// Rank n of gl_n
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "pretty")]
        output: Output,
    },
    /// Twist a gl_2n element by the automorphism phi_S
    Twist {
        /// Rank n of gl_n
        #[arg(long)]
        n: usize,
        /// the n x n twisting matrix S: inline JSON or @file
        #[arg(long)]
        s: String,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "pretty")]
        output: Output,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::IndexOutOfRange { .. }
        | Error::Nonlinear
        | Error::Invalid(_) => 2,
        _ => 1,
    }
}

fn parse_matrix(text: &str, n: usize) -> Result<RatMatrix, Error> {
    let body = if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?
    } else {
        text.to_string()
    };
    let v: Value = serde_json::from_str(&body)
        .map_err(|e| Error::Invalid(format!("Q is not valid JSON: {e}")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Invalid("Q must be an array of rows".into()))?;
    if rows.len() != n {
        return Err(Error::Invalid(format!("Q must be {n}x{n}")));
    }
    let mut out = Vec::new();
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::Invalid("Q rows must be arrays".into()))?;
        if cells.len() != n {
            return Err(Error::Invalid(format!("Q must be {n}x{n}")));
        }
        let mut r = Vec::new();
        for cell in cells {
            let x: Rat = match cell {
                Value::Number(k) if k.is_i64() => {
                    parse_scalar(&k.to_string())?
                }
                Value::String(s) => parse_scalar(s)?,
                other => {
                    return Err(Error::Invalid(format!(
                        "Q entries must be integers or rational strings, got {other}"
                    )))
                }
            };
            r.push(x);
        }
        out.push(r);
    }
    Ok(RatMatrix::from_rows(out))
}

fn spec_from(common: &Common) -> Result<Spec, Error> {
    let q = match &common.q {
        Some(text) => parse_matrix(text, common.n)?,
        None => RatMatrix::identity(common.n),
    };
    Ok(Spec::new(q))
}

fn print_element(a: &Element, output: Output) {
    match output {
        Output::Pretty => println!("{}", print_normal(a)),
        Output::Json => println!("{}", element_to_json(a)),
    }
}

fn gl2n_to_string(x: &Gl2n) -> String {
    use num_traits::{One, Zero};
    use uea::scalar::Scalar;
    let two_n = 2 * x.rank();
    let mut terms = Vec::new();
    for i in 1..=two_n {
        for j in 1..=two_n {
            let c = x.matrix().get(i - 1, j - 1);
            if !c.is_zero() {
                terms.push((i, j, c.clone()));
            }
        }
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (i, j, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = Scalar::abs(c);
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(&format!("e[{i},{j}]"));
    }
    out
}

fn report_line(r: &VerificationReport) -> String {
    if r.passed() {
        format!("suite {}: PASS ({} checks)", r.suite, r.attempted)
    } else {
        let f = &r.failures[0];
        format!(
            "suite {}: FAIL ({} of {} checks; first counterexample: {} expected {} got {})",
            r.suite,
            r.failures.len(),
            r.attempted,
            f.input,
            f.expected,
            f.got
        )
    }
}

fn run_verify(
    common: &Common,
    suite: &str,
    deg: usize,
    m: u32,
    k: usize,
    mutate: Option<&str>,
) -> Result<(Vec<Value>, Vec<String>, bool), Error> {
    let n = common.n;
    let spec = spec_from(common)?;
    let mutation = match mutate {
        None => Mutation::None,
        Some(name) => {
            Mutation::parse(name).ok_or_else(|| Error::Invalid(format!("unknown mutation: {name}")))?
        }
    };
    let known = [
        "bracket",
        "glemma",
        "gelfand",
        "rel",
        "mod",
        "equivalence",
        "socle",
        "singular",
        "all",
    ];
    if !known.contains(&suite) {
        return Err(Error::Invalid(format!("unknown suite: {suite}")));
    }
    let mut jsons = Vec::new();
    let mut lines = Vec::new();
    let mut all_pass = true;
    let push = |r: VerificationReport, jsons: &mut Vec<Value>, lines: &mut Vec<String>, all_pass: &mut bool| {
        *all_pass &= r.passed();
        lines.push(report_line(&r));
        jsons.push(serde_json::to_value(&r).expect("report serializes"));
    };
    let want = |name: &str| suite == name || suite == "all";

    if want("bracket") {
        let r = check_bracket_axiom(&spec, deg, mutation, mutation != Mutation::None)?;
        push(r, &mut jsons, &mut lines, &mut all_pass);
    }
    if want("glemma") {
        push(check_glemma::<Rat>(n, m), &mut jsons, &mut lines, &mut all_pass);
    }
    if want("gelfand") {
        push(
            check_gelfand_central::<Rat>(n, k as u32),
            &mut jsons,
            &mut lines,
            &mut all_pass,
        );
    }
    if want("rel") {
        push(
            check_rel_operator::<Rat>(n, m, deg),
            &mut jsons,
            &mut lines,
            &mut all_pass,
        );
    }
    if want("mod") {
        push(check_mod_leading::<Rat>(n, deg), &mut jsons, &mut lines, &mut all_pass);
    }
    if want("equivalence") {
        let mut r = check_equivalence(&spec, deg)?;
        // fold the degree contract into the equivalence suite under `all`
        let d = check_degree_contract(&spec, deg)?;
        r.attempted += d.attempted;
        r.failures.extend(d.failures);
        push(r, &mut jsons, &mut lines, &mut all_pass);
    }
    if want("socle") {
        let r = socle_layers(&spec, k)?;
        all_pass &= r.matches_layer;
        lines.push(format!(
            "suite socle: {} (layers {:?}, cumulative {:?}, C(n^2+k-2,k-1) {:?}, formula matches the {})",
            if r.matches_layer { "PASS" } else { "FAIL" },
            r.layers,
            r.cumulative,
            r.binomial,
            if r.matches_layer {
                "layer dimensions"
            } else if r.matches_cumulative {
                "cumulative dimensions"
            } else {
                "neither interpretation"
            }
        ));
        jsons.push(serde_json::to_value(&r).expect("report serializes"));
    }
    if suite == "singular" || (suite == "all" && spec.q().is_singular()) {
        let r = check_singular_submodule(spec.q(), deg)?;
        push(r, &mut jsons, &mut lines, &mut all_pass);
    }
    Ok((jsons, lines, all_pass))
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Act {
            common,
            element,
            vector,
        } => {
            let spec = spec_from(&common)?;
            let x = parse_gl2n::<Rat>(&element, common.n)?;
            let a = parse_uea::<Rat>(&vector, common.n)?;
            let parabolic = x.block_c().is_zero() && x.block_d().is_zero();
            let result = if parabolic {
                act_parabolic(&spec, &x, &a)?
            } else {
                act(&spec, &x, &a)?
            };
            print_element(&result, common.output);
            Ok(true)
        }
        Command::Verify {
            common,
            suite,
            deg,
            m,
            k,
            mutate,
        } => {
            let (jsons, lines, all_pass) =
                run_verify(&common, &suite, deg, m, k, mutate.as_deref())?;
            match common.output {
                Output::Pretty => {
                    for line in lines {
                        println!("{line}");
                    }
                }
                Output::Json => println!("{}", Value::Array(jsons)),
            }
            Ok(all_pass)
        }
        Command::Socle { common, k } => {
            let spec = spec_from(&common)?;
            let r = socle_layers(&spec, k)?;
            match common.output {
                Output::Pretty => {
                    println!("layers {:?}", r.layers);
                    println!("cumulative {:?}", r.cumulative);
                    println!("C(n^2+k-2,k-1) {:?}", r.binomial);
                    println!(
                        "formula matches: {}",
                        if r.matches_layer {
                            "layer dimensions"
                        } else if r.matches_cumulative {
                            "cumulative dimensions"
                        } else {
                            "neither interpretation"
                        }
                    );
                }
                Output::Json => {
                    println!("{}", serde_json::to_value(&r).expect("report serializes"))
                }
            }
            Ok(true)
        }
        Command::Reduce { n, vector, output } => {
            let f = parse_uea::<Rat>(&vector, n)?;
            let (c, word) = reduce_to_constant(&f)?;
            match output {
                Output::Pretty => {
                    println!("scalar: {c}");
                    println!("word: {word}");
                }
                Output::Json => println!("{}", json!({ "scalar": c.to_string(), "word": word })),
            }
            Ok(true)
        }
        Command::Gelfand { n, k, output } => {
            if k < 1 {
                return Err(Error::Invalid("k >= 1 required".into()));
            }
            let g = uea::matrix::gelfand::<Rat>(n, k);
            print_element(&g, output);
            Ok(true)
        }
        Command::Twist {
            n,
            s,
            element,
            output,
        } => {
            let s_mat = parse_matrix(&s, n)?;
            let x = parse_gl2n::<Rat>(&element, n)?;
            let y = twist(&s_mat, &x)?;
            match output {
                Output::Pretty => println!("{}", gl2n_to_string(&y)),
                Output::Json => {
                    let two_n = 2 * n;
                    let rows: Vec<Vec<String>> = (0..two_n)
                        .map(|i| (0..two_n).map(|j| y.matrix().get(i, j).to_string()).collect())
                        .collect();
                    println!("{}", json!(rows));
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

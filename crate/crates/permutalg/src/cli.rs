//! Command-line surface.
//!
//! Exit codes: 0 when the command succeeds (and any checked property holds),
//! 1 when a checked property fails (trace test, form verification), 2 for
//! usage or input errors. `diagnose` reports without judging and never
//! exits 1.

use crate::algebra::{AlgebraDescriptor, Element, LinearMap};
use crate::clifford::{canonical_form, generate, CliffordSignature};
use crate::error::Error;
use crate::frobenius::{
    associative_form_space, frobenius_check, invert_form, is_nondegenerate, nondegenerate_witness,
    trace_condition, BilinearForm, WitnessOutcome,
};
use crate::io::{
    diagnose, parse_algebra_file, parse_form_file, parse_matrix_file, render_algebra_file,
    render_form_file, render_report, render_table,
};
use crate::linalg::parse_rational;
use crate::permute::{permute_all, permute_raw, permute_tensorial, Convention, S3};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

const USAGE: &str = "\
usage: permutalg <command> [options]

commands:
  gen-clifford P Q [--out DIR]
      Generate Cl(P,Q) as cl_P_Q.alg plus its diagonal form cl_P_Q.form.
  table FILE
      Print the multiplication table.
  opposite FILE [--output PATH]
      Write the opposite algebra (default FILE stem + .op.alg).
  permute FILE --sigma S --convention raw|tensor [--form FFILE] [--output PATH]
      Write one slot-permuted algebra. S is one of id (12) (13) (23) (123) (132).
  permute-all FILE --convention raw|tensor [--form FFILE] [--out DIR]
      Write all six permuted algebras and print the duplication report.
  forms FILE
      Solve for all associative bilinear forms and search for a
      nondegenerate witness.
  check-frobenius FILE FFILE
      Exit 1 unless the form is associative for the algebra and nondegenerate.
  trace-test FILE [--max-power K]
      Mixed trace necessary condition; exit 1 with a witness on failure.
  diagnose FILE [--form FFILE] [--max-power K] [--output PATH]
      Print the full diagnostics report (never exits 1).
  unitalize FILE --at ELEM [--output PATH]
      Unitalization isotope at ELEM, e.g. --at E or --at E=1,I=-1/2.
  isotope FILE --f MFILE --g MFILE --h MFILE [--output PATH]
      Isotope by three invertible maps given as .form-format matrix files.
";

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

type CliResult = Result<i32, Failure>;

/// Writes to stdout, treating a closed pipe like conventional line tools:
/// stop quietly with a success exit instead of panicking.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if std::io::stdout().write_fmt(args).is_err() {
        std::process::exit(0);
    }
}

macro_rules! say {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

macro_rules! sayln {
    () => { emit(format_args!("\n")) };
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

pub fn run_cli<I>(args: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let args: Vec<String> = args.into_iter().collect();
    match dispatch(&args) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            eprintln!();
            eprint!("{USAGE}");
            2
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn dispatch(args: &[String]) -> CliResult {
    let Some(command) = args.first() else {
        return Err(Failure::Usage("missing command".into()));
    };
    let rest = &args[1..];
    match command.as_str() {
        "gen-clifford" => cmd_gen_clifford(rest),
        "table" => cmd_table(rest),
        "opposite" => cmd_opposite(rest),
        "permute" => cmd_permute(rest),
        "permute-all" => cmd_permute_all(rest),
        "forms" => cmd_forms(rest),
        "check-frobenius" => cmd_check_frobenius(rest),
        "trace-test" => cmd_trace_test(rest),
        "diagnose" => cmd_diagnose(rest),
        "unitalize" => cmd_unitalize(rest),
        "isotope" => cmd_isotope(rest),
        "help" | "--help" | "-h" => {
            say!("{USAGE}");
            Ok(0)
        }
        other => Err(Failure::Usage(format!("unknown command {other:?}"))),
    }
}

struct Parsed {
    positional: Vec<String>,
    options: BTreeMap<String, String>,
}

fn parse_args(args: &[String], allowed: &[&str]) -> Result<Parsed, Failure> {
    let mut positional = Vec::new();
    let mut options = BTreeMap::new();
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        if let Some(name) = arg.strip_prefix("--") {
            if !allowed.contains(&name) {
                return Err(Failure::Usage(format!("unknown option --{name}")));
            }
            let value = iter
                .next()
                .ok_or_else(|| Failure::Usage(format!("option --{name} needs a value")))?;
            if options.insert(name.to_string(), value.clone()).is_some() {
                return Err(Failure::Usage(format!("option --{name} given twice")));
            }
        } else {
            positional.push(arg.clone());
        }
    }
    Ok(Parsed {
        positional,
        options,
    })
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &str) -> Result<AlgebraDescriptor, Failure> {
    parse_algebra_file(&read_file(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load_form(path: &str) -> Result<BilinearForm, Failure> {
    parse_form_file(&read_file(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load_map(path: &str, dim: usize) -> Result<LinearMap, Failure> {
    let matrix =
        parse_matrix_file(&read_file(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    if matrix.rows() != dim {
        return Err(Failure::Input(format!(
            "{path}: map is {}x{} but the algebra has dimension {dim}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    LinearMap::new(matrix).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn output_path(options: &Parsed, input: &str, suffix: &str) -> PathBuf {
    match options.options.get("output") {
        Some(p) => PathBuf::from(p),
        None => {
            let stem = input.strip_suffix(".alg").unwrap_or(input);
            PathBuf::from(format!("{stem}.{suffix}.alg"))
        }
    }
}

fn sigma_token(sigma: S3) -> &'static str {
    match sigma {
        S3::Id => "id",
        S3::Swap12 => "12",
        S3::Swap13 => "13",
        S3::Swap23 => "23",
        S3::Cycle123 => "123",
        S3::Cycle132 => "132",
    }
}

/// Element syntax: comma-separated `label=value` pairs, or a bare label
/// meaning coefficient 1.
fn parse_element_arg(alg: &AlgebraDescriptor, text: &str) -> Result<Element, Failure> {
    let mut e = Element::zero(alg.dim());
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(Failure::Input(format!(
                "empty component in element {text:?}"
            )));
        }
        let (label, value) = match part.split_once('=') {
            Some((l, v)) => (l.trim(), Some(v.trim())),
            None => (part, None),
        };
        let idx = alg
            .basis_labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| {
                Failure::Input(format!(
                    "unknown basis label {label:?}; expected one of {}",
                    alg.basis_labels().join(", ")
                ))
            })?;
        let coeff = match value {
            None => crate::linalg::rat(1),
            Some(v) => parse_rational(v)
                .map_err(|_| Failure::Input(format!("malformed coefficient {v:?} in {text:?}")))?,
        };
        e.coords[idx] = coeff;
    }
    Ok(e)
}

fn require_positional<'a>(
    parsed: &'a Parsed,
    count: usize,
    names: &str,
) -> Result<&'a [String], Failure> {
    if parsed.positional.len() != count {
        return Err(Failure::Usage(format!(
            "expected arguments: {names} (got {})",
            parsed.positional.len()
        )));
    }
    Ok(&parsed.positional)
}

fn cmd_gen_clifford(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["out"])?;
    let pos = require_positional(&parsed, 2, "P Q")?;
    let parse_count = |s: &str| -> Result<usize, Failure> {
        s.parse()
            .map_err(|_| Failure::Usage(format!("malformed generator count {s:?}")))
    };
    let sig = CliffordSignature {
        p: parse_count(&pos[0])?,
        q: parse_count(&pos[1])?,
    };
    let alg = generate(sig).map_err(|e| Failure::Input(e.to_string()))?;
    let form = canonical_form(sig).expect("same bound");
    let dir = PathBuf::from(parsed.options.get("out").map_or(".", String::as_str));
    let alg_path = dir.join(format!("cl_{}_{}.alg", sig.p, sig.q));
    let form_path = dir.join(format!("cl_{}_{}.form", sig.p, sig.q));
    write_file(&alg_path, &render_algebra_file(&alg))?;
    write_file(&form_path, &render_form_file(&form))?;
    sayln!("wrote {}", alg_path.display());
    sayln!("wrote {}", form_path.display());
    Ok(0)
}

fn cmd_table(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &[])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    say!("{}", render_table(&alg));
    Ok(0)
}

fn cmd_opposite(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["output"])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let path = output_path(&parsed, &pos[0], "op");
    write_file(&path, &render_algebra_file(&alg.opposite()))?;
    sayln!("wrote {}", path.display());
    Ok(0)
}

fn permutation_inputs(
    parsed: &Parsed,
    alg: &AlgebraDescriptor,
) -> Result<(Convention, Option<crate::frobenius::FrobeniusPair>), Failure> {
    let convention = match parsed.options.get("convention") {
        Some(c) => Convention::parse(c).map_err(|e| Failure::Usage(e.to_string()))?,
        None => return Err(Failure::Usage("missing --convention raw|tensor".into())),
    };
    let pair = match (convention, parsed.options.get("form")) {
        (Convention::RawCube, _) => None,
        (Convention::Tensorial, None) => {
            return Err(Failure::Usage(
                "the tensor convention requires --form FFILE".into(),
            ))
        }
        (Convention::Tensorial, Some(path)) => {
            let form = load_form(path)?;
            if form.dim() != alg.dim() {
                return Err(Failure::Input(format!(
                    "{path}: form has dimension {} but the algebra has dimension {}",
                    form.dim(),
                    alg.dim()
                )));
            }
            if !frobenius_check(alg, &form) {
                return Err(Failure::Input(format!("{path}: {}", Error::UnverifiedPair)));
            }
            let pair = invert_form(&form).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
            Some(pair)
        }
    };
    Ok((convention, pair))
}

fn cmd_permute(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["sigma", "convention", "form", "output"])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let sigma = match parsed.options.get("sigma") {
        Some(s) => S3::parse(s).map_err(|e| Failure::Usage(e.to_string()))?,
        None => return Err(Failure::Usage("missing --sigma".into())),
    };
    let (convention, pair) = permutation_inputs(&parsed, &alg)?;
    let permuted = match convention {
        Convention::RawCube => permute_raw(&alg, sigma),
        Convention::Tensorial => permute_tensorial(&alg, pair.as_ref().unwrap(), sigma)
            .map_err(|e| Failure::Input(e.to_string()))?,
    };
    let suffix = format!("{}-{}", convention.name(), sigma_token(sigma));
    let path = output_path(&parsed, &pos[0], &suffix);
    write_file(&path, &render_algebra_file(&permuted))?;
    sayln!("wrote {}", path.display());
    Ok(0)
}

fn cmd_permute_all(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["convention", "form", "out"])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let (convention, pair) = permutation_inputs(&parsed, &alg)?;
    let family =
        permute_all(&alg, pair.as_ref(), convention).map_err(|e| Failure::Input(e.to_string()))?;
    let dir = PathBuf::from(parsed.options.get("out").map_or(".", String::as_str));
    let stem = {
        let name = Path::new(&pos[0])
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_else(|| pos[0].clone());
        name.strip_suffix(".alg").unwrap_or(&name).to_string()
    };
    for (sigma, permuted) in &family.entries {
        let path = dir.join(format!(
            "{stem}.{}-{}.alg",
            convention.name(),
            sigma_token(*sigma)
        ));
        write_file(&path, &render_algebra_file(permuted))?;
        sayln!("wrote {}", path.display());
    }
    sayln!("distinct cubes: {}", family.distinct_cubes());
    for group in &family.duplicate_groups {
        let names: Vec<&str> = group.iter().map(|s| s.name()).collect();
        sayln!("identical: {}", names.join(" "));
    }
    Ok(0)
}

fn cmd_forms(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &[])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let space = associative_form_space(&alg);
    sayln!("form space dimension: {}", space.dim());
    for (idx, b) in space.basis().iter().enumerate() {
        sayln!("basis form {}:", idx + 1);
        for r in 0..b.dim() {
            let row: Vec<String> = b.matrix().row(r).iter().map(|v| v.to_string()).collect();
            sayln!("  {}", row.join(" "));
        }
    }
    match nondegenerate_witness(&space) {
        WitnessOutcome::Found { pair, coefficients } => {
            let coeffs: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
            sayln!(
                "nondegenerate witness found (coefficients {})",
                coeffs.join(" ")
            );
            for r in 0..pair.form().dim() {
                let row: Vec<String> = pair
                    .form()
                    .matrix()
                    .row(r)
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                sayln!("  {}", row.join(" "));
            }
        }
        WitnessOutcome::NoneDefinitive => {
            sayln!("nondegenerate witness: none (the form space is zero)");
        }
        WitnessOutcome::Inconclusive {
            grid_points,
            random_trials,
        } => {
            sayln!(
                "nondegenerate witness: none found after {grid_points} grid points and {random_trials} random trials (inconclusive)"
            );
        }
    }
    Ok(0)
}

fn cmd_check_frobenius(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &[])?;
    let pos = require_positional(&parsed, 2, "FILE FFILE")?;
    let alg = load_algebra(&pos[0])?;
    let form = load_form(&pos[1])?;
    if form.dim() != alg.dim() {
        return Err(Failure::Input(format!(
            "{}: form has dimension {} but the algebra has dimension {}",
            pos[1],
            form.dim(),
            alg.dim()
        )));
    }
    let associative = frobenius_check(&alg, &form);
    let nondegenerate = is_nondegenerate(&form);
    sayln!("associative: {}", if associative { "yes" } else { "no" });
    sayln!(
        "nondegenerate: {}",
        if nondegenerate { "yes" } else { "no" }
    );
    Ok(if associative && nondegenerate { 0 } else { 1 })
}

fn parse_max_power(parsed: &Parsed) -> Result<usize, Failure> {
    match parsed.options.get("max-power") {
        None => Ok(3),
        Some(s) => {
            let k: usize = s
                .parse()
                .map_err(|_| Failure::Usage(format!("malformed --max-power {s:?}")))?;
            if k == 0 {
                return Err(Failure::Usage("--max-power must be at least 1".into()));
            }
            Ok(k)
        }
    }
}

fn cmd_trace_test(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["max-power"])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let max_power = parse_max_power(&parsed)?;
    let verdict = trace_condition(&alg, max_power);
    if verdict.passed {
        sayln!("trace test passed up to power {max_power}");
        Ok(0)
    } else {
        let w = verdict.witness.expect("failed verdicts carry a witness");
        let tuple: Vec<&str> = w.tuple.iter().map(|&i| alg.label(i)).collect();
        sayln!(
            "trace test FAILED at power {} on ({}); left trace {}, right trace {}",
            w.power,
            tuple.join(", "),
            w.left_trace,
            w.right_trace
        );
        Ok(1)
    }
}

fn cmd_diagnose(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["form", "max-power", "output"])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let form = match parsed.options.get("form") {
        None => None,
        Some(path) => {
            let form = load_form(path)?;
            if form.dim() != alg.dim() {
                return Err(Failure::Input(format!(
                    "{path}: form has dimension {} but the algebra has dimension {}",
                    form.dim(),
                    alg.dim()
                )));
            }
            Some(form)
        }
    };
    let max_power = parse_max_power(&parsed)?;
    let report = diagnose(&alg, form.as_ref(), max_power);
    let text = render_report(&report);
    if let Some(path) = parsed.options.get("output") {
        write_file(Path::new(path), &text)?;
        sayln!("wrote {path}");
    } else {
        say!("{text}");
    }
    Ok(0)
}

fn cmd_unitalize(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["at", "output"])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let at = parsed
        .options
        .get("at")
        .ok_or_else(|| Failure::Usage("missing --at ELEM".into()))?;
    let e = parse_element_arg(&alg, at)?;
    let unital =
        crate::diagnostics::unitalize(&alg, &e).map_err(|e| Failure::Input(e.to_string()))?;
    let path = output_path(&parsed, &pos[0], "unital");
    write_file(&path, &render_algebra_file(&unital))?;
    sayln!("wrote {}", path.display());
    Ok(0)
}

fn cmd_isotope(args: &[String]) -> CliResult {
    let parsed = parse_args(args, &["f", "g", "h", "output"])?;
    let pos = require_positional(&parsed, 1, "FILE")?;
    let alg = load_algebra(&pos[0])?;
    let mut maps = Vec::new();
    for key in ["f", "g", "h"] {
        let path = parsed
            .options
            .get(key)
            .ok_or_else(|| Failure::Usage(format!("missing --{key} MFILE")))?;
        maps.push(load_map(path, alg.dim())?);
    }
    let result = alg
        .isotope(&maps[0], &maps[1], &maps[2])
        .map_err(|e| Failure::Input(e.to_string()))?;
    let path = output_path(&parsed, &pos[0], "isotope");
    write_file(&path, &render_algebra_file(&result))?;
    sayln!("wrote {}", path.display());
    Ok(0)
}

//! File formats, table rendering, and the aggregated diagnostics report.
//!
//! Three text formats, all UTF-8, all versioned by their first line:
//!
//! * `.alg` — `permutalg.alg v1`: name, dimension, basis labels and the full
//!   cube of structure constants, one line per basis pair.
//! * `.form` — `permutalg.form v1`: a square matrix of rationals. The same
//!   format doubles as a generic matrix file for isotopy maps.
//! * `.report` — `permutalg.report v1`: write-only diagnostics output with a
//!   fixed field order.
//!
//! Rationals are serialized as `p` or `p/q` with `q > 0` in lowest terms.
//! Saving is canonical: loading a saved file and saving again reproduces the
//! bytes exactly.

use crate::algebra::{AlgebraDescriptor, Element, StructureCube};
use crate::diagnostics::{
    cubes_associate, find_identities, is_flexible, nuclei, square_form, IdentityReport,
    NucleusBases, PropertyVerdict, SquareForm,
};
use crate::error::Error;
use crate::frobenius::{
    associative_form_space, frobenius_check, is_nondegenerate, trace_condition, BilinearForm,
    TraceVerdict, WitnessOutcome,
};
use crate::linalg::{parse_rational, Matrix, Rational};
use num_traits::{One, Zero};
use std::fmt::Write as _;

pub const ALG_HEADER: &str = "permutalg.alg v1";
pub const FORM_HEADER: &str = "permutalg.form v1";
pub const REPORT_HEADER: &str = "permutalg.report v1";

/// Renders a coordinate vector as a signed combination of basis labels,
/// e.g. `0`, `E`, `-K`, `2I`, `1/2E - J`.
pub fn render_linear_combo(coords: &[Rational], labels: &[String]) -> String {
    assert_eq!(coords.len(), labels.len());
    let mut out = String::new();
    for (c, label) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let negative = c < &Rational::zero();
        let magnitude = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !magnitude.is_one() {
            out.push_str(&magnitude.to_string());
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Renders an element of an algebra against that algebra's labels.
pub fn render_element(alg: &AlgebraDescriptor, e: &Element) -> String {
    render_linear_combo(&e.coords, alg.basis_labels())
}

// ---------------------------------------------------------------------------
// Multiplication tables
// ---------------------------------------------------------------------------

/// Renders the multiplication table: rows are left factors, columns right
/// factors, every cell a signed linear combination. Column-aligned with no
/// trailing whitespace; deterministic.
pub fn render_table(alg: &AlgebraDescriptor) -> String {
    let n = alg.dim();
    let labels = alg.basis_labels();
    let cells: Vec<Vec<String>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| render_linear_combo(alg.cube().product_row(i, j), labels))
                .collect()
        })
        .collect();
    let mut col_width = vec![0usize; n];
    for (j, w) in col_width.iter_mut().enumerate() {
        *w = labels[j].chars().count();
        for row in &cells {
            *w = (*w).max(row[j].chars().count());
        }
    }
    let row_width = labels
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(1)
        .max(1);
    let pad = |s: &str, w: usize| -> String {
        let mut t = s.to_string();
        while t.chars().count() < w {
            t.push(' ');
        }
        t
    };
    let mut out = String::new();
    let mut header = pad("*", row_width);
    header.push_str(" |");
    for j in 0..n {
        header.push(' ');
        header.push_str(&pad(&labels[j], col_width[j]));
    }
    out.push_str(header.trim_end());
    out.push('\n');
    let total: usize = col_width.iter().map(|w| w + 1).sum();
    out.push_str(&"-".repeat(row_width + 1));
    out.push('+');
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for i in 0..n {
        let mut line = pad(&labels[i], row_width);
        line.push_str(" |");
        for j in 0..n {
            line.push(' ');
            line.push_str(&pad(&cells[i][j], col_width[j]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Algebra and form files
// ---------------------------------------------------------------------------

/// Canonical text serialization of an algebra descriptor.
pub fn render_algebra_file(alg: &AlgebraDescriptor) -> String {
    let n = alg.dim();
    let mut out = String::new();
    writeln!(out, "{ALG_HEADER}").unwrap();
    writeln!(out, "name {}", alg.name()).unwrap();
    writeln!(out, "dim {n}").unwrap();
    writeln!(out, "basis {}", alg.basis_labels().join(" ")).unwrap();
    writeln!(out, "cube").unwrap();
    for i in 0..n {
        for j in 0..n {
            let row: Vec<String> = alg
                .cube()
                .product_row(i, j)
                .iter()
                .map(Rational::to_string)
                .collect();
            writeln!(out, "{} {} : {}", i + 1, j + 1, row.join(" ")).unwrap();
        }
    }
    writeln!(out, "end").unwrap();
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next significant line with its 1-based number; blank lines and `#`
    /// comments are skipped.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.inner.by_ref() {
            let line = raw.trim_end();
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            return Some((idx + 1, line));
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), Error> {
        self.next().ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn parse_field<'a>(line: &'a str, key: &str, line_no: usize) -> Result<&'a str, Error> {
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected `{key} ...`, found {line:?}"),
        })
}

fn parse_rational_at(s: &str, line: usize) -> Result<Rational, Error> {
    parse_rational(s).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => other,
    })
}

/// Parses the `.alg` format back into a descriptor.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraDescriptor, Error> {
    let mut lines = Lines::new(text);
    let (no, header) = lines.expect("header")?;
    if header != ALG_HEADER {
        return Err(Error::Parse {
            line: no,
            message: format!("expected header {ALG_HEADER:?}, found {header:?}"),
        });
    }
    let (no, line) = lines.expect("name")?;
    let name = parse_field(line, "name", no)?.to_string();
    let (no, line) = lines.expect("dim")?;
    let dim_str = parse_field(line, "dim", no)?;
    let n: usize = dim_str.parse().map_err(|_| Error::Parse {
        line: no,
        message: format!("malformed dimension {dim_str:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: no,
            message: "dimension must be at least 1".into(),
        });
    }
    let (no, line) = lines.expect("basis")?;
    let labels: Vec<String> = parse_field(line, "basis", no)?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if labels.len() != n {
        return Err(Error::Parse {
            line: no,
            message: format!("expected {n} basis labels, found {}", labels.len()),
        });
    }
    let (no, line) = lines.expect("cube")?;
    if line != "cube" {
        return Err(Error::Parse {
            line: no,
            message: format!("expected `cube`, found {line:?}"),
        });
    }
    let mut entries = vec![Rational::zero(); n * n * n];
    let mut seen = vec![false; n * n];
    for _ in 0..n * n {
        let (no, line) = lines.expect("cube row")?;
        let (head, values) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: no,
            message: format!("expected `i j : coefficients`, found {line:?}"),
        })?;
        let idx: Vec<&str> = head.split_whitespace().collect();
        if idx.len() != 2 {
            return Err(Error::Parse {
                line: no,
                message: format!("expected two indices before `:`, found {head:?}"),
            });
        }
        let parse_index = |s: &str| -> Result<usize, Error> {
            let v: usize = s.parse().map_err(|_| Error::Parse {
                line: no,
                message: format!("malformed index {s:?}"),
            })?;
            if v == 0 || v > n {
                return Err(Error::Parse {
                    line: no,
                    message: format!("index {v} out of range 1..={n}"),
                });
            }
            Ok(v - 1)
        };
        let i = parse_index(idx[0])?;
        let j = parse_index(idx[1])?;
        if seen[i * n + j] {
            return Err(Error::Parse {
                line: no,
                message: format!("duplicate cube row {} {}", i + 1, j + 1),
            });
        }
        seen[i * n + j] = true;
        let coeffs: Vec<&str> = values.split_whitespace().collect();
        if coeffs.len() != n {
            return Err(Error::Parse {
                line: no,
                message: format!("expected {n} coefficients, found {}", coeffs.len()),
            });
        }
        for (k, c) in coeffs.iter().enumerate() {
            entries[(i * n + j) * n + k] = parse_rational_at(c, no)?;
        }
    }
    let (no, line) = lines.expect("end")?;
    if line != "end" {
        return Err(Error::Parse {
            line: no,
            message: format!("expected `end`, found {line:?}"),
        });
    }
    let cube = {
        let entries = entries;
        StructureCube::from_fn(n, |i, j, k| entries[(i * n + j) * n + k].clone())
    };
    AlgebraDescriptor::new(name, labels, cube).map_err(|e| match e {
        Error::InvalidDescriptor(message) => Error::Parse { line: 0, message },
        other => other,
    })
}

/// Canonical text serialization of a square matrix (used for `.form` files
/// and for isotopy map files).
pub fn render_matrix_file(m: &Matrix) -> String {
    let mut out = String::new();
    writeln!(out, "{FORM_HEADER}").unwrap();
    writeln!(out, "dim {}", m.rows()).unwrap();
    writeln!(out, "entries").unwrap();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(Rational::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    writeln!(out, "end").unwrap();
    out
}

pub fn render_form_file(form: &BilinearForm) -> String {
    render_matrix_file(form.matrix())
}

/// Parses the `.form` format as a square matrix.
pub fn parse_matrix_file(text: &str) -> Result<Matrix, Error> {
    let mut lines = Lines::new(text);
    let (no, header) = lines.expect("header")?;
    if header != FORM_HEADER {
        return Err(Error::Parse {
            line: no,
            message: format!("expected header {FORM_HEADER:?}, found {header:?}"),
        });
    }
    let (no, line) = lines.expect("dim")?;
    let dim_str = parse_field(line, "dim", no)?;
    let n: usize = dim_str.parse().map_err(|_| Error::Parse {
        line: no,
        message: format!("malformed dimension {dim_str:?}"),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: no,
            message: "dimension must be at least 1".into(),
        });
    }
    let (no, line) = lines.expect("entries")?;
    if line != "entries" {
        return Err(Error::Parse {
            line: no,
            message: format!("expected `entries`, found {line:?}"),
        });
    }
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines.expect("matrix row")?;
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n {
            return Err(Error::Parse {
                line: no,
                message: format!("expected {n} entries, found {}", cells.len()),
            });
        }
        let mut row = Vec::with_capacity(n);
        for c in cells {
            row.push(parse_rational_at(c, no)?);
        }
        rows.push(row);
    }
    let (no, line) = lines.expect("end")?;
    if line != "end" {
        return Err(Error::Parse {
            line: no,
            message: format!("expected `end`, found {line:?}"),
        });
    }
    Matrix::from_rows(rows)
}

pub fn parse_form_file(text: &str) -> Result<BilinearForm, Error> {
    BilinearForm::new(parse_matrix_file(text)?)
}

// ---------------------------------------------------------------------------
// Diagnostics report
// ---------------------------------------------------------------------------

/// Verification outcome for a user-supplied form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GivenFormCheck {
    pub passes: bool,
    pub nondegenerate: bool,
}

/// The full diagnostic battery for one algebra.
#[derive(Debug, Clone)]
pub struct DiagnosticsReport {
    pub algebra_name: String,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub form_space_dim: usize,
    pub witness: WitnessOutcome,
    pub given_form: Option<GivenFormCheck>,
    pub trace: TraceVerdict,
    pub identities: IdentityReport,
    pub nuclei: NucleusBases,
    pub flexible: PropertyVerdict,
    pub cubes: PropertyVerdict,
    pub square: Option<SquareForm>,
}

/// Runs every diagnostic on the algebra. The optional form is verified and
/// reported but does not influence the other sections.
pub fn diagnose(
    alg: &AlgebraDescriptor,
    given_form: Option<&BilinearForm>,
    max_power: usize,
) -> DiagnosticsReport {
    let space = associative_form_space(alg);
    let witness = crate::frobenius::nondegenerate_witness(&space);
    let given_form = given_form.map(|form| GivenFormCheck {
        passes: frobenius_check(alg, form),
        nondegenerate: is_nondegenerate(form),
    });
    DiagnosticsReport {
        algebra_name: alg.name().to_string(),
        dim: alg.dim(),
        basis_labels: alg.basis_labels().to_vec(),
        form_space_dim: space.dim(),
        witness,
        given_form,
        trace: trace_condition(alg, max_power),
        identities: find_identities(alg),
        nuclei: nuclei(alg),
        flexible: is_flexible(alg),
        cubes: cubes_associate(alg),
        square: square_form(alg),
    }
}

fn write_matrix_block(out: &mut String, m: &Matrix) {
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(Rational::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
}

/// Serializes a report with a fixed section and key order.
pub fn render_report(report: &DiagnosticsReport) -> String {
    let labels = &report.basis_labels;
    let combo = |e: &Element| render_linear_combo(&e.coords, labels);
    let mut out = String::new();
    writeln!(out, "{REPORT_HEADER}").unwrap();
    writeln!(out, "algebra {}", report.algebra_name).unwrap();
    writeln!(out, "dim {}", report.dim).unwrap();
    writeln!(out, "basis {}", labels.join(" ")).unwrap();

    writeln!(out, "\n[frobenius]").unwrap();
    writeln!(out, "form-space-dim {}", report.form_space_dim).unwrap();
    match &report.witness {
        WitnessOutcome::Found { pair, coefficients } => {
            writeln!(out, "witness found").unwrap();
            let coeffs: Vec<String> = coefficients.iter().map(Rational::to_string).collect();
            writeln!(out, "witness-coefficients {}", coeffs.join(" ")).unwrap();
            writeln!(out, "witness-form").unwrap();
            write_matrix_block(&mut out, pair.form().matrix());
            writeln!(out, "end").unwrap();
        }
        WitnessOutcome::NoneDefinitive => {
            writeln!(out, "witness none-definitive").unwrap();
        }
        WitnessOutcome::Inconclusive {
            grid_points,
            random_trials,
        } => {
            writeln!(
                out,
                "witness none-after-search grid-points={grid_points} random-trials={random_trials}"
            )
            .unwrap();
        }
    }
    if let Some(check) = &report.given_form {
        writeln!(out, "\n[given-form]").unwrap();
        writeln!(
            out,
            "associative {}",
            if check.passes { "yes" } else { "no" }
        )
        .unwrap();
        writeln!(
            out,
            "nondegenerate {}",
            if check.nondegenerate { "yes" } else { "no" }
        )
        .unwrap();
    }

    writeln!(out, "\n[trace]").unwrap();
    writeln!(out, "max-power {}", report.trace.max_power_checked).unwrap();
    writeln!(
        out,
        "passed {}",
        if report.trace.passed { "yes" } else { "no" }
    )
    .unwrap();
    if let Some(w) = &report.trace.witness {
        let tuple: Vec<String> = w.tuple.iter().map(|&i| labels[i].clone()).collect();
        writeln!(out, "witness-power {}", w.power).unwrap();
        writeln!(out, "witness-tuple {}", tuple.join(" ")).unwrap();
        writeln!(out, "left-trace {}", w.left_trace).unwrap();
        writeln!(out, "right-trace {}", w.right_trace).unwrap();
    }

    writeln!(out, "\n[identities]").unwrap();
    let write_side = |out: &mut String,
                      key: &str,
                      sol: &Option<crate::diagnostics::IdentitySolutions>| {
        match sol {
            None => writeln!(out, "{key} none").unwrap(),
            Some(s) => {
                writeln!(out, "{key} {}", combo(&s.particular)).unwrap();
                writeln!(out, "{key}-solution-dim {}", s.kernel.len()).unwrap();
                for v in &s.kernel {
                    writeln!(out, "{key}-kernel {}", combo(v)).unwrap();
                }
            }
        }
    };
    write_side(&mut out, "left", &report.identities.left);
    write_side(&mut out, "right", &report.identities.right);
    match &report.identities.two_sided {
        None => writeln!(out, "two-sided none").unwrap(),
        Some(e) => writeln!(out, "two-sided {}", combo(e)).unwrap(),
    }

    writeln!(out, "\n[nuclei]").unwrap();
    let write_basis = |out: &mut String, key: &str, basis: &[Element]| {
        writeln!(out, "{key}-dim {}", basis.len()).unwrap();
        for v in basis {
            writeln!(out, "{key}-basis {}", combo(v)).unwrap();
        }
    };
    write_basis(&mut out, "left", &report.nuclei.left);
    write_basis(&mut out, "middle", &report.nuclei.middle);
    write_basis(&mut out, "right", &report.nuclei.right);
    write_basis(&mut out, "nucleus", &report.nuclei.nucleus);

    let write_verdict = |out: &mut String, section: &str, v: &PropertyVerdict| {
        writeln!(out, "\n[{section}]").unwrap();
        writeln!(out, "holds {}", if v.holds { "yes" } else { "no" }).unwrap();
        if let Some(w) = &v.witness {
            let triple: Vec<String> = w.triple.iter().map(|&i| labels[i].clone()).collect();
            writeln!(out, "witness-triple {}", triple.join(" ")).unwrap();
            writeln!(out, "witness-value {}", combo(&w.value)).unwrap();
        }
    };
    write_verdict(&mut out, "flexible", &report.flexible);
    write_verdict(&mut out, "cube-association", &report.cubes);

    writeln!(out, "\n[square-form]").unwrap();
    match &report.square {
        None => writeln!(out, "found no").unwrap(),
        Some(sf) => {
            writeln!(out, "found yes").unwrap();
            writeln!(out, "center {}", combo(&sf.center)).unwrap();
            writeln!(out, "q").unwrap();
            write_matrix_block(&mut out, &sf.q);
            writeln!(out, "end").unwrap();
        }
    }
    out
}

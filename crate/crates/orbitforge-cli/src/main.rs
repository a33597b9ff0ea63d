use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbitforge::actions::{AlgebraElement, DualAlgebraElement, GroupKind};
use orbitforge::classify::{
    adjoint_to_delta, bijected_adjoint, bijected_coadjoint, classify_adjoint, classify_coadjoint, classify_delta,
    coadjoint_to_delta, e13_row_of, e13_table, enumerate_hierarchy, E13Row, HierarchyNode, OrbitLabel,
};
use orbitforge::flag::{compute_flag, quotient_form, quotient_forms, QuotientForm};
use orbitforge::linalg::{format_scalar, serde_rational, Matrix, Scalar, Vector};
use orbitforge::verify::{run_suites, zigzag_certificate, Report, ZigzagCertificate};
use orbitforge::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "orbitforge",
    version,
    about = "Exact adjoint and coadjoint orbit classification for affine and Poincaré groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit label of an adjoint element {"omega": [[..]], "v": [..]}
    ClassifyAdjoint(ElementArgs),
    /// Orbit label of a coadjoint element {"L": [[..]], "p": [..]}
    ClassifyCoadjoint(ElementArgs),
    /// Orbit label of a point {"omega": [[..]], "p": [..]} with ω*p = 0
    ClassifyDelta(ElementArgs),
    /// The flag ker ω* ⊃ E_1 ⊃ … of {"omega": [[..]]}
    Flag(ElementArgs),
    /// Quotient forms on the flag of {"omega": [[..]]} (Poincaré groups)
    QuotientForms {
        #[command(flatten)]
        element: ElementArgs,
        /// only this flag step
        #[arg(long)]
        step: Option<usize>,
    },
    /// Tree of orbit types
    Hierarchy {
        #[arg(long)]
        group: GroupKind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The fourteen orbit types of E(1,3)
    TableE13 {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The bijected partner of an adjoint or coadjoint element
    BijectionPair(ElementArgs),
    /// Run randomized verification suites
    Verify {
        #[arg(long)]
        group: GroupKind,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "ORBITFORGE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Zigzag certificate for an adjoint element
    Certificate(ElementArgs),
}

#[derive(Args)]
struct ElementArgs {
    #[arg(long)]
    group: GroupKind,
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// element as inline JSON
    #[arg(long)]
    element: Option<String>,
    /// element JSON read from a file
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

/// (ω, p) with ω*p = 0.
#[derive(Serialize, Deserialize)]
struct DeltaPoint {
    #[serde(with = "serde_rational::rows")]
    omega: Vec<Vector>,
    #[serde(with = "serde_rational::vec")]
    p: Vector,
}

impl DeltaPoint {
    fn new(omega: &Matrix, p: Vector) -> Self {
        DeltaPoint { omega: omega.to_rows(), p }
    }

    fn omega(&self) -> Matrix {
        rows_to_matrix(&self.omega)
    }
}

#[derive(Deserialize)]
struct OmegaOnly {
    #[serde(with = "serde_rational::rows")]
    omega: Vec<Vector>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EitherElement {
    Adjoint(AlgebraElement),
    Coadjoint(DualAlgebraElement),
}

fn rows_to_matrix(rows: &[Vector]) -> Matrix {
    if rows.is_empty() {
        Matrix::zeros(0, 0)
    } else {
        Matrix::from_rows(rows.to_vec())
    }
}

fn read_element<T: for<'de> Deserialize<'de>>(input: &Input) -> Result<T, Failure> {
    let text = match (&input.element, &input.file) {
        (Some(e), _) => e.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?
        }
        (None, None) => return Err(Failure::Usage("one of --element or --file is required".into())),
    };
    serde_json::from_str(&text).map_err(|e| Failure::Domain(Error::Parse(format!("malformed element JSON: {e}"))))
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable output")
}

fn no_csv(format: Format) -> Result<(), Failure> {
    if format == Format::Csv {
        Err(Failure::Usage("csv output is only available for tables (table-e13, verify)".into()))
    } else {
        Ok(())
    }
}

fn rows_str(rows: &[Vector]) -> String {
    let r: Vec<String> = rows.iter().map(|v| vec_str(v)).collect();
    format!("[{}]", r.join(", "))
}

fn vec_str(v: &[Scalar]) -> String {
    let r: Vec<String> = v.iter().map(format_scalar).collect();
    format!("({})", r.join(", "))
}

fn e13_line(kind: GroupKind, label: &OrbitLabel) -> Option<(usize, E13Row)> {
    if kind != GroupKind::Poincare(1, 3) {
        return None;
    }
    let i = e13_row_of(label)?;
    Some((i, e13_table().swap_remove(i)))
}

fn label_output(kind: GroupKind, label: &OrbitLabel, format: Format) -> Outcome {
    let row = e13_line(kind, label);
    Ok(match format {
        Format::Pretty => {
            let mut s = label.to_string();
            if let Some((i, r)) = row {
                write!(s, "\nE(1,3) row {}: {} | {} | {}", i + 1, r.group, r.params, r.constraints).unwrap();
            }
            s
        }
        _ => {
            let mut v = json!({"group": kind.to_string(), "label": label, "display": label.to_string()});
            if let Some((i, r)) = row {
                v["e13_row"] = json!({"index": i + 1, "row": r});
            }
            to_json(&v)
        }
    })
}

fn flag_output(kind: GroupKind, omega: &Matrix, format: Format) -> Outcome {
    let flag = compute_flag(kind, omega)?;
    let steps = flag.steps();
    let powers = flag.power_index();
    Ok(match format {
        Format::Pretty => {
            let mut s = format!("ker ω* has dimension {}, {} strata\n", flag.ambient().dim(), flag.strata());
            for (j, e) in steps.iter().enumerate() {
                let m = powers.get(j).map_or(String::new(), |m| format!(", m = {m}"));
                writeln!(s, "E_{j}: dim {}{m}, basis {}", e.dim(), rows_str(&e.basis_vectors())).unwrap();
            }
            s.trim_end().to_string()
        }
        _ => {
            let steps: Vec<Value> = steps
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let basis: Vec<Vec<String>> =
                        e.basis_vectors().iter().map(|v| v.iter().map(format_scalar).collect()).collect();
                    json!({"j": j, "dim": e.dim(), "power": powers.get(j), "basis": basis})
                })
                .collect();
            to_json(&json!({
                "group": kind.to_string(),
                "kernel_dim": flag.ambient().dim(),
                "strata": flag.strata(),
                "steps": steps,
            }))
        }
    })
}

fn forms_output(forms: &[QuotientForm], format: Format) -> String {
    match format {
        Format::Pretty => forms
            .iter()
            .map(|f| {
                let sig = f.signature.map_or("skew".to_string(), |(p, q)| format!("signature ({p},{q})"));
                format!("Q_{} (m = {}): {}, gram {}", f.j, f.power, sig, rows_str(&f.gram.to_rows()))
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => to_json(&forms),
    }
}

fn tree_lines(node: &HierarchyNode, depth: usize, out: &mut String) {
    writeln!(out, "{}{}", "  ".repeat(depth), node.name()).unwrap();
    if let HierarchyNode::Delta { children, .. } = node {
        for c in children {
            tree_lines(c, depth + 1, out);
        }
    }
}

fn table_output(format: Format) -> Outcome {
    let table = e13_table();
    Ok(match format {
        Format::Json => to_json(&table),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &table {
                w.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?)
                .expect("utf-8 csv")
                .trim_end()
                .to_string()
        }
        Format::Pretty => {
            let mut s = String::new();
            let mut last = "";
            for (i, r) in table.iter().enumerate() {
                let group = if r.group == last { "" } else { r.group.as_str() };
                last = &r.group;
                writeln!(s, "{:>2}  {group:<14} {:<10} {}", i + 1, r.params, r.constraints).unwrap();
            }
            s.trim_end().to_string()
        }
    })
}

fn bijection_output(kind: GroupKind, args: &ElementArgs) -> Outcome {
    no_csv(args.format)?;
    let el: EitherElement = read_element(&args.input)?;
    let (side, x, xi, (omega, p)) = match el {
        EitherElement::Adjoint(x) => {
            let xi = bijected_coadjoint(kind, &x)?;
            let d = adjoint_to_delta(kind, &x)?;
            ("adjoint", x, xi, d)
        }
        EitherElement::Coadjoint(xi) => {
            let x = bijected_adjoint(kind, &xi)?;
            let d = coadjoint_to_delta(kind, &xi)?;
            ("coadjoint", x, xi, d)
        }
    };
    let la = classify_adjoint(kind, &x)?;
    let lc = classify_coadjoint(kind, &xi)?;
    if la != lc {
        return Err(Error::Verification(format!("bijected labels differ: {la} vs {lc}")).into());
    }
    Ok(match args.format {
        Format::Pretty => format!(
            "adjoint   ω = {}, v = {}\ncoadjoint L = {}, p = {}\nΔ         ω = {}, p = {}\nlabel     {la}",
            rows_str(&x.omega.to_rows()),
            vec_str(&x.v),
            rows_str(&xi.l.to_rows()),
            vec_str(&xi.p),
            rows_str(&omega.to_rows()),
            vec_str(&p)
        ),
        _ => to_json(&json!({
            "group": kind.to_string(),
            "input": side,
            "adjoint": x,
            "coadjoint": xi,
            "delta": DeltaPoint::new(&omega, p),
            "label": la,
            "display": la.to_string(),
        })),
    })
}

fn certificate_output(cert: &ZigzagCertificate, format: Format) -> String {
    match format {
        Format::Pretty => {
            fn walk(c: &ZigzagCertificate, depth: usize, out: &mut String) {
                let pad = "  ".repeat(depth);
                for l in &c.links {
                    writeln!(
                        out,
                        "{pad}{} → {} [{:?}] fibre: {} (dim {})",
                        l.from,
                        l.to,
                        l.direction,
                        l.fibre.description,
                        l.fibre.dim()
                    )
                    .unwrap();
                }
                if let Some(n) = &c.nested {
                    walk(n, depth + 1, out);
                }
            }
            let mut s = format!(
                "{} ↔ {}{}\n",
                cert.adjoint_label,
                cert.coadjoint_label,
                if cert.pseudo_equivariant { " (pseudo-equivariant)" } else { "" }
            );
            walk(cert, 0, &mut s);
            write!(s, "valid: {}", cert.is_valid()).unwrap();
            s
        }
        _ => to_json(cert),
    }
}

fn verify_output(reports: &[Report], format: Format) -> Outcome {
    Ok(match format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "group", "trials", "failures", "skipped", "status"])
                .map_err(|e| Error::Parse(e.to_string()))?;
            for r in reports {
                w.write_record([
                    r.suite.clone(),
                    r.kind.to_string(),
                    r.trials.to_string(),
                    r.failures.len().to_string(),
                    r.skipped.to_string(),
                    if r.passed() { "PASS".into() } else { "FAIL".into() },
                ])
                .map_err(|e| Error::Parse(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?)
                .expect("utf-8 csv")
                .trim_end()
                .to_string()
        }
        Format::Pretty => reports
            .iter()
            .map(|r| {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let mut s = format!("{status} {:<26} {} trials", r.suite, r.trials);
                if r.skipped > 0 {
                    write!(s, ", {} skipped", r.skipped).unwrap();
                }
                if !r.failures.is_empty() {
                    write!(s, ", {} failures (first seed {})", r.failures.len(), r.failures[0].seed).unwrap();
                }
                if let Some(w) = &r.warning {
                    write!(s, " [{w}]").unwrap();
                }
                s
            })
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

/// Output and a possible failure raised after the output is complete.
fn run(command: Command) -> (Option<String>, Option<Failure>) {
    let done = |o: Outcome| match o {
        Ok(s) => (Some(s), None),
        Err(f) => (None, Some(f)),
    };
    match command {
        Command::ClassifyAdjoint(a) => done((|| {
            no_csv(a.format)?;
            let x: AlgebraElement = read_element(&a.input)?;
            label_output(a.group, &classify_adjoint(a.group, &x)?, a.format)
        })()),
        Command::ClassifyCoadjoint(a) => done((|| {
            no_csv(a.format)?;
            let xi: DualAlgebraElement = read_element(&a.input)?;
            label_output(a.group, &classify_coadjoint(a.group, &xi)?, a.format)
        })()),
        Command::ClassifyDelta(a) => done((|| {
            no_csv(a.format)?;
            let d: DeltaPoint = read_element(&a.input)?;
            label_output(a.group, &classify_delta(a.group, &d.omega(), &d.p)?, a.format)
        })()),
        Command::Flag(a) => done((|| {
            no_csv(a.format)?;
            let o: OmegaOnly = read_element(&a.input)?;
            flag_output(a.group, &rows_to_matrix(&o.omega), a.format)
        })()),
        Command::QuotientForms { element: a, step } => done((|| {
            no_csv(a.format)?;
            let o: OmegaOnly = read_element(&a.input)?;
            let omega = rows_to_matrix(&o.omega);
            let forms = match step {
                Some(j) => vec![quotient_form(a.group, &omega, &compute_flag(a.group, &omega)?, j)?],
                None => quotient_forms(a.group, &omega)?,
            };
            Ok(forms_output(&forms, a.format))
        })()),
        Command::Hierarchy { group, format } => done((|| {
            no_csv(format)?;
            let tree = enumerate_hierarchy(group);
            Ok(match format {
                Format::Pretty => {
                    let mut s = String::new();
                    tree_lines(&tree, 0, &mut s);
                    s.trim_end().to_string()
                }
                _ => to_json(&json!({"group": group.to_string(), "tree": tree, "leaves": tree.leaves()})),
            })
        })()),
        Command::TableE13 { format } => done(table_output(format)),
        Command::BijectionPair(a) => done(bijection_output(a.group, &a)),
        Command::Certificate(a) => done((|| {
            no_csv(a.format)?;
            let x: AlgebraElement = read_element(&a.input)?;
            Ok(certificate_output(&zigzag_certificate(a.group, &x)?, a.format))
        })()),
        Command::Verify { group, suite, trials, seed, format } => {
            let reports = match run_suites(&suite, group, trials, seed) {
                Ok(r) => r,
                Err(e) => return (None, Some(e.into())),
            };
            let out = verify_output(&reports, format);
            let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
            match out {
                Err(f) => (None, Some(f)),
                Ok(s) if failed > 0 => {
                    let e = Error::Verification(format!("{failed} failing trials (seed {seed})"));
                    (Some(s), Some(e.into()))
                }
                Ok(s) => (Some(s), None),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, failure) = run(cli.command);
    if let Some(s) = out {
        println!("{s}");
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Some(Failure::Domain(e)) => {
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string()}));
            ExitCode::from(1)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cyclecones::cone::ConeFile;
use cyclecones::rational::{fmt_q, primitive};
use cyclecones::repro::{self, export, FixtureSet, Format, Session};
use cyclecones::ring::{relations, GradedClass};
use cyclecones::schubert::{parse_expression, schubert_degree};
use cyclecones::Error;

#[derive(Parser)]
#[command(name = "cyclecones", version, about = "Cones of cycles on blowups of projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    /// The comparison report as text.
    Report,
    /// The comparison report as JSON.
    ReportJson,
    /// The computed table as fixture JSON.
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate one table and compare it with its fixture.
    Table {
        id: String,
        #[arg(long, value_enum, default_value = "report")]
        format: TableFormat,
        /// Replace every row by its full orbit under the symmetric groups.
        #[arg(long)]
        expand_orbits: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory of `<id>.json` files overriding the built-in fixtures.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Regenerate every table and print the verdict grids.
    All {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Extreme rays of the dual of a cone file.
    Dual { conefile: PathBuf },
    /// Membership of a class in a cone, with a certificate.
    Member { classfile: PathBuf, conefile: PathBuf },
    /// Top self-intersection of a divisor class.
    Selfint { classfile: PathBuf },
    /// Evaluate a Schubert expression such as `G(2,4): s2*s1^4`.
    Schubert { expr: String },
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unknown { .. } | Error::Parse(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

fn session(dir: Option<&Path>) -> Result<Session, Failure> {
    let set = match dir {
        Some(d) => FixtureSet::with_overrides(d)?,
        None => FixtureSet::embedded()?,
    };
    Ok(Session::new(set))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_class(path: &Path) -> Result<GradedClass, Failure> {
    Ok(GradedClass::from_json(&read(path)?)?)
}

fn read_cone(path: &Path) -> Result<cyclecones::cone::RayCone, Failure> {
    let file: ConeFile = serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(file.to_cone()?)
}

fn pretty(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json"))
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Table { id, format, expand_orbits, out, fixtures } => {
            let s = session(fixtures.as_deref())?;
            s.fixtures().get(&id)?;
            let (report, table) = match repro::run_table(&s, &id) {
                Ok(run) => (run.report, Some(run.table)),
                Err(e) => (repro::DiffReport::failed(&id, &e), None),
            };
            let text = match (format, &table) {
                (TableFormat::Report, _) => report.to_string(),
                (TableFormat::ReportJson, _) => format!("{}\n", report.to_json()),
                (TableFormat::Json, Some(t)) => export(t, Format::Json, expand_orbits)?,
                (TableFormat::Csv, Some(t)) => export(t, Format::Csv, expand_orbits)?,
                (TableFormat::Markdown, Some(t)) => export(t, Format::Markdown, expand_orbits)?,
                (_, None) => report.to_string(),
            };
            emit(&text, out.as_deref())?;
            Ok(report.status.exit_code())
        }
        Command::All { json, out, fixtures } => {
            let s = session(fixtures.as_deref())?;
            let summary = repro::run_all(&s);
            let text = if json {
                pretty(&json!({
                    "status": summary.status(),
                    "reports": summary.reports,
                    "verdicts": summary.verdicts,
                }))
            } else {
                summary.to_string()
            };
            emit(&text, out.as_deref())?;
            Ok(summary.status().exit_code())
        }
        Command::Dual { conefile } => {
            let dual = read_cone(&conefile)?.dual();
            let file = ConeFile::from_cone(&dual)?;
            print!("{}", pretty(&serde_json::to_value(file).expect("json")));
            Ok(0)
        }
        Command::Member { classfile, conefile } => {
            let class = read_class(&classfile)?;
            let cone = read_cone(&conefile)?;
            let v = primitive(class.coords());
            let m = cone.membership(&v)?;
            if !cone.verify(&v, &m) {
                return Err(Failure::Run("membership certificate does not verify".into()));
            }
            print!("{}", pretty(&json!({ "inside": m.inside, "certificate": m.certificate.to_json() })));
            Ok(0)
        }
        Command::Selfint { classfile } => {
            let class = read_class(&classfile)?;
            println!("{}", fmt_q(&class.self_intersection_number()?));
            Ok(0)
        }
        Command::Schubert { expr } => {
            let e = parse_expression(&expr)?;
            let mut degree = num_bigint::BigUint::from(0u32);
            for (p, c) in e.value.terms() {
                degree += c * schubert_degree(p, e.grass)?;
            }
            println!("{}", e.value);
            println!("point coefficient: {}", e.value.point_coefficient());
            println!("degree: {degree}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = relations::self_test() {
        eprintln!("{e}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exceptcheck::chartable::{self, CharacterTable, ValidationReport};
use exceptcheck::invariants;
use exceptcheck::matgroup::{self, GeneratorFile};
use exceptcheck::obstruction::{self, CheckOptions, ReferenceValues, Verdict};
use exceptcheck::sympow;
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA: u32 = 1;
const DATA_ENV: &str = "EXCEPTCHECK_DATA";

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_NOT_EXCEPTIONAL: u8 = 10;
const EXIT_INCONCLUSIVE: u8 = 20;

/// Exact checks for exceptional quotient singularities of finite linear groups.
#[derive(Parser)]
#[command(name = "exceptcheck", version)]
struct Cli {
    /// Directory holding the bundled tables and generator files.
    #[arg(long, global = true, env = DATA_ENV)]
    data_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Also write the JSON report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the consistency of a character table.
    Validate {
        table: String,
        #[command(flatten)]
        out: Output,
    },
    /// Decompose a symmetric power of the distinguished representation.
    Sympow {
        table: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Invariants and semi-invariants degree by degree.
    Molien {
        table: String,
        #[arg(long, default_value_t = invariants::DEFAULT_MAX_DEGREE)]
        max: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Run the exceptionality case analysis and print its certificate.
    CheckExceptional {
        table: String,
        #[arg(long, default_value_t = invariants::DEFAULT_MAX_DEGREE)]
        max: u32,
        /// Handle curves, surfaces and threefolds one by one even when the
        /// finite difference shortcut applies.
        #[arg(long)]
        case_by_case: bool,
        /// JSON file of externally stated values to compare against.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate the group generated by a generator file.
    Closure {
        generators: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Molien coefficients of a generated matrix group.
    GroupMolien {
        generators: String,
        #[arg(long, default_value_t = 8)]
        max: u32,
        #[arg(long, default_value_t = 1_000_000)]
        max_order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check every bundled table and summarize the verdicts.
    ReportAll {
        #[arg(long, default_value_t = invariants::DEFAULT_MAX_DEGREE)]
        max: u32,
        #[command(flatten)]
        out: Output,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_IO,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn data_dir(flag: Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir;
    }
    let local = PathBuf::from("data");
    if local.is_dir() {
        return local;
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// An existing path is used as is; otherwise the name is looked up in the
/// data directory, with `.json` appended if missing.
fn resolve(name: &str, dir: &Path, sub: &str) -> PathBuf {
    let direct = PathBuf::from(name);
    if direct.exists() {
        return direct;
    }
    let base = dir.join(sub);
    let candidate = base.join(name);
    if candidate.exists() || name.ends_with(".json") {
        return candidate;
    }
    base.join(format!("{name}.json"))
}

fn load_table(name: &str, dir: &Path) -> Result<CharacterTable, Failure> {
    let path = resolve(name, dir, "");
    chartable::load(&path).map_err(|e| match e {
        chartable::TableError::Io { .. } => Failure::io(e.to_string()),
        other => Failure::validation(format!("{}: {other}", path.display())),
    })
}

fn load_valid_table(name: &str, dir: &Path) -> Result<CharacterTable, Failure> {
    let t = load_table(name, dir)?;
    let report = chartable::validate(&t);
    if !report.is_valid() {
        let details: Vec<String> = report.violations.iter().map(|v| v.detail.clone()).collect();
        return Err(Failure::validation(format!(
            "{} fails validation: {}",
            t.group_name,
            details.join("; ")
        )));
    }
    Ok(t)
}

fn load_generators(name: &str, dir: &Path) -> Result<GeneratorFile, Failure> {
    let path = resolve(name, dir, "matgroups");
    GeneratorFile::load(&path).map_err(|e| match e {
        matgroup::GeneratorFileError::Io { .. } => Failure::io(e.to_string()),
        other => Failure::validation(format!("{}: {other}", path.display())),
    })
}

fn emit(value: &impl Serialize, out: &Output) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    if let Some(path) = &out.json {
        std::fs::write(path, &text).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{text}");
    Ok(())
}

fn with_schema(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        let mut out = serde_json::Map::new();
        out.insert("schema".into(), json!(SCHEMA));
        out.append(map);
        return Value::Object(out);
    }
    value
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::CriterionVerified => 0,
        Verdict::NotExceptional { .. } => EXIT_NOT_EXCEPTIONAL,
        Verdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

fn engine_failure(e: impl std::fmt::Display) -> Failure {
    Failure::validation(e.to_string())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let dir = data_dir(cli.data_dir);
    match cli.command {
        Command::Validate { table, out } => {
            let t = load_table(&table, &dir)?;
            let report: ValidationReport = chartable::validate(&t);
            emit(
                &with_schema(json!({
                    "group": t.group_name,
                    "valid": report.is_valid(),
                    "violations": report.violations,
                })),
                &out,
            )?;
            Ok(if report.is_valid() { 0 } else { EXIT_VALIDATION })
        }
        Command::Sympow { table, n, out } => {
            let t = load_valid_table(&table, &dir)?;
            let chi = t.distinguished().map_err(engine_failure)?;
            let power = sympow::sym_power_character(&chi, n).map_err(engine_failure)?;
            let d = sympow::decompose(&power).map_err(engine_failure)?;
            let ambient = chi.degree().unwrap_or(1).saturating_sub(1);
            let h = sympow::allowed_h_values(&t, n, ambient).map_err(engine_failure)?;
            emit(
                &with_schema(json!({
                    "group": t.group_name,
                    "representation": t.distinguished_rep,
                    "n": n,
                    "degree": d.degree(),
                    "irreducible": d.is_irreducible(),
                    "degrees": d.degree_multiset(),
                    "parts": d.parts,
                    "h_values": h,
                })),
                &out,
            )?;
            Ok(0)
        }
        Command::Molien { table, max, out } => {
            let t = load_valid_table(&table, &dir)?;
            let rows = invariants::molien_rows(&t, max).map_err(engine_failure)?;
            let min_inv = rows.iter().skip(1).find(|r| r.invariants > 0).map(|r| r.degree);
            let min_semi = rows.iter().skip(1).find(|r| r.has_semi_invariant()).map(|r| r.degree);
            emit(
                &with_schema(json!({
                    "group": t.group_name,
                    "representation": t.distinguished_rep,
                    "max_degree": max,
                    "min_invariant_degree": min_inv,
                    "min_semiinvariant_degree": min_semi,
                    "rows": rows,
                })),
                &out,
            )?;
            Ok(0)
        }
        Command::CheckExceptional {
            table,
            max,
            case_by_case,
            reference,
            out,
        } => {
            let t = load_valid_table(&table, &dir)?;
            let reference = reference
                .map(|p| ReferenceValues::load(p).map_err(Failure::io))
                .transpose()?;
            let options = CheckOptions {
                max_degree: max,
                polynomial_fit: !case_by_case,
                reference,
            };
            let cert = obstruction::check_exceptionality_with(&t, &options).map_err(engine_failure)?;
            emit(&cert, &out)?;
            Ok(verdict_code(&cert.verdict))
        }
        Command::Closure {
            generators,
            max_order,
            out,
        } => {
            let file = load_generators(&generators, &dir)?;
            let g = matgroup::closure(&file.generators, max_order).map_err(engine_failure)?;
            let character = g.character().map_err(engine_failure)?;
            emit(
                &with_schema(json!({
                    "description": file.description,
                    "dimension": g.dimension(),
                    "generators": file.generators.len(),
                    "order": g.order(),
                    "class_count": character.classes.len(),
                    "classes": character.classes,
                })),
                &out,
            )?;
            Ok(0)
        }
        Command::GroupMolien {
            generators,
            max,
            max_order,
            out,
        } => {
            let file = load_generators(&generators, &dir)?;
            let g = matgroup::closure(&file.generators, max_order).map_err(engine_failure)?;
            let coefficients = g.molien_coefficients(max).map_err(engine_failure)?;
            emit(
                &with_schema(json!({
                    "description": file.description,
                    "dimension": g.dimension(),
                    "order": g.order(),
                    "max_degree": max,
                    "coefficients": coefficients,
                    "min_invariant_degree": (1..coefficients.len()).find(|&n| coefficients[n] > 0),
                })),
                &out,
            )?;
            Ok(0)
        }
        Command::ReportAll { max, out } => report_all(&dir, max, &out),
    }
}

fn report_all(dir: &Path, max: u32, out: &Output) -> Result<u8, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::io(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::io(format!("no tables in {}", dir.display())));
    }
    let options = CheckOptions {
        max_degree: max,
        ..CheckOptions::default()
    };
    let mut rows = Vec::new();
    let mut verified = Vec::new();
    let mut inconclusive = Vec::new();
    for path in &files {
        let file = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let t = chartable::load(path).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
        let report = chartable::validate(&t);
        if !report.is_valid() {
            return Err(Failure::validation(format!("{} fails validation", path.display())));
        }
        let cert = obstruction::check_exceptionality_with(&t, &options).map_err(engine_failure)?;
        match &cert.verdict {
            Verdict::CriterionVerified => verified.push(t.group_name.clone()),
            Verdict::Inconclusive { .. } => inconclusive.push(t.group_name.clone()),
            Verdict::NotExceptional { .. } => {}
        }
        rows.push(json!({
            "file": file,
            "group": t.group_name,
            "dimension": cert.group.degree,
            "min_semiinvariant_degree": cert.semiinvariants.min_semiinvariant_degree,
            "verdict": cert.verdict,
        }));
    }
    emit(
        &with_schema(json!({
            "max_degree": max,
            "rows": rows,
            "criterion_verified": verified,
            "inconclusive": inconclusive,
        })),
        out,
    )?;
    Ok(0)
}

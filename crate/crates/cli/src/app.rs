use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use chern_core::cobord::CobordClass;
use chern_core::geommodel::{chern_submanifold, Bundle, ProjProduct};
use chern_core::pseries::{ahat_series, euler_series, signature_series, todd_series};
use chern_core::ring::fmt_q;
use chern_core::theorems::{
    bv_congruence, chi_y_normal, cor_as, euler_even, line_factor, run_matrix, test_matrix, thm3, thm4_1, thm4_2,
    thm5_1, Relation, VerificationReport,
};
use chern_core::Error as CoreError;

use crate::parse::{parse_bundle_for, parse_manifold, parse_partition, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chern", version, about = "Exact checks of relations between Chern numbers of a manifold and its virtual Chern submanifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, clap::Args)]
struct Output {
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Also write JSON reports, one per line, to this file
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyWhat {
    Thm3,
    #[value(name = "thm4.1")]
    Thm41,
    #[value(name = "thm4.2")]
    Thm42,
    #[value(name = "thm5.1")]
    Thm51,
    CorAs,
    EulerEven,
    Bv,
}

impl VerifyWhat {
    fn relation(self) -> Relation {
        match self {
            VerifyWhat::Thm3 => Relation::Thm3,
            VerifyWhat::Thm41 => Relation::Thm41,
            VerifyWhat::Thm42 => Relation::Thm42,
            VerifyWhat::Thm51 => Relation::Thm51,
            VerifyWhat::CorAs => Relation::CorAs,
            VerifyWhat::EulerEven => Relation::EulerEven,
            VerifyWhat::Bv => Relation::Bv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenusName {
    Todd,
    Chiy,
    Sign,
    Ahat,
    Euler,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one relation on one manifold
    Verify {
        relation: VerifyWhat,
        #[arg(long)]
        manifold: String,
        /// Bundle for thm5.1 and cor-as (default: the zero bundle)
        #[arg(long)]
        bundle: Option<String>,
        /// CP(1) factor carrying the line subbundle for euler-even (default: the first)
        #[arg(long)]
        factor: Option<usize>,
        /// Truncation order cap; must be at least the manifold dimension
        #[arg(long)]
        max_degree: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a genus from the Chern numbers of a manifold
    Genus {
        name: GenusName,
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cobordism class of the virtual submanifold dual to m_λ(η)
    Dual {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        manifold: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run every relation on every product of projective spaces up to a dimension
    Selftest {
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => EXIT_PARSE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NotRepresentable { .. }
            | CoreError::FactorMismatch { .. }
            | CoreError::WrongDimension { .. }
            | CoreError::NoLineFactor { .. } => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn check_degree(model: &ProjProduct, max_degree: Option<usize>) -> Result<usize, CliError> {
    let n = model.dim();
    match max_degree {
        Some(d) if d < n => Err(CliError::Input(format!("--max-degree {d} is below the dimension {n} of {model}"))),
        Some(d) => Ok(d),
        None => Ok(n),
    }
}

fn emit(reports: &[VerificationReport], output: &Output, out: &mut dyn Write) -> Result<(), CliError> {
    let json: Vec<String> = reports
        .iter()
        .map(serde_json::to_string)
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    match output.format {
        Format::Table => {
            for r in reports {
                writeln!(out, "{r}")?;
            }
        }
        Format::Json => {
            for line in &json {
                writeln!(out, "{line}")?;
            }
        }
    }
    if let Some(path) = &output.report {
        let mut text = json.join("\n");
        text.push('\n');
        fs::write(path, text)?;
    }
    Ok(())
}

fn verify(
    what: VerifyWhat,
    manifold: &str,
    bundle: Option<&str>,
    factor: Option<usize>,
    max_degree: Option<usize>,
) -> Result<VerificationReport, CliError> {
    let model = parse_manifold(manifold)?;
    check_degree(&model, max_degree)?;
    let relation = what.relation();
    let bundle = match (bundle, relation.needs_bundle()) {
        (Some(text), true) => parse_bundle_for(text, &model, relation == Relation::Thm51)?,
        (None, true) => Bundle::zero(),
        (Some(_), false) => return Err(CliError::Input(format!("{relation} takes no --bundle"))),
        (None, false) => Bundle::zero(),
    };
    let report = match relation {
        Relation::Thm3 => thm3(&model),
        Relation::Thm41 => thm4_1(&model),
        Relation::Thm42 => thm4_2(&model)?,
        Relation::Bv => bv_congruence(&model)?,
        Relation::Thm51 => thm5_1(&model, &bundle)?,
        Relation::CorAs => cor_as(&model, &bundle)?,
        Relation::EulerEven => {
            let factor = factor
                .or_else(|| line_factor(&model))
                .ok_or_else(|| CliError::Input(format!("{model} has no CP(1) factor")))?;
            euler_even(&model, factor)?
        }
    };
    Ok(report)
}

fn genus(name: GenusName, model: &ProjProduct, order: usize) -> Result<String, CliError> {
    let m: CobordClass = model.normal_numbers();
    let normal = |s: chern_core::pseries::TruncSeries<chern_core::Q>| s.inverse().map_err(CliError::from);
    Ok(match name {
        GenusName::Todd => fmt_q(&m.genus(&normal(todd_series(order))?)),
        GenusName::Chiy => m.genus(&chi_y_normal(order)).to_string(),
        GenusName::Sign => fmt_q(&m.genus(&normal(signature_series(order))?)),
        GenusName::Ahat => fmt_q(&m.genus(&normal(ahat_series(order))?)),
        GenusName::Euler => fmt_q(&m.genus(&normal(euler_series(order))?)),
    })
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify { relation, manifold, bundle, factor, max_degree, output } => {
            let report = verify(relation, &manifold, bundle.as_deref(), factor, max_degree)?;
            let equal = report.equal;
            emit(&[report], &output, out)?;
            Ok(if equal { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Genus { name, manifold, max_degree, format } => {
            let model = parse_manifold(&manifold)?;
            let order = check_degree(&model, max_degree)?;
            let value = genus(name, &model, order)?;
            match format {
                Format::Table => writeln!(out, "{value}")?,
                Format::Json => {
                    let name = name.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
                    let obj = serde_json::json!({ "genus": name, "manifold": model.to_string(), "value": value });
                    writeln!(out, "{obj}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Dual { partition, bundle, manifold, format } => {
            let model = parse_manifold(&manifold)?;
            let lam = parse_partition(&partition)?;
            let bundle = parse_bundle_for(&bundle, &model, true)?;
            let class = chern_submanifold(&model, &lam, &bundle)?;
            match format {
                Format::Table => writeln!(out, "{class}")?,
                Format::Json => {
                    let components: serde_json::Map<String, serde_json::Value> = class
                        .components()
                        .iter()
                        .map(|(dim, c)| {
                            let coords: serde_json::Map<String, serde_json::Value> = c
                                .in_cp_basis()
                                .iter()
                                .map(|(p, v)| (p.to_string(), fmt_q(v).into()))
                                .collect();
                            (dim.to_string(), coords.into())
                        })
                        .collect();
                    let obj = serde_json::json!({
                        "manifold": model.to_string(),
                        "partition": lam,
                        "bundle": bundle.to_string(),
                        "class": class.to_string(),
                        "cp_coordinates": components,
                    });
                    writeln!(out, "{obj}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Selftest { max_dim, output } => {
            if max_dim > crate::parse::MAX_DIM {
                return Err(CliError::Input(format!("--max-dim {max_dim} exceeds {}", crate::parse::MAX_DIM)));
            }
            let cases = test_matrix(max_dim);
            let mut reports = Vec::with_capacity(cases.len());
            let mut errors = 0;
            for (case, result) in cases.iter().zip(run_matrix(&cases)) {
                match result {
                    Ok(r) => reports.push(r),
                    Err(e) => {
                        errors += 1;
                        writeln!(out, "{} {}: error: {e}", case.relation, case.model)?;
                    }
                }
            }
            emit(&reports, &output, out)?;
            let failed = reports.iter().filter(|r| !r.equal).count();
            if output.format == Format::Table {
                writeln!(out, "{} cases, {failed} failed, {errors} errors", cases.len())?;
            }
            Ok(if failed == 0 && errors == 0 { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| execute(cli, out)));
    match result {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal failure");
            EXIT_INTERNAL
        }
    }
}

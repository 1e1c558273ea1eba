//! Command-line frontend: one subcommand per capability, machine-readable
//! JSON reports on stdout (or `--out`), human summaries on stderr, and a
//! stable exit-code contract for scripting:
//!
//! * `0` - success; the checked property holds / the certificate is issued
//! * `2` - the computation ran but the property or a hypothesis failed
//! * `3` - input error (bad flags, malformed documents, inconsistent data)
//! * `4` - enumeration budget exceeded

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::certify::{
    certify_theorem1, certify_theorem2, corollary_2d, omega_report_json, CertificateReport,
};
use crate::error::{Error, ParseError};
use crate::field::VectorField;
use crate::integrals::common_linear_integrals;
use crate::io::{
    document_from_field, emit_document, parse_coeff, parse_field_file, parse_matrix_file,
    poly_to_spec,
};
use crate::matrix::ExactMatrix;
use crate::normal_form::{eigenbasis_for_block_rotation, normalize, EigenData};
use crate::samples::{build_example_rotation2d, build_example_so3};
use crate::scalar::GaussianRational;
use crate::shape::{check_condition_a, fit_nf_shape};
use crate::small_divisors::{check_omega, OmegaOptions, OmegaVariant};
use crate::symmetry::check_symmetry;

type Coeff = GaussianRational;
type Field = VectorField<Coeff>;
type Matrix = ExactMatrix<Coeff>;
type Eigen = EigenData<Coeff>;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSATISFIED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser)]
#[command(
    name = "dulac",
    version,
    about = "Exact normal forms, Lie point symmetries, and convergence certificates for polynomial vector fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum VariantArg {
    Paper,
    Shifted,
}

impl From<VariantArg> for OmegaVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Paper => OmegaVariant::Paper,
            VariantArg::Shifted => OmegaVariant::Shifted,
        }
    }
}

#[derive(Args, Clone)]
struct OmegaArgs {
    /// Largest horizon k for the small-divisor sweep
    #[arg(long, default_value_t = 8)]
    kmax: u32,
    /// Which divisor to minimize
    #[arg(long = "omega-variant", value_enum, default_value_t = VariantArg::Paper)]
    omega_variant: VariantArg,
    /// Enumerate only exponent vectors with every entry >= 1
    #[arg(long = "strict-positive-q")]
    strict_positive_q: bool,
    /// Abort (exit 4) when the lattice holds more points than this
    #[arg(long = "omega-budget", default_value_t = 10_000_000)]
    omega_budget: u64,
    /// Lower bound the partial sums must stay above for a holds-at-horizon
    /// verdict
    #[arg(long = "omega-threshold", default_value_t = -1e6, allow_hyphen_values = true)]
    omega_threshold: f64,
    /// Decimal digits in reported approximations
    #[arg(long, default_value_t = 50)]
    precision: usize,
    /// Worker threads for the lattice sweep (results are independent of the
    /// count)
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl OmegaArgs {
    fn to_options(&self) -> Result<OmegaOptions, Error> {
        let threshold = BigRational::from_float(self.omega_threshold).ok_or_else(|| {
            Error::precondition("omega threshold must be a finite number")
        })?;
        Ok(OmegaOptions {
            k_max: self.kmax,
            variant: self.omega_variant.into(),
            strict_positive: self.strict_positive_q,
            budget: self.omega_budget,
            threads: self.threads.max(1),
            precision: self.precision,
            threshold,
        })
    }

    // The thread count is deliberately not echoed: results are independent
    // of it, and reports must be byte-identical across thread counts.
    fn echo(&self) -> Value {
        json!({
            "kmax": self.kmax,
            "omega_variant": match self.omega_variant {
                VariantArg::Paper => "paper",
                VariantArg::Shifted => "shifted",
            },
            "strict_positive_q": self.strict_positive_q,
            "omega_budget": self.omega_budget,
            "omega_threshold": self.omega_threshold.to_string(),
            "precision": self.precision,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Put a field into normal form up to a degree
    Normalize {
        /// Field document (JSON)
        field: PathBuf,
        /// Truncation degree for the normalization
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Write the normal form as a field document to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep small divisors for a spectrum and report per-horizon minima
    CheckOmega {
        /// Comma-separated eigenvalues, e.g. "i,-i" or "1,-3/2"
        #[arg(long)]
        eigenvalues: String,
        #[command(flatten)]
        omega: OmegaArgs,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a field has the scalar-multiple shape Au + alpha(u)Au
    CheckConditionA {
        field: PathBuf,
        /// Degree up to which the decomposition is solved
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the symmetry residual {f,g} of two fields
    CheckSymmetry {
        field: PathBuf,
        symmetry: PathBuf,
        /// Degree up to which the bracket is checked
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a field as Au + alpha(u)Au + mu(u)Mu
    FitShape {
        field: PathBuf,
        /// Candidate matrix M: "identity" or a path to a matrix JSON file
        #[arg(long = "M", default_value = "identity")]
        m: String,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Common polynomial constants of motion of diag(a) and M flows
    Integrals {
        /// Comma-separated eigenvalues of the diagonal flow
        #[arg(long)]
        eigenvalues: String,
        #[arg(long = "M", default_value = "identity")]
        m: String,
        /// Degree bound for the polynomial search
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Issue a convergence certificate for a field and its symmetries
    Certify {
        /// Field document, then one or more symmetry documents
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        /// Which certificate: 1, 2, or "corollary" (planar)
        #[arg(long)]
        theorem: String,
        #[arg(long = "M", default_value = "identity")]
        m: String,
        /// Certificate truncation degree
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Stated number of independent linear symmetries (theorem 2;
        /// defaults to the number of symmetry files)
        #[arg(long)]
        ell: Option<usize>,
        #[command(flatten)]
        omega: OmegaArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a built-in example system as field documents
    Example {
        /// Which system: "rotation2d" or "so3"
        which: String,
        /// Invariant-power parameter k
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Truncation degree (defaults to 6 for rotation2d, 5 for so3)
        #[arg(long)]
        degree: Option<u32>,
        /// Write the field document here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the symmetry document here
        #[arg(long = "symmetry-out")]
        symmetry_out: Option<PathBuf>,
    },
}

/// Run the CLI on the given arguments and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            let _ = e.print();
            return EXIT_INPUT;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error ({}): {e}", e.kind());
            match e {
                Error::BudgetExceeded(_) => EXIT_BUDGET,
                _ => EXIT_INPUT,
            }
        }
    }
}

fn write_json(out: Option<&Path>, report: &Value) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::Parse(ParseError::Io {
                path: path.display().to_string(),
                source: e,
            })
        }),
    }
}

fn write_document(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| {
        Error::Parse(ParseError::Io {
            path: path.display().to_string(),
            source: e,
        })
    })
}

fn parse_eigenvalue_list(text: &str) -> Result<Vec<Coeff>, Error> {
    let values = text
        .split(',')
        .enumerate()
        .map(|(i, part)| parse_coeff(part.trim(), &format!("eigenvalues[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(Error::precondition("eigenvalue list is empty"));
    }
    Ok(values)
}

fn resolve_m(spec: &str, n: usize) -> Result<Matrix, Error> {
    if spec == "identity" {
        return Ok(Matrix::identity(n));
    }
    let m = parse_matrix_file(Path::new(spec))?;
    if m.rows() != n || m.cols() != n {
        return Err(Error::dimension(format!(
            "matrix M is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

/// Eigen data for a field: the document's eigen block when present, else the
/// diagonal of `A` when `A` is already diagonal.
fn resolve_eigen(field: &Field, eigen: Option<Eigen>) -> Result<Eigen, Error> {
    match eigen {
        Some(e) => Ok(e),
        None => {
            if field.linear_part().is_diagonal() {
                Ok(Eigen::diagonal(field.linear_part().diagonal_entries()))
            } else {
                Err(Error::precondition(
                    "the linear part is not diagonal; supply an eigen block with values and P",
                ))
            }
        }
    }
}

fn effective_degree(requested: Option<u32>, available: u32) -> Result<u32, Error> {
    let degree = requested.unwrap_or_else(|| available.min(6));
    if degree > available {
        return Err(Error::precondition(format!(
            "requested degree {degree} exceeds the document truncation {available}"
        )));
    }
    Ok(degree)
}

fn dispatch(command: Command) -> Result<i32, Error> {
    match command {
        Command::Normalize { field, degree, out } => cmd_normalize(&field, degree, out.as_deref()),
        Command::CheckOmega {
            eigenvalues,
            omega,
            out,
        } => cmd_check_omega(&eigenvalues, &omega, out.as_deref()),
        Command::CheckConditionA { field, degree, out } => {
            cmd_check_condition_a(&field, degree, out.as_deref())
        }
        Command::CheckSymmetry {
            field,
            symmetry,
            degree,
            out,
        } => cmd_check_symmetry(&field, &symmetry, degree, out.as_deref()),
        Command::FitShape {
            field,
            m,
            degree,
            out,
        } => cmd_fit_shape(&field, &m, degree, out.as_deref()),
        Command::Integrals {
            eigenvalues,
            m,
            degree,
            out,
        } => cmd_integrals(&eigenvalues, &m, degree, out.as_deref()),
        Command::Certify {
            files,
            theorem,
            m,
            degree,
            ell,
            omega,
            out,
        } => cmd_certify(&files, &theorem, &m, degree, ell, &omega, out.as_deref()),
        Command::Example {
            which,
            k,
            degree,
            out,
            symmetry_out,
        } => cmd_example(&which, k, degree, out.as_deref(), symmetry_out.as_deref()),
    }
}

fn cmd_normalize(path: &Path, degree: u32, out: Option<&Path>) -> Result<i32, Error> {
    let (_, field, eigen) = parse_field_file(path)?;
    let eigen = resolve_eigen(&field, eigen)?;
    if field.truncation() < degree {
        return Err(Error::precondition(format!(
            "requested degree {degree} exceeds the document truncation {}",
            field.truncation()
        )));
    }
    let nr = normalize(&field, &eigen, degree)?;
    let nf_eigen = Eigen::diagonal(eigen.values().to_vec());
    let nf_doc = document_from_field(&nr.normal_form, Some(&nf_eigen));
    let generators: Vec<Value> = nr
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(idx, g)| {
            json!({
                "degree": idx as u32 + 2,
                "field": serde_json::to_value(document_from_field(g, None)).unwrap(),
            })
        })
        .collect();
    let report = json!({
        "command": "normalize",
        "parameters": { "field": path.display().to_string(), "degree": degree },
        "result": {
            "normal_form": serde_json::to_value(&nf_doc).unwrap(),
            "generators": generators,
            "resonant_nonlinear_terms": nr.normal_form.nonlinear_terms().count(),
        },
    });
    if let Some(out_path) = out {
        write_document(out_path, &emit_document(&nf_doc))?;
    }
    write_json(None, &report)?;
    eprintln!(
        "normal form at degree {degree}: {} resonant nonlinear term(s), {} nonzero generator(s)",
        nr.normal_form.nonlinear_terms().count(),
        nr.generators.iter().filter(|g| !g.is_zero()).count()
    );
    Ok(EXIT_OK)
}

fn cmd_check_omega(eigenvalues: &str, omega: &OmegaArgs, out: Option<&Path>) -> Result<i32, Error> {
    let a = parse_eigenvalue_list(eigenvalues)?;
    let opts = omega.to_options()?;
    let report = check_omega(&a, &opts)?;
    let verdict = report.verdict;
    let value = json!({
        "command": "check-omega",
        "parameters": omega.echo(),
        "result": omega_report_json(&report)?,
    });
    write_json(out, &value)?;
    eprintln!("condition omega: {} at k_max = {}", verdict.as_str(), opts.k_max);
    Ok(match verdict {
        crate::small_divisors::OmegaVerdict::HoldsAtHorizon => EXIT_OK,
        _ => EXIT_UNSATISFIED,
    })
}

fn cmd_check_condition_a(
    path: &Path,
    degree: Option<u32>,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let (_, field, _) = parse_field_file(path)?;
    let degree = effective_degree(degree, field.truncation())?;
    let field = field.truncate_to(degree);
    let alpha = check_condition_a(&field)?;
    let satisfied = alpha.is_some();
    let report = json!({
        "command": "check-condition-a",
        "parameters": { "field": path.display().to_string(), "degree": degree },
        "result": {
            "satisfied": satisfied,
            "alpha": alpha.as_ref().map(|a| serde_json::to_value(poly_to_spec(a)).unwrap()),
        },
    });
    write_json(out, &report)?;
    eprintln!(
        "condition A {} up to degree {degree}",
        if satisfied { "satisfied" } else { "not satisfied" }
    );
    Ok(if satisfied { EXIT_OK } else { EXIT_UNSATISFIED })
}

fn cmd_check_symmetry(
    field_path: &Path,
    symmetry_path: &Path,
    degree: Option<u32>,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let (_, f, _) = parse_field_file(field_path)?;
    let (_, g, _) = parse_field_file(symmetry_path)?;
    let degree = effective_degree(degree, f.truncation().min(g.truncation()))?;
    let residual = check_symmetry(&f, &g, degree)?;
    let zero = residual.is_zero();
    let report = json!({
        "command": "check-symmetry",
        "parameters": {
            "field": field_path.display().to_string(),
            "symmetry": symmetry_path.display().to_string(),
            "degree": degree,
        },
        "result": {
            "residual_is_zero": zero,
            "residual": serde_json::to_value(document_from_field(&residual, None)).unwrap(),
        },
    });
    write_json(out, &report)?;
    eprintln!(
        "symmetry residual {} up to degree {degree}",
        if zero { "vanishes" } else { "does not vanish" }
    );
    Ok(if zero { EXIT_OK } else { EXIT_UNSATISFIED })
}

fn cmd_fit_shape(
    path: &Path,
    m_spec: &str,
    degree: Option<u32>,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let (_, field, _) = parse_field_file(path)?;
    let degree = effective_degree(degree, field.truncation())?;
    let field = field.truncate_to(degree);
    let m = resolve_m(m_spec, field.dim())?;
    let fit = fit_nf_shape(&field, &m)?;
    let fits = fit.is_some();
    let report = json!({
        "command": "fit-shape",
        "parameters": { "field": path.display().to_string(), "M": m_spec, "degree": degree },
        "result": {
            "fits": fits,
            "alpha": fit.as_ref().map(|f| serde_json::to_value(poly_to_spec(&f.alpha)).unwrap()),
            "mu": fit.as_ref().map(|f| serde_json::to_value(poly_to_spec(&f.mu)).unwrap()),
            "M": crate::io::matrix_to_strings(&m),
        },
    });
    write_json(out, &report)?;
    eprintln!(
        "two-matrix shape {} up to degree {degree}",
        if fits { "fits exactly" } else { "does not fit" }
    );
    Ok(if fits { EXIT_OK } else { EXIT_UNSATISFIED })
}

fn cmd_integrals(
    eigenvalues: &str,
    m_spec: &str,
    degree: u32,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let a = parse_eigenvalue_list(eigenvalues)?;
    let m = resolve_m(m_spec, a.len())?;
    let basis = common_linear_integrals(&a, &m, degree)?;
    let empty = basis.is_empty();
    let report = json!({
        "command": "integrals",
        "parameters": {
            "eigenvalues": a.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "M": m_spec,
            "degree": degree,
        },
        "result": {
            "dimension": basis.dimension(),
            "basis": basis
                .basis
                .iter()
                .map(|p| serde_json::to_value(poly_to_spec(p)).unwrap())
                .collect::<Vec<_>>(),
        },
    });
    write_json(out, &report)?;
    eprintln!(
        "common linear integrals up to degree {degree}: {}",
        basis.dimension()
    );
    Ok(if empty { EXIT_OK } else { EXIT_UNSATISFIED })
}

fn cmd_certify(
    files: &[PathBuf],
    theorem: &str,
    m_spec: &str,
    degree: u32,
    ell: Option<usize>,
    omega: &OmegaArgs,
    out: Option<&Path>,
) -> Result<i32, Error> {
    let (_, f, eigen) = parse_field_file(&files[0])?;
    let eigen = resolve_eigen(&f, eigen)?;
    let symmetries: Vec<Field> = files[1..]
        .iter()
        .map(|p| parse_field_file(p).map(|(_, g, _)| g))
        .collect::<Result<_, _>>()?;
    let opts = omega.to_options()?;
    let m = resolve_m(m_spec, f.dim())?;

    let report: CertificateReport = match theorem {
        "1" => {
            if symmetries.len() != 1 {
                return Err(Error::precondition(
                    "theorem 1 takes exactly one symmetry document",
                ));
            }
            certify_theorem1(&f, &symmetries[0], &eigen, &m, degree, &opts)?
        }
        "2" => {
            let ell = ell.unwrap_or(symmetries.len());
            certify_theorem2(&f, &symmetries, &eigen, &m, degree, &opts, ell)?
        }
        "corollary" | "corollary-2d" => {
            if symmetries.len() != 1 {
                return Err(Error::precondition(
                    "the planar corollary takes exactly one symmetry document",
                ));
            }
            corollary_2d(&f, &symmetries[0], &eigen, degree, &opts)?
        }
        other => {
            return Err(Error::precondition(format!(
                "unknown certificate `{other}`; use 1, 2, or corollary"
            )))
        }
    };

    let value = json!({
        "command": "certify",
        "parameters": {
            "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "theorem": theorem,
            "M": m_spec,
            "degree": degree,
            "ell": ell,
            "omega": omega.echo(),
        },
        "result": serde_json::to_value(&report).expect("certificate serializes"),
    });
    write_json(out, &value)?;
    eprintln!("verdict: {}", report.verdict.as_str());
    for h in &report.hypotheses {
        eprintln!("  [{}] {}: {}", status_tag(h.status), h.name, h.summary);
    }
    Ok(if report.verdict.is_certified() {
        EXIT_OK
    } else {
        EXIT_UNSATISFIED
    })
}

fn status_tag(status: crate::certify::HypothesisStatus) -> &'static str {
    use crate::certify::HypothesisStatus::*;
    match status {
        Pass => "pass",
        HorizonLimited => "horizon",
        Informational => "info",
        Fail => "FAIL",
        Indeterminate => "?",
    }
}

fn cmd_example(
    which: &str,
    k: u32,
    degree: Option<u32>,
    out: Option<&Path>,
    symmetry_out: Option<&Path>,
) -> Result<i32, Error> {
    let (f_doc, g_doc) = match which {
        "rotation2d" => {
            let degree = degree.unwrap_or(6);
            let (f, g) = build_example_rotation2d(k, degree)?;
            let eigen = eigenbasis_for_block_rotation(1);
            (
                document_from_field(&f, Some(&eigen)),
                document_from_field(&g, None),
            )
        }
        "so3" => {
            let degree = degree.unwrap_or(5);
            let (f, g, _) = build_example_so3(k, None, degree)?;
            let eigen = eigenbasis_for_block_rotation(3);
            (
                document_from_field(&f, Some(&eigen)),
                document_from_field(&g, None),
            )
        }
        other => {
            return Err(Error::precondition(format!(
                "unknown example `{other}`; use rotation2d or so3"
            )))
        }
    };
    if let Some(path) = out {
        write_document(path, &emit_document(&f_doc))?;
    }
    if let Some(path) = symmetry_out {
        write_document(path, &emit_document(&g_doc))?;
    }
    if out.is_none() && symmetry_out.is_none() {
        let report = json!({
            "command": "example",
            "parameters": { "which": which, "k": k },
            "result": {
                "field": serde_json::to_value(&f_doc).unwrap(),
                "symmetry": serde_json::to_value(&g_doc).unwrap(),
            },
        });
        write_json(None, &report)?;
    }
    eprintln!("example `{which}` with k = {k} emitted");
    Ok(EXIT_OK)
}

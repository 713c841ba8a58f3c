//! Command-line front end for `cutjoin-core`.
//!
//! Machine output goes to stdout, diagnostics to stderr. Exit codes: 0 on
//! success, 1 when a verified identity has a nonzero residual, 2 for invalid
//! or unsupported input, 3 for internal assembly failures.

pub mod document;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cutjoin_core::algebra::{Rational, Solution, XSeries};
use cutjoin_core::cutjoin::{
    dvv_leading_check, extract_relations, residual_theorem3_with, solve_relations, IdentityOptions,
    LinearRelation, Status, VerificationReport,
};
use cutjoin_core::hodge::{cmg_polynomial, psi_correlator, psi_memo_entries, psi_memo_preload};
use cutjoin_core::inversion::{omega_series, phi_poly, phi_series, DEFAULT_ORDER};
use cutjoin_core::{CorrelatorKey, CorrelatorProvider, Error, TauFun, YPolynomial};
use serde::Serialize;
use thiserror::Error as ThisError;

use document::{CacheFile, DocumentError, PolynomialDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONZERO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Stable,
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhiForm {
    Series,
    Poly,
}

#[derive(Debug, Parser)]
#[command(
    name = "cutjoin",
    version,
    about = "Exact checks of the symmetrized cut-join equation"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Correlator cache file, read before and written after the command.
    #[arg(long, global = true, env = "CUTJOIN_CACHE")]
    pub cache: Option<PathBuf>,
    /// Truncation order for series output.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Series coefficients of omega(x).
    Omega,
    /// The i-th phi function, as a series in x or a polynomial in y.
    Phi {
        #[arg(long)]
        i: u32,
        #[arg(long, value_enum, default_value_t = PhiForm::Poly)]
        form: PhiForm,
    },
    /// A psi-class intersection number.
    Psi {
        #[arg(long)]
        g: u32,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        b: Vec<u32>,
    },
    /// The generating polynomial in y.
    Cmg {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: usize,
    },
    /// Checks the symmetrized cut-join identity at (g, m).
    Verify {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = VerifyMode::Stable)]
        mode: VerifyMode,
    },
    /// Linear relations among unknown correlators, and their solution.
    Extract {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: usize,
        /// Keys `g:b1,b2,...:l1,...` separated by `;`.
        #[arg(long)]
        unknowns: String,
    },
    /// Checks the top-degree part of the identity.
    Dvv {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        m: usize,
    },
    /// All nonzero psi intersection numbers of genus g with up to N points.
    Table {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("invalid key {0:?}: expected g:b1,b2,...[:l1,...]")]
    BadKey(String),
    #[error("{0} is not supported for this command")]
    BadFormat(&'static str),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cache: {0}")]
    Cache(#[from] DocumentError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(
                Error::NotDivisible
                | Error::Inconsistent { .. }
                | Error::DivisionByZero
                | Error::NonzeroConstantTerm
                | Error::SymbolicAtom(_),
            ) => EXIT_INTERNAL,
            CliError::Io(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        }
    }
}

/// Parses `g:b1,b2:l1` into a key; the λ part may be omitted.
pub fn parse_key(spec: &str) -> Result<CorrelatorKey, CliError> {
    let bad = || CliError::BadKey(spec.to_string());
    let list = |s: &str| -> Result<Vec<u32>, CliError> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect()
    };
    let parts: Vec<&str> = spec.trim().split(':').collect();
    let (g, psi, lambda) = match parts.as_slice() {
        [g, psi] => (g, list(psi)?, Vec::new()),
        [g, psi, lambda] => (g, list(psi)?, list(lambda)?),
        _ => return Err(bad()),
    };
    let g: u32 = g.trim().parse().map_err(|_| bad())?;
    Ok(CorrelatorKey::new(g, &psi, &lambda))
}

pub fn parse_keyspec(spec: &str) -> Result<Vec<CorrelatorKey>, CliError> {
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_key)
        .collect()
}

#[derive(Serialize)]
struct FractionJson {
    num: String,
    den: String,
}

impl From<&Rational> for FractionJson {
    fn from(r: &Rational) -> Self {
        FractionJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[derive(Serialize)]
struct TauFunJson {
    num: String,
    den: String,
}

impl From<&TauFun> for TauFunJson {
    fn from(f: &TauFun) -> Self {
        TauFunJson {
            num: f.num().to_string(),
            den: f.den().to_string(),
        }
    }
}

#[derive(Serialize)]
struct SeriesJson {
    order: usize,
    coefficients: Vec<TauFunJson>,
}

#[derive(Serialize)]
struct KeyJson {
    genus: u32,
    psi: Vec<u32>,
    lambda: Vec<u32>,
}

impl From<&CorrelatorKey> for KeyJson {
    fn from(k: &CorrelatorKey) -> Self {
        KeyJson {
            genus: k.genus(),
            psi: k.psi_exponents().to_vec(),
            lambda: k.lambda_monomial().to_vec(),
        }
    }
}

#[derive(Serialize)]
struct ValueJson {
    key: KeyJson,
    value: FractionJson,
}

#[derive(Serialize)]
struct ReportJson {
    g: u32,
    m: usize,
    status: &'static str,
    witness: Option<Vec<u32>>,
    degree: Option<u32>,
    notes: Vec<String>,
    residual: PolynomialDocument,
}

#[derive(Serialize)]
struct RelationJson {
    atoms: Vec<KeyJson>,
    coefficients: Vec<FractionJson>,
    constant: FractionJson,
}

#[derive(Serialize)]
struct ExtractJson {
    g: u32,
    m: usize,
    relations: Vec<RelationJson>,
    solution: Vec<ValueJson>,
    underdetermined: Vec<KeyJson>,
    rank: usize,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("outputs always serialize");
    s.push('\n');
    s
}

fn series_output(s: &XSeries, format: Format) -> String {
    match format {
        Format::Json => json(&SeriesJson {
            order: s.order(),
            coefficients: s.coeffs().iter().map(TauFunJson::from).collect(),
        }),
        Format::Text => render::series_text(s),
        Format::Latex => render::series_latex(s) + "\n",
    }
}

fn poly_output(p: &YPolynomial, g: Option<u32>, m: Option<usize>, format: Format) -> String {
    match format {
        Format::Json => PolynomialDocument::from_poly(p, g, m).render() + "\n",
        Format::Text => render::poly_text(p),
        Format::Latex => render::poly_latex(p) + "\n",
    }
}

fn report_output(r: &VerificationReport, format: Format) -> Result<String, CliError> {
    let witness = match &r.status {
        Status::Zero => None,
        Status::Nonzero(e) => Some(e.clone()),
    };
    Ok(match format {
        Format::Json => json(&ReportJson {
            g: r.g,
            m: r.m,
            status: if witness.is_none() { "zero" } else { "nonzero" },
            witness,
            degree: r.lhs.total_degree(),
            notes: r.notes.clone(),
            residual: PolynomialDocument::from_poly(&r.residual, Some(r.g), Some(r.m)),
        }),
        Format::Text => {
            let mut out = format!("(g, m) = ({}, {})\n", r.g, r.m);
            match &witness {
                None => out.push_str("status: zero\n"),
                Some(e) => out.push_str(&format!("status: nonzero, witness monomial {e:?}\n")),
            }
            if let Some(d) = r.lhs.total_degree() {
                out.push_str(&format!("degree: {d}\n"));
            }
            for n in &r.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            if witness.is_some() {
                out.push_str("residual:\n");
                out.push_str(&render::poly_text(&r.residual));
            }
            out
        }
        Format::Latex => return Err(CliError::BadFormat("latex")),
    })
}

fn relation_json(r: &LinearRelation) -> RelationJson {
    RelationJson {
        atoms: r.atoms.iter().map(KeyJson::from).collect(),
        coefficients: r.coefficients.iter().map(FractionJson::from).collect(),
        constant: (&r.constant).into(),
    }
}

fn extract_output(
    g: u32,
    m: usize,
    relations: &[LinearRelation],
    solution: &Solution<CorrelatorKey>,
    format: Format,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json(&ExtractJson {
            g,
            m,
            relations: relations.iter().map(relation_json).collect(),
            solution: solution
                .values
                .iter()
                .map(|(k, v)| ValueJson {
                    key: k.into(),
                    value: v.into(),
                })
                .collect(),
            underdetermined: solution.underdetermined.iter().map(KeyJson::from).collect(),
            rank: solution.rank,
        }),
        Format::Text => {
            let mut out = String::new();
            for r in relations {
                out.push_str(&format!("{r}\n"));
            }
            for (k, v) in &solution.values {
                out.push_str(&format!("{k} = {v}\n"));
            }
            for k in &solution.underdetermined {
                out.push_str(&format!("{k} undetermined\n"));
            }
            out
        }
        Format::Latex => return Err(CliError::BadFormat("latex")),
    })
}

/// Nondecreasing exponent lists of length `n` summing to `total`.
fn sorted_compositions(total: u32, n: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, n: usize, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut b = min;
        while b as usize * n <= total as usize {
            prefix.push(b);
            go(total - b, n - 1, b, prefix, out);
            prefix.pop();
            b += 1;
        }
    }
    let mut out = Vec::new();
    go(total, n, 0, &mut Vec::new(), &mut out);
    out
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let format = cli.format;
    let provider = CorrelatorProvider::numeric();
    match &cli.command {
        Command::Omega => Ok((series_output(&omega_series(cli.order), format), EXIT_OK)),
        Command::Phi { i, form } => Ok((
            match form {
                PhiForm::Series => series_output(&phi_series(*i, cli.order), format),
                PhiForm::Poly => poly_output(&phi_poly(*i), None, None, format),
            },
            EXIT_OK,
        )),
        Command::Psi { g, b } => {
            let v = psi_correlator(*g, b)?;
            let key = CorrelatorKey::psi(*g, b);
            Ok((
                match format {
                    Format::Json => json(&ValueJson {
                        key: (&key).into(),
                        value: (&v).into(),
                    }),
                    Format::Text => format!("{v}\n"),
                    Format::Latex => render::rational_latex(&v) + "\n",
                },
                EXIT_OK,
            ))
        }
        Command::Cmg { g, m } => {
            let f = cmg_polynomial(*g, *m, &provider)?;
            if f.partial {
                eprintln!("warning: genus {g} keeps only the lambda-free part");
            }
            Ok((poly_output(&f.poly, Some(*g), Some(*m), format), EXIT_OK))
        }
        Command::Verify { g, m, mode } => {
            let opts = match mode {
                VerifyMode::Stable => IdentityOptions::default(),
                VerifyMode::ClosedForm => IdentityOptions::closed_form(),
            };
            let r = residual_theorem3_with::<TauFun>(*g, *m, &provider, &opts)?;
            let code = if r.is_zero() { EXIT_OK } else { EXIT_NONZERO };
            Ok((report_output(&r, format)?, code))
        }
        Command::Dvv { g, m } => {
            let r = dvv_leading_check(*g, *m)?;
            let code = if r.is_zero() { EXIT_OK } else { EXIT_NONZERO };
            Ok((report_output(&r, format)?, code))
        }
        Command::Extract { g, m, unknowns } => {
            let keys = parse_keyspec(unknowns)?;
            let relations = extract_relations(*g, *m, &keys)?;
            let solution = solve_relations(&relations, &keys)?;
            Ok((
                extract_output(*g, *m, &relations, &solution, format)?,
                EXIT_OK,
            ))
        }
        Command::Table { g, max_n } => {
            let mut rows = Vec::new();
            for n in 1..=*max_n {
                if 2 * *g as i64 - 2 + n as i64 <= 0 {
                    continue;
                }
                for b in sorted_compositions(3 * g + n as u32 - 3, n) {
                    let v = psi_correlator(*g, &b)?;
                    rows.push((CorrelatorKey::psi(*g, &b), v));
                }
            }
            Ok((
                match format {
                    Format::Json => json(
                        &rows
                            .iter()
                            .map(|(k, v)| ValueJson {
                                key: k.into(),
                                value: v.into(),
                            })
                            .collect::<Vec<_>>(),
                    ),
                    Format::Text => rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect(),
                    Format::Latex => rows
                        .iter()
                        .map(|(k, v)| {
                            let taus: Vec<String> = k
                                .psi_exponents()
                                .iter()
                                .map(|b| format!("\\tau_{{{b}}}"))
                                .collect();
                            format!(
                                "\\langle {} \\rangle_{{{}}} = {} \\\\\n",
                                taus.join(" "),
                                k.genus(),
                                render::rational_latex(v)
                            )
                        })
                        .collect(),
                },
                EXIT_OK,
            ))
        }
    }
}

fn load_cache(cli: &Cli) -> Result<(), CliError> {
    if let Some(path) = &cli.cache {
        match CacheFile::load(path)? {
            Some(c) => psi_memo_preload(c.psi_values()?),
            None => eprintln!("cache {} missing or stale, rebuilding", path.display()),
        }
    }
    Ok(())
}

fn save_cache(cli: &Cli) -> Result<(), CliError> {
    if let Some(path) = &cli.cache {
        CacheFile::from_values(psi_memo_entries()).save(path)?;
    }
    Ok(())
}

/// Runs one invocation, writing to the given streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = load_cache(&cli).and_then(|_| execute(&cli)).and_then(|r| {
        save_cache(&cli)?;
        Ok(r)
    });
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_INTERNAL;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

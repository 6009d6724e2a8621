//! Argument parsing and command execution for the `ejspec` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ejspec_core::elliptic::taylor_c;
use ejspec_core::operator::OperatorSpec;
use ejspec_core::oracle::{eig_root, m_oracle};
use ejspec_core::pseudospectra::{default_window, AxisRange, FieldMeta};
use ejspec_core::spectral::{eigenvalue, eigenvector, orthopoly, projection_norm, rodriguez, weyl_m};
use ejspec_core::Complex64 as C64;
use serde::Serialize;

use crate::format::{self, field_csv, fmt17, to_json, Complex, FieldRecord, Format, Num, SpecRecord};
use crate::sweep::{par_field, requested_threads};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn parse_complex(s: &str) -> Result<C64, String> {
    let mut parts = s.split(',');
    let re = parts.next().unwrap_or("").trim();
    let im = parts.next().map(str::trim);
    if parts.next().is_some() {
        return Err(format!("expected RE[,IM], got `{s}`"));
    }
    let num = |t: &str| t.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| format!("`{t}` is not a finite number"));
    Ok(C64::new(num(re)?, im.map(num).transpose()?.unwrap_or(0.0)))
}

fn parse_range(s: &str) -> Result<AxisRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, count] = parts[..] else {
        return Err(format!("expected lo:hi:count, got `{s}`"));
    };
    let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound `{lo}`"))?;
    let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound `{hi}`"))?;
    let count: usize = count.trim().parse().map_err(|_| format!("bad count `{count}`"))?;
    AxisRange::new(lo, hi, count).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Standard,
    Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Elliptic,
    Operator,
    Spectral,
    Oracle,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Modulus α as RE[,IM]; in tilde mode the operator parameter is β = 1/α.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: C64,
    #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
    pub mode: ModeArg,
    /// Size of the finite section used by the matrix-based computations.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Elliptic constants K, K′ and the nome.
    Constants(Common),
    /// Eigenvalues, with Newton roots of the section when --dim is given.
    Eigs {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        index: Option<i64>,
        #[arg(long)]
        entries: Option<usize>,
    },
    /// Leading eigenvector entries and the eigenprojection norm.
    Eigvec {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        index: i64,
        #[arg(long, default_value_t = 10)]
        entries: usize,
    },
    /// Weyl function, with the section value when --dim is given.
    Mfunc {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: C64,
    },
    /// Orthogonal polynomial of degree index − 1 by recurrence and by the Rodriguez formula.
    Poly {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: C64,
    },
    /// Grid of log10 resolvent norms of the section.
    Pseudo {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        re: Option<AxisRange>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        im: Option<AxisRange>,
    },
    /// Self-checks, one line per check.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Parser)]
#[command(name = "ejspec", version, about = "Spectra of the elliptic Jacobi operators J(α) and J̃(β)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A validated request.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Constants,
    Eigs { index: Option<i64> },
    Eigvec { index: i64, entries: usize },
    Mfunc { z: C64 },
    Poly { index: usize, z: C64 },
    Pseudo { re: AxisRange, im: AxisRange },
    Verify { suite: Suite },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub task: Task,
    pub spec: OperatorSpec,
    pub dim: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn operator_spec(common: &Common) -> Result<OperatorSpec, UsageError> {
    let a = common.alpha;
    match common.mode {
        ModeArg::Standard if a.norm() > 1.0 => Err(usage(format!(
            "--alpha: |α| = {} exceeds 1; use --mode tilde, which works with β = 1/α",
            a.norm()
        ))),
        ModeArg::Standard => Ok(OperatorSpec::standard(a)),
        ModeArg::Tilde if a.norm() <= 1.0 => Err(usage("--alpha: tilde mode needs |α| > 1 (then β = 1/α)")),
        ModeArg::Tilde => Ok(OperatorSpec::tilde(a.inv())),
    }
}

fn plan_from(common: &Common, task: Task, tables: bool) -> Result<Plan, UsageError> {
    let spec = operator_spec(common)?;
    if common.dim == Some(0) {
        return Err(usage("--dim must be positive"));
    }
    if let Some(t) = common.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(usage("--tol must lie in (0, 1)"));
        }
    }
    let format = match common.format {
        Some(FormatArg::Csv) if !tables => return Err(usage("--format csv applies to eigs, eigvec and pseudo")),
        Some(FormatArg::Csv) => Format::Csv,
        _ => Format::Json,
    };
    Ok(Plan { task, spec, dim: common.dim, tol: common.tol, seed: common.seed, out: common.out.clone(), format })
}

/// Parses command-line arguments (without the program name) into a plan.
pub fn plan(cli: Cli) -> Result<Plan, UsageError> {
    match cli.command {
        Command::Constants(c) => plan_from(&c, Task::Constants, false),
        Command::Eigs { common, index, entries } => {
            if entries.is_some() {
                return Err(usage("--entries applies to eigvec"));
            }
            plan_from(&common, Task::Eigs { index }, true)
        }
        Command::Eigvec { common, index, entries } => {
            if entries == 0 {
                return Err(usage("--entries must be positive"));
            }
            plan_from(&common, Task::Eigvec { index, entries }, true)
        }
        Command::Mfunc { common, z } => plan_from(&common, Task::Mfunc { z }, false),
        Command::Poly { common, index, z } => {
            if index == 0 {
                return Err(usage("--index: polynomial indices start at 1"));
            }
            plan_from(&common, Task::Poly { index, z }, false)
        }
        Command::Pseudo { common, re, im } => {
            let spec = operator_spec(&common)?;
            let (re, im) = match (re, im) {
                (Some(r), Some(i)) => (r, i),
                (r, i) => {
                    let (dr, di) = default_window(&spec, 201)
                        .map_err(|e| usage(format!("no default window ({e}); pass --re and --im")))?;
                    (r.unwrap_or(dr), i.unwrap_or(di))
                }
            };
            plan_from(&common, Task::Pseudo { re, im }, true)
        }
        Command::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Elliptic => Suite::Elliptic,
                SuiteArg::Operator => Suite::Operator,
                SuiteArg::Spectral => Suite::Spectral,
                SuiteArg::Oracle => Suite::Oracle,
                SuiteArg::All => Suite::All,
            };
            Ok(Plan {
                task: Task::Verify { suite },
                spec: OperatorSpec::standard(C64::new(0.0, 0.0)),
                dim: None,
                tol: None,
                seed,
                out: None,
                format: Format::Json,
            })
        }
    }
}

#[derive(Serialize)]
struct ConstantsOut {
    spec: SpecRecord,
    modulus: Complex,
    complementary_modulus: Complex,
    quarter_period: Complex,
    complementary_quarter_period: Complex,
    nome: Complex,
}

#[derive(Serialize)]
struct EigenvalueOut {
    index: i64,
    lambda: Complex,
    section: Option<Complex>,
}

#[derive(Serialize)]
struct EigsOut {
    spec: SpecRecord,
    dim: Option<usize>,
    eigenvalues: Vec<EigenvalueOut>,
}

#[derive(Serialize)]
struct EigvecOut {
    spec: SpecRecord,
    index: i64,
    lambda: Complex,
    entries: Vec<Complex>,
    projection_norm: Option<Num>,
}

#[derive(Serialize)]
struct MfuncOut {
    spec: SpecRecord,
    z: Complex,
    m: Complex,
    section: Option<Complex>,
}

#[derive(Serialize)]
struct PolyOut {
    spec: SpecRecord,
    index: usize,
    z: Complex,
    monic: Complex,
    normalised: Complex,
    rodriguez: Option<Complex>,
}

fn csv_table<W: Write>(header: [&str; 3], rows: impl Iterator<Item = (String, C64)>, w: W) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for (k, v) in rows {
        out.write_record([k, fmt17(v.re), fmt17(v.im)])?;
    }
    out.flush()?;
    Ok(())
}

fn json_line<T: Serialize>(v: &T) -> anyhow::Result<Vec<u8>> {
    let mut s = to_json(v)?.into_bytes();
    s.push(b'\n');
    Ok(s)
}

/// Runs a plan; the payload goes to `--out` or `out`, check lines of `verify` to `out`.
pub fn execute(plan: &Plan, out: &mut dyn Write) -> anyhow::Result<bool> {
    let spec = plan.spec;
    let rec = SpecRecord::from(&spec);
    let tol = plan.tol.unwrap_or(1e-13);
    let payload: Vec<u8> = match &plan.task {
        Task::Verify { suite } => {
            let checks = verify::run(*suite, plan.seed);
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            let ok = checks.iter().all(|c| c.passed());
            writeln!(out, "{} of {} checks passed", checks.iter().filter(|c| c.passed()).count(), checks.len())?;
            return Ok(ok);
        }
        Task::Constants => {
            let m = spec.modulus()?;
            json_line(&ConstantsOut {
                spec: rec,
                modulus: m.alpha.into(),
                complementary_modulus: m.alpha_prime.into(),
                quarter_period: m.big_k.into(),
                complementary_quarter_period: m.big_k_prime.into(),
                nome: m.nome.into(),
            })?
        }
        Task::Eigs { index } => {
            let indices: Vec<i64> = match index {
                Some(n) => vec![*n],
                None => (-5..=5).collect(),
            };
            let mut items = Vec::with_capacity(indices.len());
            for &n in &indices {
                let lambda = eigenvalue(&spec, n)?;
                let section = match plan.dim {
                    Some(d) => Some(eig_root(&spec, d, lambda, plan.tol.unwrap_or(1e-12), 100)?.into()),
                    None => None,
                };
                items.push(EigenvalueOut { index: n, lambda: lambda.into(), section });
            }
            match plan.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    let rows = items.iter().map(|e| (e.index.to_string(), C64::from(e.lambda)));
                    csv_table(["index", "re", "im"], rows, &mut buf)?;
                    buf
                }
                Format::Json => json_line(&EigsOut { spec: rec, dim: plan.dim, eigenvalues: items })?,
            }
        }
        Task::Eigvec { index, entries } => {
            let lambda = eigenvalue(&spec, *index)?;
            let v = eigenvector(&spec, *index, *entries, tol)?;
            match plan.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    csv_table(["k", "re", "im"], v.iter().enumerate().map(|(k, x)| ((k + 1).to_string(), *x)), &mut buf)?;
                    buf
                }
                Format::Json => {
                    let pn = projection_norm(&spec, *index, 32).ok().map(|p| Num(p.norm));
                    json_line(&EigvecOut {
                        spec: rec,
                        index: *index,
                        lambda: lambda.into(),
                        entries: v.into_iter().map(Complex::from).collect(),
                        projection_norm: pn,
                    })?
                }
            }
        }
        Task::Mfunc { z } => {
            let m = weyl_m(&spec, *z, tol)?;
            let section = match plan.dim {
                Some(d) => Some(m_oracle(&spec, *z, d)?.into()),
                None => None,
            };
            json_line(&MfuncOut { spec: rec, z: (*z).into(), m: m.into(), section })?
        }
        Task::Poly { index, z } => {
            let (monic, normalised) = orthopoly(&spec, *index, *z)?;
            let r = rodriguez(&spec, *index, *z, &taylor_c(index + 1)).ok().map(Complex::from);
            json_line(&PolyOut {
                spec: rec,
                index: *index,
                z: (*z).into(),
                monic: monic.into(),
                normalised: normalised.into(),
                rodriguez: r,
            })?
        }
        Task::Pseudo { re, im } => {
            let meta = FieldMeta { spec, dim: plan.dim.unwrap_or(1000), tol: plan.tol.unwrap_or(1e-4), seed: plan.seed };
            let field = par_field(meta, *re, *im, requested_threads())?;
            let mut buf = Vec::new();
            match plan.format {
                Format::Csv => field_csv(&field, &mut buf)?,
                Format::Json => buf = json_line(&FieldRecord::from(&field))?,
            }
            buf
        }
    };
    match &plan.out {
        Some(p) => std::fs::write(p, payload)?,
        None => out.write_all(&payload)?,
    }
    Ok(true)
}

/// Parses and runs one invocation, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let plan = match plan(cli) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&plan, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_NUMERICAL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NUMERICAL
        }
    }
}

pub use format::emit;

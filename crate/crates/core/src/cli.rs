//! Command-line front end.
//!
//! Table output starts with a `# equibif <version>` line; JSON output carries
//! no header. Everything else on stdout is a pure function of the arguments.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analyzer::{
    alternative_certificate, bounded_necessary, certify_unbounded, parse_candidates,
    resolve_candidates, symmetry_breaking, Certificate, Details, DEFAULT_SUBSET_BUDGET,
    TOOL_VERSION,
};
use crate::degree::deg_neg_id;
use crate::error::Error;
use crate::index::{index_report, CheckStatus, IndexReport, IndexRequest};
use crate::repr::{so2_decompose, SO2Rep};
use crate::spectrum::cache::SpectrumCache;
use crate::spectrum::{assemble_spectrum, hemisphere_spectrum, Spectrum, Tolerances};
use crate::system::{Gamma, Sign, SystemConfig};

pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "equibif",
    version,
    about = "SO(n)-equivariant bifurcation indices on geodesic balls of the sphere"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Spectrum cache directory (default: $EQUIBIF_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    #[arg(long)]
    n: u32,
    /// `hemisphere`, a multiple of pi such as `pi/3`, or radians.
    #[arg(long)]
    gamma: Gamma,
    #[arg(long)]
    lambda_max: Option<f64>,
    /// Highest mode scanned on the numerical path.
    #[arg(long)]
    m_scan_max: Option<u32>,
}

#[derive(Debug, Args)]
struct SystemArgs {
    #[command(flatten)]
    space: SpaceArgs,
    #[arg(long, default_value_t = 0)]
    p_minus: u32,
    #[arg(long, default_value_t = 0)]
    p_plus: u32,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long)]
    m0: usize,
    /// `+` or `-`.
    #[arg(long, allow_hyphen_values = true, default_value = "+")]
    sign: Sign,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dirichlet eigenvalues of the geodesic ball up to `--lambda-max`.
    Spectrum(SpaceArgs),
    /// SO(2) weights of the harmonic space of degree `m` in `n` variables.
    Decompose {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// deg(-Id) of a harmonic space (`--n --m`) or of explicit weights (`--rep 0:1,2:3`).
    Degree {
        #[arg(long, requires = "m", conflicts_with = "rep")]
        n: Option<u32>,
        #[arg(long, requires = "n")]
        m: Option<u32>,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Bifurcation index at ±lambda_m0 with the cone report.
    Index(PointArgs),
    /// Sum of indices over a candidate list such as `+1,-1`.
    Alternative {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        candidates: String,
    },
    /// Emit a certificate.
    #[command(subcommand)]
    Certify(CertifyCommand),
}

#[derive(Debug, Subcommand)]
enum CertifyCommand {
    Unbounded {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 8)]
        scan_bound: u32,
        #[arg(long, default_value_t = DEFAULT_SUBSET_BUDGET)]
        subset_budget: u64,
    },
    BoundedNecessary(PointArgs),
    SymmetryBreaking(PointArgs),
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

type Outcome = std::result::Result<(String, i32), Failure>;

struct Context<'a> {
    format: Format,
    cache: Option<SpectrumCache>,
    tol: Tolerances,
    err: &'a mut dyn Write,
}

impl Context<'_> {
    fn spectrum(
        &mut self,
        space: &SpaceArgs,
        needed: usize,
    ) -> std::result::Result<Spectrum, Failure> {
        let gamma = space.gamma.validate()?;
        let Some(lambda_max) = space.lambda_max else {
            if gamma.is_hemisphere() {
                return Ok(Spectrum {
                    n: space.n,
                    gamma,
                    records: hemisphere_spectrum(space.n, needed.max(1) as u32)?,
                });
            }
            return Err(Failure::Usage(
                "--lambda-max is required off the hemisphere".into(),
            ));
        };
        match &self.cache {
            Some(cache) => {
                let (s, outcome) = cache.load_or_assemble(
                    space.n,
                    gamma,
                    lambda_max,
                    space.m_scan_max,
                    &self.tol,
                )?;
                if let Some(w) = outcome.warning() {
                    let _ = writeln!(self.err, "warning: {w}");
                }
                Ok(s)
            }
            None => Ok(assemble_spectrum(
                space.n,
                gamma,
                lambda_max,
                space.m_scan_max,
                &self.tol,
            )?),
        }
    }

    fn render<T: Serialize>(
        &self,
        value: &T,
        table: impl FnOnce() -> String,
    ) -> std::result::Result<String, Failure> {
        Ok(match self.format {
            Format::Json => serde_json::to_string_pretty(value).map_err(Error::from)? + "\n",
            Format::Table => format!("# equibif {TOOL_VERSION}\n{}", table()),
        })
    }

    fn emit_certificate(&self, cert: &Certificate) -> Outcome {
        let text = self.render(cert, || certificate_table(cert))?;
        Ok((text, cert.exit_code()))
    }
}

fn system_config(args: &SystemArgs) -> std::result::Result<SystemConfig, Failure> {
    Ok(SystemConfig::new(
        args.space.n,
        args.space.gamma,
        args.p_minus,
        args.p_plus,
    )?)
}

fn parse_rep(text: &str) -> std::result::Result<SO2Rep, Failure> {
    let pairs = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (m, k) = t.split_once(':').ok_or_else(|| {
                Failure::Usage(format!("expected weight:multiplicity, got {t:?}"))
            })?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("bad number in {t:?}")))
            };
            Ok((parse(m)?, parse(k)?))
        })
        .collect::<std::result::Result<Vec<_>, Failure>>()?;
    Ok(SO2Rep::from_pairs(pairs))
}

fn spectrum_table(s: &Spectrum) -> String {
    let mut out = format!("n = {}, gamma = {}\n", s.n, s.gamma);
    let _ = writeln!(
        out,
        "{:>4}  {:>18}  {:<12}  {:>6}  {:>6}  eigenspace",
        "k", "lambda", "modes", "mu", "nu"
    );
    for (i, r) in s.records.iter().enumerate() {
        let modes = format!(
            "{{{}}}",
            r.gamma_set
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(
            out,
            "{:>4}  {:>18}  {:<12}  {:>6}  {:>6}  {}",
            i + 1,
            r.lambda.to_string(),
            modes,
            r.mu,
            r.nu,
            r.eigenspace
        );
    }
    out
}

fn index_table(spectrum: &Spectrum, r: &IndexReport) -> String {
    let req = &r.request;
    let lambda = spectrum
        .record(req.m0)
        .map(|rec| rec.lambda.signed(req.sign).to_string())
        .unwrap_or_default();
    let mut out = format!(
        "BIF({}lambda_{}) = {}   (lambda = {lambda}, n = {}, gamma = {}, p_minus = {}, p_plus = {})\n",
        req.sign.symbol(),
        req.m0,
        r.index,
        spectrum.n,
        spectrum.gamma,
        req.p_minus,
        req.p_plus
    );
    let c = &r.cone;
    let _ = writeln!(
        out,
        "dim V0 = {}, dim V- = {}, exponent = {}",
        c.dim_v0, c.dim_v_minus, c.exponent
    );
    let implied = c.implied.map_or("none".to_string(), |k| k.to_string());
    let _ = writeln!(out, "cone: {} (implied: {implied})", c.actual);
    let check = match r.closed_form_check {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skipped => "skipped",
    };
    let _ = writeln!(out, "closed form: {check}");
    out
}

fn certificate_table(cert: &Certificate) -> String {
    let kind = serde_json::to_value(cert.kind).ok();
    let verdict = serde_json::to_value(cert.verdict).ok();
    let as_str = |v: Option<serde_json::Value>| {
        v.and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default()
    };
    let c = &cert.config;
    let mut out = format!(
        "{}: n = {}, gamma = {}, p_minus = {}, p_plus = {}\n",
        as_str(kind),
        c.n,
        c.gamma,
        c.p_minus,
        c.p_plus
    );
    let _ = writeln!(out, "verdict: {}", as_str(verdict));
    for e in &cert.evidence {
        let _ = writeln!(
            out,
            "  {:<12} {:>14}  {}",
            e.eigenvalue.to_string(),
            e.lambda_signed.to_string(),
            e.index
        );
    }
    let _ = writeln!(out, "sum: {}", cert.sum);
    match &cert.details {
        Details::AlternativeSum { is_theta } => {
            let _ = writeln!(out, "sum is Theta: {is_theta}");
        }
        Details::Unbounded(d) => {
            for note in &d.notes {
                let _ = writeln!(out, "note: {note}");
            }
            let count = d
                .subsets_with_subject
                .map_or("> 2^63".to_string(), |c| c.to_string());
            let _ = writeln!(
                out,
                "subsets containing the subject: {count}; exhaustive: {}; structural: {}",
                d.exhaustive, d.structural
            );
        }
        Details::NecessaryConditions(d) => {
            for note in &d.notes {
                let _ = writeln!(out, "note: {note}");
            }
            for cond in &d.conditions {
                let status = serde_json::to_value(cond.status).ok();
                let _ = writeln!(out, "condition: {} [{}]", cond.statement, as_str(status));
            }
            if let Some(conclusion) = d.conclusion {
                let _ = writeln!(
                    out,
                    "conclusion: {}",
                    as_str(serde_json::to_value(conclusion).ok())
                );
            }
        }
        Details::SymmetryBreaking(d) => {
            let _ = writeln!(out, "modes: {:?}", d.gamma_set);
            if let Some(even) = d.even_m0 {
                let _ = writeln!(out, "m0 even: {even}");
            }
        }
    }
    out
}

fn dispatch(cli: Cli, ctx: &mut Context) -> Outcome {
    match cli.command {
        Command::Spectrum(space) => {
            if space.lambda_max.is_none() {
                return Err(Failure::Usage("spectrum needs --lambda-max".into()));
            }
            let s = ctx.spectrum(&space, 1)?;
            Ok((ctx.render(&s, || spectrum_table(&s))?, 0))
        }
        Command::Decompose { n, m } => {
            let rep = so2_decompose(n, m)?;
            let text = ctx.render(&rep, || {
                format!("H^{n}_{m} = {rep}   (dim {})\n", rep.dim())
            })?;
            Ok((text, 0))
        }
        Command::Degree { n, m, rep } => {
            let (label, rep) = match (n, m, rep) {
                (Some(n), Some(m), None) => (format!("H^{n}_{m}"), so2_decompose(n, m)?),
                (None, None, Some(text)) => {
                    let rep = parse_rep(&text)?;
                    (rep.to_string(), rep)
                }
                _ => return Err(Failure::Usage("give either --n and --m, or --rep".into())),
            };
            let degree = deg_neg_id(&rep);
            let text = ctx.render(&degree, || format!("deg(-Id, {label}) = {degree}\n"))?;
            Ok((text, 0))
        }
        Command::Index(point) => {
            let config = system_config(&point.system)?;
            let s = ctx.spectrum(&point.system.space, point.m0)?;
            let req = IndexRequest::new(point.m0, point.sign, config.p_minus, config.p_plus);
            let report = index_report(&s, &req)?;
            Ok((ctx.render(&report, || index_table(&s, &report))?, 0))
        }
        Command::Alternative { system, candidates } => {
            let config = system_config(&system)?;
            let wanted =
                parse_candidates(&candidates).map_err(|e| Failure::Usage(e.to_string()))?;
            let needed = wanted.iter().map(|&(_, k)| k).max().unwrap_or(1);
            let s = ctx.spectrum(&system.space, needed)?;
            let chosen = resolve_candidates(&wanted, &config, &s)?;
            let cert = alternative_certificate(&chosen, &config, &s, &ctx.tol)?;
            ctx.emit_certificate(&cert)
        }
        Command::Certify(which) => match which {
            CertifyCommand::Unbounded {
                point,
                scan_bound,
                subset_budget,
            } => {
                let config = system_config(&point.system)?;
                let cert =
                    certify_unbounded(&config, point.m0, point.sign, scan_bound, subset_budget)?;
                ctx.emit_certificate(&cert)
            }
            CertifyCommand::BoundedNecessary(point) => {
                let config = system_config(&point.system)?;
                let s = ctx.spectrum(&point.system.space, point.m0)?;
                let cert = bounded_necessary(&config, &s, point.m0, point.sign, &ctx.tol)?;
                ctx.emit_certificate(&cert)
            }
            CertifyCommand::SymmetryBreaking(point) => {
                let config = system_config(&point.system)?;
                let s = ctx.spectrum(&point.system.space, point.m0)?;
                let cert = symmetry_breaking(&config, &s, point.m0, point.sign, &ctx.tol)?;
                ctx.emit_certificate(&cert)
            }
        },
    }
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir
            .clone()
            .map(SpectrumCache::new)
            .or_else(SpectrumCache::from_env)
    };
    let mut ctx = Context {
        format: cli.format,
        cache,
        tol: Tolerances::default(),
        err,
    };
    match dispatch(cli, &mut ctx) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(ctx.err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("equibif").chain(args.split_whitespace());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call("").0, EXIT_USAGE);
        assert_eq!(call("spectrum --n 2").0, EXIT_USAGE);
        assert_eq!(call("spectrum --n 2 --gamma hemisphere").0, EXIT_USAGE);
        assert_eq!(
            call("index --n 2 --gamma pi/3 --m0 1 --p-minus 1").0,
            EXIT_USAGE
        );
        assert_eq!(call("degree --n 3").0, EXIT_USAGE);
        assert_eq!(call("decompose --n 3 --m x").0, EXIT_USAGE);
        assert_eq!(
            call("spectrum --n 2 --gamma 4 --lambda-max 5").0,
            EXIT_USAGE
        );
    }

    #[test]
    fn help_and_version_exit_zero() {
        let (code, out, _) = call("--help");
        assert_eq!(code, 0);
        assert!(out.contains("certify"));
        assert_eq!(call("--version").0, 0);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, _, err) =
            call("index --n 2 --gamma hemisphere --m0 1 --sign + --p-minus 0 --p-plus 1");
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("signature"));
        assert_eq!(call("decompose --n 1 --m 2").0, EXIT_ERROR);
        assert_eq!(
            call("alternative --n 2 --gamma hemisphere --p-minus 1 --candidates -1").0,
            EXIT_ERROR
        );
    }

    #[test]
    fn spectrum_table_and_json() {
        let (code, out, _) = call("spectrum --n 2 --gamma hemisphere --lambda-max 21");
        assert_eq!(code, 0);
        assert!(out.starts_with("# equibif "));
        assert_eq!(out.lines().count(), 1 + 2 + 4);
        let (_, json, _) = call("spectrum --n 2 --gamma hemisphere --lambda-max 21 --format json");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let lambdas: Vec<u64> = v["records"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["lambda"].as_u64().unwrap())
            .collect();
        assert_eq!(lambdas, [2, 6, 12, 20]);
    }

    #[test]
    fn negative_sign_and_candidates() {
        let (code, out, _) = call(
            "index --n 2 --gamma hemisphere --m0 1 --sign - --p-minus 1 --p-plus 1 --format json",
        );
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["index"]["coeffs"], serde_json::json!([[0, "-2"]]));
        let (code, out, _) = call("alternative --n 2 --gamma hemisphere --p-minus 1 --p-plus 1 --candidates -1,+1 --format json");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["sum"]["coeffs"], serde_json::json!([[0, "-4"]]));
    }

    #[test]
    fn certificate_exit_codes() {
        assert_eq!(
            call("certify symmetry-breaking --n 2 --gamma hemisphere --m0 3 --p-minus 1").0,
            3
        );
        assert_eq!(
            call("certify unbounded --n 2 --gamma hemisphere --m0 1 --p-minus 2 --p-plus 2").0,
            2
        );
        assert_eq!(
            call("certify unbounded --n 2 --gamma hemisphere --m0 3 --p-minus 2 --p-plus 2").0,
            0
        );
        assert_eq!(
            call(
                "certify bounded-necessary --n 2 --gamma hemisphere --m0 2 --p-minus 2 --p-plus 3"
            )
            .0,
            0
        );
        assert_eq!(
            call(
                "certify bounded-necessary --n 2 --gamma hemisphere --m0 2 --p-minus 1 --p-plus 3"
            )
            .0,
            2
        );
    }

    #[test]
    fn degree_from_weights() {
        let (code, out, _) = call("degree --rep 0:1,2:3 --format json");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["coeffs"], serde_json::json!([[0, "-1"], [2, "3"]]));
    }

    #[test]
    fn cache_directory_is_used() {
        let dir = tempfile::tempdir().unwrap();
        let args = format!(
            "spectrum --n 2 --gamma hemisphere --lambda-max 21 --cache-dir {}",
            dir.path().display()
        );
        let first = call(&args);
        let second = call(&args);
        assert_eq!(first, second);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}

//! The `pnt` command-line front end.
//!
//! Every subcommand builds a [`Table`] and writes it to stdout as CSV or TSV;
//! diagnostics, the constants in force and precision notes go to stderr.
//! Exit codes: 0 success, 1 usage, 2 data, 3 contract failure.

pub mod cache;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use pnt_core::complex::parse_complex;
use pnt_core::explicit::{
    ik_error_envelope_log, pnt1_envelope, pnt2_envelope, pnt3_envelope, pnt_error_envelope, sharp_sum, smooth_sum,
    zero_side, EnvelopeParams, ZeroSideOptions,
};
use pnt_core::kernel::KernelParams;
use pnt_core::lfun::{
    conductor_bounds, l1_dirichlet_diagnostic, load_descriptor, rankin_selberg, short_interval_l1_diagnostic,
    RsOptions,
};
use pnt_core::regions::{default_t_max, eta_closed_form, eta_grid, repulsion_bound, ZeroFreeRegion};
use pnt_core::report::{Cell, Table};
use pnt_core::stream::visit_terms;
use pnt_core::zeros::{density_report, load_zeros, LoadOptions, ZeroDataset};
use pnt_core::{LFunctionData, StreamConfig};

use crate::cache::FileCache;
use crate::config::{load_config, Format, RunConfig, DEFAULT_CONFIG};
use crate::error::{CliError, CliResult};
use crate::output::emit_table;

pub const CACHE_ENV: &str = "PNT_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "pnt", version, about = "Prime number theorem tools for L-functions")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Config file; `pnt.conf` in the working directory is read when present.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Sieve segment cache directory (overrides PNT_CACHE_DIR and the config).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Exit with status 3 when any numeric cell is NaN.
    #[arg(long, global = true)]
    strict: bool,
    /// Report summation diagnostics on stderr.
    #[arg(long, global = true)]
    precision_report: bool,
    /// Largest admissible sieve bound.
    #[arg(long, global = true)]
    capacity: Option<f64>,
    /// Override a constant, `name=value`; repeatable.
    #[arg(long = "constant", global = true, value_name = "NAME=VALUE")]
    constants: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sharp sums of a(n) Lambda(n) up to each x.
    Psi {
        #[arg(long)]
        lf: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
    },
    /// Smoothed prime sum against the zero side of the explicit formula.
    Compare(CompareArgs),
    /// Error envelopes of the prime number theorems.
    Envelope(EnvelopeArgs),
    /// eta(x) for a zero-free region: closed form against the grid minimum.
    Eta(EtaArgs),
    /// Repulsion bound from an exceptional zero over a grid of heights.
    Repulsion {
        #[arg(long)]
        beta0: f64,
        #[arg(long)]
        conductor: f64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma_grid: Vec<f64>,
    },
    /// The smoothing kernel.
    Kernel {
        #[command(subcommand)]
        action: KernelAction,
    },
    /// Zero dataset statistics.
    Zeros {
        #[command(subcommand)]
        action: ZerosAction,
    },
    /// Analytic conductor of an L-function or a Rankin-Selberg product.
    Conductor {
        #[arg(long)]
        lf: PathBuf,
        /// Second factor of a Rankin-Selberg product.
        #[arg(long)]
        with: Option<PathBuf>,
        /// Leave primes ramified in both factors out of the product.
        #[arg(long)]
        skip_ramified: bool,
    },
    /// The two l1 coefficient diagnostics.
    DiagnoseD {
        #[arg(long)]
        lf: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1")]
        eta: Vec<f64>,
        #[arg(long, default_value_t = 1e5)]
        cutoff: f64,
        #[arg(long, value_delimiter = ',', default_value = "10000")]
        x: Vec<f64>,
        #[arg(long = "T", value_delimiter = ',', default_value = "10")]
        t: Vec<f64>,
    },
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(long)]
    lf: PathBuf,
    #[arg(long)]
    zeros: PathBuf,
    /// Treat the zero file as positive ordinates only.
    #[arg(long)]
    half: bool,
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    /// Kernel order; with --eps, replaces the recipe at --a.
    #[arg(long, requires = "eps")]
    ell: Option<u32>,
    #[arg(long, requires = "ell")]
    eps: Option<f64>,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    /// Truncation heights (default: the dataset's completeness).
    #[arg(long = "t-trunc", value_delimiter = ',')]
    t_trunc: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Main,
    Ik,
    Pnt1,
    Pnt2,
    Pnt3,
}

#[derive(Args, Debug)]
struct EnvelopeArgs {
    #[arg(long, value_enum)]
    theorem: Theorem,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    m_prime: usize,
    /// log C, or log(C C') for the product statements.
    #[arg(long, default_value_t = 0.0)]
    log_c: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    /// Exceptional zero, or the beta_1 of the corollaries; 1/2 means none.
    #[arg(long, default_value_t = 0.5)]
    beta0: f64,
    /// eta per x (default: the classical region's closed form).
    #[arg(long, value_delimiter = ',')]
    eta: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Classical,
    Brumley,
    Constant,
    Grh,
}

#[derive(Args, Debug)]
struct EtaArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    m_prime: u32,
    #[arg(long, default_value_t = 0.0)]
    log_cc: f64,
    #[arg(long = "A")]
    big_a: Option<f64>,
    #[arg(long = "B")]
    big_b: Option<f64>,
    #[arg(long)]
    delta0: Option<f64>,
    #[arg(long, alias = "x-grid", value_delimiter = ',', required = true)]
    x: Vec<f64>,
    #[arg(long, default_value_t = 4000)]
    points: usize,
}

#[derive(Subcommand, Debug)]
enum KernelAction {
    /// f on a t-grid and F on a z-grid.
    Probe {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 64)]
        t_points: usize,
        /// Complex literals such as `2+3i`; default is a fixed grid around the origin and the real axis.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ZerosAction {
    /// N(sigma, T), and N* when --beta0 is given.
    Count {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        half: bool,
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<f64>,
        #[arg(long = "T", value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long)]
        beta0: Option<f64>,
    },
    /// Counts against the log-free density envelopes.
    Density {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        half: bool,
        #[arg(long)]
        lf: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.6,0.75,0.9")]
        sigma: Vec<f64>,
        #[arg(long = "T", value_delimiter = ',', default_value = "100,1000")]
        t: Vec<f64>,
    },
    /// Zeros in the disc |rho - (1 + it)| <= eta against the local count bound.
    Disc {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        half: bool,
        #[arg(long)]
        lf: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        t: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        eta: Vec<f64>,
    },
}

/// Run with `argv` (program name first); returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            let is_info = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            if is_info {
                let _ = write!(out, "{}", e.render());
            }
            return if is_info { 0 } else { 1 };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let rc = run_config(cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let mut notes = Vec::new();
    let table = pool.install(|| dispatch(&cli.command, &rc, &mut notes));
    err.write_all(&notes)?;
    let table = table?;
    echo_constants(&rc, err)?;
    write_table(&table, &rc, out)
}

/// The table is written even when `--strict` then fails the run.
fn write_table(table: &Table, rc: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    out.write_all(&emit_table(table, rc.format)?)?;
    if rc.strict && table.has_nan() {
        return Err(CliError::Contract("output contains NaN".into()));
    }
    Ok(())
}

fn run_config(cli: &Cli) -> CliResult<RunConfig> {
    let mut rc = RunConfig::default();
    match &cli.config {
        Some(path) => load_config(path, &mut rc)?,
        None if Path::new(DEFAULT_CONFIG).is_file() => load_config(Path::new(DEFAULT_CONFIG), &mut rc)?,
        None => {}
    }
    for spec in &cli.constants {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--constant expects NAME=VALUE, got `{spec}`")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad value in `{spec}`")))?;
        rc.constants
            .set(name.trim(), value)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        rc.cache_dir = Some(PathBuf::from(dir));
    }
    if let Some(dir) = &cli.cache_dir {
        rc.cache_dir = Some(dir.clone());
    }
    if cli.no_cache {
        rc.cache_dir = None;
    }
    if let Some(f) = cli.format {
        rc.format = f;
    }
    if let Some(cap) = cli.capacity {
        if !(cap >= 1.0 && cap <= u64::MAX as f64) {
            return Err(CliError::Usage(format!("bad capacity {cap}")));
        }
        rc.capacity = cap as u64;
    }
    rc.strict = cli.strict;
    rc.precision_report = cli.precision_report;
    rc.validate()?;
    Ok(rc)
}

fn echo_constants(rc: &RunConfig, err: &mut dyn Write) -> CliResult<()> {
    let c = &rc.constants;
    for (name, v) in c.entries() {
        writeln!(err, "# {name} = {}", output::fmt_g(v))?;
    }
    writeln!(err, "# brumley_c = {}", output::fmt_g(c.brumley_c.default))?;
    for ((m, mp), v) in &c.brumley_c.table {
        writeln!(err, "# brumley_c.{m}.{mp} = {}", output::fmt_g(*v))?;
    }
    Ok(())
}

fn stream_config(rc: &RunConfig, lf: &LFunctionData) -> CliResult<StreamConfig> {
    let cache = match &rc.cache_dir {
        Some(dir) => Some(Arc::new(FileCache::new(dir, lf)?) as Arc<dyn pnt_core::SegmentCache>),
        None => None,
    };
    Ok(StreamConfig {
        capacity: rc.capacity,
        segment_len: rc.segment_len,
        cache,
    })
}

fn zeros_file(path: &Path, half: bool) -> CliResult<ZeroDataset> {
    Ok(load_zeros(path, &LoadOptions { half })?)
}

/// Self-dual data must produce real sums.
fn check_real(lf: &LFunctionData, what: &str, z: Complex64) -> CliResult<()> {
    if lf.is_self_dual() && z.im.abs() > 1e-8 * (1.0 + z.re.abs()) {
        return Err(CliError::Contract(format!(
            "{what} for self-dual {} has imaginary part {}",
            lf.label(),
            z.im
        )));
    }
    Ok(())
}

fn dispatch(cmd: &Command, rc: &RunConfig, err: &mut Vec<u8>) -> CliResult<Table> {
    let k = &rc.constants;
    match cmd {
        Command::Psi { lf, x } => {
            let lf = load_descriptor(lf)?;
            let cfg = stream_config(rc, &lf)?;
            let mut t = Table::new(["x", "sharp_re", "sharp_im"]);
            for &x in x {
                let s = sharp_sum(&lf, x, &cfg)?;
                check_real(&lf, "sharp sum", s)?;
                if rc.precision_report {
                    precision_note(&lf, x, s, &cfg, err)?;
                }
                t.push(vec![x.into(), s.re.into(), s.im.into()])?;
            }
            Ok(t)
        }
        Command::Compare(a) => compare(a, rc),
        Command::Envelope(a) => envelope(a, rc),
        Command::Eta(a) => eta(a),
        Command::Repulsion { beta0, conductor, m, gamma_grid } => {
            let mut t = Table::new(["gamma", "bound", "below_three_quarters", "improved"]);
            for &g in gamma_grid {
                let r = repulsion_bound(*beta0, *conductor, *m, g, k)?;
                t.push(vec![g.into(), r.value.into(), r.below_three_quarters.into(), r.improved.into()])?;
            }
            Ok(t)
        }
        Command::Kernel { action: KernelAction::Probe { x, ell, eps, t_points, z } } => {
            kernel_probe(*x, *ell, *eps, *t_points, z)
        }
        Command::Zeros { action } => zeros(action, rc),
        Command::Conductor { lf, with, skip_ramified } => {
            let a = load_descriptor(lf)?;
            let mut t = Table::new(["label", "degree", "conductor", "analytic_conductor", "lower", "upper"]);
            match with {
                None => {
                    let c = a.analytic_conductor();
                    t.push(vec![
                        a.label().into(),
                        a.degree().into(),
                        a.conductor().into(),
                        c.into(),
                        c.into(),
                        c.into(),
                    ])?;
                }
                Some(b) => {
                    let b = load_descriptor(b)?;
                    let opts = RsOptions { skip_ramified: *skip_ramified, ..RsOptions::default() };
                    let rs = rankin_selberg(&a, &b, None, opts)?;
                    let (lo, hi) = conductor_bounds(&a, &b)?;
                    t.push(vec![
                        rs.label().into(),
                        rs.degree().into(),
                        rs.conductor().into(),
                        rs.analytic_conductor().into(),
                        lo.into(),
                        hi.into(),
                    ])?;
                }
            }
            Ok(t)
        }
        Command::DiagnoseD { lf, eta, cutoff, x, t } => {
            let lf = load_descriptor(lf)?;
            let cfg = stream_config(rc, &lf)?;
            let m = lf.degree() as f64;
            let log_c = lf.analytic_conductor().ln();
            let mut table = Table::new(["diagnostic", "eta", "cutoff", "x", "T", "value", "reference", "ratio"]);
            let blank = || Cell::Text(String::new());
            for &e in eta {
                let v = l1_dirichlet_diagnostic(&lf, e, *cutoff, &cfg)?;
                let reference = m / e + m * log_c + k.c_l1 * m * m;
                table.push(vec![
                    "l1_dirichlet".into(),
                    e.into(),
                    (*cutoff).into(),
                    blank(),
                    blank(),
                    v.into(),
                    reference.into(),
                    (v / reference).into(),
                ])?;
            }
            for &xv in x {
                for &tv in t {
                    let v = short_interval_l1_diagnostic(&lf, xv, tv, &cfg)?;
                    let reference = k.c_short_interval * m * xv / tv;
                    table.push(vec![
                        "short_interval".into(),
                        blank(),
                        blank(),
                        xv.into(),
                        tv.into(),
                        v.into(),
                        reference.into(),
                        (v / reference).into(),
                    ])?;
                }
            }
            Ok(table)
        }
    }
}

/// Compensated against naive summation, with the naive sum's a priori bound.
fn precision_note(
    lf: &LFunctionData,
    x: f64,
    compensated: Complex64,
    cfg: &StreamConfig,
    err: &mut Vec<u8>,
) -> CliResult<()> {
    let (mut naive, mut abs, mut terms) = (Complex64::new(0.0, 0.0), 0.0, 0u64);
    visit_terms(lf, 1.0, x, cfg, |t| {
        naive += t.value;
        abs += t.value.norm();
        terms += 1;
        Ok(())
    })?;
    writeln!(
        err,
        "# precision x = {} terms = {terms} naive_minus_compensated = {} naive_bound = {}",
        output::fmt_g(x),
        output::fmt_g((naive - compensated).norm()),
        output::fmt_g(terms as f64 * f64::EPSILON * abs),
    )?;
    Ok(())
}

fn compare(a: &CompareArgs, rc: &RunConfig) -> CliResult<Table> {
    let lf = load_descriptor(&a.lf)?;
    let ds = zeros_file(&a.zeros, a.half)?;
    let cfg = stream_config(rc, &lf)?;
    let heights = if a.t_trunc.is_empty() { vec![ds.completeness()] } else { a.t_trunc.clone() };
    let mut t = Table::new([
        "x",
        "ell",
        "eps",
        "T",
        "smooth_re",
        "smooth_im",
        "zero_side_re",
        "zero_side_im",
        "gap",
        "tail_estimate",
        "allowance",
        "zeros_used",
        "within_bound",
    ]);
    for &x in &a.x {
        let kp = match (a.ell, a.eps) {
            (Some(ell), Some(eps)) => KernelParams::new(x, ell, eps)?,
            _ => KernelParams::recipe(x, a.a, lf.degree(), &rc.constants)?,
        };
        let smooth = smooth_sum(&lf, &kp, &cfg)?;
        check_real(&lf, "smoothed sum", smooth)?;
        for &h in &heights {
            let side = zero_side(&lf, &kp, &ds, &ZeroSideOptions::new(h), &rc.constants)?;
            check_real(&lf, "zero side", side.value)?;
            let gap = (side.value - smooth).norm();
            t.push(vec![
                x.into(),
                u64::from(kp.ell()).into(),
                kp.eps().into(),
                h.into(),
                smooth.re.into(),
                smooth.im.into(),
                side.value.re.into(),
                side.value.im.into(),
                gap.into(),
                side.tail_estimate.into(),
                side.allowance.into(),
                side.zeros_used.into(),
                (gap <= side.tail_estimate + side.allowance).into(),
            ])?;
        }
    }
    Ok(t)
}

fn envelope(a: &EnvelopeArgs, rc: &RunConfig) -> CliResult<Table> {
    let k = &rc.constants;
    if !a.eta.is_empty() && a.eta.len() != a.x.len() {
        return Err(CliError::Usage(format!("--eta has {} values for {} x values", a.eta.len(), a.x.len())));
    }
    let mut t = Table::new(["x", "theorem", "log_value", "value", "factor", "vacuous", "log_x_threshold"]);
    let name = format!("{:?}", a.theorem).to_lowercase();
    for (i, &x) in a.x.iter().enumerate() {
        let row: Vec<Cell> = match a.theorem {
            Theorem::Ik => {
                if !(x >= 3.0) {
                    return Err(CliError::Usage(format!("need x >= 3, got {x}")));
                }
                let e = ik_error_envelope_log(a.m, a.log_c, x.ln(), k)?;
                let factor = (e.log_value - x.ln()).exp();
                vec![
                    e.log_value.into(),
                    e.value.into(),
                    factor.into(),
                    (factor >= 1.0).into(),
                    e.log_x_nontrivial.into(),
                ]
            }
            theorem => {
                let e = match theorem {
                    Theorem::Main => {
                        let m = u32::try_from(a.m).map_err(|_| CliError::Usage("m too large".into()))?;
                        let eta = match a.eta.get(i) {
                            Some(&e) => e,
                            None => eta_closed_form(&ZeroFreeRegion::classical(k.c_zfr, m, m, a.log_c)?, x)?,
                        };
                        pnt_error_envelope(a.m, a.log_c, x, &EnvelopeParams::new(a.a, a.beta0)?, eta, k)?
                    }
                    Theorem::Pnt1 => pnt1_envelope(a.m, a.log_c, x, a.beta0, k)?,
                    Theorem::Pnt2 => pnt2_envelope(a.m, a.m_prime, a.log_c, x, a.beta0, k)?,
                    _ => pnt3_envelope(a.m, a.m_prime, a.log_c, x, k)?,
                };
                vec![
                    e.value.ln().into(),
                    e.value.into(),
                    e.factor.into(),
                    e.vacuous.into(),
                    e.log_x_min.into(),
                ]
            }
        };
        let mut full: Vec<Cell> = vec![x.into(), name.as_str().into()];
        full.extend(row);
        t.push(full)?;
    }
    Ok(t)
}

fn eta(a: &EtaArgs) -> CliResult<Table> {
    let need = |v: Option<f64>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--family needs {flag}")));
    let region = match a.family {
        Family::Classical => ZeroFreeRegion::classical(a.c, a.m, a.m_prime, a.log_cc)?,
        Family::Brumley => ZeroFreeRegion::brumley(need(a.big_a, "--A")?, need(a.big_b, "--B")?)?,
        Family::Constant => ZeroFreeRegion::constant(need(a.delta0, "--delta0")?)?,
        Family::Grh => ZeroFreeRegion::Grh,
    };
    let mut t = Table::new(["x", "eta_closed", "eta_grid", "exp_neg_eta"]);
    for &x in &a.x {
        let closed = eta_closed_form(&region, x)?;
        let grid = eta_grid(&region, x, default_t_max(x), a.points)?;
        t.push(vec![x.into(), closed.into(), grid.into(), (-closed).exp().into()])?;
    }
    Ok(t)
}

fn kernel_probe(x: f64, ell: u32, eps: f64, t_points: usize, z: &[String]) -> CliResult<Table> {
    let kp = KernelParams::new(x, ell, eps)?;
    if t_points < 2 {
        return Err(CliError::Usage("--t-points must be at least 2".into()));
    }
    let zs: Vec<Complex64> = if z.is_empty() {
        let l = kp.log_x();
        [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (-l, 0.0), (-0.5 * l, 0.0), (2.0, 3.0)]
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect()
    } else {
        z.iter()
            .map(|s| parse_complex(s).ok_or_else(|| CliError::Usage(format!("bad complex literal `{s}`"))))
            .collect::<CliResult<_>>()?
    };
    let mut t = Table::new(["kind", "arg_re", "arg_im", "value_re", "value_im"]);
    let (lo, hi) = kp.support();
    for i in 0..t_points {
        let s = lo + (hi - lo) * i as f64 / (t_points - 1) as f64;
        t.push(vec!["f".into(), s.into(), 0.0.into(), kp.f(s).into(), 0.0.into()])?;
    }
    for z in zs {
        let v = kp.transform(z);
        t.push(vec!["F".into(), z.re.into(), z.im.into(), v.re.into(), v.im.into()])?;
    }
    Ok(t)
}

fn zeros(action: &ZerosAction, rc: &RunConfig) -> CliResult<Table> {
    match action {
        ZerosAction::Count { file, half, sigma, t, beta0 } => {
            let ds = zeros_file(file, *half)?;
            let mut table = Table::new(["sigma", "T", "count_N", "count_N_star"]);
            for &s in sigma {
                for &h in t {
                    let n = ds.count_n(s, h)?;
                    let star: Cell = match beta0 {
                        Some(b) => ds.count_n_star(s, h, *b)?.count.into(),
                        None => n.into(),
                    };
                    table.push(vec![s.into(), h.into(), n.into(), star])?;
                }
            }
            Ok(table)
        }
        ZerosAction::Density { file, half, lf, sigma, t } => {
            let ds = zeros_file(file, *half)?;
            let lf = load_descriptor(lf)?;
            Ok(density_report(&ds, &lf, sigma, t, &rc.constants)?)
        }
        ZerosAction::Disc { file, half, lf, t, eta } => {
            let ds = zeros_file(file, *half)?;
            let lf = load_descriptor(lf)?;
            let m = lf.degree() as f64;
            let c = lf.analytic_conductor();
            let mut table = Table::new(["t", "eta", "disc_count", "reference", "ratio"]);
            for &tv in t {
                for &e in eta {
                    let n = ds.disc_count(tv, e)?;
                    let reference = e * m * (c * (2.0 + tv.abs())).ln() + m * m;
                    table.push(vec![tv.into(), e.into(), n.into(), reference.into(), (n as f64 / reference).into()])?;
                }
            }
            Ok(table)
        }
    }
}

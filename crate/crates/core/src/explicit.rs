//! Prime-side sums, the zero side of the smoothed explicit formula, and the
//! main terms and error envelopes of the prime number theorems.
//!
//! For the kernel `f` with transform `F`, the explicit formula reads
//!
//! `sum_n a(n) Lambda(n) f(log n / log x)
//!     = log x [r F(-log x) - sum_rho F(-rho log x)] + (trivial zeros)`,
//!
//! where the trivial-zero and archimedean terms are left inside the reported
//! discretization allowance.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::constants::ConstantsConfig;
use crate::error::{PntError, Result};
use crate::kernel::{big_f_decay_bound, big_f_eval, f_eval, KernelParams};
use crate::lfun::LFunctionData;
use crate::regions::{eta_closed_form, ZeroFreeRegion};
use crate::report::{Cell, Table};
use crate::stream::{visit_terms, StreamConfig};
use crate::sum::{CompensatedSum, ComplexSum};
use crate::zeros::{Zero, ZeroDataset};

/// Zeros per parallel block; fixed so that the summation order never changes.
const ZERO_BLOCK: usize = 1024;

/// `sum_{n <= x} a(n) Lambda(n)`.
pub fn sharp_sum(lf: &LFunctionData, x: f64, cfg: &StreamConfig) -> Result<Complex64> {
    let mut acc = ComplexSum::new();
    visit_terms(lf, 1.0, x, cfg, |t| {
        acc.add(t.value);
        Ok(())
    })?;
    Ok(acc.value())
}

/// `sum_n a(n) Lambda(n) f(log n / log x)` over the kernel's support
/// `n <= x e^eps`.
pub fn smooth_sum(lf: &LFunctionData, kp: &KernelParams, cfg: &StreamConfig) -> Result<Complex64> {
    let l = kp.log_x();
    let (lo, hi) = kp.support();
    let start = ((lo * l).exp() - 1.0).max(1.0);
    let mut acc = ComplexSum::new();
    visit_terms(lf, start, (hi * l).exp(), cfg, |t| {
        let w = f_eval(kp, (t.n as f64).ln() / l);
        if w != 0.0 {
            acc.add(t.value * w);
        }
        Ok(())
    })?;
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSideOptions {
    /// Zeros with `|gamma| <= t_trunc` are summed.
    pub t_trunc: f64,
    /// Exponent in the decay bound for the tail; defaults to `l`.
    pub alpha: Option<f64>,
    pub include_beta0: bool,
    /// Real part assumed for unlisted zeros in the tail bound.
    pub sigma_tail: f64,
}

impl ZeroSideOptions {
    pub fn new(t_trunc: f64) -> Self {
        Self {
            t_trunc,
            alpha: None,
            include_beta0: true,
            sigma_tail: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSide {
    pub value: Complex64,
    pub tail_estimate: f64,
    /// `c ((l/eps) x^{1 - 1/(2m)} log C + m x^{1/4} log C)`.
    pub allowance: f64,
    pub zeros_used: usize,
}

/// `log x [r F(-log x) - F(-beta0 log x) - sum'_{|gamma| <= T} F(-rho log x)]`.
pub fn zero_side(
    lf: &LFunctionData,
    kp: &KernelParams,
    zeros: &ZeroDataset,
    opts: &ZeroSideOptions,
    constants: &ConstantsConfig,
) -> Result<ZeroSide> {
    if !(opts.t_trunc > 0.0) {
        return Err(PntError::domain(format!("truncation height must be positive, got {}", opts.t_trunc)));
    }
    zeros.require_height(opts.t_trunc)?;
    if lf.is_self_dual() && !zeros.conjugate_closed() {
        return Err(PntError::invariant(
            "zeros of a self-dual L-function must be closed under conjugation",
        ));
    }
    let l = kp.log_x();
    let at = |rho: Complex64| big_f_eval(kp, -rho * l);
    let mut selected: Vec<Zero> = zeros.up_to(opts.t_trunc).to_vec();
    let mut head = at(Complex64::new(1.0, 0.0)) * f64::from(lf.pole_order());
    if opts.include_beta0 {
        if let Some(b0) = lf.beta0() {
            head -= at(Complex64::new(b0, 0.0));
            if let Some(i) = selected.iter().position(|z| z.gamma == 0.0 && z.beta == b0) {
                selected.remove(i);
            }
        }
    }
    let partials: Vec<Complex64> = selected
        .par_chunks(ZERO_BLOCK)
        .map(|block| {
            block
                .iter()
                .map(|z| at(Complex64::new(z.beta, z.gamma)))
                .collect::<ComplexSum>()
                .value()
        })
        .collect();
    let zero_sum = partials.into_iter().collect::<ComplexSum>().value();
    let value = (head - zero_sum) * l;

    let alpha = opts.alpha.unwrap_or(f64::from(kp.ell()));
    let tail_estimate = zero_tail(lf, kp, opts.t_trunc, alpha, opts.sigma_tail, constants)?;
    let m = lf.degree() as f64;
    let log_c = lf.analytic_conductor().ln();
    let x = kp.x();
    let allowance = constants.c_discretization
        * ((f64::from(kp.ell()) / kp.eps()) * x.powf(1.0 - 1.0 / (2.0 * m)) * log_c + m * x.powf(0.25) * log_c);
    Ok(ZeroSide {
        value,
        tail_estimate,
        allowance,
        zeros_used: selected.len(),
    })
}

/// Bound for `log x sum_{|gamma| > T} |F(-rho log x)|`: dyadic blocks
/// `[T 2^j, T 2^{j+1}]` on both sides of the real axis, each holding at most
/// `c m log(C (2 + t)) * length` zeros, each bounded by the decay estimate
/// at `|s| = T 2^j`.
pub fn zero_tail(
    lf: &LFunctionData,
    kp: &KernelParams,
    t_trunc: f64,
    alpha: f64,
    sigma: f64,
    constants: &ConstantsConfig,
) -> Result<f64> {
    let m = lf.degree() as f64;
    let c = lf.analytic_conductor();
    let mut total = CompensatedSum::new();
    let mut low = t_trunc;
    for _ in 0..400 {
        let high = 2.0 * low;
        let count = 2.0 * constants.c_zero_count * m * (c * (2.0 + high)).ln() * (high - low);
        let block = count * big_f_decay_bound(kp, Complex64::new(sigma, low), alpha)?;
        total.add(block);
        if !block.is_finite() || block <= 1e-17 * total.value() {
            break;
        }
        low = high;
    }
    Ok(total.value() * kp.log_x())
}

/// `r x - x^{beta0}/beta0`; the second term is dropped when `keep_exceptional`
/// is false.
pub fn pnt_main_term(pole_order: u32, x: f64, beta0: f64, keep_exceptional: bool) -> Result<f64> {
    if !(x >= 3.0) {
        return Err(PntError::domain(format!("need x >= 3, got {x}")));
    }
    if !(0.5..1.0).contains(&beta0) {
        return Err(PntError::domain(format!("beta0 = {beta0} outside [1/2, 1)")));
    }
    let main = f64::from(pole_order) * x;
    Ok(if keep_exceptional { main - x.powf(beta0) / beta0 } else { main })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeParams {
    pub a: f64,
    pub beta0: f64,
}

impl EnvelopeParams {
    pub fn new(a: f64, beta0: f64) -> Result<Self> {
        if !(a >= 2.0) {
            return Err(PntError::domain(format!("A must be at least 2, got {a}")));
        }
        if !(0.5..1.0).contains(&beta0) {
            return Err(PntError::domain(format!("beta0 = {beta0} outside [1/2, 1)")));
        }
        Ok(Self { a, beta0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub value: f64,
    /// The relative factor multiplying `x - x^{beta0}/beta0` (or `x`).
    pub factor: f64,
    /// The envelope is at least as large as the quantity it should refine.
    pub vacuous: bool,
    /// `log` of the smallest `x` for which the statement applies.
    pub log_x_min: f64,
}

/// `(x - x^{beta0}/beta0)(m^5 x^{-c2/m^4} + m^{c3 m^3} A^2 e^{-(1 - 1/A) eta})`.
pub fn pnt_error_envelope(
    m: usize,
    log_c: f64,
    x: f64,
    ep: &EnvelopeParams,
    eta: f64,
    constants: &ConstantsConfig,
) -> Result<Envelope> {
    if !(eta >= 0.0) {
        return Err(PntError::domain(format!("eta must be nonnegative, got {eta}")));
    }
    if !(x >= 3.0) {
        return Err(PntError::domain(format!("need x >= 3, got {x}")));
    }
    let m = m as f64;
    let l = x.ln();
    let first = (5.0 * m.ln() - constants.c_main2 * l / m.powi(4)).exp();
    let second = (constants.c_main3 * m.powi(3) * m.ln() + 2.0 * ep.a.ln() - (1.0 - 1.0 / ep.a) * eta).exp();
    let factor = first + second;
    let base = x - x.powf(ep.beta0) / ep.beta0;
    Ok(Envelope {
        value: base * factor,
        factor,
        vacuous: factor >= 1.0,
        log_x_min: constants.c_main1 * ep.a * ep.a * m.powi(5) * log_c,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IkEnvelope {
    pub value: f64,
    pub log_value: f64,
    pub x_nontrivial: f64,
    pub log_x_nontrivial: f64,
}

/// `m^4 (log xC)^4 x exp(-c log x / (m^4 (log C + sqrt(log x))))`, nontrivial
/// once `x >= C^{4 m^4 log(m log C) / c}`.
pub fn ik_error_envelope(m: usize, c: f64, x: f64, constants: &ConstantsConfig) -> Result<IkEnvelope> {
    if !(x >= 3.0) {
        return Err(PntError::domain(format!("need x >= 3, got {x}")));
    }
    ik_error_envelope_log(m, c.ln(), x.ln(), constants)
}

/// [`ik_error_envelope`] from `log C` and `log x`, for ranges beyond binary64.
pub fn ik_error_envelope_log(m: usize, log_c: f64, log_x: f64, constants: &ConstantsConfig) -> Result<IkEnvelope> {
    if !(log_x >= 3f64.ln() * (1.0 - 1e-15)) {
        return Err(PntError::domain(format!("need log x >= log 3, got {log_x}")));
    }
    let m = m as f64;
    let m4 = m.powi(4);
    let log_value = 4.0 * m.ln() + 4.0 * (log_x + log_c).ln() + log_x
        - constants.c_ik * log_x / (m4 * (log_c + log_x.sqrt()));
    let log_x_nontrivial = log_c * 4.0 / constants.c_ik * m4 * (m * log_c).ln();
    Ok(IkEnvelope {
        value: log_value.exp(),
        log_value,
        x_nontrivial: log_x_nontrivial.exp(),
        log_x_nontrivial,
    })
}

/// Error shape for a standard L-function under the classical region:
/// `(x - x^{b}/b) exp(-c log x / (m log C + sqrt(m log x)))`, for
/// `x >= C^{4 c_main1 m^8}`.
pub fn pnt1_envelope(m: usize, log_c: f64, x: f64, beta1: f64, constants: &ConstantsConfig) -> Result<Envelope> {
    let m = m as f64;
    let log_x_min = 4.0 * constants.c_main1 * m.powi(8) * log_c;
    classical_shape(m * log_c, m, x, beta1, log_x_min, constants)
}

/// Error shape for `pi x pi'` when `pi'` is a dual:
/// `(x - x^{b}/b) exp(-c log x / ((m+m') log CC' + sqrt(m (m+m') log x)))`,
/// for `x >= (CC')^{4 c_main1 (m m')^8}`.
pub fn pnt2_envelope(
    m: usize,
    m_prime: usize,
    log_cc: f64,
    x: f64,
    beta1: f64,
    constants: &ConstantsConfig,
) -> Result<Envelope> {
    let (m, mp) = (m as f64, m_prime as f64);
    let log_x_min = 4.0 * constants.c_main1 * (m * mp).powi(8) * log_cc;
    classical_shape((m + mp) * log_cc, m * (m + mp), x, beta1, log_x_min, constants)
}

/// `(x - x^{b}/b) exp(-c log x / (log_term + sqrt(k log x)))`.
fn classical_shape(
    log_term: f64,
    k: f64,
    x: f64,
    beta1: f64,
    log_x_min: f64,
    constants: &ConstantsConfig,
) -> Result<Envelope> {
    if !(x >= 3.0) || !(0.5..1.0).contains(&beta1) {
        return Err(PntError::domain("need x >= 3 and beta1 in [1/2, 1)"));
    }
    let l = x.ln();
    let factor = (-constants.c_errorterm * l / (log_term + (k * l).sqrt())).exp();
    let base = x - x.powf(beta1) / beta1;
    Ok(Envelope {
        value: base * factor,
        factor,
        vacuous: factor >= 1.0,
        log_x_min,
    })
}

/// `c x (log x)^{-1/(m m')}` for `pi x pi'` with `pi' != dual(pi)`, for
/// `x >= exp(c_main1 (CC')^{2 (m+m')^2})`.
pub fn pnt3_envelope(m: usize, m_prime: usize, log_cc: f64, x: f64, constants: &ConstantsConfig) -> Result<Envelope> {
    if !(x >= 3.0) {
        return Err(PntError::domain(format!("need x >= 3, got {x}")));
    }
    let (m, mp) = (m as f64, m_prime as f64);
    let factor = constants.c_errorterm * x.ln().powf(-1.0 / (m * mp));
    Ok(Envelope {
        value: x * factor,
        factor,
        vacuous: factor >= 1.0,
        log_x_min: constants.c_main1 * (2.0 * (m + mp).powi(2) * log_cc).exp(),
    })
}

/// Per-`x` comparison of the sharp sum with the main term and envelopes.
///
/// The envelope shape follows the region: `pnt1` for classical regions,
/// `pnt3` for Brumley regions, none otherwise. When `zeros` is given, the
/// smoothed sum and zero side are added using the kernel recipe at `A`.
pub fn pnt_report(
    lf: &LFunctionData,
    x_grid: &[f64],
    region: &ZeroFreeRegion,
    ep: &EnvelopeParams,
    zeros: Option<(&ZeroDataset, f64)>,
    constants: &ConstantsConfig,
    cfg: &StreamConfig,
) -> Result<Table> {
    let mut columns = vec![
        "x",
        "sharp_re",
        "sharp_im",
        "main_term",
        "residual",
        "eta",
        "envelope",
        "ratio",
        "vacuous",
        "shape",
        "shape_envelope",
        "shape_ratio",
    ];
    if zeros.is_some() {
        columns.extend(["smooth_re", "zero_side_re", "gap", "tail_plus_allowance"]);
    }
    let mut table = Table::new(columns);
    let m = lf.degree();
    let log_c = lf.analytic_conductor().ln();
    for &x in x_grid {
        let sharp = sharp_sum(lf, x, cfg)?;
        let main = pnt_main_term(lf.pole_order(), x, ep.beta0, true)?;
        let residual = (sharp - main).norm();
        let eta = eta_closed_form(region, x)?;
        let env = pnt_error_envelope(m, log_c, x, ep, eta, constants)?;
        let (shape, shape_env) = match region {
            ZeroFreeRegion::Classical { .. } => ("pnt1", Some(pnt1_envelope(m, log_c, x, ep.beta0, constants)?)),
            ZeroFreeRegion::Brumley { .. } => ("pnt3", Some(pnt3_envelope(m, 1, log_c, x, constants)?)),
            _ => ("none", None),
        };
        let mut row: Vec<Cell> = vec![
            x.into(),
            sharp.re.into(),
            sharp.im.into(),
            main.into(),
            residual.into(),
            eta.into(),
            env.value.into(),
            (residual / env.value).into(),
            env.vacuous.into(),
            shape.into(),
        ];
        match shape_env {
            Some(s) => row.extend([s.value.into(), (residual / s.value).into()]),
            None => row.extend([Cell::Text(String::new()), Cell::Text(String::new())]),
        }
        if let Some((ds, t_trunc)) = zeros {
            let kp = KernelParams::recipe(x, ep.a, m, constants)?;
            let smooth = smooth_sum(lf, &kp, cfg)?;
            let side = zero_side(lf, &kp, ds, &ZeroSideOptions::new(t_trunc), constants)?;
            row.extend([
                smooth.re.into(),
                side.value.re.into(),
                (side.value - smooth).norm().into(),
                (side.tail_estimate + side.allowance).into(),
            ]);
        }
        table.push(row)?;
    }
    Ok(table)
}

//! Zero-free regions, the optimization `eta(x) = inf_{t >= 3} (delta(t) log x + log t)`,
//! exceptional-zero repulsion and the auxiliary quantities around it.

use crate::constants::ConstantsConfig;
use crate::error::{PntError, Result};

/// A width function `delta(t)` for `t >= 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroFreeRegion {
    /// `c / ((m + m') (log CC' + m log t))`.
    Classical { c: f64, m: u32, m_prime: u32, log_cc: f64 },
    /// `a t^{-b}`.
    Brumley { a: f64, b: f64 },
    Constant { delta0: f64 },
    /// `delta = 1/2`.
    Grh,
}

impl ZeroFreeRegion {
    pub fn classical(c: f64, m: u32, m_prime: u32, log_cc: f64) -> Result<Self> {
        if !(c > 0.0) || m == 0 || m_prime == 0 || !(log_cc >= 0.0) {
            return Err(PntError::domain("classical region needs c > 0, m, m' >= 1, log CC' >= 0"));
        }
        Self::Classical { c, m, m_prime, log_cc }.checked()
    }

    pub fn brumley(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || !(b > 0.0) {
            return Err(PntError::domain("brumley region needs A, B > 0"));
        }
        Self::Brumley { a, b }.checked()
    }

    pub fn constant(delta0: f64) -> Result<Self> {
        if !(delta0 > 0.0 && delta0 < 0.5) {
            return Err(PntError::domain(format!("delta0 = {delta0} outside (0, 1/2)")));
        }
        Ok(Self::Constant { delta0 })
    }

    /// All families are nonincreasing, so `delta(3) <= 1/2` is the whole check.
    fn checked(self) -> Result<Self> {
        let d = self.delta(3.0);
        if !(d > 0.0 && d <= 0.5) {
            return Err(PntError::domain(format!("delta(3) = {d} outside (0, 1/2]")));
        }
        Ok(self)
    }

    pub fn delta(&self, t: f64) -> f64 {
        match *self {
            Self::Classical { c, m, m_prime, log_cc } => {
                c / (f64::from(m + m_prime) * (log_cc + f64::from(m) * t.ln()))
            }
            Self::Brumley { a, b } => a * t.powf(-b),
            Self::Constant { delta0 } => delta0,
            Self::Grh => 0.5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Classical { .. } => "classical",
            Self::Brumley { .. } => "brumley",
            Self::Constant { .. } => "constant",
            Self::Grh => "grh",
        }
    }
}

fn check_x(x: f64) -> Result<f64> {
    if !(x >= 3.0) || !x.is_finite() {
        return Err(PntError::domain(format!("need x >= 3, got {x}")));
    }
    Ok(x.ln())
}

/// Closed-form lower bounds for `eta(x)`.
///
/// The classical family returns the minimum of the two branch values
/// `sqrt(c log x / (m (m + m')))` and `c log x / ((m + m') log CC')`.
pub fn eta_closed_form(region: &ZeroFreeRegion, x: f64) -> Result<f64> {
    let l = check_x(x)?;
    Ok(match *region {
        ZeroFreeRegion::Classical { c, m, m_prime, log_cc } => {
            let (m, s) = (f64::from(m), f64::from(m + m_prime));
            let first = (c * l / (m * s)).sqrt();
            let second = if log_cc == 0.0 { f64::INFINITY } else { c * l / (s * log_cc) };
            first.min(second)
        }
        ZeroFreeRegion::Brumley { a, b } => {
            if l > 3f64.powf(b) / (a * b) {
                (1.0 + (a * b * l).ln()) / b
            } else {
                3f64.ln() + a * 3f64.powf(-b) * l
            }
        }
        ZeroFreeRegion::Constant { delta0 } => delta0 * l + 3f64.ln(),
        ZeroFreeRegion::Grh => 0.5 * l + 3f64.ln(),
    })
}

/// The classical case split before passing to the minimum: `phi(u_0)` past
/// the threshold `x > exp((m + m') (log CC')^2 / (c m))`, `phi(0)` below it.
pub fn eta_classical_case_split(c: f64, m: u32, m_prime: u32, log_cc: f64, x: f64) -> Result<f64> {
    let l = check_x(x)?;
    let (m, s) = (f64::from(m), f64::from(m + m_prime));
    if l > s * log_cc * log_cc / (c * m) {
        Ok(2.0 * (c * l / (m * s)).sqrt() - log_cc / m)
    } else {
        Ok(c * l / (s * log_cc))
    }
}

/// A search range that contains the infimum: beyond `t = 3 sqrt(x)` the
/// `log t` term alone exceeds `eta(x) <= log x / 2 + log 3`.
pub fn default_t_max(x: f64) -> f64 {
    (3.0 * x.sqrt() * 1.01).max(30.0)
}

/// Grid minimum of `delta(t) log x + log t` on `[3, t_max]`, uniform in
/// `log t`, refined by golden-section search around the best grid point.
pub fn eta_grid(region: &ZeroFreeRegion, x: f64, t_max: f64, points: usize) -> Result<f64> {
    let l = check_x(x)?;
    if !(t_max >= 3.0) || !t_max.is_finite() || points < 100 {
        return Err(PntError::domain(format!(
            "grid needs t_max >= 3 and at least 100 points, got t_max = {t_max}, points = {points}"
        )));
    }
    let g = |u: f64| region.delta(u.exp()) * l + u;
    let (u0, u1) = (3f64.ln(), t_max.ln());
    if u1 == u0 {
        return Ok(g(u0));
    }
    let step = (u1 - u0) / (points - 1) as f64;
    let at = |i: usize| if i == points - 1 { u1 } else { u0 + step * i as f64 };
    let (mut best_i, mut best) = (0, g(u0));
    for i in 1..points {
        let v = g(at(i));
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = at(best_i.saturating_sub(1));
    let hi = at((best_i + 1).min(points - 1));
    Ok(best.min(golden_min(&g, lo, hi)))
}

fn golden_min(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    gc.min(gd)
}

/// `(A, B)` of the narrow region: `A = c / (CC')^{(m+m')(1+eps/2) - 1}`,
/// `B = m m' (1 - 1/(m+m') + eps/2)`; `eps` defaults to `(m+m')^{-2}`.
pub fn brumley_params(
    m: u32,
    m_prime: u32,
    c_pi: f64,
    c_pi_prime: f64,
    eps: Option<f64>,
    constants: &ConstantsConfig,
) -> Result<(f64, f64)> {
    if m == 0 || m_prime == 0 {
        return Err(PntError::domain("degrees must be positive"));
    }
    let s = f64::from(m + m_prime);
    let eps = eps.unwrap_or(1.0 / (s * s));
    if !(eps > 0.0 && eps < 1.0) {
        return Err(PntError::domain(format!("eps = {eps} outside (0, 1)")));
    }
    if !(c_pi >= 3.0 && c_pi_prime >= 3.0) {
        return Err(PntError::domain("analytic conductors are at least 3"));
    }
    let c = constants.brumley_c.value(m, m_prime, eps);
    let a = c / (c_pi * c_pi_prime).powf(s * (1.0 + eps / 2.0) - 1.0);
    let b = f64::from(m * m_prime) * (1.0 - 1.0 / s + eps / 2.0);
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Repulsion {
    pub value: f64,
    /// The region then covers all of `[3/4, 1)`.
    pub below_three_quarters: bool,
    /// False when the logarithm's argument is at most 1 and the unconditional 1 is returned.
    pub improved: bool,
}

/// `1 - c1 log(c2 / ((1 - beta0) L)) / L` with `L = m log(C (|gamma| + 3)^m)`.
pub fn repulsion_bound(beta0: f64, c: f64, m: u32, gamma: f64, constants: &ConstantsConfig) -> Result<Repulsion> {
    if !(beta0 > 0.5 && beta0 < 1.0) {
        return Err(PntError::domain(format!("beta0 = {beta0} outside (1/2, 1)")));
    }
    let m = f64::from(m);
    let big_l = m * (c.ln() + m * (gamma.abs() + 3.0).ln());
    let arg = constants.c_siegel_2 / ((1.0 - beta0) * big_l);
    if !(arg > 1.0) {
        return Ok(Repulsion {
            value: 1.0,
            below_three_quarters: false,
            improved: false,
        });
    }
    let value = 1.0 - constants.c_siegel_1 * arg.ln() / big_l;
    Ok(Repulsion {
        value,
        below_three_quarters: value < 0.75,
        improved: true,
    })
}

/// `min{1, (1 - beta0) log(C T)}`.
pub fn nu(beta0: f64, c: f64, t: f64) -> Result<f64> {
    if !(t >= 1.0) || !(c >= 3.0) || !(0.5..1.0).contains(&beta0) {
        return Err(PntError::domain(format!(
            "nu needs T >= 1, C >= 3, beta0 in [1/2, 1); got T = {t}, C = {c}, beta0 = {beta0}"
        )));
    }
    Ok(((1.0 - beta0) * (c * t).ln()).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuSandwich {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub holds: bool,
}

/// `x^{1 - 1/(1056 c_rep m^4)}`, `nu(1) x`, `x - x^{beta0}/beta0`, and whether
/// each is within the factor `kappa` of the next.
pub fn nu_sandwich(x: f64, beta0: f64, c: f64, m: u32, constants: &ConstantsConfig) -> Result<NuSandwich> {
    check_x(x)?;
    let m4 = f64::from(m).powi(4);
    let lower = x.powf(1.0 - 1.0 / (1056.0 * constants.c_repulsion * m4));
    let middle = nu(beta0, c, 1.0)? * x;
    let upper = x - x.powf(beta0) / beta0;
    let k = constants.kappa;
    Ok(NuSandwich {
        lower,
        middle,
        upper,
        holds: lower <= k * middle && middle <= k * upper,
    })
}

/// `e^t t (L - t)(L - 1) / ((e^t (L - t) - L) L)` with `L = log x`,
/// on `x >= e^4`, `0 < t <= 1`. The denominator is rewritten as
/// `(e^t - 1)(L - t) - t` to avoid cancellation for small `t`.
pub fn lemma54_f(x: f64, t: f64) -> Result<f64> {
    let l = x.ln();
    if !(l >= 4.0 * (1.0 - 1e-15)) || !(t > 0.0 && t <= 1.0) {
        return Err(PntError::domain(format!("need x >= e^4 and t in (0, 1], got x = {x}, t = {t}")));
    }
    Ok(lemma54_f_log(l, t))
}

/// [`lemma54_f`] in terms of `L = log x`, for `x` beyond binary64 range.
pub fn lemma54_f_log(l: f64, t: f64) -> f64 {
    let num = t.exp() * t * (l - t) * (l - 1.0);
    let den = (t.exp_m1() * (l - t) - t) * l;
    num / den
}

/// `exp(-c log x / ((m+m') log CC' + sqrt(m (m+m') c log x)))`, the
/// harmonic combination of the two classical branches.
pub fn eta_bound_pnt2(m: u32, m_prime: u32, log_cc: f64, x: f64, constants: &ConstantsConfig) -> Result<f64> {
    let l = check_x(x)?;
    let c = constants.c_zfr;
    let (m, s) = (f64::from(m), f64::from(m + m_prime));
    Ok((-c * l / (s * log_cc + (m * s * c * l).sqrt())).exp())
}

//! The smooth weight `f` and its Laplace transform `F`.
//!
//! `f` is the indicator of `[1/2, 1 + 2lB]` convolved `l` times with the
//! uniform density on `[-2B, 0]`, so pointwise it is a difference of two
//! Irwin-Hall distribution functions, and
//!
//! `F(z) = e^{-(1+2lB)z} * w E(wz) * E(2Bz)^l`,  `w = 1/2 + 2lB`,
//!
//! with `E(u) = (e^u - 1)/u`.

use num_complex::Complex64;

use crate::constants::ConstantsConfig;
use crate::error::{PntError, Result};

/// Below this modulus `E(u)` is evaluated from its Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    x: f64,
    ell: u32,
    eps: f64,
    b: f64,
    log_x: f64,
}

impl KernelParams {
    pub fn new(x: f64, ell: u32, eps: f64) -> Result<Self> {
        if !(x >= 3.0) || !x.is_finite() {
            return Err(PntError::domain(format!("kernel needs x >= 3, got {x}")));
        }
        if ell < 2 {
            return Err(PntError::domain(format!("kernel needs l >= 2, got {ell}")));
        }
        if !(eps > 0.0 && eps < 0.25) {
            return Err(PntError::domain(format!("kernel needs eps in (0, 1/4), got {eps}")));
        }
        let log_x = x.ln();
        if 0.5 - eps / log_x <= 0.0 {
            return Err(PntError::domain("support must start above 0"));
        }
        Ok(Self {
            x,
            ell,
            eps,
            b: eps / (2.0 * ell as f64 * log_x),
            log_x,
        })
    }

    /// `l = max(2, ceil(A c_repulsion m^3))`, `eps = min(1/5, 2Al x^{-1/(2Al)})`.
    pub fn recipe(x: f64, a: f64, m: usize, constants: &ConstantsConfig) -> Result<Self> {
        if !(a >= 2.0) {
            return Err(PntError::domain(format!("recipe needs A >= 2, got {a}")));
        }
        let ell = (a * constants.c_repulsion * (m as f64).powi(3)).ceil().max(2.0);
        if ell > u32::MAX as f64 {
            return Err(PntError::domain("l overflows"));
        }
        let two_al = 2.0 * a * ell;
        let eps = (two_al * x.powf(-1.0 / two_al)).min(0.2);
        Self::new(x, ell as u32, eps)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn log_x(&self) -> f64 {
        self.log_x
    }

    /// `[1/2 - eps/log x, 1 + eps/log x]`.
    pub fn support(&self) -> (f64, f64) {
        let h = self.eps / self.log_x;
        (0.5 - h, 1.0 + h)
    }

    pub fn f(&self, t: f64) -> f64 {
        f_eval(self, t)
    }

    pub fn transform(&self, z: Complex64) -> Complex64 {
        big_f_eval(self, z)
    }
}

/// `f(t)`: 0 outside the support, exactly 1 on `[1/2, 1]`.
pub fn f_eval(kp: &KernelParams, t: f64) -> f64 {
    let (lo, hi) = kp.support();
    if !(t > lo && t < hi) {
        return 0.0;
    }
    if (0.5..=1.0).contains(&t) {
        return 1.0;
    }
    let two_b = 2.0 * kp.b;
    let n = kp.ell as usize;
    let upper = irwin_hall_cdf(n, (1.0 + n as f64 * two_b - t) / two_b);
    let lower = irwin_hall_cdf(n, (0.5 - t) / two_b);
    (upper - lower).clamp(0.0, 1.0)
}

/// Distribution function of a sum of `n` independent uniforms on `[0, 1]`.
///
/// Uses the positive B-spline recursion instead of the alternating
/// inclusion-exclusion sum, which loses digits for large `n`.
pub fn irwin_hall_cdf(n: usize, v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    if v >= nf {
        return 1.0;
    }
    if v > 0.5 * nf {
        return 1.0 - irwin_hall_cdf(n, nf - v);
    }
    // CDF_n(v) = sum_{k >= 0} M_{n+1}(v - k) for the cardinal B-spline M.
    let whole = v.floor() as usize;
    let u = v - whole as f64;
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    for order in 2..=n + 1 {
        let k = order as f64;
        for j in (0..order).rev() {
            let x = u + j as f64;
            let here = if j < order - 1 { b[j] } else { 0.0 };
            let left = if j > 0 { b[j - 1] } else { 0.0 };
            b[j] = (x * here + (k - x) * left) / (k - 1.0);
        }
    }
    b[..=whole].iter().sum::<f64>().clamp(0.0, 1.0)
}

/// `F(z)`, entire, with removable singularities handled by series.
pub fn big_f_eval(kp: &KernelParams, z: Complex64) -> Complex64 {
    let two_b = 2.0 * kp.b;
    let ell = kp.ell as f64;
    let w = 0.5 + ell * two_b;
    let lead = (-(1.0 + ell * two_b) * z).exp() * w * expm1_over(w * z);
    let u = two_b * z;
    let base = expm1_over(u);
    let power = if u.norm() < std::f64::consts::PI {
        (base.ln() * ell).exp()
    } else {
        base.powu(kp.ell)
    };
    lead * power
}

/// `(e^u - 1)/u`.
pub fn expm1_over(u: Complex64) -> Complex64 {
    if u.norm() < SERIES_THRESHOLD {
        // sum_{k=0}^{12} u^k / (k+1)!, Horner form
        let mut acc = Complex64::new(1.0 / factorial(13), 0.0);
        for k in (1..=12).rev() {
            acc = acc * u + 1.0 / factorial(k);
        }
        return acc;
    }
    complex_expm1(u) / u
}

/// `e^u - 1` without cancellation near 0.
fn complex_expm1(u: Complex64) -> Complex64 {
    let em1 = u.re.exp_m1();
    let half = (0.5 * u.im).sin();
    let cos_m1 = -2.0 * half * half;
    Complex64::new(em1 * u.im.cos() + cos_m1, u.re.exp() * u.im.sin())
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// `(e^{sigma eps} x^sigma / (|s| log x)) (1 + x^{-sigma/2}) (2l/(eps |s|))^alpha`.
pub fn big_f_decay_bound(kp: &KernelParams, s: Complex64, alpha: f64) -> Result<f64> {
    let sigma = s.re;
    if !(sigma > 0.0) {
        return Err(PntError::domain(format!("decay bound needs Re(s) > 0, got {sigma}")));
    }
    if !(0.0..=kp.ell as f64).contains(&alpha) {
        return Err(PntError::domain(format!("alpha = {alpha} outside [0, {}]", kp.ell)));
    }
    let r = s.norm();
    let head = (sigma * kp.eps + sigma * kp.log_x).exp() / (r * kp.log_x);
    let tail = 1.0 + (-0.5 * sigma * kp.log_x).exp();
    let decay = (2.0 * kp.ell as f64 / (kp.eps * r)).powf(alpha);
    Ok(head * tail * decay)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainTermDiff {
    pub value: f64,
    pub predicted: f64,
    pub allowance: f64,
}

impl MainTermDiff {
    pub fn holds(&self) -> bool {
        (self.value - self.predicted).abs() <= self.allowance
    }
}

/// `F(-log x) - F(-sigma log x)` against `x/log x - x^sigma/(sigma log x)`,
/// with allowance `c (eps * predicted + sqrt(x)/log x)`.
pub fn main_term_diff(kp: &KernelParams, sigma: f64, constants: &ConstantsConfig) -> Result<MainTermDiff> {
    if !(sigma > 0.75 && sigma <= 1.0) {
        return Err(PntError::domain(format!("sigma = {sigma} outside (3/4, 1]")));
    }
    if kp.x < 10.0 {
        return Err(PntError::domain(format!("main term comparison needs x >= 10, got {}", kp.x)));
    }
    let l = kp.log_x;
    let at = |s: f64| big_f_eval(kp, Complex64::new(-s * l, 0.0)).re;
    let value = if sigma == 1.0 { 0.0 } else { at(1.0) - at(sigma) };
    let predicted = if sigma == 1.0 {
        0.0
    } else {
        kp.x / l - kp.x.powf(sigma) / (sigma * l)
    };
    let allowance = constants.c_main_term_diff * (kp.eps * predicted.abs() + kp.x.sqrt() / l);
    Ok(MainTermDiff {
        value,
        predicted,
        allowance,
    })
}

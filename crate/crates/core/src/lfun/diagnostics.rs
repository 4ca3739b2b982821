//! Empirical versions of the two l^1 bounds on the coefficients.

use super::LFunctionData;
use crate::error::{PntError, Result};
use crate::stream::{visit_terms, StreamConfig};
use crate::sum::CompensatedSum;

/// `sum_{n <= cutoff} |a(n)| Lambda(n) / n^{1 + eta}`.
///
/// Reports compare this against `m/eta + m log C + c m^2`.
pub fn l1_dirichlet_diagnostic(lf: &LFunctionData, eta: f64, cutoff: f64, cfg: &StreamConfig) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(PntError::domain(format!("eta must be positive, got {eta}")));
    }
    let mut acc = CompensatedSum::new();
    visit_terms(lf, 1.0, cutoff, cfg, |t| {
        acc.add(t.value.norm() * (-(1.0 + eta) * (t.n as f64).ln()).exp());
        Ok(())
    })?;
    Ok(acc.value())
}

/// `sum_{x < n <= x e^{1/T}} |a(n)| Lambda(n)`, to be compared with `c m x / T`.
pub fn short_interval_l1_diagnostic(lf: &LFunctionData, x: f64, t: f64, cfg: &StreamConfig) -> Result<f64> {
    if !(x >= 2.0) || !(t >= 1.0) {
        return Err(PntError::domain(format!("need x >= 2 and T >= 1, got x = {x}, T = {t}")));
    }
    let mut acc = CompensatedSum::new();
    visit_terms(lf, x, x * (1.0 / t).exp(), cfg, |term| {
        acc.add(term.value.norm());
        Ok(())
    })?;
    Ok(acc.value())
}

//! Rankin-Selberg products and the conductor sandwich.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::{archimedean_conductor, LFunctionData, LocalFamily, RankinSelbergData};
use crate::arith::{factor, gcd, primes_up_to};
use crate::error::{PntError, Result};

/// Local data of the product that cannot be derived from the factors.
#[derive(Debug, Clone, Default)]
pub struct RamifiedData {
    /// `alpha_{j,j'}(p)` lists at primes dividing both conductors.
    pub satake: BTreeMap<u64, Vec<Complex64>>,
    /// Exact arithmetic conductor of the product.
    pub conductor: Option<u64>,
    /// Archimedean parameters, needed when either factor is ramified at infinity.
    pub mu: Option<Vec<Complex64>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RsOptions {
    /// Omit doubly ramified primes without data instead of failing.
    pub skip_ramified: bool,
    /// Whether `b` is the contragredient of `a`; detected from the data when `None`.
    pub dual_pair: Option<bool>,
}

/// Roots of `X^2 - lambda X + unit`, ordered by nonincreasing real part,
/// then nonincreasing imaginary part.
pub fn satake_from_hecke_gl2(lambda: f64, unit: Complex64) -> (Complex64, Complex64) {
    let lam = Complex64::new(lambda, 0.0);
    let root = (lam * lam - unit * 4.0).sqrt();
    let r1 = (lam + root) * 0.5;
    let r2 = (lam - root) * 0.5;
    if r2.re > r1.re || (r2.re == r1.re && r2.im > r1.im) {
        (r2, r1)
    } else {
        (r1, r2)
    }
}

/// `L(s, A x B)`: degree `m m'`, Satake products at primes where at least one
/// factor is unramified, pairwise-sum archimedean parameters.
pub fn rankin_selberg(
    a: &LFunctionData,
    b: &LFunctionData,
    ramified: Option<&RamifiedData>,
    opts: RsOptions,
) -> Result<LFunctionData> {
    let empty = RamifiedData::default();
    let ramified = ramified.unwrap_or(&empty);
    let (m, mp) = (a.degree(), b.degree());
    let degree = m * mp;

    let mu = match product_mu(a, b.mu(), b) {
        Some(mu) => mu,
        None => ramified.mu.clone().ok_or_else(|| {
            PntError::MissingArchimedeanData(format!(
                "{} x {}: a factor is ramified at infinity and no parameters were supplied",
                a.label(),
                b.label()
            ))
        })?,
    };
    if mu.len() != degree {
        return Err(PntError::invariant(format!(
            "product needs {degree} archimedean parameters, got {}",
            mu.len()
        )));
    }

    let shared = gcd(a.conductor(), b.conductor());
    let mut skipped = Vec::new();
    for (p, _) in factor(shared) {
        if !ramified.satake.contains_key(&p) {
            if opts.skip_ramified {
                skipped.push(p);
            } else {
                return Err(PntError::MissingLocalData { p });
            }
        }
    }
    let bound = (p_pow(a.conductor(), mp)?)
        .checked_mul(p_pow(b.conductor(), m)?)
        .ok_or_else(|| PntError::invariant("product conductor overflows u64"))?;
    let exact = ramified.conductor.or((shared == 1).then_some(bound));

    let dual_pair = opts.dual_pair.unwrap_or_else(|| is_dual_pair(a, b));
    let conductor_range = match exact {
        Some(_) => None,
        None => Some(conductor_bounds(a, b)?),
    };

    let lf = LFunctionData {
        label: format!("{} x {}", a.label(), b.label()),
        degree,
        conductor: exact.unwrap_or(bound),
        mu,
        pole_order: u32::from(dual_pair),
        beta0: None,
        arch_unramified: a.arch_unramified() && b.arch_unramified(),
        conductor_range,
        family: LocalFamily::RankinSelberg(Arc::new(RankinSelbergData {
            a: a.clone(),
            b: b.clone(),
            ramified: ramified.satake.clone(),
            skipped,
        })),
    };
    lf.validate()?;
    let bound_exp = 1.0 - 1.0 / degree as f64;
    for (&p, alphas) in &ramified.satake {
        if alphas.len() != degree {
            return Err(PntError::invariant(format!(
                "ramified data at p = {p} has {} entries, expected {degree}",
                alphas.len()
            )));
        }
        let limit = (p as f64).powf(bound_exp) * (1.0 + 1e-12);
        if let Some(bad) = alphas.iter().find(|z| z.norm() > limit) {
            return Err(PntError::invariant(format!(
                "|alpha| = {} at p = {p} exceeds p^(1-1/m)",
                bad.norm()
            )));
        }
    }
    Ok(lf)
}

/// `(C(A x A~)^{m'/(4m)} C(B x B~)^{m/(4m')}, C(A)^{m'} C(B)^{m})`.
///
/// The self-products' arithmetic conductors are taken as 1, which can only
/// lower the left end.
pub fn conductor_bounds(a: &LFunctionData, b: &LFunctionData) -> Result<(f64, f64)> {
    let (m, mp) = (a.degree() as f64, b.degree() as f64);
    let self_conductor = |lf: &LFunctionData| -> Result<f64> {
        let dual = lf.dual();
        let mu = product_mu(lf, dual.mu(), &dual).ok_or_else(|| {
            PntError::MissingArchimedeanData(format!(
                "{} x dual: archimedean data cannot be formed",
                lf.label()
            ))
        })?;
        Ok(archimedean_conductor(1, &mu))
    };
    let lower = self_conductor(a)?.powf(mp / (4.0 * m)) * self_conductor(b)?.powf(m / (4.0 * mp));
    let upper = a.analytic_conductor().powf(mp) * b.analytic_conductor().powf(m);
    if lower > upper * (1.0 + 1e-12) {
        return Err(PntError::invariant(format!(
            "conductor sandwich inverted: {lower} > {upper}"
        )));
    }
    Ok((lower, upper))
}

/// Archimedean parameters of `a x b` when they follow from the factors:
/// parity addition for two Dirichlet-type GL(1) data, pairwise sums when both
/// are unramified at infinity.
fn product_mu(a: &LFunctionData, b_mu: &[Complex64], b: &LFunctionData) -> Option<Vec<Complex64>> {
    let parity = |z: &Complex64| z.im == 0.0 && (z.re == 0.0 || z.re == 1.0);
    if a.degree() == 1 && b.degree() == 1 && parity(&a.mu()[0]) && parity(&b_mu[0]) {
        let sum = (a.mu()[0].re + b_mu[0].re) % 2.0;
        return Some(vec![Complex64::new(sum, 0.0)]);
    }
    if a.arch_unramified() && b.arch_unramified() {
        return Some(
            a.mu()
                .iter()
                .flat_map(|x| b_mu.iter().map(move |y| x + y))
                .collect(),
        );
    }
    None
}

fn p_pow(q: u64, e: usize) -> Result<u64> {
    q.checked_pow(e as u32)
        .ok_or_else(|| PntError::invariant("product conductor overflows u64"))
}

/// Structural test that `b` is the contragredient of `a`: same degree and
/// conductor, conjugate archimedean parameters, conjugate Satake multisets at
/// small primes.
fn is_dual_pair(a: &LFunctionData, b: &LFunctionData) -> bool {
    if a.degree() != b.degree() || a.conductor() != b.conductor() {
        return false;
    }
    let conj_equal = |x: &[Complex64], y: &[Complex64]| x.len() == y.len() && multiset_matches(x, y);
    if !conj_equal(a.mu(), b.mu()) {
        return false;
    }
    for p in primes_up_to(200) {
        match (a.satake(p), b.satake(p)) {
            (Ok(x), Ok(y)) => {
                if !conj_equal(&x, &y) {
                    return false;
                }
            }
            (Err(_), Err(_)) => continue,
            _ => return false,
        }
    }
    true
}

/// `y` equals the conjugate of `x` as a multiset.
fn multiset_matches(x: &[Complex64], y: &[Complex64]) -> bool {
    let mut pool: Vec<Complex64> = y.iter().map(|z| z.conj()).collect();
    for v in x {
        match pool
            .iter()
            .position(|u| (u - v).norm() <= 1e-12 * (1.0 + v.norm()))
        {
            Some(i) => {
                pool.swap_remove(i);
            }
            None => return false,
        }
    }
    pool.is_empty()
}

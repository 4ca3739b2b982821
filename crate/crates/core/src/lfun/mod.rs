//! L-function data: degree, conductor, archimedean and Satake parameters.
//!
//! An [`LFunctionData`] is immutable once built. Satake parameters come from a
//! [`LocalFamily`]: built-in families (zeta, Dirichlet characters, GL(2) Hecke
//! eigenvalues) generate them on demand, explicit data is looked up, and the
//! dual and Rankin-Selberg constructions derive them from their inputs.

mod descriptor;
mod diagnostics;
mod rankin;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::arith::{is_prime, prime_power};
use crate::dirichlet::DirichletCharacter;
use crate::error::{PntError, Result};

pub use descriptor::{load_descriptor, parse_descriptor, parse_hecke_file, parse_satake_file};
pub use diagnostics::{l1_dirichlet_diagnostic, short_interval_l1_diagnostic};
pub use rankin::{conductor_bounds, rankin_selberg, satake_from_hecke_gl2, RamifiedData, RsOptions};

/// Tolerance for the pointwise parameter bounds.
const BOUND_SLACK: f64 = 1e-12;

/// Source of Satake parameters at each prime.
#[derive(Debug, Clone)]
pub enum LocalFamily {
    Zeta,
    Dirichlet(Arc<DirichletCharacter>),
    /// Normalized Hecke eigenvalues `lambda_p` of a GL(2) form with trivial
    /// central character.
    Gl2Hecke(Arc<BTreeMap<u64, f64>>),
    Explicit(Arc<BTreeMap<u64, Vec<Complex64>>>),
    Dual(Arc<LFunctionData>),
    RankinSelberg(Arc<RankinSelbergData>),
}

#[derive(Debug, Clone)]
pub struct RankinSelbergData {
    pub a: LFunctionData,
    pub b: LFunctionData,
    pub ramified: BTreeMap<u64, Vec<Complex64>>,
    /// Primes ramified in both factors with no supplied data; they contribute nothing.
    pub skipped: Vec<u64>,
}

/// Which representative of a conductor interval downstream bounds use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConductorChoice {
    Lower,
    #[default]
    Upper,
}

#[derive(Debug, Clone)]
pub struct LFunctionData {
    label: String,
    degree: usize,
    conductor: u64,
    mu: Vec<Complex64>,
    pole_order: u32,
    beta0: Option<f64>,
    arch_unramified: bool,
    conductor_range: Option<(f64, f64)>,
    family: LocalFamily,
}

impl LFunctionData {
    /// The Riemann zeta function: `m = 1`, `q = 1`, `mu = {0}`, simple pole.
    pub fn zeta() -> Self {
        Self {
            label: "zeta".into(),
            degree: 1,
            conductor: 1,
            mu: vec![Complex64::new(0.0, 0.0)],
            pole_order: 1,
            beta0: None,
            arch_unramified: true,
            conductor_range: None,
            family: LocalFamily::Zeta,
        }
    }

    /// `L(s, chi)` for a primitive character; see [`DirichletCharacter`] for indexing.
    pub fn dirichlet(modulus: u64, index: u64) -> Result<Self> {
        let chi = DirichletCharacter::new(modulus, index)?;
        if !chi.is_primitive() {
            return Err(PntError::invariant(format!(
                "character {index} mod {modulus} is not primitive (conductor {})",
                chi.conductor()
            )));
        }
        if modulus == 1 {
            return Ok(Self::zeta());
        }
        let mu = if chi.is_odd() { 1.0 } else { 0.0 };
        let lf = Self {
            label: format!("dirichlet:{modulus}:{index}"),
            degree: 1,
            conductor: modulus,
            mu: vec![Complex64::new(mu, 0.0)],
            pole_order: 0,
            beta0: None,
            arch_unramified: true,
            conductor_range: None,
            family: LocalFamily::Dirichlet(Arc::new(chi)),
        };
        lf.validate()?;
        Ok(lf)
    }

    /// Degree-2 datum from normalized Hecke eigenvalues (trivial central character).
    pub fn gl2_hecke(
        label: impl Into<String>,
        conductor: u64,
        mu: [Complex64; 2],
        eigenvalues: BTreeMap<u64, f64>,
    ) -> Result<Self> {
        let lf = Self {
            label: label.into(),
            degree: 2,
            conductor,
            mu: mu.to_vec(),
            pole_order: 0,
            beta0: None,
            arch_unramified: true,
            conductor_range: None,
            family: LocalFamily::Gl2Hecke(Arc::new(eigenvalues)),
        };
        lf.validate()?;
        for &p in lf.stored_primes().iter() {
            lf.check_local(p, &lf.satake(p)?)?;
        }
        Ok(lf)
    }

    /// Datum with explicitly supplied Satake lists.
    pub fn explicit(
        label: impl Into<String>,
        conductor: u64,
        mu: Vec<Complex64>,
        pole_order: u32,
        satake: BTreeMap<u64, Vec<Complex64>>,
    ) -> Result<Self> {
        let lf = Self {
            label: label.into(),
            degree: mu.len(),
            conductor,
            mu,
            pole_order,
            beta0: None,
            arch_unramified: true,
            conductor_range: None,
            family: LocalFamily::Explicit(Arc::new(satake)),
        };
        lf.validate()?;
        if let LocalFamily::Explicit(map) = &lf.family {
            for (&p, alphas) in map.iter() {
                lf.check_local(p, alphas)?;
            }
        }
        Ok(lf)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_pole_order(mut self, r: u32) -> Result<Self> {
        self.pole_order = r;
        self.validate()?;
        Ok(self)
    }

    pub fn with_beta0(mut self, beta0: Option<f64>) -> Result<Self> {
        self.beta0 = beta0;
        self.validate()?;
        Ok(self)
    }

    pub fn with_arch_unramified(mut self, flag: bool) -> Self {
        self.arch_unramified = flag;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Arithmetic conductor `q`. For a Rankin-Selberg product without exact
    /// data this is the divisibility bound `q_A^{m'} q_B^{m}`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn mu(&self) -> &[Complex64] {
        &self.mu
    }

    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    pub fn beta0(&self) -> Option<f64> {
        self.beta0
    }

    /// `beta0` with the convention that an absent exceptional zero is `1/2`.
    pub fn beta0_or_half(&self) -> f64 {
        self.beta0.unwrap_or(0.5)
    }

    pub fn arch_unramified(&self) -> bool {
        self.arch_unramified
    }

    pub fn family(&self) -> &LocalFamily {
        &self.family
    }

    /// Interval for the analytic conductor when only bounds are known.
    pub fn conductor_range(&self) -> Option<(f64, f64)> {
        self.conductor_range
    }

    pub fn is_rankin_selberg(&self) -> bool {
        matches!(self.family, LocalFamily::RankinSelberg(_))
    }

    /// Primes that the product construction omitted (ramified on both sides,
    /// no data, skipping allowed).
    pub fn omitted_primes(&self) -> &[u64] {
        match &self.family {
            LocalFamily::RankinSelberg(rs) => &rs.skipped,
            LocalFamily::Dual(inner) => inner.omitted_primes(),
            _ => &[],
        }
    }

    /// `q * prod_j (|mu_j| + 3)`; for products known only up to an interval,
    /// the upper end.
    pub fn analytic_conductor(&self) -> f64 {
        self.analytic_conductor_with(ConductorChoice::Upper)
    }

    pub fn analytic_conductor_with(&self, choice: ConductorChoice) -> f64 {
        match (self.conductor_range, choice) {
            (Some((lo, _)), ConductorChoice::Lower) => lo,
            (Some((_, hi)), ConductorChoice::Upper) => hi,
            (None, _) => archimedean_conductor(self.conductor, &self.mu),
        }
    }

    /// Satake parameters at `p`. An empty list marks an omitted prime.
    pub fn satake(&self, p: u64) -> Result<Vec<Complex64>> {
        match &self.family {
            LocalFamily::Zeta => Ok(vec![Complex64::new(1.0, 0.0)]),
            LocalFamily::Dirichlet(chi) => Ok(vec![chi.value(p)]),
            LocalFamily::Gl2Hecke(eig) => {
                let lambda = *eig.get(&p).ok_or(PntError::MissingLocalData { p })?;
                if self.conductor.is_multiple_of(p) {
                    Ok(vec![Complex64::new(lambda, 0.0), Complex64::new(0.0, 0.0)])
                } else {
                    let (a1, a2) = satake_from_hecke_gl2(lambda, Complex64::new(1.0, 0.0));
                    Ok(vec![a1, a2])
                }
            }
            LocalFamily::Explicit(map) => map
                .get(&p)
                .cloned()
                .ok_or(PntError::MissingLocalData { p }),
            LocalFamily::Dual(inner) => Ok(inner.satake(p)?.into_iter().map(|a| a.conj()).collect()),
            LocalFamily::RankinSelberg(rs) => rs.satake(p),
        }
    }

    /// `a(p^k) Lambda(p^k) = (sum_j alpha_j(p)^k) log p`.
    pub fn prime_power_coefficient(&self, p: u64, k: u32) -> Result<Complex64> {
        let alphas = self.satake(p)?;
        Ok(power_sum(&alphas, k) * (p as f64).ln())
    }

    /// `a(n) Lambda(n)`: zero off prime powers.
    pub fn coefficient(&self, n: u64) -> Result<Complex64> {
        if n < 2 {
            return Err(PntError::domain(format!("coefficient index must be >= 2, got {n}")));
        }
        match prime_power(n) {
            Some((p, k)) => self.prime_power_coefficient(p, k),
            None => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    /// Contragredient: conjugate all Satake and archimedean parameters, keep `q`.
    pub fn dual(&self) -> LFunctionData {
        match &self.family {
            LocalFamily::Zeta => self.clone(),
            LocalFamily::Dual(inner) => (**inner).clone(),
            _ => LFunctionData {
                label: format!("dual({})", self.label),
                mu: self.mu.iter().map(|z| z.conj()).collect(),
                family: LocalFamily::Dual(Arc::new(self.clone())),
                ..self.clone()
            },
        }
    }

    /// Whether the coefficients are known to be real.
    pub fn is_self_dual(&self) -> bool {
        match &self.family {
            LocalFamily::Zeta => true,
            LocalFamily::Dirichlet(chi) => chi.is_real(),
            LocalFamily::Gl2Hecke(_) => self.mu.iter().all(|z| z.im == 0.0),
            LocalFamily::Explicit(map) => {
                multiset_conj_closed(&self.mu) && map.values().all(|v| multiset_conj_closed(v))
            }
            LocalFamily::Dual(inner) => inner.is_self_dual(),
            LocalFamily::RankinSelberg(rs) => {
                rs.a.is_self_dual()
                    && rs.b.is_self_dual()
                    && rs.ramified.values().all(|v| multiset_conj_closed(v))
            }
        }
    }

    /// Primes with stored (rather than generated) local data.
    pub fn stored_primes(&self) -> Vec<u64> {
        match &self.family {
            LocalFamily::Gl2Hecke(eig) => eig.keys().copied().collect(),
            LocalFamily::Explicit(map) => map.keys().copied().collect(),
            LocalFamily::Dual(inner) => inner.stored_primes(),
            _ => Vec::new(),
        }
    }

    /// Type invariants on the global data.
    pub fn validate(&self) -> Result<()> {
        let m = self.degree;
        if m == 0 {
            return Err(PntError::invariant("degree must be positive"));
        }
        if self.conductor == 0 {
            return Err(PntError::invariant("conductor must be positive"));
        }
        if self.mu.len() != m {
            return Err(PntError::invariant(format!(
                "expected {m} archimedean parameters, got {}",
                self.mu.len()
            )));
        }
        let floor = -1.0 + 1.0 / m as f64;
        for z in &self.mu {
            if !(z.re.is_finite() && z.im.is_finite()) || z.re < floor - BOUND_SLACK {
                return Err(PntError::invariant(format!(
                    "Re(mu) = {} violates Re(mu) >= -1 + 1/m = {floor}",
                    z.re
                )));
            }
        }
        if self.pole_order as usize > m {
            return Err(PntError::invariant(format!(
                "pole order {} outside [0, {m}]",
                self.pole_order
            )));
        }
        if let Some(b) = self.beta0 {
            if !(b > 0.5 && b < 1.0) {
                return Err(PntError::invariant(format!("beta0 = {b} outside (1/2, 1)")));
            }
        }
        Ok(())
    }

    /// Pointwise bound and zero pattern of the Satake list at `p`.
    pub(crate) fn check_local(&self, p: u64, alphas: &[Complex64]) -> Result<()> {
        if !is_prime(p) {
            return Err(PntError::invariant(format!("{p} is not prime")));
        }
        let m = self.degree;
        if alphas.len() != m {
            return Err(PntError::invariant(format!(
                "expected {m} Satake parameters at p = {p}, got {}",
                alphas.len()
            )));
        }
        let bound = (p as f64).powf(1.0 - 1.0 / m as f64);
        for a in alphas {
            if !(a.re.is_finite() && a.im.is_finite()) || a.norm() > bound * (1.0 + BOUND_SLACK) {
                return Err(PntError::invariant(format!(
                    "|alpha| = {} at p = {p} exceeds p^(1-1/m) = {bound}",
                    a.norm()
                )));
            }
        }
        let zeros = alphas.iter().filter(|a| a.norm() == 0.0).count();
        if !self.conductor.is_multiple_of(p) && zeros > 0 {
            return Err(PntError::invariant(format!(
                "p = {p} does not divide q = {} but a Satake parameter vanishes",
                self.conductor
            )));
        }
        if self.conductor.is_multiple_of(p) && zeros == 0 {
            return Err(PntError::invariant(format!(
                "p = {p} divides q = {} but no Satake parameter vanishes",
                self.conductor
            )));
        }
        Ok(())
    }
}

impl RankinSelbergData {
    fn satake(&self, p: u64) -> Result<Vec<Complex64>> {
        if let Some(list) = self.ramified.get(&p) {
            return Ok(list.clone());
        }
        if self.skipped.contains(&p) {
            return Ok(Vec::new());
        }
        let ramified_a = self.a.conductor().is_multiple_of(p);
        let ramified_b = self.b.conductor().is_multiple_of(p);
        if ramified_a && ramified_b {
            return Err(PntError::MissingLocalData { p });
        }
        let a = self.a.satake(p)?;
        let b = self.b.satake(p)?;
        Ok(a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect())
    }
}

pub(crate) fn archimedean_conductor(q: u64, mu: &[Complex64]) -> f64 {
    mu.iter().fold(q as f64, |acc, z| acc * (z.norm() + 3.0))
}

pub(crate) fn power_sum(alphas: &[Complex64], k: u32) -> Complex64 {
    alphas.iter().map(|a| a.powu(k)).sum()
}

fn multiset_conj_closed(values: &[Complex64]) -> bool {
    let mut unmatched: Vec<Complex64> = values.to_vec();
    for v in values {
        let target = v.conj();
        match unmatched.iter().position(|u| (u - target).norm() <= 1e-12 * (1.0 + v.norm())) {
            Some(i) => {
                unmatched.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta() -> LFunctionData {
        let lambda2 = -24.0 / 2f64.powf(5.5);
        let lambda3 = 252.0 / 3f64.powf(5.5);
        let eig = BTreeMap::from([(2, lambda2), (3, lambda3)]);
        LFunctionData::gl2_hecke(
            "delta",
            1,
            [Complex64::new(5.5, 0.0), Complex64::new(6.5, 0.0)],
            eig,
        )
        .unwrap()
    }

    #[test]
    fn analytic_conductor_examples() {
        assert_eq!(LFunctionData::zeta().analytic_conductor(), 3.0);
        let even5 = LFunctionData::dirichlet(5, 2).unwrap();
        assert_eq!(even5.mu()[0].re, 0.0);
        assert_eq!(even5.analytic_conductor(), 15.0);
        assert_eq!(delta().analytic_conductor(), 8.5 * 9.5);
    }

    #[test]
    fn coefficient_examples() {
        let zeta = LFunctionData::zeta();
        assert!((zeta.coefficient(8).unwrap().re - 2f64.ln()).abs() < 1e-15);
        assert_eq!(zeta.coefficient(12).unwrap(), Complex64::new(0.0, 0.0));
        let chi = LFunctionData::dirichlet(4, 1).unwrap();
        assert_eq!(chi.coefficient(9).unwrap(), Complex64::new(3f64.ln(), 0.0));
        assert_eq!(chi.coefficient(3).unwrap(), Complex64::new(-(3f64.ln()), 0.0));
        assert_eq!(chi.coefficient(4).unwrap(), Complex64::new(0.0, 0.0));
        let d2 = delta().coefficient(2).unwrap();
        assert!((d2.re - (-24.0 / 2f64.powf(5.5)) * 2f64.ln()).abs() < 1e-15);
        assert!((d2.re + 0.367_596_803_8).abs() < 1e-9);
        assert!(d2.im.abs() < 1e-15);
    }

    #[test]
    fn missing_local_data() {
        let err = delta().coefficient(5).unwrap_err();
        assert!(matches!(err, PntError::MissingLocalData { p: 5 }));
        assert!(matches!(delta().coefficient(1), Err(PntError::Domain(_))));
    }

    #[test]
    fn invariants_rejected() {
        let bad_mu = LFunctionData::explicit(
            "x",
            1,
            vec![Complex64::new(-1.0, 0.0)],
            0,
            BTreeMap::new(),
        );
        assert!(matches!(bad_mu, Err(PntError::InvariantViolation { .. })));
        let big_alpha = LFunctionData::explicit(
            "x",
            1,
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            0,
            BTreeMap::from([(2, vec![Complex64::new(1.5, 0.0), Complex64::new(1.0, 0.0)])]),
        );
        assert!(big_alpha.is_err());
        let zero_at_good = LFunctionData::explicit(
            "x",
            1,
            vec![Complex64::new(0.0, 0.0)],
            0,
            BTreeMap::from([(2, vec![Complex64::new(0.0, 0.0)])]),
        );
        assert!(zero_at_good.is_err());
        let no_zero_at_bad = LFunctionData::explicit(
            "x",
            2,
            vec![Complex64::new(0.0, 0.0)],
            0,
            BTreeMap::from([(2, vec![Complex64::new(1.0, 0.0)])]),
        );
        assert!(no_zero_at_bad.is_err());
        assert!(LFunctionData::zeta().with_pole_order(2).is_err());
        assert!(LFunctionData::zeta().with_beta0(Some(0.4)).is_err());
        assert!(LFunctionData::zeta().with_beta0(Some(0.9)).is_ok());
        assert!(LFunctionData::dirichlet(8, 0).is_err());
    }

    #[test]
    fn dual_conjugates_and_round_trips() {
        let chi = LFunctionData::dirichlet(5, 1).unwrap();
        let dual = chi.dual();
        assert_eq!(dual.analytic_conductor(), chi.analytic_conductor());
        for n in 2..50 {
            assert_eq!(dual.coefficient(n).unwrap(), chi.coefficient(n).unwrap().conj());
        }
        assert_eq!(dual.dual().label(), chi.label());
        assert!(!chi.is_self_dual());
        assert!(LFunctionData::dirichlet(4, 1).unwrap().is_self_dual());
        assert!(delta().is_self_dual());
    }
}

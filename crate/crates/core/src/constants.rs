//! Named slots for the absolute constants that the bounds leave unspecified.
//!
//! Every constant is a strictly positive real. Reports echo the values they
//! were computed with via [`ConstantsConfig::entries`].

use std::collections::BTreeMap;

use crate::error::{PntError, Result};

/// Table of `c_{m,m',eps}` for the narrow zero-free region, keyed by `(m, m')`.
/// Pairs missing from the table fall back to `default`.
#[derive(Debug, Clone, PartialEq)]
pub struct BrumleyConstant {
    pub default: f64,
    pub table: BTreeMap<(u32, u32), f64>,
}

impl BrumleyConstant {
    pub fn value(&self, m: u32, m_prime: u32, _eps: f64) -> f64 {
        self.table
            .get(&(m, m_prime))
            .copied()
            .unwrap_or(self.default)
    }
}

impl Default for BrumleyConstant {
    fn default() -> Self {
        Self {
            default: 1.0,
            table: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsConfig {
    /// Width constant of the standard zero-free region for `L(s, pi x pi')`.
    pub c_zfr: f64,
    pub c_siegel_effective: f64,
    pub c_siegel_1: f64,
    pub c_siegel_2: f64,
    /// Exponent base of the log-free density estimate (`10^7`).
    pub c_density_exp: f64,
    /// The `m^{c m^3}` constant of the log-free density estimate.
    pub c_density_coeff: f64,
    /// Constant of the repulsion-improved density estimate; also sets `l`.
    pub c_repulsion: f64,
    pub c_main1: f64,
    pub c_main2: f64,
    pub c_main3: f64,
    pub c_ik: f64,
    pub c_unsmoothing: f64,
    /// Error-term constant of the standard and Rankin-Selberg corollaries.
    pub c_errorterm: f64,
    /// Per-unit-height zero count constant used for zero-sum tails.
    pub c_zero_count: f64,
    /// Implied constant of the discretization allowance in the zero-side evaluation.
    pub c_discretization: f64,
    /// The `O(m^2)` constant in the first l1 estimate.
    pub c_l1: f64,
    /// Implied constant of the short-interval l1 estimate.
    pub c_short_interval: f64,
    /// Allowance constant for the kernel main-term difference.
    pub c_main_term_diff: f64,
    /// Comparison constant for the `nu(1) x` sandwich.
    pub kappa: f64,
    pub brumley_c: BrumleyConstant,
}

impl Default for ConstantsConfig {
    fn default() -> Self {
        Self {
            c_zfr: 1.0,
            c_siegel_effective: 1.0,
            c_siegel_1: 1.0,
            c_siegel_2: 1.0,
            c_density_exp: 1e7,
            c_density_coeff: 1.0,
            c_repulsion: 1.0,
            c_main1: 1.0,
            c_main2: 1.0,
            c_main3: 1.0,
            c_ik: 1.0,
            c_unsmoothing: 1.0,
            c_errorterm: 1.0,
            c_zero_count: 1.0,
            c_discretization: 1.0,
            c_l1: 1.0,
            c_short_interval: 1.0,
            c_main_term_diff: 1.0,
            kappa: 10.0,
            brumley_c: BrumleyConstant::default(),
        }
    }
}

macro_rules! scalar_slots {
    ($($name:ident),* $(,)?) => {
        impl ConstantsConfig {
            /// `(name, value)` for every scalar slot, in declaration order.
            pub fn entries(&self) -> Vec<(&'static str, f64)> {
                vec![$((stringify!($name), self.$name)),*]
            }

            fn slot_mut(&mut self, name: &str) -> Option<&mut f64> {
                match name {
                    $(stringify!($name) => Some(&mut self.$name),)*
                    _ => None,
                }
            }
        }
    };
}

scalar_slots!(
    c_zfr,
    c_siegel_effective,
    c_siegel_1,
    c_siegel_2,
    c_density_exp,
    c_density_coeff,
    c_repulsion,
    c_main1,
    c_main2,
    c_main3,
    c_ik,
    c_unsmoothing,
    c_errorterm,
    c_zero_count,
    c_discretization,
    c_l1,
    c_short_interval,
    c_main_term_diff,
    kappa,
);

impl ConstantsConfig {
    /// Set a constant by name. `brumley_c` sets the default and
    /// `brumley_c.<m>.<m'>` a table entry. The config is left untouched
    /// when the new value is rejected.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let mut next = self.clone();
        next.assign(name, value)?;
        next.validate()?;
        *self = next;
        Ok(())
    }

    fn assign(&mut self, name: &str, value: f64) -> Result<()> {
        let unknown = || PntError::invariant(format!("unknown constant `{name}`"));
        if let Some(rest) = name.strip_prefix("brumley_c") {
            if rest.is_empty() {
                self.brumley_c.default = value;
                return Ok(());
            }
            let mut parts = rest.strip_prefix('.').ok_or_else(unknown)?.split('.');
            let m = parts.next().and_then(|s| s.parse::<u32>().ok());
            let mp = parts.next().and_then(|s| s.parse::<u32>().ok());
            return match (m, mp, parts.next()) {
                (Some(m), Some(mp), None) => {
                    self.brumley_c.table.insert((m, mp), value);
                    Ok(())
                }
                _ => Err(unknown()),
            };
        }
        let slot = self.slot_mut(name).ok_or_else(unknown)?;
        *slot = value;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.entries() {
            if !(v.is_finite() && v > 0.0) {
                return Err(PntError::invariant(format!(
                    "constant {name} must be a positive real, got {v}"
                )));
            }
        }
        for (name, v) in [
            ("c_siegel_effective", self.c_siegel_effective),
            ("c_repulsion", self.c_repulsion),
            ("c_main1", self.c_main1),
            ("c_main3", self.c_main3),
        ] {
            if v < 1.0 {
                return Err(PntError::invariant(format!("{name} must be >= 1, got {v}")));
            }
        }
        let brumley = std::iter::once(self.brumley_c.default).chain(self.brumley_c.table.values().copied());
        for v in brumley {
            if !(v.is_finite() && v > 0.0) {
                return Err(PntError::invariant(format!("brumley_c must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

//! Zero datasets and the zero-counting functions.

use std::path::Path;

use crate::constants::ConstantsConfig;
use crate::error::{PntError, Result};
use crate::lfun::LFunctionData;
use crate::regions::nu;
use crate::report::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Treat the file as positive ordinates only, regardless of its header.
    pub half: bool,
}

/// Nontrivial zeros sorted by ordinate, complete up to `completeness`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroDataset {
    zeros: Vec<Zero>,
    completeness: f64,
    conjugate_closed: bool,
    source: String,
}

/// `N*` together with whether `(beta0, 0)` was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarCount {
    pub count: usize,
    pub beta0_found: bool,
}

impl ZeroDataset {
    pub fn new(mut zeros: Vec<Zero>, completeness: f64, source: impl Into<String>) -> Result<Self> {
        if !(completeness >= 0.0) {
            return Err(PntError::invariant(format!("completeness {completeness} is negative")));
        }
        for z in &zeros {
            if !(z.beta > 0.0 && z.beta < 1.0) || !z.gamma.is_finite() {
                return Err(PntError::invariant(format!(
                    "zero {} + {}i outside the critical strip",
                    z.beta, z.gamma
                )));
            }
        }
        zeros.sort_by(|a, b| a.gamma.total_cmp(&b.gamma).then(a.beta.total_cmp(&b.beta)));
        let conjugate_closed = is_conjugate_closed(&zeros);
        Ok(Self {
            zeros,
            completeness,
            conjugate_closed,
            source: source.into(),
        })
    }

    pub fn empty() -> Self {
        Self {
            zeros: Vec::new(),
            completeness: 0.0,
            conjugate_closed: true,
            source: String::new(),
        }
    }

    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn completeness(&self) -> f64 {
        self.completeness
    }

    pub fn conjugate_closed(&self) -> bool {
        self.conjugate_closed
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Zeros with `|gamma| <= t`.
    pub fn up_to(&self, t: f64) -> &[Zero] {
        let lo = self.zeros.partition_point(|z| z.gamma < -t);
        let hi = self.zeros.partition_point(|z| z.gamma <= t);
        &self.zeros[lo..hi.max(lo)]
    }

    pub fn require_height(&self, t: f64) -> Result<()> {
        if t > self.completeness {
            return Err(PntError::IncompleteDataset {
                requested: t,
                height: self.completeness,
            });
        }
        Ok(())
    }

    /// `#{rho : beta >= sigma, |gamma| <= T}` with multiplicity.
    pub fn count_n(&self, sigma: f64, t: f64) -> Result<usize> {
        self.require_height(t)?;
        Ok(self.up_to(t).iter().filter(|z| z.beta >= sigma).count())
    }

    /// `count_n` without one occurrence of the exceptional zero `(beta0, 0)`.
    pub fn count_n_star(&self, sigma: f64, t: f64, beta0: f64) -> Result<StarCount> {
        let count = self.count_n(sigma, t)?;
        if !(beta0 > 0.5) || beta0 < sigma {
            return Ok(StarCount {
                count,
                beta0_found: false,
            });
        }
        let found = self.up_to(0.0).iter().any(|z| z.gamma == 0.0 && z.beta == beta0);
        Ok(StarCount {
            count: count - usize::from(found),
            beta0_found: found,
        })
    }

    /// `#{rho : |rho - (1 + it)| <= eta}`.
    pub fn disc_count(&self, t: f64, eta: f64) -> Result<usize> {
        if !(eta > 0.0 && eta <= 2.0) {
            return Err(PntError::domain(format!("disc radius {eta} outside (0, 2]")));
        }
        self.require_height(t.abs() + eta)?;
        let lo = self.zeros.partition_point(|z| z.gamma < t - eta);
        let hi = self.zeros.partition_point(|z| z.gamma <= t + eta);
        Ok(self.zeros[lo..hi.max(lo)]
            .iter()
            .filter(|z| (1.0 - z.beta).hypot(z.gamma - t) <= eta)
            .count())
    }
}

pub fn load_zeros(path: &Path, opts: &LoadOptions) -> Result<ZeroDataset> {
    let text = std::fs::read_to_string(path)?;
    parse_zeros(&text, &path.display().to_string(), opts)
}

/// Parse the zero file format: `# completeness T`, `# half`, `# source ...`
/// headers, then one `gamma` or `beta gamma` per line.
pub fn parse_zeros(text: &str, source: &str, opts: &LoadOptions) -> Result<ZeroDataset> {
    let mut completeness = 0.0;
    let mut half = opts.half;
    let mut label = source.to_string();
    let mut zeros = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        if let Some(comment) = content.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("completeness") {
                completeness = v
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|t| *t >= 0.0 && t.is_finite())
                    .ok_or_else(|| PntError::parse(source, line, format!("bad completeness `{}`", v.trim())))?;
            } else if comment == "half" {
                half = true;
            } else if let Some(v) = comment.strip_prefix("source") {
                label = v.trim().to_string();
            }
            continue;
        }
        let fields: Vec<f64> = content
            .split_whitespace()
            .map(|f| f.parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| PntError::parse(source, line, format!("bad zero line `{content}`")))?;
        let zero = match fields.as_slice() {
            [g] => Zero { beta: 0.5, gamma: *g },
            [b, g] => Zero { beta: *b, gamma: *g },
            _ => return Err(PntError::parse(source, line, "expected `gamma` or `beta gamma`")),
        };
        if !(zero.beta > 0.0 && zero.beta < 1.0) {
            return Err(PntError::invariant(format!("beta = {} outside (0, 1)", zero.beta)).at(source, line));
        }
        zeros.push((zero, line));
    }
    let mut all = Vec::with_capacity(2 * zeros.len());
    for (z, line) in zeros {
        if half {
            if z.gamma < 0.0 {
                return Err(PntError::invariant("negative ordinate in a half dataset").at(source, line));
            }
            if z.gamma > 0.0 {
                all.push(Zero { beta: z.beta, gamma: -z.gamma });
            }
        }
        all.push(z);
    }
    ZeroDataset::new(all, completeness, label)
}

fn is_conjugate_closed(sorted: &[Zero]) -> bool {
    let n = sorted.len();
    let mut mirrored: Vec<Zero> = sorted.iter().map(|z| Zero { beta: z.beta, gamma: -z.gamma }).collect();
    mirrored.sort_by(|a, b| a.gamma.total_cmp(&b.gamma).then(a.beta.total_cmp(&b.beta)));
    (0..n).all(|i| {
        let (a, b) = (sorted[i], mirrored[i]);
        (a.gamma - b.gamma).abs() <= 1e-9 * (1.0 + a.gamma.abs()) && (a.beta - b.beta).abs() <= 1e-12
    })
}

/// Empirical counts against the log-free density envelopes
/// `m^{c m^3} (CT)^{c_exp m^3 (1 - sigma)}` and
/// `nu(T) m^{c_rep m^3} (CT)^{c_rep m^3 (1 - sigma)}`, in log form since the
/// envelopes overflow for honest constants.
pub fn density_report(
    ds: &ZeroDataset,
    lf: &LFunctionData,
    sigmas: &[f64],
    heights: &[f64],
    constants: &ConstantsConfig,
) -> Result<Table> {
    let mut table = Table::new([
        "sigma",
        "T",
        "count_N",
        "count_N_star",
        "log_envelope_N",
        "log_envelope_N_star",
        "ratio_N",
        "ratio_N_star",
        "empirical_exponent",
    ]);
    let m = lf.degree() as f64;
    let m3 = m.powi(3);
    let c = lf.analytic_conductor();
    let beta0 = lf.beta0_or_half();
    for &t in heights {
        if !(t >= 1.0) {
            return Err(PntError::domain(format!("heights must be >= 1, got {t}")));
        }
        let log_ct = (c * t).ln();
        for &sigma in sigmas {
            let n = ds.count_n(sigma, t)?;
            let star = ds.count_n_star(sigma, t, beta0)?.count;
            let log_env = constants.c_density_coeff * m3 * m.ln() + constants.c_density_exp * m3 * (1.0 - sigma) * log_ct;
            let log_env_star = nu(beta0, c, t)?.ln()
                + constants.c_repulsion * m3 * m.ln()
                + constants.c_repulsion * m3 * (1.0 - sigma) * log_ct;
            let ratio = |count: usize, log_env: f64| {
                if count == 0 {
                    0.0
                } else {
                    ((count as f64).ln() - log_env).exp()
                }
            };
            let exponent = if n > 0 {
                Cell::Num((n as f64).ln() / log_ct)
            } else {
                Cell::Text(String::new())
            };
            table.push(vec![
                sigma.into(),
                t.into(),
                n.into(),
                star.into(),
                log_env.into(),
                log_env_star.into(),
                ratio(n, log_env).into(),
                ratio(star, log_env_star).into(),
                exponent,
            ])?;
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(text: &str) -> ZeroDataset {
        parse_zeros(text, "t", &LoadOptions { half: true }).unwrap()
    }

    #[test]
    fn single_ordinate_mirrors() {
        let ds = half("# completeness 20\n14.134725141734693\n");
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.zeros()[0].gamma, -14.134725141734693);
        assert!(ds.zeros().iter().all(|z| z.beta == 0.5));
        assert!(ds.conjugate_closed());
    }

    #[test]
    fn empty_and_malformed() {
        let ds = parse_zeros("", "t", &LoadOptions::default()).unwrap();
        assert!(ds.is_empty());
        assert_eq!(ds.completeness(), 0.0);
        match parse_zeros("abc\n", "t", &LoadOptions::default()).unwrap_err() {
            PntError::Parse { location, .. } => assert_eq!(location.line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_zeros("1.5 3\n", "t", &LoadOptions::default()).is_err());
        assert!(parse_zeros("# half\n-3\n", "t", &LoadOptions::default()).is_err());
    }

    #[test]
    fn counts() {
        let ds = half("# completeness 30\n14.13\n21.02\n25.01\n0.9 0\n");
        assert_eq!(ds.count_n(0.0, 30.0).unwrap(), 7);
        assert_eq!(ds.count_n(0.6, 30.0).unwrap(), 1);
        assert_eq!(ds.count_n(0.0, 0.0).unwrap(), 1);
        assert_eq!(ds.count_n(0.0, 21.02).unwrap(), 5);
        assert!(matches!(ds.count_n(0.0, 31.0), Err(PntError::IncompleteDataset { .. })));
        let star = ds.count_n_star(0.8, 30.0, 0.9).unwrap();
        assert_eq!((star.count, star.beta0_found), (0, true));
        assert_eq!(ds.count_n_star(0.0, 30.0, 0.5).unwrap().count, 7);
        let missing = ds.count_n_star(0.6, 30.0, 0.95).unwrap();
        assert_eq!((missing.count, missing.beta0_found), (1, false));
    }

    #[test]
    fn disc_counts() {
        let ds = half("# completeness 30\n14.134725\n21.022040\n");
        assert_eq!(ds.disc_count(14.0, 0.6).unwrap(), 1);
        assert_eq!(ds.disc_count(14.0, 0.49).unwrap(), 0);
        assert_eq!(ds.disc_count(-14.0, 0.6).unwrap(), 1);
        assert!(ds.disc_count(29.8, 0.5).is_err());
        assert!(ds.disc_count(10.0, 0.0).is_err());
    }

    #[test]
    fn explicit_both_signs_is_closed() {
        let ds = parse_zeros("# completeness 5\n0.5 3\n0.5 -3\n", "t", &LoadOptions::default()).unwrap();
        assert!(ds.conjugate_closed());
        let ds = parse_zeros("# completeness 5\n0.5 3\n", "t", &LoadOptions::default()).unwrap();
        assert!(!ds.conjugate_closed());
    }
}

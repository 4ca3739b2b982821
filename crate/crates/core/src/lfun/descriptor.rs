//! Text formats: L-function descriptors, Hecke eigenvalue files, Satake files.
//!
//! A descriptor holds `key = value` lines with `#` comments. File paths in
//! `family` are resolved relative to the descriptor's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::{LFunctionData, LocalFamily};
use crate::arith::is_prime;
use crate::complex::parse_complex;
use crate::error::{PntError, Result};

const KEYS: [&str; 8] = [
    "label",
    "degree",
    "conductor",
    "mu",
    "pole_order",
    "beta0",
    "family",
    "arch_unramified",
];

struct Entry {
    value: String,
    line: usize,
}

pub fn load_descriptor(path: &Path) -> Result<LFunctionData> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_descriptor(&text, &path.display().to_string(), &base)
}

/// Parse a descriptor; `base` is the directory used for relative data paths.
pub fn parse_descriptor(text: &str, source: &str, base: &Path) -> Result<LFunctionData> {
    let mut entries: BTreeMap<&str, Entry> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| PntError::parse(source, line, format!("expected `key = value`, got `{content}`")))?;
        let key = key.trim();
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(PntError::parse(source, line, format!("unknown key `{key}`")));
        };
        let entry = Entry {
            value: value.trim().to_string(),
            line,
        };
        if entries.insert(known, entry).is_some() {
            return Err(PntError::parse(source, line, format!("duplicate key `{key}`")));
        }
    }

    let family = entries
        .get("family")
        .ok_or_else(|| PntError::parse(source, text.lines().count().max(1), "missing key `family`"))?;
    let family_line = family.line;
    let degree = parse_field::<usize>(&entries, "degree", source)?;
    let conductor = parse_field::<u64>(&entries, "conductor", source)?;
    let pole = parse_field::<u32>(&entries, "pole_order", source)?;
    let beta0 = parse_field::<f64>(&entries, "beta0", source)?;
    let arch = parse_field::<bool>(&entries, "arch_unramified", source)?;
    let mu = match entries.get("mu") {
        Some(e) => Some(parse_mu(&e.value, source, e.line)?),
        None => None,
    };
    let line_of = |key: &str| entries.get(key).map(|e| e.line).unwrap_or(family_line);

    let spec = family.value.as_str();
    let mut lf = if spec == "zeta" {
        builtin_consistent(LFunctionData::zeta(), degree, conductor, &mu, &line_of, source)?
    } else if let Some(rest) = spec.strip_prefix("dirichlet:") {
        let (q, idx) = rest
            .split_once(':')
            .and_then(|(q, i)| Some((q.trim().parse::<u64>().ok()?, i.trim().parse::<u64>().ok()?)))
            .ok_or_else(|| PntError::parse(source, family_line, format!("bad dirichlet family `{spec}`")))?;
        let lf = LFunctionData::dirichlet(q, idx).map_err(|e| e.at(source, family_line))?;
        builtin_consistent(lf, degree, conductor, &mu, &line_of, source)?
    } else if let Some(rel) = spec.strip_prefix("gl2-hecke:") {
        let path = resolve(base, rel);
        let q = conductor.ok_or_else(|| PntError::parse(source, family_line, "gl2-hecke needs `conductor`"))?;
        let mu = mu.ok_or_else(|| PntError::parse(source, family_line, "gl2-hecke needs `mu`"))?;
        if degree.is_some_and(|d| d != 2) || mu.len() != 2 {
            return Err(PntError::invariant("gl2-hecke data has degree 2 and two archimedean parameters")
                .at(source, line_of("mu")));
        }
        let path_text = path.display().to_string();
        let text = std::fs::read_to_string(&path)?;
        let rows = hecke_rows(&text, &path_text)?;
        let eig: BTreeMap<u64, f64> = rows.iter().map(|&(p, v, _)| (p, v)).collect();
        let lf = LFunctionData::gl2_hecke(spec.to_string(), q, [mu[0], mu[1]], BTreeMap::new())
            .map_err(|e| e.at(source, line_of("mu")))?;
        for &(p, _, line) in &rows {
            let probe = LFunctionData {
                family: LocalFamily::Gl2Hecke(std::sync::Arc::new(BTreeMap::from([(p, eig[&p])]))),
                ..lf.clone()
            };
            probe.check_local(p, &probe.satake(p)?).map_err(|e| e.at(&path_text, line))?;
        }
        LFunctionData {
            family: LocalFamily::Gl2Hecke(std::sync::Arc::new(eig)),
            ..lf
        }
    } else if let Some(rel) = spec.strip_prefix("explicit:") {
        let path = resolve(base, rel);
        let q = conductor.ok_or_else(|| PntError::parse(source, family_line, "explicit needs `conductor`"))?;
        let mu = mu.ok_or_else(|| PntError::parse(source, family_line, "explicit needs `mu`"))?;
        if let Some(d) = degree {
            if d != mu.len() {
                return Err(PntError::invariant(format!(
                    "degree {d} but {} archimedean parameters",
                    mu.len()
                ))
                .at(source, line_of("degree")));
            }
        }
        let m = mu.len();
        let shell = LFunctionData::explicit(spec.to_string(), q, mu, 0, BTreeMap::new())
            .map_err(|e| e.at(source, line_of("mu")))?;
        let path_text = path.display().to_string();
        let text = std::fs::read_to_string(&path)?;
        let rows = satake_rows(&text, &path_text, m)?;
        for (p, alphas, line) in &rows {
            shell.check_local(*p, alphas).map_err(|e| e.at(&path_text, *line))?;
        }
        LFunctionData {
            family: LocalFamily::Explicit(std::sync::Arc::new(
                rows.into_iter().map(|(p, a, _)| (p, a)).collect(),
            )),
            ..shell
        }
    } else {
        return Err(PntError::parse(source, family_line, format!("unknown family `{spec}`")));
    };

    if let Some(label) = entries.get("label") {
        lf = lf.with_label(label.value.clone());
    }
    if let Some(r) = pole {
        lf = lf.with_pole_order(r).map_err(|e| e.at(source, line_of("pole_order")))?;
    }
    if beta0.is_some() {
        lf = lf.with_beta0(beta0).map_err(|e| e.at(source, line_of("beta0")))?;
    }
    if let Some(flag) = arch {
        lf = lf.with_arch_unramified(flag);
    }
    Ok(lf)
}

/// Hecke file: lines `p lambda_p`.
pub fn parse_hecke_file(text: &str, source: &str) -> Result<BTreeMap<u64, f64>> {
    Ok(hecke_rows(text, source)?.into_iter().map(|(p, v, _)| (p, v)).collect())
}

/// Satake file: lines `p alpha_1 ... alpha_m`.
pub fn parse_satake_file(text: &str, source: &str, degree: usize) -> Result<BTreeMap<u64, Vec<Complex64>>> {
    Ok(satake_rows(text, source, degree)?
        .into_iter()
        .map(|(p, a, _)| (p, a))
        .collect())
}

fn hecke_rows(text: &str, source: &str) -> Result<Vec<(u64, f64, usize)>> {
    let mut rows = Vec::new();
    let mut seen = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(PntError::parse(source, line, "expected `p lambda_p`"));
        }
        let p = parse_prime(fields[0], source, line)?;
        let v: f64 = fields[1]
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| PntError::parse(source, line, format!("bad eigenvalue `{}`", fields[1])))?;
        if seen.insert(p, line).is_some() {
            return Err(PntError::parse(source, line, format!("prime {p} listed twice")));
        }
        rows.push((p, v, line));
    }
    Ok(rows)
}

fn satake_rows(text: &str, source: &str, degree: usize) -> Result<Vec<(u64, Vec<Complex64>, usize)>> {
    let mut rows = Vec::new();
    let mut seen = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != degree + 1 {
            return Err(PntError::parse(
                source,
                line,
                format!("expected a prime and {degree} parameters, got {} fields", fields.len()),
            ));
        }
        let p = parse_prime(fields[0], source, line)?;
        let alphas = fields[1..]
            .iter()
            .map(|f| parse_complex(f).ok_or_else(|| PntError::parse(source, line, format!("bad complex literal `{f}`"))))
            .collect::<Result<Vec<_>>>()?;
        if seen.insert(p, line).is_some() {
            return Err(PntError::parse(source, line, format!("prime {p} listed twice")));
        }
        rows.push((p, alphas, line));
    }
    Ok(rows)
}

fn parse_prime(field: &str, source: &str, line: usize) -> Result<u64> {
    let p: u64 = field
        .parse()
        .map_err(|_| PntError::parse(source, line, format!("bad prime `{field}`")))?;
    if !is_prime(p) {
        return Err(PntError::parse(source, line, format!("{p} is not prime")));
    }
    Ok(p)
}

fn parse_mu(value: &str, source: &str, line: usize) -> Result<Vec<Complex64>> {
    value
        .split(',')
        .map(|s| {
            parse_complex(s.trim()).ok_or_else(|| PntError::parse(source, line, format!("bad complex literal `{}`", s.trim())))
        })
        .collect()
}

fn parse_field<T: std::str::FromStr>(entries: &BTreeMap<&str, Entry>, key: &str, source: &str) -> Result<Option<T>> {
    match entries.get(key) {
        None => Ok(None),
        Some(e) => e
            .value
            .parse::<T>()
            .map(Some)
            .map_err(|_| PntError::parse(source, e.line, format!("bad value for `{key}`: `{}`", e.value))),
    }
}

/// Built-in families fix degree, conductor and `mu`; stated values must agree.
fn builtin_consistent(
    lf: LFunctionData,
    degree: Option<usize>,
    conductor: Option<u64>,
    mu: &Option<Vec<Complex64>>,
    line_of: &dyn Fn(&str) -> usize,
    source: &str,
) -> Result<LFunctionData> {
    if let Some(d) = degree {
        if d != lf.degree() {
            return Err(PntError::invariant(format!("family has degree {}, descriptor says {d}", lf.degree()))
                .at(source, line_of("degree")));
        }
    }
    if let Some(q) = conductor {
        if q != lf.conductor() {
            return Err(PntError::invariant(format!(
                "family has conductor {}, descriptor says {q}",
                lf.conductor()
            ))
            .at(source, line_of("conductor")));
        }
    }
    if let Some(mu) = mu {
        let probe = LFunctionData {
            mu: mu.clone(),
            degree: mu.len(),
            ..lf.clone()
        };
        probe.validate().map_err(|e| e.at(source, line_of("mu")))?;
        if mu.as_slice() != lf.mu() {
            return Err(PntError::invariant(format!(
                "family has archimedean parameters {:?}, descriptor says {mu:?}",
                lf.mu()
            ))
            .at(source, line_of("mu")));
        }
    }
    Ok(lf)
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head)
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel.trim());
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<LFunctionData> {
        parse_descriptor(text, "test.lf", Path::new("."))
    }

    #[test]
    fn zeta_descriptor() {
        let lf = parse("# the simplest case\nfamily = zeta\n").unwrap();
        assert_eq!(lf.degree(), 1);
        assert_eq!(lf.conductor(), 1);
        assert_eq!(lf.pole_order(), 1);
        assert_eq!(lf.mu(), &[Complex64::new(0.0, 0.0)]);
    }

    #[test]
    fn dirichlet_descriptor() {
        let lf = parse("label = chi_-4\nfamily = dirichlet:4:1\n").unwrap();
        assert_eq!(lf.conductor(), 4);
        assert_eq!(lf.mu(), &[Complex64::new(1.0, 0.0)]);
        assert_eq!(lf.label(), "chi_-4");
    }

    #[test]
    fn mu_below_floor_is_rejected_with_line() {
        let err = parse("family = zeta\nmu = -1\n").unwrap_err();
        match err {
            PntError::InvariantViolation { location: Some(loc), .. } => assert_eq!(loc.line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_lines() {
        for (text, line) in [
            ("family = zeta\nbogus = 1\n", 2),
            ("family = zeta\nno equals sign\n", 2),
            ("degree = x\nfamily = zeta\n", 1),
            ("family = zeta\nfamily = zeta\n", 2),
            ("family = dirichlet:4\n", 1),
        ] {
            match parse(text).unwrap_err() {
                PntError::Parse { location, .. } => assert_eq!(location.line, line, "{text}"),
                other => panic!("unexpected {other:?} for {text}"),
            }
        }
    }

    #[test]
    fn explicit_family_from_file() {
        let dir = std::env::temp_dir().join(format!("pnt-desc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("sat.txt"), "2 0.6 -0.6\n3 i -i\n").unwrap();
        let text = "family = explicit:sat.txt\nconductor = 1\nmu = 0, 1\n";
        let lf = parse_descriptor(text, "x.lf", &dir).unwrap();
        assert_eq!(lf.degree(), 2);
        assert!((lf.coefficient(9).unwrap().re - (-2.0 * 3f64.ln())).abs() < 1e-15);
        std::fs::write(dir.join("sat.txt"), "2 0.6 -0.6\n3 2 0.5\n").unwrap();
        match parse_descriptor(text, "x.lf", &dir).unwrap_err() {
            PntError::InvariantViolation { location: Some(loc), .. } => assert_eq!(loc.line, 2),
            other => panic!("unexpected {other:?}"),
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn hecke_file_rejects_composites() {
        assert!(parse_hecke_file("2 0.1\n4 0.2\n", "h").is_err());
        assert_eq!(parse_hecke_file("# c\n2 0.1\n", "h").unwrap().len(), 1);
    }
}

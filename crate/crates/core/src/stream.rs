//! Segmented enumeration of prime powers with their coefficients.
//!
//! `[2, X]` is cut into fixed-length segments aligned at multiples of the
//! segment length. Segments are sieved in parallel batches and handed to the
//! consumer strictly in increasing order, so the visible sequence does not
//! depend on the thread count or on which segments came from a cache.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{isqrt, primes_up_to};
use crate::error::{PntError, Result};
use crate::lfun::LFunctionData;

/// `a(n) Lambda(n)` at a prime power `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientTerm {
    pub n: u64,
    pub value: Complex64,
}

/// Storage for fully sieved segments `[lo, hi)` of one L-function.
pub trait SegmentCache: Send + Sync {
    fn load(&self, lo: u64, hi: u64) -> Option<Vec<CoefficientTerm>>;
    fn store(&self, lo: u64, hi: u64, terms: &[CoefficientTerm]);
}

#[derive(Clone)]
pub struct StreamConfig {
    /// Largest admissible `X`.
    pub capacity: u64,
    pub segment_len: u64,
    pub cache: Option<Arc<dyn SegmentCache>>,
}

impl Default for StreamConfig {
    fn default() -> Self {
        Self {
            capacity: 1_000_000_000,
            segment_len: 1 << 18,
            cache: None,
        }
    }
}

impl fmt::Debug for StreamConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StreamConfig")
            .field("capacity", &self.capacity)
            .field("segment_len", &self.segment_len)
            .field("cache", &self.cache.is_some())
            .finish()
    }
}

/// Segments computed per parallel batch; affects memory only, never results.
const BATCH: u64 = 16;

/// All terms with `n <= x`, in increasing order.
pub fn coefficient_stream(lf: &LFunctionData, x: f64, cfg: &StreamConfig) -> Result<Vec<CoefficientTerm>> {
    let mut out = Vec::new();
    visit_terms(lf, 1.0, x, cfg, |t| {
        out.push(*t);
        Ok(())
    })?;
    Ok(out)
}

/// Feed every term with `lo < n <= hi` to `visit`, in increasing order of `n`.
pub fn visit_terms<F>(lf: &LFunctionData, lo: f64, hi: f64, cfg: &StreamConfig, mut visit: F) -> Result<()>
where
    F: FnMut(&CoefficientTerm) -> Result<()>,
{
    if hi.is_nan() || lo.is_nan() {
        return Err(PntError::domain("range endpoints must be numbers"));
    }
    if hi > cfg.capacity as f64 {
        return Err(PntError::CapacityExceeded {
            x: hi,
            capacity: cfg.capacity,
        });
    }
    if hi < 2.0 || hi <= lo {
        return Ok(());
    }
    let first = (lo.max(1.0).floor() as u64 + 1).max(2);
    let last = hi.floor() as u64;
    if first > last {
        return Ok(());
    }
    let len = cfg.segment_len.max(64);
    let small = primes_up_to(isqrt(last));
    let seg_first = first / len;
    let seg_last = last / len;
    let mut s = seg_first;
    while s <= seg_last {
        let batch_end = (s + BATCH).min(seg_last + 1);
        let segments: Vec<Result<Vec<CoefficientTerm>>> = (s..batch_end)
            .into_par_iter()
            .map(|k| {
                let seg_lo = k * len;
                let seg_hi = seg_lo + len;
                let full = seg_hi <= last + 1;
                let cache = cfg.cache.as_ref().filter(|_| full);
                if let Some(hit) = cache.and_then(|c| c.load(seg_lo, seg_hi)) {
                    return Ok(hit);
                }
                let terms = segment_terms(lf, seg_lo.max(2), seg_hi.min(last + 1), &small)?;
                if let Some(c) = cache {
                    c.store(seg_lo, seg_hi, &terms);
                }
                Ok(terms)
            })
            .collect();
        for seg in segments {
            for t in seg?.iter().filter(|t| t.n >= first && t.n <= last) {
                visit(t)?;
            }
        }
        s = batch_end;
    }
    Ok(())
}

/// Terms with `lo <= n < hi`; `small` must contain every prime up to `sqrt(hi - 1)`.
pub fn segment_terms(lf: &LFunctionData, lo: u64, hi: u64, small: &[u64]) -> Result<Vec<CoefficientTerm>> {
    let lo = lo.max(2);
    if hi <= lo {
        return Ok(Vec::new());
    }
    let width = (hi - lo) as usize;
    let mut composite = vec![false; width];
    let mut powers: Vec<(u64, u64, u32)> = Vec::new();
    for &p in small {
        if p * p >= hi {
            break;
        }
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m < hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
        let (mut q, mut k) = (p * p, 2u32);
        while q < hi {
            if q >= lo {
                powers.push((q, p, k));
            }
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            k += 1;
        }
    }
    let mut entries: Vec<(u64, u64, u32)> = composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| {
            let n = lo + i as u64;
            (n, n, 1)
        })
        .collect();
    entries.extend(powers);
    entries.sort_unstable_by_key(|e| e.0);
    let mut terms = Vec::with_capacity(entries.len());
    for (n, p, k) in entries {
        let alphas = lf.satake(p)?;
        if alphas.is_empty() {
            continue;
        }
        let value = crate::lfun::power_sum(&alphas, k) * (p as f64).ln();
        terms.push(CoefficientTerm { n, value });
    }
    Ok(terms)
}

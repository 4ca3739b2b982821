#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigUint;
use num_complex::Complex64;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// `log lcm(1, ..., n)` from exact integer arithmetic.
pub fn log_lcm(n: u64) -> f64 {
    let mut acc = BigUint::from(1u32);
    for k in 2..=n {
        let k = BigUint::from(k);
        let g = gcd(acc.clone(), k.clone());
        acc *= k / g;
    }
    big_ln(&acc)
}

fn gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while b != BigUint::from(0u32) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn big_ln(v: &BigUint) -> f64 {
    let bits = v.bits();
    let shift = bits.saturating_sub(60);
    let top: BigUint = v >> shift;
    let top = top.to_u64_digits().first().copied().unwrap_or(0) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `tau(n)` for `n < limit` from `q prod (1 - q^n)^24`, by direct series multiplication.
pub fn ramanujan_tau(limit: usize) -> Vec<i128> {
    let mut series = vec![0i128; limit];
    series[0] = 1;
    for n in 1..limit {
        for _ in 0..24 {
            for i in (n..limit).rev() {
                series[i] -= series[i - n];
            }
        }
    }
    let mut tau = vec![0i128; limit];
    tau[1..].copy_from_slice(&series[..limit - 1]);
    tau
}

/// Trial-division factorization, independent of the library's.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if p * p > n {
        return Some((n, 1));
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `int_a^b g` by composite Gauss-Legendre on `pieces` equal subintervals.
pub fn integrate(g: &dyn Fn(f64) -> Complex64, a: f64, b: f64, pieces: usize, rule: &[(f64, f64)]) -> Complex64 {
    let h = (b - a) / pieces as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..pieces {
        let (lo, hi) = (a + h * k as f64, a + h * (k + 1) as f64);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for &(x, w) in rule {
            acc += g(mid + half * x) * (w * half);
        }
    }
    acc
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{data_dir, gauss_legendre, integrate, log_lcm, ramanujan_tau};
use num_complex::Complex64;
use pnt_core::arith::primes_up_to;
use pnt_core::explicit::{
    ik_error_envelope_log, pnt_error_envelope, sharp_sum, smooth_sum, zero_side, EnvelopeParams, ZeroSideOptions,
};
use pnt_core::kernel::{big_f_decay_bound, KernelParams};
use pnt_core::lfun::{conductor_bounds, load_descriptor, rankin_selberg, RsOptions};
use pnt_core::regions::{
    default_t_max, eta_closed_form, eta_grid, lemma54_f_log, ZeroFreeRegion,
};
use pnt_core::zeros::{load_zeros, LoadOptions};
use pnt_core::{ConstantsConfig, LFunctionData, StreamConfig};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kernel_combos() -> Vec<KernelParams> {
    let mut out = Vec::new();
    for x in [1e3, 1e6] {
        for ell in [2, 5, 16] {
            for eps in [0.01, 0.2] {
                out.push(KernelParams::new(x, ell, eps).unwrap());
            }
        }
    }
    out
}

fn delta() -> LFunctionData {
    load_descriptor(&data_dir().join("lfun/delta.lf")).unwrap()
}

fn kernel_identity() -> Result<String, String> {
    let rule = gauss_legendre(24);
    let mut worst = 0.0f64;
    for kp in kernel_combos() {
        let l = kp.log_x();
        let zs = [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (-l, 0.0), (-0.5 * l, 0.0), (2.0, 3.0)];
        let step = 2.0 * kp.b();
        let (lo, hi) = kp.support();
        for (re, im) in zs {
            let z = Complex64::new(re, im);
            let g = |t: f64| (-z * t).exp() * kp.f(t);
            let mut quad = integrate(&g, 0.5, 1.0, 64, &rule);
            for j in 0..kp.ell() {
                let a = lo + step * j as f64;
                quad += integrate(&g, a, a + step, 1, &rule);
                let b = 1.0 + step * j as f64;
                quad += integrate(&g, b, (b + step).min(hi), 1, &rule);
            }
            let closed = kp.transform(z);
            let err = (closed - quad).norm();
            if quad.norm() < 1e-4 {
                ensure(err <= 1e-12, || format!("abs err {err:e} at z = {z}"))?;
            } else {
                worst = worst.max(err / quad.norm());
            }
        }
        let f0 = kp.transform(Complex64::new(0.0, 0.0)).re;
        ensure((f0 - (0.5 + kp.eps() / l)).abs() <= 1e-12 && f0 > 0.5 && f0 < 0.75, || format!("F(0) = {f0}"))?;
    }
    ensure(worst <= 1e-8, || format!("max rel err {worst:e}"))?;
    Ok(format!("max rel err {worst:.2e}"))
}

fn decay_bound() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(2);
    let (mut draws, mut violations) = (0, 0);
    for kp in kernel_combos() {
        for _ in 0..1000 {
            let s = Complex64::new(1.0 - rng.gen::<f64>(), rng.gen_range(-1e4..=1e4));
            let lhs = kp.transform(-s * kp.log_x()).norm();
            for alpha in [0.0, 1.0, kp.ell() as f64] {
                draws += 1;
                if lhs > big_f_decay_bound(&kp, s, alpha).unwrap() {
                    violations += 1;
                }
            }
        }
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!("{draws} checks, 0 violations"))
}

fn chebyshev() -> Result<String, String> {
    let z = LFunctionData::zeta();
    let mut worst = 0.0f64;
    for x in [100u64, 1000, 10_000] {
        let v = sharp_sum(&z, x as f64, &StreamConfig::default()).unwrap().re;
        worst = worst.max((v - log_lcm(x)).abs() / log_lcm(x));
    }
    let psi100 = sharp_sum(&z, 100.0, &StreamConfig::default()).unwrap().re;
    ensure(worst <= 1e-9, || format!("rel err {worst:e}"))?;
    ensure((psi100 - 94.045_311_2).abs() < 1e-6, || format!("psi(100) = {psi100}"))?;
    Ok(format!("psi(100) = {psi100:.10}, max rel err {worst:.1e}"))
}

fn closure() -> Result<String, String> {
    let mut notes = Vec::new();
    for (lf, file) in [
        (LFunctionData::zeta(), "zeta.zeros"),
        (LFunctionData::dirichlet(4, 1).unwrap(), "chi_m4.zeros"),
    ] {
        let ds = load_zeros(&data_dir().join("zeros").join(file), &LoadOptions::default()).unwrap();
        ensure(ds.completeness() >= 1e4 && ds.len() >= 1000, || format!("{file} too small"))?;
        let kp = KernelParams::new(1e3, 2, 0.05).unwrap();
        let smooth = smooth_sum(&lf, &kp, &StreamConfig::default()).unwrap();
        let mut gaps = Vec::new();
        for t in [1e2, 1e3, 1e4] {
            let side = zero_side(&lf, &kp, &ds, &ZeroSideOptions::new(t), &ConstantsConfig::default()).unwrap();
            let gap = (side.value - smooth).norm();
            ensure(gap <= side.tail_estimate + side.allowance, || format!("{file}: gap {gap} at T = {t}"))?;
            gaps.push(gap);
        }
        ensure(gaps[1] <= 1.1 * gaps[0] && gaps[2] <= 1.1 * gaps[1], || format!("{file}: gaps {gaps:?}"))?;
        notes.push(format!("{}: {:.3e}/{:.3e}/{:.3e}", lf.label(), gaps[0], gaps[1], gaps[2]));
    }
    Ok(notes.join("; "))
}

fn eta_oracle() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(5);
    for family in 0..3 {
        let mut n = 0;
        while n < 200 {
            let region = match family {
                0 => ZeroFreeRegion::classical(
                    rng.gen_range(0.1..4.0),
                    rng.gen_range(1..5),
                    rng.gen_range(1..5),
                    rng.gen_range(0.0..20.0),
                ),
                1 => ZeroFreeRegion::brumley(rng.gen_range(1e-4..1.5), rng.gen_range(0.05..3.0)),
                _ => ZeroFreeRegion::constant(rng.gen_range(1e-3..0.499)),
            };
            let Ok(region) = region else { continue };
            n += 1;
            let x = 10f64.powf(rng.gen_range(0.5..60.0));
            let closed = eta_closed_form(&region, x).unwrap();
            let grid = eta_grid(&region, x, default_t_max(x), 4000).unwrap();
            ensure(grid >= closed - 1e-6, || format!("{region:?} at x = {x}: {grid} < {closed}"))?;
            if family == 2 {
                ensure((grid - closed).abs() <= 1e-10, || format!("{region:?}: {grid} vs {closed}"))?;
            }
        }
    }
    let e100 = 100f64.exp();
    let examples = [
        (eta_closed_form(&ZeroFreeRegion::constant(0.1).unwrap(), 10f64.exp()).unwrap(), 2.098_61),
        (eta_closed_form(&ZeroFreeRegion::classical(1.0, 1, 1, 9f64.ln()).unwrap(), e100).unwrap(), 7.071_07),
        (eta_closed_form(&ZeroFreeRegion::brumley(1.0, 2.0).unwrap(), e100).unwrap(), 3.149_16),
    ];
    for (got, want) in examples {
        ensure((got - want).abs() <= 5e-6 * want, || format!("example {got} vs {want}"))?;
    }
    Ok("600 draws, 3 worked examples".into())
}

fn lemma54() -> Result<String, String> {
    let cap = std::f64::consts::E / (std::f64::consts::E - 1.0) + 1e-9;
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let l = 4.0 + 36.0 * i as f64 / 9_999.0;
        let mut prev = 1.0 - 1e-12;
        for j in 1..=1000 {
            let v = lemma54_f_log(l, j as f64 / 1000.0);
            ensure(v >= prev - 1e-12, || format!("not monotone at L = {l}, t = {}", j as f64 / 1000.0))?;
            prev = v;
            worst = worst.max(v);
        }
    }
    ensure(worst <= cap, || format!("max {worst}"))?;
    let far = lemma54_f_log(400.0, 1.0);
    ensure((far - 1.58198).abs() < 1e-2, || format!("f(e^400, 1) = {far}"))?;
    Ok(format!("max {worst:.9}, f(e^400, 1) = {far:.5}"))
}

fn rs_multiplicativity() -> Result<String, String> {
    let z = LFunctionData::zeta();
    let chi = LFunctionData::dirichlet(4, 1).unwrap();
    let pairs = [(z.clone(), z.clone()), (z, chi.clone()), (chi.clone(), chi), (delta(), delta())];
    let primes = primes_up_to(10_000);
    let mut worst = 0.0f64;
    for (a, b) in &pairs {
        let rs = rankin_selberg(a, b, None, RsOptions { skip_ramified: true, ..RsOptions::default() }).unwrap();
        for &p in &primes {
            if (a.conductor() * b.conductor()) % p == 0 {
                continue;
            }
            let lp = (p as f64).ln();
            for k in 1..=5 {
                let got = rs.prime_power_coefficient(p, k).unwrap() / lp;
                let want = a.prime_power_coefficient(p, k).unwrap() * b.prime_power_coefficient(p, k).unwrap() / (lp * lp);
                worst = worst.max((got - want).norm());
            }
        }
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    let tau = ramanujan_tau(3);
    ensure(tau[2] == -24, || "tau(2)".into())?;
    let dd = rankin_selberg(&delta(), &delta(), None, RsOptions::default()).unwrap();
    let at2 = dd.coefficient(2).unwrap();
    ensure((at2.re - 0.28125 * 2f64.ln()).abs() <= 1e-12, || format!("Delta x Delta at 2 = {at2}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn sandwich() -> Result<String, String> {
    let zoo = [
        LFunctionData::zeta(),
        LFunctionData::dirichlet(4, 1).unwrap(),
        LFunctionData::dirichlet(5, 1).unwrap(),
        LFunctionData::dirichlet(7, 2).unwrap(),
        delta(),
    ];
    for a in &zoo {
        for b in &zoo {
            let (lo, hi) = conductor_bounds(a, b).map_err(|e| e.to_string())?;
            ensure(lo <= hi, || format!("{} x {}: {lo} > {hi}", a.label(), b.label()))?;
        }
    }
    let zd = rankin_selberg(&zoo[0], &delta(), None, RsOptions::default()).unwrap();
    let rep = zd.analytic_conductor();
    let cap = zoo[0].analytic_conductor().powi(2) * delta().analytic_conductor();
    ensure(rep <= cap && (cap - 726.75).abs() < 1e-9, || format!("C(zeta x Delta) = {rep}, cap {cap}"))?;
    Ok(format!("C(zeta x Delta) = {rep} <= {cap}"))
}

fn zero_fixture() -> Result<String, String> {
    let ds = load_zeros(&data_dir().join("zeros/zeta.zeros"), &LoadOptions::default()).unwrap();
    let n = ds.count_n(0.0, 100.0).unwrap();
    let disc = ds.disc_count(14.0, 0.6).unwrap();
    ensure(n == 58 && disc == 1, || format!("N(0, 100) = {n}, disc = {disc}"))?;
    let mut t = 1.0;
    while t <= ds.completeness() {
        ensure(ds.count_n(0.51, t).unwrap() == 0, || format!("zero off the line below {t}"))?;
        t *= 1.05;
    }
    ensure(ds.count_n(0.51, ds.completeness()).unwrap() == 0, || "zero off the line".into())?;
    Ok("N(0, 100) = 58, disc = 1".into())
}

fn envelopes() -> Result<String, String> {
    let c = ConstantsConfig::default();
    let ep = EnvelopeParams::new(2.0, 0.5).unwrap();
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        let v = pnt_error_envelope(1, 2.0, 1e12, &ep, 0.25 * k as f64, &c).unwrap().value;
        ensure(v <= prev, || format!("not monotone in eta at step {k}"))?;
        prev = v;
    }
    let region = ZeroFreeRegion::classical(c.c_zfr, 1, 1, 0.0).unwrap();
    let mut rel = Vec::new();
    for k in 1..=30 {
        let x = 10f64.powi(10 * k);
        let eta = eta_closed_form(&region, x).unwrap();
        rel.push(pnt_error_envelope(1, 0.0, x, &ep, eta, &c).unwrap().value / x);
    }
    ensure(rel.windows(2).all(|w| w[1] < w[0]), || "envelope/x not decreasing".into())?;
    let last = *rel.last().unwrap();
    ensure(last < 1e-2, || format!("envelope/x = {last} at x = 1e300"))?;
    let ratios: Vec<f64> = [50.0, 100.0, 200.0]
        .iter()
        .map(|&lc| {
            let main = pnt_error_envelope(2, lc, 1e3, &ep, 1.0, &c).unwrap().log_x_min;
            main / ik_error_envelope_log(2, lc, 10.0, &c).unwrap().log_x_nontrivial
        })
        .collect();
    ensure(ratios[0] > ratios[1] && ratios[1] > ratios[2], || format!("ratios {ratios:?}"))?;
    Ok(format!("envelope/x at 1e300 = {last:.2e}; threshold ratios {:.3}/{:.3}/{:.3}", ratios[0], ratios[1], ratios[2]))
}

fn determinism() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_pnt");
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let lf = data_dir().join("lfun/zeta.lf");
    let zeros = data_dir().join("zeros/zeta.zeros");
    let run = |args: &[&str], threads: &str, cache_dir: Option<&Path>| -> Result<Vec<u8>, String> {
        let mut cmd = Command::new(bin);
        cmd.args(args).args(["--threads", threads]).env_remove("PNT_CACHE_DIR");
        match cache_dir {
            Some(d) => cmd.arg("--cache-dir").arg(d),
            None => cmd.arg("--no-cache"),
        };
        let o = cmd.output().map_err(|e| e.to_string())?;
        ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())?;
        Ok(o.stdout)
    };
    let lf = lf.to_str().unwrap();
    let zeros = zeros.to_str().unwrap();
    let psi = ["psi", "--lf", lf, "--x", "1e3,1e5,2e6", "--capacity", "1e7"];
    let compare = ["compare", "--lf", lf, "--zeros", zeros, "--x", "1e3,1e5", "--ell", "2", "--eps", "0.05", "--t-trunc", "100,10000"];
    for args in [&psi[..], &compare[..]] {
        let reference = run(args, "1", None)?;
        for threads in ["4", "8"] {
            ensure(run(args, threads, None)? == reference, || format!("{} differs at {threads} threads", args[0]))?;
        }
        let cold = run(args, "4", Some(cache.path()))?;
        let warm = run(args, "8", Some(cache.path()))?;
        ensure(cold == reference && warm == reference, || format!("{} differs with cache", args[0]))?;
    }
    Ok("psi and compare identical over 1/4/8 threads, cold/warm cache".into())
}

fn main() {
    let criteria: [(&str, Check, Duration); 11] = [
        ("kernel transform identity", kernel_identity, Duration::from_secs(10)),
        ("decay bound", decay_bound, Duration::from_secs(5)),
        ("Chebyshev anchor", chebyshev, Duration::from_secs(1)),
        ("explicit-formula closure", closure, Duration::from_secs(30)),
        ("eta oracle agreement", eta_oracle, Duration::from_secs(10)),
        ("auxiliary function sup", lemma54, Duration::from_secs(10)),
        ("RS multiplicativity", rs_multiplicativity, Duration::from_secs(30)),
        ("conductor sandwich", sandwich, Duration::from_secs(1)),
        ("zero statistics fixture", zero_fixture, Duration::from_secs(1)),
        ("envelope behaviour", envelopes, Duration::from_secs(5)),
        ("determinism", determinism, Duration::from_secs(60)),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(note) if elapsed > *limit => Err(format!("{note}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

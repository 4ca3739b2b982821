mod common;

use common::{gauss_legendre, integrate};
use num_complex::Complex64;
use pnt_core::kernel::{big_f_decay_bound, expm1_over, KernelParams, SERIES_THRESHOLD};
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng;

fn combos() -> Vec<KernelParams> {
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

fn z_grid(kp: &KernelParams) -> Vec<Complex64> {
    let l = kp.log_x();
    [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (-l, 0.0), (-0.5 * l, 0.0), (2.0, 3.0)]
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect()
}

/// `int f(t) e^{-zt} dt`, split at every knot of the piecewise polynomial `f`.
fn quadrature(kp: &KernelParams, z: Complex64) -> Complex64 {
    let rule = gauss_legendre(24);
    let step = 2.0 * kp.b();
    let (lo, hi) = kp.support();
    let g = |t: f64| (-z * t).exp() * kp.f(t);
    let mut acc = integrate(&g, 0.5, 1.0, 64, &rule);
    for j in 0..kp.ell() {
        let a = lo + step * j as f64;
        acc += integrate(&g, a, a + step, 1, &rule);
        let b = 1.0 + step * j as f64;
        acc += integrate(&g, b, (b + step).min(hi), 1, &rule);
    }
    acc
}

#[test]
fn transform_matches_quadrature() {
    for kp in combos() {
        for z in z_grid(&kp) {
            let closed = kp.transform(z);
            let quad = quadrature(&kp, z);
            let err = (closed - quad).norm();
            let ok = if quad.norm() < 1e-4 { err <= 1e-12 } else { err <= 1e-8 * quad.norm() };
            assert!(ok, "x = {}, l = {}, eps = {}, z = {z}: {closed} vs {quad}", kp.x(), kp.ell(), kp.eps());
        }
    }
}

#[test]
fn value_at_zero() {
    for kp in combos() {
        let f0 = kp.transform(Complex64::new(0.0, 0.0));
        assert!((f0.re - (0.5 + kp.eps() / kp.log_x())).abs() <= 1e-12);
        assert_eq!(f0.im, 0.0);
        assert!(f0.re > 0.5 && f0.re < 0.75);
    }
}

#[test]
fn decay_bound_random_draws() {
    let mut rng = StdRng::seed_from_u64(7);
    for kp in combos() {
        for alpha in [0.0, 1.0, kp.ell() as f64] {
            for _ in 0..1000 {
                let sigma = 1.0 - rng.gen::<f64>();
                let t = rng.gen_range(-1e4..=1e4);
                let s = Complex64::new(sigma, t);
                let lhs = kp.transform(-s * kp.log_x()).norm();
                let rhs = big_f_decay_bound(&kp, s, alpha).unwrap();
                assert!(lhs <= rhs * (1.0 + 1e-12), "s = {s}, alpha = {alpha}: {lhs} > {rhs}");
            }
        }
    }
}

#[test]
fn real_axis_growth() {
    for kp in combos() {
        for sigma in [0.05, 0.3, 0.5, 0.9, 1.0] {
            let v = kp.transform(Complex64::new(-sigma * kp.log_x(), 0.0)).norm();
            assert!(v <= (sigma * kp.eps()).exp() * kp.x().powf(sigma));
        }
    }
}

#[test]
fn imaginary_axis_bounded() {
    for kp in combos() {
        let cap = 0.5 + 2.0 * kp.eps() / kp.log_x() + 2.0 * kp.ell() as f64 * kp.b();
        for t in [0.5, 3.0, 40.0, 1e3, 1e5] {
            assert!(kp.transform(Complex64::new(0.0, t)).norm() <= cap);
        }
    }
}

#[test]
fn f_shape() {
    for kp in combos() {
        let (lo, hi) = kp.support();
        let n = 400;
        let mut prev = 0.0;
        for i in 0..=n {
            let t = lo + (0.5 - lo) * i as f64 / n as f64;
            let v = kp.f(t);
            assert!((0.0..=1.0).contains(&v) && v >= prev - 1e-15);
            prev = v;
        }
        prev = 1.0;
        for i in 0..=n {
            let t = 1.0 + (hi - 1.0) * i as f64 / n as f64;
            let v = kp.f(t);
            assert!((0.0..=1.0).contains(&v) && v <= prev + 1e-15);
            prev = v;
        }
        assert_eq!(kp.f(0.75), 1.0);
        assert_eq!(kp.f(lo - 1e-9), 0.0);
        assert_eq!(kp.f(hi + 1e-9), 0.0);
    }
}

#[test]
fn quadratic_spline_for_two_boxes() {
    // l = 2: on the right edge f(1 + s) = 1 - (s/2B)^2/2 for s <= 2B.
    let kp = KernelParams::new(1e4, 2, 0.1).unwrap();
    let s = kp.eps() / (2.0 * kp.log_x());
    let u = s / (2.0 * kp.b());
    assert!((kp.f(1.0 + s) - (1.0 - 0.5 * u * u)).abs() < 1e-14);
}

#[test]
fn no_seam_at_series_threshold() {
    for angle in [0.0f64, 0.7, 1.6, 2.5, 3.1] {
        let dir = Complex64::from_polar(1.0, angle);
        let below = expm1_over(dir * (SERIES_THRESHOLD * (1.0 - 1e-12)));
        let above = expm1_over(dir * (SERIES_THRESHOLD * (1.0 + 1e-12)));
        assert!((below - above).norm() <= 1e-12 * above.norm(), "angle {angle}");
    }
}

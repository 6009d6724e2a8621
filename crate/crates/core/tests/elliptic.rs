use std::f64::consts::PI;

use ejspec_core::elliptic::{
    elliptic_constants, fourier_eval, jacobi_triple, taylor_c, FunctionKind, Modulus,
};
use ejspec_core::powerseries::elliptic_series;
use ejspec_core::quadrature::gauss_kronrod;
use ejspec_core::Complex64 as C64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn modulus(r: f64, theta: f64) -> Modulus {
    elliptic_constants(C64::from_polar(r, theta)).unwrap()
}

/// `u = 2sK + i t K′` with `s ∈ [0, 1]` and `|t| ≤ 0.4`; needs `α ≠ 0` so that `K′` is finite.
fn cell(m: &Modulus, s: f64, t: f64) -> C64 {
    m.big_k * (2.0 * s) + C64::i() * m.big_k_prime * t
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn pythagorean_identities(r in 0.0..0.95f64, th in -PI..PI, s in 0.0..1.0f64) {
        let m = modulus(r, th);
        let t = jacobi_triple(m.big_k * (2.0 * s), &m).unwrap();
        let a2 = m.alpha * m.alpha;
        prop_assert!((t.sn * t.sn + t.cn * t.cn - 1.0).norm() < 1e-11);
        prop_assert!((t.dn * t.dn + a2 * t.sn * t.sn - 1.0).norm() < 1e-11);
    }

    #[test]
    fn period_shifts(r in 1e-3..0.95f64, th in -PI..PI, s in 0.0..1.0f64, t in -0.4..0.4f64) {
        let m = modulus(r, th);
        let u = cell(&m, s, t);
        let base = jacobi_triple(u, &m).unwrap();
        let real = jacobi_triple(u + m.big_k * 2.0, &m).unwrap();
        let imag = jacobi_triple(u + C64::i() * m.big_k_prime * 2.0, &m).unwrap();
        prop_assert!(rel(real.sn, -base.sn) < 1e-10);
        prop_assert!(rel(real.cn, -base.cn) < 1e-10);
        prop_assert!(rel(imag.sn, base.sn) < 1e-10);
        prop_assert!(rel(imag.cn, -base.cn) < 1e-10);
        prop_assume!(base.sn.norm() > 1e-2);
        let half = jacobi_triple(u + C64::i() * m.big_k_prime, &m).unwrap();
        let inv = (m.alpha * base.sn).inv();
        prop_assert!(rel(half.sn, inv) < 1e-10);
        prop_assert!(rel(half.cn, -C64::i() * base.dn * inv) < 1e-10);
    }

    #[test]
    fn cn_addition(
        r in 1e-3..0.95f64, th in -PI..PI,
        s1 in 0.0..0.5f64, t1 in -0.2..0.2f64,
        s2 in 0.0..0.5f64, t2 in -0.2..0.2f64,
    ) {
        let m = modulus(r, th);
        let (u, v) = (cell(&m, s1, t1), cell(&m, s2, t2));
        let (a, b) = (jacobi_triple(u, &m).unwrap(), jacobi_triple(v, &m).unwrap());
        let plus = jacobi_triple(u + v, &m).unwrap();
        let minus = jacobi_triple(u - v, &m).unwrap();
        let den = 1.0 - m.alpha * m.alpha * a.sn * a.sn * b.sn * b.sn;
        prop_assert!(rel(plus.cn + minus.cn, a.cn * b.cn * 2.0 / den) < 1e-10);
        prop_assert!(rel(plus.cn - minus.cn, -(a.sn * b.sn * a.dn * b.dn * 2.0) / den) < 1e-10);
    }

    #[test]
    fn derivatives_by_central_differences(
        r in 1e-3..0.95f64, th in -PI..PI, s in 0.0..1.0f64, t in -0.4..0.4f64,
    ) {
        let m = modulus(r, th);
        let u = cell(&m, s, t);
        let h = 1e-5;
        let x = jacobi_triple(u, &m).unwrap();
        let (p, q) = (jacobi_triple(u + h, &m).unwrap(), jacobi_triple(u - h, &m).unwrap());
        let d = |a: C64, b: C64| (a - b) / (2.0 * h);
        prop_assert!(rel(d(p.sn, q.sn), x.cn * x.dn) < 1e-7);
        prop_assert!(rel(d(p.cn, q.cn), -x.sn * x.dn) < 1e-7);
        prop_assert!(rel(d(p.dn, q.dn), -m.alpha * m.alpha * x.sn * x.cn) < 1e-7);
    }

    #[test]
    fn taylor_partial_sums(r in 0.0..0.95f64, th in -PI..PI, ur in 0.0..0.5f64, uth in -PI..PI) {
        let m = modulus(r, th);
        let table = taylor_c(21);
        let u = C64::from_polar(ur, uth);
        let x = jacobi_triple(u, &m).unwrap();
        for (kind, want) in [(FunctionKind::Sn, x.sn), (FunctionKind::Cn, x.cn), (FunctionKind::Dn, x.dn)] {
            let s = elliptic_series(kind, m.alpha, 20, &table).unwrap();
            prop_assert!(rel(s.eval(u), want) < 1e-10);
        }
    }

    #[test]
    fn fourier_inside_strip(r in 1e-3..0.95f64, th in -PI..PI, s in 0.0..1.0f64, t in -0.4..0.4f64) {
        let m = modulus(r, th);
        let u = cell(&m, s, t);
        let x = jacobi_triple(u, &m).unwrap();
        for kind in [FunctionKind::Sn, FunctionKind::Cn, FunctionKind::Dn] {
            prop_assert!(rel(fourier_eval(kind, u, &m, 400).unwrap(), x.get(kind)) < 1e-10);
        }
    }

    #[test]
    fn quarter_period_against_quadrature(r in 0.0..0.95f64, th in -PI..PI) {
        let m = modulus(r, th);
        let a2 = m.alpha * m.alpha;
        let k = gauss_kronrod(|s| (1.0 - a2 * s.sin().powi(2)).sqrt().inv(), 0.0, PI / 2.0, 1e-14).unwrap();
        prop_assert!(rel(k, m.big_k) < 1e-12);
    }
}

#[test]
fn modulus_maximum_on_the_half_period() {
    let mut moduli: Vec<C64> = (0..8).map(|j| C64::from_polar(1.0, 0.2 + j as f64 * 0.35)).collect();
    moduli.extend((0..12).map(|j| C64::from_polar(0.08 * j as f64, 1.3 * j as f64)));
    for a in moduli {
        assert!((a - 1.0).norm() >= 0.1 && (a + 1.0).norm() >= 0.1);
        let m = elliptic_constants(a).unwrap();
        for j in 1..1000 {
            let t = jacobi_triple(m.big_k * (j as f64 * 1e-3), &m).unwrap();
            assert!(t.sn.norm() < 1.0, "|sn| = {} at t = {j}e-3, α = {a}", t.sn.norm());
        }
    }
}

#[test]
fn listed_polynomials_exactly() {
    let t = taylor_c(8);
    let want: [&[u64]; 8] = [
        &[1],
        &[1],
        &[1, 1],
        &[1, 4],
        &[1, 14, 1],
        &[1, 44, 16],
        &[1, 135, 135, 1],
        &[1, 408, 912, 64],
    ];
    for (n, w) in want.iter().enumerate() {
        let got: Vec<u64> = t.coefficients(n + 1).iter().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(&got, w, "C_{}", n + 1);
    }
}

use ejspec_core::elliptic::taylor_c;
use ejspec_core::operator::{
    apply, formal_inverse_entry, formal_inverse_section, hilbert_schmidt_partial_sums,
    kernel_solutions, truncate, weight, OperatorSpec, Tridiagonal,
};
use ejspec_core::oracle::eig_root;
use ejspec_core::spectral::{eigenvalue, moment, moment_closed_form};
use ejspec_core::Complex64 as C64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn section_times_formal_inverse_is_identity() {
    let n = 200;
    let a = c(0.5, 0.0);
    let tri = truncate(&OperatorSpec::standard(a), n);
    let r = formal_inverse_section(a, n).unwrap();
    for k in 0..n {
        let col: Vec<C64> = (0..n).map(|j| r[j * n + k]).collect();
        let y = apply(&tri, &col).unwrap();
        for (j, v) in y.iter().enumerate().take(n - 2) {
            let want = if j == k { 1.0 } else { 0.0 };
            assert!((v - want).norm() < 1e-12, "entry ({j}, {k}) = {v}");
        }
    }
}

#[test]
fn formal_inverse_entries_match_section() {
    let a = c(0.3, -0.4);
    let n = 12;
    let r = formal_inverse_section(a, n).unwrap();
    for j in 1..=n {
        for k in 1..=n {
            let e = formal_inverse_entry(a, j, k).unwrap();
            assert!((e - r[(j - 1) * n + k - 1]).norm() < 1e-14, "({j}, {k})");
        }
    }
}

#[test]
fn hilbert_schmidt_increments() {
    for r in [0.3, 0.5, 0.7] {
        let s = hilbert_schmidt_partial_sums(c(0.0, r), 20_001);
        assert!(s.windows(2).skip(10_000).all(|w| w[1] - w[0] < 1e-8), "|α| = {r}");
    }
    // Increments decay like 1/(2L²(1 − |α|²)), which is above 1e-8 at L = 10⁴ once |α| > 1/√2.
    let r = 0.9;
    let s = hilbert_schmidt_partial_sums(c(r, 0.0), 40_001);
    for l in [10_000usize, 20_000, 40_000] {
        let inc = s[l] - s[l - 1];
        let law = 1.0 / (2.0 * (l as f64).powi(2) * (1.0 - r * r));
        approx::assert_relative_eq!(inc, law, max_relative = 1e-3);
    }
}

#[test]
fn kernel_solutions_annihilated_in_the_interior() {
    for a in [c(0.5, 0.0), c(0.0, 0.5), c(0.3, 0.4), c(0.6, -0.8)] {
        let n = 300;
        let (u, v) = kernel_solutions(a, n).unwrap();
        let tri = truncate(&OperatorSpec::standard(a), n);
        for x in [&u, &v] {
            let y = apply(&tri, x).unwrap();
            let scale = x.iter().map(|e| e.norm()).fold(0.0, f64::max);
            for e in &y[1..n - 1] {
                assert!(e.norm() < 1e-13 * scale, "α = {a}");
            }
        }
    }
}

/// `det(T − z)` of a tridiagonal matrix with zero diagonal, from its own entries.
fn char_poly(upper: &[C64], lower: &[C64], z: C64) -> C64 {
    let (mut p0, mut p1) = (c(1.0, 0.0), -z);
    for (b, l) in upper.iter().zip(lower) {
        let p2 = -z * p1 - b * l * p0;
        p0 = p1;
        p1 = p2;
    }
    p1
}

#[test]
fn sign_flip_is_a_unitary_equivalence() {
    let a = c(0.4, 0.3);
    let n = 100;
    let plus = truncate(&OperatorSpec::standard(a), n);
    let minus = truncate(&OperatorSpec::standard(-a), n);
    // U = diag(1, 1, −1, −1, 1, 1, …) flips the sign of every even-indexed weight.
    let u: Vec<f64> = (0..n).map(|j| if (j / 2) % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let conj: Vec<C64> = minus.off().iter().enumerate().map(|(j, w)| w * u[j] * u[j + 1]).collect();
    let conj = Tridiagonal::new(n, conj).unwrap();
    for (x, y) in conj.off().iter().zip(plus.off()) {
        assert!((x - y).norm() < 1e-15);
    }
    for n_idx in -3..3 {
        let z0 = eigenvalue(&OperatorSpec::standard(a), n_idx).unwrap();
        let x = eig_root(&OperatorSpec::standard(a), n, z0, 1e-14, 100).unwrap();
        let y = eig_root(&OperatorSpec::standard(-a), n, z0, 1e-14, 100).unwrap();
        assert!((x - y).norm() < 1e-10);
        let p = char_poly(conj.off(), conj.off(), x);
        let scale = char_poly(conj.off(), conj.off(), x + 1e-3).norm();
        assert!(p.norm() < 1e-8 * scale, "N = {n_idx}");
    }
}

#[test]
fn even_moments_follow_the_taylor_polynomials() {
    let table = taylor_c(12);
    for a in [c(0.5, 0.0), c(0.0, 0.5), c(0.3, 0.4)] {
        let spec = OperatorSpec::standard(a);
        for k in 0..=6 {
            let got = moment(&spec, 2 * k, 2 * k + 2).unwrap();
            let want = moment_closed_form(&spec, 2 * k, &table).unwrap();
            assert!((got - want).norm() <= 1e-10 * want.norm());
            assert!(moment(&spec, 2 * k + 1, 2 * k + 3).unwrap().norm() < 1e-14);
        }
    }
}

proptest! {
    #[test]
    fn truncation_carries_the_weight_law(r in 0.0..1.0f64, th in -3.0..3.0f64, n in 2usize..60) {
        let spec = OperatorSpec::standard(C64::from_polar(r, th));
        let tri = truncate(&spec, n);
        prop_assert_eq!(tri.dim(), n);
        for (j, w) in tri.off().iter().enumerate() {
            prop_assert_eq!(*w, weight(&spec, j + 1));
        }
    }
}

use alloc::vec;
use core::f64::consts::PI;

use num_complex::Complex64 as C64;
use num_traits::Float;

use super::eigen::{discrete_modulus, eigenvalue_from};
use crate::elliptic::{digamma, Modulus, TaylorTable};
use crate::error::{Error, Result};
use crate::operator::{apply, truncate, Mode, OperatorSpec};

/// Distance below which `z` counts as sitting on an eigenvalue.
pub const POLE_DISTANCE: f64 = 1e-10;
const MAX_HALF_WIDTH: i64 = 1 << 22;

/// Mass of the spectral measure at `λ_N`: `π/(αK) q^{N+1/2}/(1+q^{2N+1})` in
/// standard mode, `(π/K) q^{|N|}/(1+q^{2|N|})` in tilde mode (`π/(2K)` at `N = 0`).
pub fn spectral_measure_weight(mode: Mode, m: &Modulus, n: i64) -> C64 {
    let w = match mode {
        Mode::Standard => m.odd_weight_over_alpha(n),
        Mode::Tilde => m.even_weight(n),
    };
    w * PI / m.big_k
}

fn nearest_index(mode: Mode, m: &Modulus, z: C64) -> i64 {
    let x = match mode {
        Mode::Standard => ((z * m.big_k * 2.0 / PI - 1.0) * 0.5).re,
        Mode::Tilde => (z * m.big_k / PI).re,
    };
    x.round().clamp(-(1i64 << 52) as f64, (1i64 << 52) as f64) as i64
}

fn distance_to_spectrum(mode: Mode, m: &Modulus, z: C64) -> f64 {
    let n0 = nearest_index(mode, m, z);
    (n0 - 2..=n0 + 2)
        .map(|n| (z - eigenvalue_from(mode, m, n)).norm())
        .fold(f64::INFINITY, f64::min)
}

/// `⟨e₁, (J − z)⁻¹ e₁⟩` from the Mittag-Leffler expansion, or from the
/// digamma closed form at `α = 1`.
///
/// Partial sums run over `N ∈ [−M, M−1]` with `M` doubled until the increment
/// and the geometric tail bound `|q|^M / dist` both fall below `tol`.
pub fn weyl_m(spec: &OperatorSpec, z: C64, tol: f64) -> Result<C64> {
    if spec.mode == Mode::Standard && spec.param == C64::new(1.0, 0.0) {
        return weyl_m_unit(z);
    }
    let m = discrete_modulus(spec)?;
    let dist = distance_to_spectrum(spec.mode, &m, z);
    if dist < POLE_DISTANCE {
        return Err(Error::Spectrum(dist));
    }
    let term = |n: i64| spectral_measure_weight(spec.mode, &m, n) / (z - eigenvalue_from(spec.mode, &m, n));
    let sum_range = |lo: i64, hi: i64| (lo..hi).map(term).fold(C64::new(0.0, 0.0), |a, b| a + b);
    let q = m.nome.norm();
    let mut half = 8i64;
    let mut s = sum_range(-half, half);
    loop {
        let next = s + sum_range(-2 * half, -half) + sum_range(half, 2 * half);
        let inc = (next - s).norm();
        half *= 2;
        s = next;
        let tail = q.powf(half as f64) / (1.0 - q * q) / dist;
        if inc <= tol * s.norm().max(1.0) && tail <= tol {
            return Ok(-s);
        }
        if half >= MAX_HALF_WIDTH {
            return Err(Error::Convergence("Mittag-Leffler sum did not settle"));
        }
    }
}

/// `m(z, 1) = ±(i/2)(ψ(3/4 ∓ iz/4) − ψ(1/4 ∓ iz/4))` for `Im z ≷ 0`.
fn weyl_m_unit(z: C64) -> Result<C64> {
    if z.im == 0.0 {
        return Err(Error::Spectrum(0.0));
    }
    let s = if z.im > 0.0 { 1.0 } else { -1.0 };
    let w = C64::i() * z * (s / 4.0);
    let d = digamma(C64::new(0.75, 0.0) - w)? - digamma(C64::new(0.25, 0.0) - w)?;
    Ok(C64::new(0.0, s / 2.0) * d)
}

/// `⟨e₁, J_dim^n e₁⟩` by repeated application of the section.
pub fn moment(spec: &OperatorSpec, n: usize, dim: usize) -> Result<C64> {
    if dim < n + 1 {
        return Err(Error::Dimension { expected: n + 1, got: dim });
    }
    let tri = truncate(spec, dim);
    let mut x = vec![C64::new(0.0, 0.0); dim];
    x[0] = C64::new(1.0, 0.0);
    for _ in 0..n {
        x = apply(&tri, &x)?;
    }
    Ok(x[0])
}

/// Closed form of `⟨e₁, J^n e₁⟩`: `C_n(α²)` or `β^n C_n(β^{−2})` for even `n`, zero for odd `n`.
pub fn moment_closed_form(spec: &OperatorSpec, n: usize, table: &TaylorTable) -> Result<C64> {
    if n % 2 == 1 {
        return Ok(C64::new(0.0, 0.0));
    }
    if table.n_max() < n {
        return Err(Error::Domain("Taylor table does not reach the requested order"));
    }
    let x = spec.param * spec.param;
    Ok(match spec.mode {
        Mode::Standard => table.eval(n, x),
        Mode::Tilde => table.eval_reflected(n, x),
    })
}

/// Meixner–Pollaczek polynomial `M_n(x)` from `M_{n+1} = xM_n − n²M_{n−1}`.
pub fn meixner_pollaczek(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (1.0, x);
    if n == 0 {
        return a;
    }
    for k in 1..n {
        let c = x * b - (k * k) as f64 * a;
        a = b;
        b = c;
    }
    b
}

/// `∫ M_m M_n sech(πx/2) dx` by the trapezoid rule on `[−span, span]`.
pub fn meixner_pollaczek_check(m: usize, n: usize, span: f64, nodes: usize) -> f64 {
    let nodes = nodes.max(2);
    let h = 2.0 * span / (nodes - 1) as f64;
    let mut s = 0.0;
    for j in 0..nodes {
        let x = -span + h * j as f64;
        let w = if j == 0 || j == nodes - 1 { 0.5 } else { 1.0 };
        s += w * meixner_pollaczek(m, x) * meixner_pollaczek(n, x) / (PI * x / 2.0).cosh();
    }
    s * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::elliptic_constants;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn unit_modulus_closed_form() {
        let s = OperatorSpec::standard(c(1.0, 0.0));
        let v = weyl_m(&s, c(0.0, 1.0), 1e-14).unwrap();
        assert!((v - c(0.0, core::f64::consts::LN_2)).norm() < 1e-13);
        let w = weyl_m(&s, c(0.0, -1.0), 1e-14).unwrap();
        assert!((w - v.conj()).norm() < 1e-13);
    }

    #[test]
    fn zero_modulus_reduces_to_two_by_two_block() {
        let s = OperatorSpec::standard(c(0.0, 0.0));
        let z = c(0.3, 0.7);
        let v = weyl_m(&s, z, 1e-14).unwrap();
        let want = z / (c(1.0, 0.0) - z * z);
        assert!((v - want).norm() < 1e-14);
    }

    #[test]
    fn conjugate_symmetry_for_real_modulus() {
        let s = OperatorSpec::standard(c(0.7, 0.0));
        let z = c(1.0, 1.0);
        let a = weyl_m(&s, z, 1e-14).unwrap();
        let b = weyl_m(&s, z.conj(), 1e-14).unwrap();
        assert!((a - b.conj()).norm() < 1e-13);
    }

    #[test]
    fn pole_rejected() {
        let s = OperatorSpec::standard(c(0.5, 0.0));
        let m = elliptic_constants(c(0.5, 0.0)).unwrap();
        let z = eigenvalue_from(Mode::Standard, &m, 2);
        assert!(matches!(weyl_m(&s, z, 1e-12), Err(Error::Spectrum(_))));
    }

    #[test]
    fn moments_small_cases() {
        let s = OperatorSpec::standard(c(0.5, 0.0));
        assert!((moment(&s, 2, 3).unwrap() - 1.0).norm() < 1e-15);
        assert!((moment(&s, 4, 5).unwrap() - 2.0).norm() < 1e-15);
        assert_eq!(moment(&s, 5, 6).unwrap(), c(0.0, 0.0));
        assert!(moment(&s, 4, 4).is_err());
    }

    #[test]
    fn meixner_pollaczek_small_cases() {
        assert_eq!(meixner_pollaczek(2, 3.0), 8.0);
        assert!((meixner_pollaczek_check(0, 0, 60.0, 4096) - 2.0).abs() < 1e-10);
        assert!(meixner_pollaczek_check(0, 1, 60.0, 4096).abs() < 1e-10);
    }
}

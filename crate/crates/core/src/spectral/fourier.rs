use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64 as C64;
use num_traits::Float;

use super::eigen::discrete_modulus;
use crate::elliptic::{jacobi_triple, EllipticTriple, Modulus};
use crate::error::{Error, Result};
use crate::operator::{Mode, OperatorSpec};

const NODE_CAP: usize = 1 << 14;
const DOUBLE_NODE_CAP: usize = 1 << 11;

fn check_modulus(m: &Modulus) -> Result<()> {
    let r = m.alpha.norm();
    if m.is_unit_limit() || r == 0.0 || r >= 1.0 {
        return Err(Error::Domain("Fourier coefficients need 0 < |α| < 1"));
    }
    Ok(())
}

/// Triples at `u = K s/π` for `s = 2πj/n`.
fn samples(m: &Modulus, n: usize) -> Result<Vec<EllipticTriple>> {
    (0..n)
        .map(|j| jacobi_triple(m.big_k * (2.0 * j as f64 / n as f64), m))
        .collect()
}

fn coefficients(m: &Modulus, n_index: i64, k_max: usize, nodes: usize) -> Result<[Vec<C64>; 4]> {
    let zero = C64::new(0.0, 0.0);
    let mut g = vec![zero; k_max + 1];
    let mut d = vec![zero; k_max + 1];
    let mut ga = vec![zero; k_max + 1];
    let mut da = vec![zero; k_max + 1];
    let tr = samples(m, nodes)?;
    let shift = n_index as f64 + 0.5;
    for (j, t) in tr.iter().enumerate() {
        let s = 2.0 * PI * j as f64 / nodes as f64;
        let e = C64::from_polar(1.0, -shift * s);
        let s2 = t.sn * t.sn;
        let (mut pc, mut pd) = (e * t.cn, e * t.dn * t.sn);
        let (mut ac, mut ad) = (pc.norm(), pd.norm());
        let a2 = s2.norm();
        for k in 0..=k_max {
            g[k] += pc;
            d[k] += pd;
            ga[k].re += ac;
            da[k].re += ad;
            pc *= s2;
            pd *= s2;
            ac *= a2;
            ad *= a2;
        }
    }
    let inv = 1.0 / nodes as f64;
    for v in [&mut g, &mut d, &mut ga, &mut da] {
        for x in v.iter_mut() {
            *x *= inv;
        }
    }
    Ok([g, d, ga, da])
}

fn settled(new: &[C64], old: &[C64], scale: &[C64], tol: f64) -> bool {
    new.iter()
        .zip(old)
        .zip(scale)
        .all(|((a, b), s)| (a - b).norm() <= tol * a.norm().max(s.re))
}

/// `γ_N(k)` and `δ_N(k)` for `k = 0..=k_max` by the periodic trapezoid rule,
/// doubling the node count from `nodes` until two estimates agree to `tol`.
pub fn fourier_table(
    m: &Modulus,
    n_index: i64,
    k_max: usize,
    nodes: usize,
    tol: f64,
) -> Result<(Vec<C64>, Vec<C64>)> {
    check_modulus(m)?;
    let mut n = nodes.max(8);
    let mut prev = coefficients(m, n_index, k_max, n)?;
    while n < NODE_CAP {
        n *= 2;
        let next = coefficients(m, n_index, k_max, n)?;
        if settled(&next[0], &prev[0], &next[2], tol) && settled(&next[1], &prev[1], &next[3], tol) {
            let [g, d, _, _] = next;
            return Ok((g, d));
        }
        prev = next;
    }
    Err(Error::Convergence("periodic quadrature did not settle within 2^14 nodes"))
}

/// `(γ_N(k), δ_N(k))`, the Fourier coefficients of
/// `e^{−is/2}cn(Ks/π)sn^{2k}(Ks/π)` and `e^{−is/2}dn(Ks/π)sn^{2k+1}(Ks/π)`.
pub fn fourier_gamma_delta(m: &Modulus, n_index: i64, k: usize, nodes: usize) -> Result<(C64, C64)> {
    let (g, d) = fourier_table(m, n_index, k, nodes, 1e-14)?;
    Ok((g[k], d[k]))
}

/// Partial sums `Σ_{k≤k_max} γ_N γ_M α^{2k}` and `Σ δ_N δ_M α^{2k}` with a
/// geometric bound on the neglected tail.
///
/// On the diagonal the two sums are `±π/(2αK)·q^{N+1/2}/(1+q^{2N+1})`, the
/// `δ` sum carrying the minus sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalitySums {
    pub gamma: C64,
    pub delta: C64,
    pub tail: f64,
}

pub fn orthogonality_sums(m: &Modulus, n: i64, mm: i64, k_max: usize) -> Result<OrthogonalitySums> {
    let (gn, dn) = fourier_table(m, n, k_max, 64, 1e-14)?;
    let (gm, dm) = if mm == n { (gn.clone(), dn.clone()) } else { fourier_table(m, mm, k_max, 64, 1e-14)? };
    let a2 = m.alpha * m.alpha;
    let mut p = C64::new(1.0, 0.0);
    let (mut sg, mut sd) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    let mut last = 0.0f64;
    for k in 0..=k_max {
        let tg = gn[k] * gm[k] * p;
        let td = dn[k] * dm[k] * p;
        sg += tg;
        sd += td;
        last = tg.norm().max(td.norm());
        p *= a2;
    }
    let r = a2.norm();
    Ok(OrthogonalitySums { gamma: sg, delta: sd, tail: last * r / (1.0 - r) })
}

/// Differences between the two sides of the generating-function identities
/// `cn Σ γ_N(k) α^{2k} sn^{2k} = (π/(αK)) w cos((N+½)t)` and
/// `dn Σ δ_N(k) α^{2k} sn^{2k+1} = −(iπ/(αK)) w sin((N+½)t)` at real `t`,
/// with `w = q^{N+1/2}/(1+q^{2N+1})` and the functions taken at `Kt/π`.
pub fn generating_function_residuals(m: &Modulus, n: i64, t: f64, k_max: usize) -> Result<(C64, C64)> {
    let (g, d) = fourier_table(m, n, k_max, 64, 1e-14)?;
    let tr = jacobi_triple(m.big_k * (t / PI), m)?;
    let x = m.alpha * m.alpha * tr.sn * tr.sn;
    let mut p = C64::new(1.0, 0.0);
    let (mut sg, mut sd) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for k in 0..=k_max {
        sg += g[k] * p;
        sd += d[k] * p;
        p *= x;
    }
    let lhs_g = tr.cn * sg;
    let lhs_d = tr.dn * tr.sn * sd;
    let w = m.odd_weight_over_alpha(n) * PI / m.big_k;
    let arg = (n as f64 + 0.5) * t;
    let rhs_g = w * arg.cos();
    let rhs_d = -C64::i() * w * arg.sin();
    Ok((lhs_g - rhs_g, lhs_d - rhs_d))
}

/// Pieces of the eigenprojection norm for one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionNorm {
    /// `‖Q_N‖`.
    pub norm: f64,
    /// `‖v^{(N)}‖²` from the double integral.
    pub vec_norm_sq: f64,
    /// Closed form of `⟨v(ᾱ), v(α)⟩`.
    pub pairing: C64,
}

/// Closed form of the bilinear pairing `⟨v^{(N)}(ᾱ), v^{(N)}(α)⟩ = −Σ v_k²`:
/// `4πK q^{N+1/2}/(α(1+q^{2N+1}))`, or `4πK q^{|N|}/(1+q^{2|N|})` in tilde mode.
pub fn eigen_pairing(spec: &OperatorSpec, n: i64) -> Result<C64> {
    let m = discrete_modulus(spec)?;
    let w = match spec.mode {
        Mode::Standard => m.odd_weight_over_alpha(n),
        Mode::Tilde => m.even_weight(n),
    };
    Ok(w * m.big_k * (4.0 * PI))
}

/// The integral and the integral of the modulus of its integrand.
fn double_integral(m: &Modulus, mode: Mode, n: i64, nodes: usize) -> Result<(f64, f64)> {
    let tr = samples(m, nodes)?;
    let shift = match mode {
        Mode::Standard => n as f64 + 0.5,
        Mode::Tilde => n as f64,
    };
    let r2 = m.alpha.norm_sqr();
    let h = 2.0 * PI / nodes as f64;
    let rows: Vec<(C64, C64, C64, C64)> = tr
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let e = C64::from_polar(1.0, -shift * h * j as f64);
            let (lead, pair) = match mode {
                Mode::Standard => (t.cn, t.sn * t.dn),
                Mode::Tilde => (t.dn, t.sn * t.cn * m.alpha.norm()),
            };
            (e, lead, pair, t.sn * t.sn)
        })
        .collect();
    let mut total = C64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (eu, lu, pu, su) in &rows {
        let mut row = C64::new(0.0, 0.0);
        for (ev, lv, pv, sv) in &rows {
            let num = lu * lv.conj() - pu * pv.conj();
            let den = C64::new(1.0, 0.0) - su * sv.conj() * r2;
            let f = num / den;
            scale += f.norm();
            row += ev * f;
        }
        total += eu * row;
    }
    let c = h * h * m.big_k.norm_sqr() / (PI * PI);
    Ok((total.re * c, scale * c))
}

/// `‖Q_N‖ = ‖v‖² / |⟨v(ᾱ), v(α)⟩|` with `‖v‖²` from the double periodic
/// integral over `[0, 2π]²`, node count doubled from `nodes` until stable.
///
/// In tilde mode the cross term carries the factor `|β|²` inherited from
/// `ṽ_{2k+2} ∝ β^{k+1}`.
pub fn projection_norm(spec: &OperatorSpec, n: i64, nodes: usize) -> Result<ProjectionNorm> {
    let m = discrete_modulus(spec)?;
    check_modulus(&m)?;
    let pairing = eigen_pairing(spec, n)?;
    let mut k = nodes.max(8);
    let (mut prev, _) = double_integral(&m, spec.mode, n, k)?;
    while k < DOUBLE_NODE_CAP {
        k *= 2;
        let (next, scale) = double_integral(&m, spec.mode, n, k)?;
        if (next - prev).abs() <= 1e-13 * next.abs().max(scale) {
            return Ok(ProjectionNorm { norm: next / pairing.norm(), vec_norm_sq: next, pairing });
        }
        prev = next;
    }
    Err(Error::Convergence("double periodic quadrature did not settle"))
}

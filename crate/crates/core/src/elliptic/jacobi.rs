use core::f64::consts::PI;

use num_complex::Complex64 as C64;
use num_traits::Float;

use super::theta::theta_sums;
use super::Modulus;
use crate::error::{Error, Result};

/// Relative radius (in units of `|K|`) inside which an argument counts as a pole.
pub const POLE_RADIUS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    Sn,
    Cn,
    Dn,
}

/// Values of `sn`, `cn`, `dn` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticTriple {
    pub sn: C64,
    pub cn: C64,
    pub dn: C64,
}

impl EllipticTriple {
    pub fn get(&self, kind: FunctionKind) -> C64 {
        match kind {
            FunctionKind::Sn => self.sn,
            FunctionKind::Cn => self.cn,
            FunctionKind::Dn => self.dn,
        }
    }
}

/// Real coordinates `(a, b)` of `u = a·w1 + b·w2`.
fn lattice_coords(u: C64, w1: C64, w2: C64) -> (f64, f64) {
    let det = w1.re * w2.im - w2.re * w1.im;
    let a = (u.re * w2.im - w2.re * u.im) / det;
    let b = (w1.re * u.im - u.re * w1.im) / det;
    (a, b)
}

fn unit_limit_triple(u: C64) -> Result<EllipticTriple> {
    let ch = u.cosh();
    if ch.norm() < POLE_RADIUS {
        return Err(Error::Pole);
    }
    let sech = ch.inv();
    Ok(EllipticTriple {
        sn: u.sinh() * sech,
        cn: sech,
        dn: sech,
    })
}

/// `sn, cn, dn` at `u` via theta quotients with `v = πu/(2K)`.
///
/// The argument is first reduced modulo the lattice `(2K, 2iK′)` so the theta
/// series always run inside the fundamental cell.
pub fn jacobi_triple(u: C64, m: &Modulus) -> Result<EllipticTriple> {
    if m.is_unit_limit() {
        return unit_limit_triple(u);
    }
    let two_k = m.big_k * 2.0;
    let finite_kp = m.big_k_prime.re.is_finite() && m.big_k_prime.im.is_finite();
    let (mut ur, sa, sb) = if finite_kp {
        let two_ikp = C64::i() * m.big_k_prime * 2.0;
        let (a, b) = lattice_coords(u, two_k, two_ikp);
        let (ma, mb) = (a.round(), b.round());
        (u - two_k * ma - two_ikp * mb, parity(ma), parity(mb))
    } else {
        // q = 0: the functions are trigonometric with real period 2π.
        let a = (u.re / two_k.re).round();
        (u - two_k * a, parity(a), 1.0)
    };

    if finite_kp {
        let ikp = C64::i() * m.big_k_prime;
        let radius = POLE_RADIUS * m.big_k.norm();
        for pole in [ikp, -ikp, ikp + two_k, ikp - two_k, -ikp + two_k, -ikp - two_k] {
            if (ur - pole).norm() < radius {
                return Err(Error::Pole);
            }
        }
    }
    if ur.norm() == 0.0 {
        ur = C64::new(0.0, 0.0);
    }

    let q = m.nome;
    let v = ur * PI / two_k;
    let [s1, s2, t3, t4] = theta_sums(v, q)?;
    let zero = C64::new(0.0, 0.0);
    let [_, s20, t30, t40] = theta_sums(zero, q)?;
    let sn = t30 * s1 / (s20 * t4);
    let cn = t40 * s2 / (s20 * t4);
    let dn = t40 * t3 / (t30 * t4);
    if !(sn.norm().is_finite() && cn.norm().is_finite() && dn.norm().is_finite()) {
        return Err(Error::Pole);
    }
    // sn(u+2K) = −sn, cn(u+2K) = −cn, dn(u+2K) = dn;
    // sn(u+2iK′) = sn, cn(u+2iK′) = −cn, dn(u+2iK′) = −dn.
    Ok(EllipticTriple {
        sn: sn * sa,
        cn: cn * (sa * sb),
        dn: dn * sb,
    })
}

fn parity(m: f64) -> f64 {
    if (m as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Whether `|qⁿ| e^{|Im arg|}` lies below the rounding level of `sum`; compared
/// in logarithms since `qⁿ` underflows while the trigonometric factor overflows.
fn negligible(qn: C64, arg: C64, sum: C64) -> bool {
    let lead = qn.norm();
    lead == 0.0 || lead.ln() + arg.im.abs() < (f64::EPSILON * 1e-2 * sum.norm()).ln()
}

/// Partial Fourier sum with at most `terms` harmonics for `sn`, `cn` or `dn`.
///
/// Valid in the strip `|Im(u/K)| < Re(K′/K)`; outside it the series diverges.
pub fn fourier_eval(kind: FunctionKind, u: C64, m: &Modulus, terms: usize) -> Result<C64> {
    if m.is_unit_limit() {
        return Err(Error::Domain("no Fourier series at the unit modulus"));
    }
    let k = m.big_k;
    let width = (m.big_k_prime / k).re;
    if (u / k).im.abs().partial_cmp(&width) != Some(core::cmp::Ordering::Less) {
        return Err(Error::Strip);
    }
    let q = m.nome;
    let one = C64::new(1.0, 0.0);
    let mut sum = C64::new(0.0, 0.0);
    match kind {
        FunctionKind::Sn | FunctionKind::Cn => {
            let mut qn = one;
            for n in 0..terms {
                let arg = u * ((2 * n + 1) as f64 * PI) / (k * 2.0);
                if negligible(qn, arg, sum) {
                    break;
                }
                let q2 = qn * qn * q;
                sum += if kind == FunctionKind::Sn {
                    qn / (one - q2) * arg.sin()
                } else {
                    qn / (one + q2) * arg.cos()
                };
                qn *= q;
            }
            Ok(sum * m.half_nome_over_alpha() * (2.0 * PI) / k)
        }
        FunctionKind::Dn => {
            let mut qn = one;
            for n in 1..=terms {
                qn *= q;
                let arg = u * (n as f64 * PI) / k;
                if negligible(qn, arg, sum + 0.25) {
                    break;
                }
                sum += qn / (one + qn * qn) * arg.cos();
            }
            Ok(C64::new(PI / 2.0, 0.0) / k + sum * (2.0 * PI) / k)
        }
    }
}

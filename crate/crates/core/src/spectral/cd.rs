use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64 as C64;
use num_traits::Float;

use crate::elliptic::{jacobi_triple, Modulus};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

const FIRST_RULE: usize = 32;
const LAST_RULE: usize = 4096;

/// Values of `C_k(z, α)` and `D_k(z, α)` at one `(k, z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CDPair {
    pub c: C64,
    pub d: C64,
    pub k: usize,
    pub z: C64,
}

struct Estimate {
    c: Vec<C64>,
    d: Vec<C64>,
    c_abs: Vec<f64>,
    d_abs: Vec<f64>,
}

fn estimate(rule: &GaussLegendre, k_max: usize, z: C64, m: &Modulus) -> Result<Estimate> {
    let zero = C64::new(0.0, 0.0);
    let mut e = Estimate {
        c: vec![zero; k_max + 1],
        d: vec![zero; k_max + 1],
        c_abs: vec![0.0; k_max + 1],
        d_abs: vec![0.0; k_max + 1],
    };
    for (t, w) in rule.on_segment(zero, m.big_k * 2.0) {
        let tr = jacobi_triple(t, m)?;
        let mut p = w * (-z * t).exp();
        let mut pa = p.norm();
        let sa = tr.sn.norm();
        let (ca, da) = (tr.cn.norm(), tr.dn.norm());
        for k in 0..=k_max {
            e.c[k] += p * tr.cn;
            e.d[k] += p * tr.dn;
            e.c_abs[k] += pa * ca;
            e.d_abs[k] += pa * da;
            p *= tr.sn;
            pa *= sa;
            if pa == 0.0 {
                break;
            }
        }
    }
    Ok(e)
}

fn settled(new: &[C64], old: &[C64], scale: &[f64], tol: f64) -> bool {
    new.iter()
        .zip(old)
        .zip(scale)
        .all(|((a, b), s)| (a - b).norm() <= tol * a.norm().max(*s))
}

/// `C_k` and `D_k` for `k = 0..=k_max` along the segment `[0, 2K]`.
///
/// Gauss–Legendre rules with 32, 64, … nodes are applied until two successive
/// estimates agree to `tol`, measured against the larger of the value and the
/// integral of the modulus of the integrand. Requests below the rounding floor
/// `4ε√n` of an `n`-node sum are raised to it.
pub fn cd_table(k_max: usize, z: C64, m: &Modulus, tol: f64) -> Result<(Vec<C64>, Vec<C64>)> {
    if m.is_unit_limit() {
        return Err(Error::Domain("segment integrals need a modulus other than ±1"));
    }
    let mut n = FIRST_RULE;
    let mut prev = estimate(&GaussLegendre::new(n), k_max, z, m)?;
    while n < LAST_RULE {
        n *= 2;
        let next = estimate(&GaussLegendre::new(n), k_max, z, m)?;
        let tol = tol.max(4.0 * f64::EPSILON * (n as f64).sqrt());
        if settled(&next.c, &prev.c, &next.c_abs, tol) && settled(&next.d, &prev.d, &next.d_abs, tol) {
            return Ok((next.c, next.d));
        }
        prev = next;
    }
    Err(Error::Convergence("segment quadrature did not settle within 4096 nodes"))
}

/// `C_k(z, α)` and `D_k(z, α)` for a single `k`.
pub fn segment_cd(k: usize, z: C64, m: &Modulus, tol: f64) -> Result<CDPair> {
    let (c, d) = cd_table(k, z, m, tol)?;
    Ok(CDPair { c: c[k], d: d[k], k, z })
}

/// Leading large-`k` terms `(√(2π) z e^{−zK} / ((1−α²) k^{3/2}), √(2π) e^{−zK} / k^{1/2})`.
pub fn cd_asymptotic(k: usize, z: C64, m: &Modulus) -> (C64, C64) {
    let kf = k as f64;
    let e = (-z * m.big_k).exp() * (2.0 * PI).sqrt();
    let one = C64::new(1.0, 0.0);
    let c = e * z / (one - m.alpha * m.alpha) / kf.powf(1.5);
    let d = e / kf.sqrt();
    (c, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::elliptic_constants;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn first_recurrence_rows() {
        let m = elliptic_constants(c(0.4, 0.3)).unwrap();
        let z = c(0.7, -0.2);
        let (cc, dd) = cd_table(4, z, &m, 1e-13).unwrap();
        let a2 = m.alpha * m.alpha;
        let e = (-m.big_k * z * 2.0).exp();
        assert!((-z * dd[0] - a2 * cc[1] - (e - 1.0)).norm() < 1e-11);
        assert!((-z * cc[0] - dd[1] - (-e - 1.0)).norm() < 1e-11);
        for k in 1..4 {
            let kf = k as f64;
            let r1 = cc[k - 1] * kf - z * dd[k] - a2 * cc[k + 1] * (kf + 1.0);
            let r2 = dd[k - 1] * kf - z * cc[k] - dd[k + 1] * (kf + 1.0);
            assert!(r1.norm() < 1e-11 && r2.norm() < 1e-11);
        }
    }

    #[test]
    fn single_entry_matches_table() {
        let m = elliptic_constants(c(0.5, 0.0)).unwrap();
        let z = c(0.3, 0.1);
        let p = segment_cd(2, z, &m, 1e-13).unwrap();
        let (cc, dd) = cd_table(5, z, &m, 1e-13).unwrap();
        assert!((p.c - cc[2]).norm() < 1e-12 && (p.d - dd[2]).norm() < 1e-12);
    }

    #[test]
    fn asymptotic_vanishes_at_zero_shift() {
        let m = elliptic_constants(c(0.5, 0.0)).unwrap();
        let (a, _) = cd_asymptotic(10, c(0.0, 0.0), &m);
        assert_eq!(a, c(0.0, 0.0));
    }
}

//! Jacobi theta functions in the `θ(v | q)` convention with period `π` in `v`.

use num_complex::Complex64 as C64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Nomes this close to the unit circle would need an unbounded number of terms.
pub(crate) const NOME_LIMIT: f64 = 1.0 - 1e-9;
const MAX_TERMS: usize = 200_000;

/// Which of the four theta functions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaIndex {
    One,
    Two,
    Three,
    Four,
}

impl ThetaIndex {
    pub fn from_index(j: u8) -> Result<Self> {
        match j {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            _ => Err(Error::Domain("theta index must be 1..=4")),
        }
    }
}

fn check_nome(q: C64) -> Result<()> {
    if q.norm().partial_cmp(&NOME_LIMIT) != Some(core::cmp::Ordering::Less) {
        return Err(Error::Convergence("theta series needs |q| < 1 - 1e-9"));
    }
    Ok(())
}

/// Partial sum of the `θⱼ(v, q)` series.
///
/// Terms are added until the magnitude envelope `|q|^e · exp(m |Im v|)` of the
/// next term drops below `tol` times the running sum of absolute values, so the
/// term count is a deterministic function of the inputs. `θ₁` and `θ₂` carry the
/// principal branch of `q^{1/4}`.
pub fn theta(j: ThetaIndex, v: C64, q: C64, tol: f64) -> Result<C64> {
    check_nome(q)?;
    let tol = tol.max(f64::EPSILON * 1e-3);
    let qa = q.norm();
    let iv = v.im.abs();
    let e1 = (C64::i() * v).exp();
    let e2 = e1 * e1;
    match j {
        ThetaIndex::One | ThetaIndex::Two => {
            let odd = j == ThetaIndex::One;
            // Σ (±1)^n q^{n(n+1)} trig((2n+1)v)
            let mut qpow = C64::new(1.0, 0.0);
            let mut ep = e1;
            let mut em = e1.inv();
            let mut sum = C64::new(0.0, 0.0);
            let mut mag = 0.0;
            for n in 0..MAX_TERMS {
                let trig = if odd {
                    (ep - em) / C64::new(0.0, 2.0)
                } else {
                    (ep + em) * 0.5
                };
                let sign = if odd && n % 2 == 1 { -1.0 } else { 1.0 };
                let term = qpow * trig * sign;
                sum += term;
                mag += term.norm();
                let n1 = (n + 1) as f64;
                let envelope = qa.powf(n1 * (n1 + 1.0)) * ((2.0 * n1 + 1.0) * iv).exp();
                if envelope <= tol * mag || qa == 0.0 {
                    let q14 = (q.ln() * 0.25).exp();
                    let q14 = if qa == 0.0 { C64::new(0.0, 0.0) } else { q14 };
                    return Ok(sum * q14 * 2.0);
                }
                qpow *= q.powu(2 * n as u32 + 2);
                ep *= e2;
                em /= e2;
            }
            Err(Error::Convergence("theta series term cap reached"))
        }
        ThetaIndex::Three | ThetaIndex::Four => {
            let alt = j == ThetaIndex::Four;
            let mut sum = C64::new(1.0, 0.0);
            let mut mag = 1.0;
            let mut qpow = q; // q^{n²} for n = 1
            let mut ep = e2;
            let mut em = e2.inv();
            for n in 1..MAX_TERMS {
                let sign = if alt && n % 2 == 1 { -1.0 } else { 1.0 };
                let term = qpow * (ep + em) * sign;
                sum += term;
                mag += term.norm();
                let n1 = (n + 1) as f64;
                let envelope = 2.0 * qa.powf(n1 * n1) * (2.0 * n1 * iv).exp();
                if envelope <= tol * mag || qa == 0.0 {
                    return Ok(sum);
                }
                qpow *= q.powu(2 * n as u32 + 1);
                ep *= e2;
                em /= e2;
            }
            Err(Error::Convergence("theta series term cap reached"))
        }
    }
}

/// Branch-free theta sums used by the elliptic-function quotients.
///
/// Returns `(S₁(v), S₂(v), θ₃(v), θ₄(v))` where
/// `S₁ = Σ (−1)ⁿ q^{n(n+1)} sin((2n+1)v)` and `S₂ = Σ q^{n(n+1)} cos((2n+1)v)`,
/// so that `θ₁ = 2q^{1/4}S₁` and `θ₂ = 2q^{1/4}S₂`.
pub(crate) fn theta_sums(v: C64, q: C64) -> Result<[C64; 4]> {
    check_nome(q)?;
    let qa = q.norm();
    let iv = v.im.abs();
    let e1 = (C64::i() * v).exp();
    let e1i = e1.inv();
    let e2 = e1 * e1;
    let e2i = e1i * e1i;

    // a_n = q^{n(n+1)} e^{±i(2n+1)v},   b_n = q^{n²} e^{±2inv}
    let mut ap = e1;
    let mut am = e1i;
    let mut bp = C64::new(1.0, 0.0);
    let mut bm = C64::new(1.0, 0.0);
    let mut s1 = C64::new(0.0, 0.0);
    let mut s2 = C64::new(0.0, 0.0);
    let mut t3 = C64::new(0.0, 0.0);
    let mut t4 = C64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut qstep_a = q * q; // q^{2n+2}
    let mut qstep_b = q; // q^{2n+1}
    for n in 0..MAX_TERMS {
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        let sin_t = (ap - am) * C64::new(0.0, -0.5);
        let cos_t = (ap + am) * 0.5;
        s1 += sin_t * sign;
        s2 += cos_t;
        let c2 = if n == 0 { C64::new(1.0, 0.0) } else { bp + bm };
        t3 += c2;
        t4 += c2 * sign;
        mag += cos_t.norm() + sin_t.norm() + c2.norm();
        if qa == 0.0 {
            break;
        }
        let n1 = (n + 1) as f64;
        let env_a = qa.powf(n1 * (n1 + 1.0)) * ((2.0 * n1 + 1.0) * iv).exp();
        let env_b = 2.0 * qa.powf(n1 * n1) * (2.0 * n1 * iv).exp();
        if env_a.max(env_b) <= 1e-18 * mag {
            break;
        }
        if n + 1 == MAX_TERMS {
            return Err(Error::Convergence("theta series term cap reached"));
        }
        ap *= qstep_a * e2;
        am *= qstep_a * e2i;
        bp *= qstep_b * e2;
        bm *= qstep_b * e2i;
        qstep_a *= q * q;
        qstep_b *= q * q;
    }
    Ok([s1, s2, t3, t4])
}

/// `θ₃(0,q)`, `θ₄(0,q)`, `S₂(0) = Σ q^{n(n+1)}` and their `q`-derivatives,
/// returned as `[θ₃, θ₄, S₂, θ₃', θ₄']`.
pub(crate) fn null_values(q: C64) -> Result<[C64; 5]> {
    check_nome(q)?;
    let qa = q.norm();
    let one = C64::new(1.0, 0.0);
    let mut t3 = one;
    let mut t4 = one;
    let mut s2 = one;
    let mut d3 = C64::new(0.0, 0.0);
    let mut d4 = C64::new(0.0, 0.0);
    if qa == 0.0 {
        return Ok([t3, t4, s2, d3, d4]);
    }
    // q^{n²-1}, q^{n(n+1)}
    let mut pm1 = one;
    let mut pa = q * q;
    for n in 1..MAX_TERMS {
        let nf = n as f64;
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        let qn2 = pm1 * q;
        t3 += qn2 * 2.0;
        t4 += qn2 * (2.0 * sign);
        d3 += pm1 * (2.0 * nf * nf);
        d4 += pm1 * (2.0 * nf * nf * sign);
        s2 += pa;
        let n1 = nf + 1.0;
        if 2.0 * n1 * n1 * qa.powf(n1 * n1 - 1.0) <= 1e-18 {
            return Ok([t3, t4, s2, d3, d4]);
        }
        pm1 *= q.powu(2 * n as u32 + 1);
        pa *= q.powu(2 * n as u32 + 2);
    }
    Err(Error::Convergence("theta null series term cap reached"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta1_vanishes_at_origin() {
        for q in [C64::new(0.1, 0.0), C64::new(0.2, 0.3), C64::new(-0.5, 0.1)] {
            let t = theta(ThetaIndex::One, C64::new(0.0, 0.0), q, 1e-16).unwrap();
            assert!(t.norm() < 1e-15);
        }
    }

    #[test]
    fn theta3_at_zero_nome_is_one() {
        let t = theta(ThetaIndex::Three, C64::new(0.0, 0.0), C64::new(0.0, 0.0), 1e-16).unwrap();
        assert_eq!(t, C64::new(1.0, 0.0));
    }

    #[test]
    fn nome_on_unit_circle_rejected() {
        let q = C64::new(1.0 - 1e-10, 0.0);
        assert!(matches!(
            theta(ThetaIndex::Three, C64::new(0.1, 0.0), q, 1e-16),
            Err(Error::Convergence(_))
        ));
    }

    #[test]
    fn jacobi_quartic_identity() {
        // θ₂⁴ + θ₄⁴ = θ₃⁴ at v = 0
        let q = C64::new(0.3, 0.2);
        let z = C64::new(0.0, 0.0);
        let t2 = theta(ThetaIndex::Two, z, q, 1e-17).unwrap();
        let t3 = theta(ThetaIndex::Three, z, q, 1e-17).unwrap();
        let t4 = theta(ThetaIndex::Four, z, q, 1e-17).unwrap();
        let lhs = t2.powu(4) + t4.powu(4);
        assert!((lhs - t3.powu(4)).norm() < 1e-13 * t3.powu(4).norm());
    }

    #[test]
    fn sums_agree_with_generic_theta() {
        let q = C64::new(0.15, -0.1);
        let v = C64::new(0.7, 0.2);
        let [s1, s2, t3, t4] = theta_sums(v, q).unwrap();
        let q14 = (q.ln() * 0.25).exp();
        let t1 = theta(ThetaIndex::One, v, q, 1e-17).unwrap();
        let t2 = theta(ThetaIndex::Two, v, q, 1e-17).unwrap();
        assert!((t1 - s1 * q14 * 2.0).norm() < 1e-14);
        assert!((t2 - s2 * q14 * 2.0).norm() < 1e-14);
        assert!((t3 - theta(ThetaIndex::Three, v, q, 1e-17).unwrap()).norm() < 1e-14);
        assert!((t4 - theta(ThetaIndex::Four, v, q, 1e-17).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn null_derivatives_match_finite_differences() {
        let q = C64::new(0.2, 0.1);
        let h = 1e-6;
        let [_, _, _, d3, d4] = null_values(q).unwrap();
        let p = null_values(q + h).unwrap();
        let m = null_values(q - h).unwrap();
        assert!(((p[0] - m[0]) / (2.0 * h) - d3).norm() < 1e-8);
        assert!(((p[1] - m[1]) / (2.0 * h) - d4).norm() < 1e-8);
    }
}

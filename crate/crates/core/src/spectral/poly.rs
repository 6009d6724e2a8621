use num_complex::Complex64 as C64;
use num_traits::Float;

use crate::elliptic::{FunctionKind, TaylorTable};
use crate::error::{Error, Result};
use crate::operator::{weight, Mode, OperatorSpec};
use crate::powerseries::{elliptic_series, ps_exp_linear, ps_mul, u_over_sn, MAX_ORDER};

const RESCALE: f64 = 1e150;

/// `(P_n(x), p_n(x))`: the monic polynomials `P_{k+1} = xP_k − w_{k−1}²P_{k−1}`
/// from `P₁ = 1`, `P₂ = x`, and `p_n = P_n / (w₁ ⋯ w_{n−1})`.
///
/// The recurrence runs on rescaled values with the logarithm of the scale
/// carried separately, so `p_n` stays finite when `P_n` alone would overflow;
/// in that case the returned `P_n` saturates to infinity.
pub fn orthopoly(spec: &OperatorSpec, n: usize, x: C64) -> Result<(C64, C64)> {
    if n == 0 {
        return Err(Error::Domain("polynomial index starts at 1"));
    }
    let (mut a, mut b) = (C64::new(1.0, 0.0), x);
    let mut log_scale = 0.0;
    if n == 1 {
        b = a;
    }
    for k in 2..n {
        let w = weight(spec, k - 1);
        let c = x * b - w * w * a;
        a = b;
        b = c;
        let big = a.norm().max(b.norm());
        if big > RESCALE {
            a /= big;
            b /= big;
            log_scale += big.ln();
        }
    }
    let mut log_w = C64::new(0.0, 0.0);
    for k in 1..n {
        let w = weight(spec, k);
        if w == C64::new(0.0, 0.0) {
            return Err(Error::Domain("normalised polynomials need non-zero weights"));
        }
        log_w += w.ln();
    }
    let big_p = b * log_scale.exp();
    let small_p = b * (C64::new(log_scale, 0.0) - log_w).exp();
    if !(small_p.re.is_finite() && small_p.im.is_finite()) {
        return Err(Error::Overflow("normalised polynomial value"));
    }
    Ok((big_p, small_p))
}

/// `p_n(z)` from the Rodriguez-type formulas: a Maclaurin coefficient of
/// `e^{izu}dn(u)(u/sn u)^{2k+1}` (odd `n`) or `e^{izu}cn(u)(u/sn u)^{2k+2}`
/// (even `n`), times `(−1)^k α^{−k}` or `i(−1)^{k+1}α^{−k}`.
///
/// In tilde mode `p̃_n(z) = p_n(z/β)` at modulus `1/β`; the reciprocal-modulus
/// transformation turns this into the same coefficients at modulus `β` with
/// `cn` and `dn` exchanged and prefactors `(−1)^k β^{−k}` and
/// `i(−1)^{k+1}β^{−k−1}`.
pub fn rodriguez(spec: &OperatorSpec, n: usize, z: C64, table: &TaylorTable) -> Result<C64> {
    if n == 0 {
        return Err(Error::Domain("polynomial index starts at 1"));
    }
    let order = n - 1;
    if order > MAX_ORDER {
        return Err(Error::Domain("series order above the supported cap"));
    }
    let p = spec.param;
    let k = (n - 1) / 2;
    let odd = n % 2 == 1;
    let zero = C64::new(0.0, 0.0);
    let divides = match spec.mode {
        Mode::Standard => k > 0,
        Mode::Tilde => k > 0 || !odd,
    };
    if p == zero && divides {
        return Err(Error::Domain("Rodriguez formula divides by the parameter"));
    }
    let kind = match (spec.mode, odd) {
        (Mode::Standard, true) | (Mode::Tilde, false) => FunctionKind::Dn,
        _ => FunctionKind::Cn,
    };
    let power = if odd { 2 * k + 1 } else { 2 * k + 2 };
    let base = u_over_sn(p, order, table)?.powu(power as u32);
    let f = elliptic_series(kind, p, order, table)?;
    let series = ps_mul(&ps_mul(&ps_exp_linear(C64::i() * z, order), &f)?, &base)?;
    let coef = series.coeff(order);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = match (spec.mode, odd) {
        (Mode::Tilde, false) => p.powi(k as i32 + 1).inv(),
        _ => p.powi(k as i32).inv(),
    };
    Ok(if odd {
        coef * scale * sign
    } else {
        C64::i() * coef * scale * (-sign)
    })
}

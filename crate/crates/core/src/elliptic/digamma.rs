use num_complex::Complex64 as C64;
use num_traits::Float;

use crate::error::{Error, Result};

// B_{2k} / (2k), k = 1..8
const ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Digamma `ψ(z)` for complex `z`.
///
/// Shifts upward with `ψ(z) = ψ(z+1) − 1/z` until `Re z ≥ 10`, then sums the
/// asymptotic series `ln z − 1/(2z) − Σ B_{2k}/(2k z^{2k})`.
pub fn digamma(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole);
    }
    let mut w = z;
    let mut acc = C64::new(0.0, 0.0);
    while w.re < 10.0 {
        acc -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut p = inv2;
    for c in ASYMPTOTIC {
        series += p * c;
        p *= inv2;
    }
    Ok(acc + w.ln() - inv * 0.5 - series)
}

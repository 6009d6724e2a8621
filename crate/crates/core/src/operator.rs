//! The Jacobi matrices `J(α)` and `J̃(β)`, their finite sections, the formal
//! inverse of `J(α)` and singular sequences on the unit circle.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use num_traits::Float;

use crate::elliptic::{elliptic_constants, Modulus};
use crate::error::{Error, Result};
use crate::spectral::cd_table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `J(α)`: weights `n` for odd `n`, `αn` for even `n`.
    Standard,
    /// `J̃(β) = α⁻¹J(α)` with `β = 1/α`: weights `βn` for odd `n`, `n` for even `n`.
    Tilde,
}

/// One member of either family; `param` is `α` in standard mode and `β` in tilde mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpec {
    pub mode: Mode,
    pub param: C64,
}

impl OperatorSpec {
    pub fn standard(alpha: C64) -> Self {
        Self { mode: Mode::Standard, param: alpha }
    }

    pub fn tilde(beta: C64) -> Self {
        Self { mode: Mode::Tilde, param: beta }
    }

    /// Elliptic constants at `param`.
    pub fn modulus(&self) -> Result<Modulus> {
        elliptic_constants(self.param)
    }
}

/// Off-diagonal weight `w_n`, `n ≥ 1`.
pub fn weight(spec: &OperatorSpec, n: usize) -> C64 {
    let nf = n as f64;
    match (spec.mode, n % 2) {
        (Mode::Standard, 1) | (Mode::Tilde, 0) => C64::new(nf, 0.0),
        _ => spec.param * nf,
    }
}

/// Symmetric tridiagonal matrix with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    dim: usize,
    off: Vec<C64>,
}

impl Tridiagonal {
    /// Requires `off.len() + 1 == dim` and `dim ≥ 1`.
    pub fn new(dim: usize, off: Vec<C64>) -> Result<Self> {
        if dim == 0 || off.len() + 1 != dim {
            return Err(Error::Dimension { expected: dim.saturating_sub(1), got: off.len() });
        }
        Ok(Self { dim, off })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn off(&self) -> &[C64] {
        &self.off
    }
}

/// Principal `n × n` section.
pub fn truncate(spec: &OperatorSpec, n: usize) -> Tridiagonal {
    let n = n.max(1);
    let off = (1..n).map(|k| weight(spec, k)).collect();
    Tridiagonal { dim: n, off }
}

/// Matrix-vector product.
pub fn apply(tri: &Tridiagonal, x: &[C64]) -> Result<Vec<C64>> {
    if x.len() != tri.dim {
        return Err(Error::Dimension { expected: tri.dim, got: x.len() });
    }
    let n = tri.dim;
    let mut y = vec![C64::new(0.0, 0.0); n];
    for k in 0..n - 1 {
        let w = tri.off[k];
        y[k] += w * x[k + 1];
        y[k + 1] += w * x[k];
    }
    Ok(y)
}

/// The two solutions of `w_{n−1}y_{n−1} + w_n y_{n+1} = 0` with
/// `(u₁, u₂) = (1, 0)` and `(v₁, v₂) = (0, 1)`, each of length `n_max`.
///
/// Entries come from the ratios `u_{2n+1}/u_{2n−1} = −(2n−1)/(2nα)` and
/// `v_{2n+2}/v_{2n} = −2nα/(2n+1)`, which never overflow for `|α| ≤ 1`.
pub fn kernel_solutions(alpha: C64, n_max: usize) -> Result<(Vec<C64>, Vec<C64>)> {
    if alpha == C64::new(0.0, 0.0) {
        return Err(Error::Domain("kernel solutions need a non-zero modulus"));
    }
    let zero = C64::new(0.0, 0.0);
    let mut u = vec![zero; n_max];
    let mut v = vec![zero; n_max];
    let mut uk = C64::new(1.0, 0.0);
    let mut vk = C64::new(1.0, 0.0);
    for idx in 0..n_max {
        let n = idx + 1;
        if n % 2 == 1 {
            if n > 1 {
                let m = ((n - 1) / 2) as f64;
                uk *= -(2.0 * m - 1.0) / (2.0 * m) / alpha;
            }
            u[idx] = uk;
        } else {
            if n > 2 {
                let m = ((n - 2) / 2) as f64;
                vk *= -alpha * (2.0 * m) / (2.0 * m + 1.0);
            }
            v[idx] = vk;
        }
    }
    Ok((u, v))
}

/// `(2m−1)!!/(2m)!!` with `(−1)!! = 0!! = 1`.
fn odd_over_even(m: usize) -> f64 {
    (1..=m).fold(1.0, |acc, i| acc * (2 * i - 1) as f64 / (2 * i) as f64)
}

/// `(2n)!!/(2n+1)!!`.
fn even_over_odd(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * (2 * i) as f64 / (2 * i + 1) as f64)
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Entry `R_{jk}` (1-based) of the formal inverse of `J(α)`.
pub fn formal_inverse_entry(alpha: C64, j: usize, k: usize) -> Result<C64> {
    if alpha == C64::new(0.0, 0.0) {
        return Err(Error::Domain("formal inverse needs a non-zero modulus"));
    }
    if j == 0 || k == 0 {
        return Err(Error::Domain("matrix indices start at 1"));
    }
    let (odd, even) = match (j % 2, k % 2) {
        (1, 0) => (j, k),
        (0, 1) => (k, j),
        _ => return Ok(C64::new(0.0, 0.0)),
    };
    let m = (odd - 1) / 2;
    let n = (even - 2) / 2;
    if m > n {
        return Ok(C64::new(0.0, 0.0));
    }
    let p = alpha.powi((n - m) as i32);
    Ok(p * (sign(m + n) * odd_over_even(m) * even_over_odd(n)))
}

/// The `n × n` section of the formal inverse, row-major.
pub fn formal_inverse_section(alpha: C64, n: usize) -> Result<Vec<C64>> {
    if alpha == C64::new(0.0, 0.0) {
        return Err(Error::Domain("formal inverse needs a non-zero modulus"));
    }
    let (u, v) = kernel_solutions(alpha, n)?;
    let mut r = vec![C64::new(0.0, 0.0); n * n];
    for j in 0..n {
        for k in 0..n {
            let (lo, hi) = if j <= k { (j, k) } else { (k, j) };
            r[j * n + k] = u[lo] * v[hi];
        }
    }
    Ok(r)
}

/// Partial sums `S_L = 2 Σ_{j<L} b_j² Σ_{m≤j} |α|^{2(j−m)} a_m²` of the
/// squared Hilbert–Schmidt norm of the formal inverse, where
/// `a_m = (2m−1)!!/(2m)!!` and `b_j = (2j)!!/(2j+1)!!`; entry `L−1` is `S_L`.
pub fn hilbert_schmidt_partial_sums(alpha: C64, l_max: usize) -> Vec<f64> {
    let r2 = alpha.norm_sqr();
    let mut out = Vec::with_capacity(l_max);
    let mut a = 1.0;
    let mut b = 1.0;
    let mut inner = 0.0;
    let mut total = 0.0;
    for j in 0..l_max {
        if j > 0 {
            let jf = j as f64;
            a *= (2.0 * jf - 1.0) / (2.0 * jf);
            b *= (2.0 * jf) / (2.0 * jf + 1.0);
        }
        inner = r2 * inner + a * a;
        total += 2.0 * b * b * inner;
        out.push(total);
    }
    out
}

/// Default length of a singular sequence: the least `n` with
/// `a^{2n} √n < 10⁻¹⁶`, capped at `2·10⁶`.
pub fn singular_sequence_length(a: f64) -> usize {
    const CAP: usize = 2_000_000;
    let la = a.ln();
    let mut n = 1usize;
    while n < CAP {
        let nf = n as f64;
        if 2.0 * nf * la + 0.5 * nf.ln() < -16.0 * core::f64::consts::LN_10 {
            return n;
        }
        n += 1;
    }
    CAP
}

/// A truncated singular sequence `(aⁿuₙ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSequence {
    pub entries: Vec<C64>,
    /// Set when `|param| ≠ 1` or `param = ±1`, where the construction proves nothing.
    pub off_circle: bool,
}

/// Builds `u(a)` with entries `aⁿuₙ`.
///
/// At `z = 0` (standard mode) `u` is the kernel solution with `u₁ = 1`, `u₂ = 0`.
/// Otherwise `u` solves `Ju = zu − c e₁` and is assembled from the segment
/// integrals `C_k`, `D_k` at `iz`.
pub fn singular_sequence(
    spec: &OperatorSpec,
    z: C64,
    a: f64,
    n_max: Option<usize>,
) -> Result<SingularSequence> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Domain("damping parameter must lie in (0, 1)"));
    }
    let p = spec.param;
    let off_circle =
        (p.norm() - 1.0).abs() > 1e-12 || (p.im == 0.0 && p.re.abs() == 1.0);
    let n = n_max.unwrap_or_else(|| singular_sequence_length(a));
    let mut u = if z == C64::new(0.0, 0.0) && spec.mode == Mode::Standard {
        kernel_solutions(p, n)?.0
    } else {
        eigen_like_solution(spec, z, n)?
    };
    let mut an = 1.0;
    for x in u.iter_mut() {
        an *= a;
        *x *= an;
    }
    Ok(SingularSequence { entries: u, off_circle })
}

/// First `n` entries of the solution of `Ju = zu − c e₁` built from `C_k, D_k` at `iz`.
pub(crate) fn eigen_like_solution(spec: &OperatorSpec, z: C64, n: usize) -> Result<Vec<C64>> {
    let m = spec.modulus()?;
    let iz = C64::i() * z;
    let (c, d) = cd_table(n, iz, &m, 1e-12)?;
    let phase = (C64::i() * m.big_k * z).exp();
    let p = spec.param;
    let mut out = Vec::with_capacity(n);
    let mut pk = C64::new(1.0, 0.0);
    for idx in 0..n {
        let k = idx / 2;
        let s = sign(k);
        if idx % 2 == 0 {
            let base = match spec.mode {
                Mode::Standard => c[2 * k],
                Mode::Tilde => d[2 * k],
            };
            out.push(C64::i() * pk * base * phase * s);
        } else {
            let v = match spec.mode {
                Mode::Standard => pk * d[2 * k + 1],
                Mode::Tilde => pk * p * c[2 * k + 1],
            };
            out.push(-v * phase * s);
            pk *= p;
        }
    }
    Ok(out)
}

/// `(‖(J − z)u(a)‖, ‖u(a)‖)` on the section of the sequence's own length.
pub fn singular_ratio(spec: &OperatorSpec, z: C64, seq: &SingularSequence) -> Result<(f64, f64)> {
    let n = seq.entries.len();
    let tri = truncate(spec, n);
    let ju = apply(&tri, &seq.entries)?;
    let res: f64 = ju
        .iter()
        .zip(&seq.entries)
        .map(|(y, x)| (y - z * x).norm_sqr())
        .sum();
    let norm: f64 = seq.entries.iter().map(|x| x.norm_sqr()).sum();
    Ok((res.sqrt(), norm.sqrt()))
}

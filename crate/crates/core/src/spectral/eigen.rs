use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64 as C64;
use num_traits::Float;

use super::cd::cd_table;
use super::projection_norm;
use crate::elliptic::Modulus;
use crate::error::{Error, Result};
use crate::operator::{Mode, OperatorSpec};

/// One eigenvalue with the leading entries of its eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralItem {
    pub index: i64,
    pub lambda: C64,
    pub eigvec: Vec<C64>,
    pub proj_norm: Option<f64>,
}

/// Modulus for a spec in the discrete-spectrum regime `|param| < 1`.
pub(crate) fn discrete_modulus(spec: &OperatorSpec) -> Result<Modulus> {
    let r = spec.param.norm();
    if (r - 1.0).abs() <= 1e-15 {
        return Err(Error::Regime);
    }
    if r > 1.0 {
        return Err(Error::Domain("|param| > 1; use the tilde family with the reciprocal parameter"));
    }
    spec.modulus()
}

pub(crate) fn eigenvalue_from(mode: Mode, m: &Modulus, n: i64) -> C64 {
    match mode {
        Mode::Standard => C64::new(PI * (2 * n + 1) as f64, 0.0) / (m.big_k * 2.0),
        Mode::Tilde => C64::new(PI * n as f64, 0.0) / m.big_k,
    }
}

/// `λ_N = π(2N+1)/(2K(α))` in standard mode and `λ̃_N = πN/K(β)` in tilde mode.
pub fn eigenvalue(spec: &OperatorSpec, n: i64) -> Result<C64> {
    let m = discrete_modulus(spec)?;
    Ok(eigenvalue_from(spec.mode, &m, n))
}

/// Closed form of the first eigenvector entry:
/// `(2πi/α) q^{N+1/2}/(1+q^{2N+1})` or `2πi q^{|N|}/(1+q^{2|N|})`.
pub fn first_entry(spec: &OperatorSpec, n: i64) -> Result<C64> {
    let m = discrete_modulus(spec)?;
    let w = match spec.mode {
        Mode::Standard => m.odd_weight_over_alpha(n),
        Mode::Tilde => m.even_weight(n),
    };
    Ok(C64::new(0.0, 2.0 * PI) * w)
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// First `m` entries of the eigenvector for `λ_N`, from the segment integrals at `iλ_N`.
pub fn eigenvector(spec: &OperatorSpec, n: i64, m: usize, tol: f64) -> Result<Vec<C64>> {
    let md = discrete_modulus(spec)?;
    let p = spec.param;
    if p == C64::new(0.0, 0.0) {
        return Err(Error::Domain("eigenvector formulas need a non-zero parameter"));
    }
    let lambda = eigenvalue_from(spec.mode, &md, n);
    let (c, d) = cd_table(m, C64::i() * lambda, &md, tol)?;
    let mut out = Vec::with_capacity(m);
    let mut pk = C64::new(1.0, 0.0);
    for idx in 0..m {
        let k = idx / 2;
        let s = sign(k);
        if idx % 2 == 0 {
            let base = match spec.mode {
                Mode::Standard => c[2 * k],
                Mode::Tilde => d[2 * k],
            };
            out.push(C64::i() * pk * base * s);
        } else {
            let v = match spec.mode {
                Mode::Standard => pk * d[2 * k + 1],
                Mode::Tilde => pk * p * c[2 * k + 1],
            };
            out.push(-v * s);
            pk *= p;
        }
    }
    Ok(out)
}

/// Leading large-`k` terms `(v_{2k+1}, v_{2k+2})` of the eigenvector for `λ_N`.
pub fn eigenvector_asymptotic(spec: &OperatorSpec, n: i64, k: usize) -> Result<(C64, C64)> {
    let md = discrete_modulus(spec)?;
    let lambda = eigenvalue_from(spec.mode, &md, n);
    let p = spec.param;
    let kf = k as f64;
    let pk = p.powi(k as i32);
    let s = sign((n.rem_euclid(2) as usize) + k);
    let root = C64::new(0.0, PI.sqrt() * s);
    let one = C64::new(1.0, 0.0);
    Ok(match spec.mode {
        Mode::Standard => (
            root * lambda / ((one - p * p) * 2.0) * pk / kf.powf(1.5),
            root * pk / kf.sqrt(),
        ),
        Mode::Tilde => (
            root * pk / kf.sqrt(),
            -root * lambda / ((one - p * p) * 2.0) * pk * p / kf.powf(1.5),
        ),
    })
}

/// Leading large-`N` term of the standard-mode entry `v_k^{(N)}`:
/// `2iπ^k N^{k−1} q^{N+1/2} / (α^{⌊(k+1)/2⌋} K^{k−1} (k−1)!)`.
pub fn eigenvector_large_index(spec: &OperatorSpec, n: i64, k: usize) -> Result<C64> {
    if spec.mode != Mode::Standard || k == 0 {
        return Err(Error::Domain("large-index form is stated for standard mode and k ≥ 1"));
    }
    let md = discrete_modulus(spec)?;
    let h = md.half_nome();
    let qn = crate::elliptic::pow_u64(md.nome, n.unsigned_abs());
    let fact: f64 = (1..k).map(|i| i as f64).product();
    let num = C64::new(0.0, 2.0 * PI.powi(k as i32) * (n as f64).powi(k as i32 - 1) / fact);
    Ok(num * qn * h / (spec.param.powi(k.div_ceil(2) as i32) * md.big_k.powi(k as i32 - 1)))
}

/// Eigenvalue, eigenvector head and, on request, the eigenprojection norm.
pub fn spectral_item(
    spec: &OperatorSpec,
    n: i64,
    entries: usize,
    tol: f64,
    with_norm: bool,
) -> Result<SpectralItem> {
    let lambda = eigenvalue(spec, n)?;
    let eigvec = eigenvector(spec, n, entries, tol)?;
    let proj_norm = if with_norm { Some(projection_norm(spec, n, 64)?.norm) } else { None };
    Ok(SpectralItem { index: n, lambda, eigvec, proj_norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigenvalue_examples() {
        let s = OperatorSpec::standard(c(0.0, 0.0));
        assert!((eigenvalue(&s, 0).unwrap() - 1.0).norm() < 1e-15);
        assert!((eigenvalue(&s, 2).unwrap() - 5.0).norm() < 1e-14);
        let t = OperatorSpec::tilde(c(0.5, 0.0));
        assert_eq!(eigenvalue(&t, 0).unwrap(), c(0.0, 0.0));
        let u = OperatorSpec::standard(c(0.0, 1.0));
        assert_eq!(eigenvalue(&u, 0), Err(Error::Regime));
    }

    #[test]
    fn eigenvalues_are_odd_symmetric() {
        let s = OperatorSpec::standard(c(0.4, 0.3));
        for n in 0..4 {
            let a = eigenvalue(&s, n).unwrap();
            let b = eigenvalue(&s, -n - 1).unwrap();
            assert!((a + b).norm() < 1e-14);
        }
    }

    #[test]
    fn first_entry_by_quadrature() {
        for spec in [OperatorSpec::standard(c(0.5, 0.0)), OperatorSpec::tilde(c(0.3, 0.2))] {
            let v = eigenvector(&spec, 1, 2, 1e-13).unwrap();
            let w = first_entry(&spec, 1).unwrap();
            assert!((v[0] - w).norm() < 1e-10 * w.norm().max(1.0), "{:?}", spec.mode);
        }
    }
}

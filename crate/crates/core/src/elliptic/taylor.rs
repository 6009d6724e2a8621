use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_complex::Complex64 as C64;
use num_traits::{One, ToPrimitive, Zero};

/// Integer polynomials `C₀ … C_nmax` from the Taylor coefficients of `sn, cn, dn`,
/// stored as ascending coefficient lists.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorTable {
    polys: Vec<Vec<BigUint>>,
    floats: Vec<Vec<f64>>,
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_scaled(acc: &mut Vec<BigUint>, p: &[BigUint], scale: &BigUint) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigUint::zero());
    }
    for (i, c) in p.iter().enumerate() {
        acc[i] += c * scale;
    }
}

/// `x^k C_{2k}(1/x)` as a polynomial; `C_{2k}` has degree at most `k − 1`.
fn reflected(c2k: &[BigUint], k: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); k + 1];
    for (i, c) in c2k.iter().enumerate() {
        out[k - i] = c.clone();
    }
    out
}

fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigUint::from(n - k + 1) / BigUint::from(k);
    }
    row
}

fn trim(mut p: Vec<BigUint>) -> Vec<BigUint> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Builds `C₀ … C_nmax` by the paired recursion
/// `C_{2n+1} = Σ_{j+k=n} binom(2n,2j) C_{2j} x^k C_{2k}(1/x)` and
/// `C_{2n+2} = Σ_{j+k=n} binom(2n+1,2j+1) C_{2j+1} x^k C_{2k}(1/x)`, from `C₀ = 1`.
pub fn taylor_c(n_max: usize) -> TaylorTable {
    let mut polys: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    polys.push(vec![BigUint::one()]);
    let mut n = 0;
    while polys.len() <= n_max {
        let refl: Vec<Vec<BigUint>> = (0..=n).map(|k| reflected(&polys[2 * k], k)).collect();
        let row = binomial_row(2 * n);
        let mut odd = Vec::new();
        for j in 0..=n {
            poly_add_scaled(&mut odd, &poly_mul(&polys[2 * j], &refl[n - j]), &row[2 * j]);
        }
        polys.push(trim(odd));
        if polys.len() > n_max {
            break;
        }
        let row = binomial_row(2 * n + 1);
        let mut even = Vec::new();
        for j in 0..=n {
            poly_add_scaled(
                &mut even,
                &poly_mul(&polys[2 * j + 1], &refl[n - j]),
                &row[2 * j + 1],
            );
        }
        polys.push(trim(even));
        n += 1;
    }
    let floats = polys
        .iter()
        .map(|p| p.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect())
        .collect();
    TaylorTable { polys, floats }
}

impl TaylorTable {
    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn coefficients(&self, n: usize) -> &[BigUint] {
        &self.polys[n]
    }

    /// `C_n(x)` by Horner's rule.
    pub fn eval(&self, n: usize, x: C64) -> C64 {
        self.floats[n]
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// `x^{d} C_n(1/x)` with `d = ⌈n/2⌉`, i.e. `α^{2m}C_{2m}(α^{−2})` at `x = α²`
    /// for even `n = 2m`; a polynomial in `x`, finite at `x = 0`.
    pub fn eval_reflected(&self, n: usize, x: C64) -> C64 {
        let d = n.div_ceil(2);
        let c = &self.floats[n];
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..=d {
            let coeff = if i < c.len() { c[i] } else { 0.0 };
            acc = acc * x + coeff;
        }
        acc
    }
}

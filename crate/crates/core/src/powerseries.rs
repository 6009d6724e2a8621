//! Truncated power series in one variable with complex coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use crate::elliptic::{FunctionKind, TaylorTable};
use crate::error::{Error, Result};

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 64;

/// `Σ_{k≤L} c_k u^k`, truncated at order `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    coeffs: Vec<C64>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![C64::new(0.0, 0.0); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = C64::new(1.0, 0.0);
        s
    }

    /// The series `u`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = C64::new(1.0, 0.0);
        }
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<C64>, order: usize) -> Self {
        coeffs.resize(order + 1, C64::new(0.0, 0.0));
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs[k]
    }

    /// Value at `u` by Horner's rule.
    pub fn eval(&self, u: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * u + c)
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&a| a * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_orders(self, other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { coeffs })
    }

    /// `self^n` by binary powering.
    pub fn powu(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while n > 0 {
            if n & 1 == 1 {
                acc = mul_unchecked(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = mul_unchecked(&base, &base);
            }
        }
        acc
    }
}

fn check_orders(a: &Series, b: &Series) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::Dimension { expected: a.order() + 1, got: b.order() + 1 });
    }
    Ok(())
}

fn mul_unchecked(a: &Series, b: &Series) -> Series {
    let l = a.order();
    let mut out = Series::zero(l);
    for (i, x) in a.coeffs.iter().enumerate() {
        if *x == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, y) in b.coeffs[..=l - i].iter().enumerate() {
            out.coeffs[i + j] += x * y;
        }
    }
    out
}

/// Cauchy product truncated at the common order.
pub fn ps_mul(a: &Series, b: &Series) -> Result<Series> {
    check_orders(a, b)?;
    Ok(mul_unchecked(a, b))
}

/// `a / b`, requiring a non-vanishing constant term in `b`.
pub fn ps_div(a: &Series, b: &Series) -> Result<Series> {
    check_orders(a, b)?;
    let b0 = b.coeffs[0];
    if b0.norm() < 1e-300 {
        return Err(Error::Singular("series divisor has zero constant term"));
    }
    let l = a.order();
    let mut c = Series::zero(l);
    for k in 0..=l {
        let mut s = a.coeffs[k];
        for j in 1..=k {
            s -= b.coeffs[j] * c.coeffs[k - j];
        }
        c.coeffs[k] = s / b0;
    }
    Ok(c)
}

/// `e^{cu} = Σ c^k u^k / k!`.
pub fn ps_exp_linear(c: C64, order: usize) -> Series {
    let mut s = Series::one(order);
    for k in 1..=order {
        s.coeffs[k] = s.coeffs[k - 1] * c / k as f64;
    }
    s
}

/// Maclaurin series of `sn`, `cn` or `dn` at modulus `alpha` through order `order`.
///
/// The `dn` coefficients use `α^{2n}C_{2n}(α^{−2})` in its polynomial form, so
/// `α = 0` needs no special case.
pub fn elliptic_series(
    kind: FunctionKind,
    alpha: C64,
    order: usize,
    table: &TaylorTable,
) -> Result<Series> {
    if order > MAX_ORDER {
        return Err(Error::Domain("series order above the supported cap"));
    }
    series_from_table(kind, alpha, order, table)
}

fn series_from_table(
    kind: FunctionKind,
    alpha: C64,
    order: usize,
    table: &TaylorTable,
) -> Result<Series> {
    if table.n_max() < order {
        return Err(Error::Domain("Taylor table does not reach the requested order"));
    }
    let x = alpha * alpha;
    let mut s = Series::zero(order);
    let mut fact = 1.0;
    for n in 0..=order {
        if n > 0 {
            fact *= n as f64;
        }
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let value = match (kind, n % 2) {
            (FunctionKind::Sn, 1) | (FunctionKind::Cn, 0) => table.eval(n, x),
            (FunctionKind::Dn, 0) => table.eval_reflected(n, x),
            _ => continue,
        };
        s.coeffs[n] = value * (sign / fact);
    }
    Ok(s)
}

/// `u / sn(u)` through order `order`.
pub fn u_over_sn(alpha: C64, order: usize, table: &TaylorTable) -> Result<Series> {
    if order > MAX_ORDER {
        return Err(Error::Domain("series order above the supported cap"));
    }
    // sn(u)/u has the coefficients of sn shifted down by one.
    let sn = series_from_table(FunctionKind::Sn, alpha, order + 1, table)?;
    let shifted = Series::from_coeffs(sn.coeffs[1..].to_vec(), order);
    ps_div(&Series::one(order), &shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::taylor_c;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn real(v: &[f64], order: usize) -> Series {
        Series::from_coeffs(v.iter().map(|&x| c(x, 0.0)).collect(), order)
    }

    #[test]
    fn product_examples() {
        let a = real(&[1.0, 1.0], 4);
        let b = real(&[1.0, -1.0], 4);
        assert_eq!(ps_mul(&a, &b).unwrap(), real(&[1.0, 0.0, -1.0], 4));
        assert_eq!(ps_mul(&a, &Series::one(4)).unwrap(), a);
        assert!(ps_mul(&a, &Series::one(3)).is_err());
    }

    #[test]
    fn division_examples() {
        let g = ps_div(&Series::one(5), &real(&[1.0, -1.0], 5)).unwrap();
        assert!(g.coeffs().iter().all(|&x| (x - 1.0).norm() < 1e-15));
        let a = real(&[2.0, 3.0, -1.0], 5);
        let q = ps_div(&a, &a).unwrap();
        assert!((q.coeff(0) - 1.0).norm() < 1e-15);
        assert!(q.coeffs()[1..].iter().all(|x| x.norm() < 1e-15));
        assert!(matches!(
            ps_div(&a, &Series::variable(5)),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn exponential_examples() {
        assert_eq!(ps_exp_linear(c(0.0, 0.0), 4), Series::one(4));
        let e = ps_exp_linear(c(1.0, 0.0), 3);
        assert_eq!(e, real(&[1.0, 1.0, 0.5, 1.0 / 6.0], 3));
        let e = ps_exp_linear(c(0.0, 2.0), 2);
        assert!((e.coeff(2) - c(-2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn elliptic_series_low_orders() {
        let t = taylor_c(8);
        let a = c(0.3, 0.2);
        let sn = elliptic_series(FunctionKind::Sn, a, 3, &t).unwrap();
        assert!((sn.coeff(1) - 1.0).norm() < 1e-15);
        assert!((sn.coeff(3) + (a * a + 1.0) / 6.0).norm() < 1e-15);
        let cn = elliptic_series(FunctionKind::Cn, a, 2, &t).unwrap();
        assert_eq!(cn.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        let dn = elliptic_series(FunctionKind::Dn, a, 2, &t).unwrap();
        assert!((dn.coeff(2) + a * a * 0.5).norm() < 1e-15);
        let dn0 = elliptic_series(FunctionKind::Dn, c(0.0, 0.0), 6, &t).unwrap();
        assert_eq!(dn0, Series::one(6));
    }

    #[test]
    fn u_over_sn_leading_terms() {
        let t = taylor_c(10);
        let a = c(0.5, 0.0);
        let s = u_over_sn(a, 6, &t).unwrap();
        assert!((s.coeff(0) - 1.0).norm() < 1e-15);
        assert!((s.coeff(2) - (1.0 + 0.25) / 6.0).norm() < 1e-15);
        let sn = elliptic_series(FunctionKind::Sn, a, 6, &t).unwrap();
        let u = ps_mul(&sn, &s).unwrap();
        for k in 0..=6 {
            let want = if k == 1 { 1.0 } else { 0.0 };
            assert!((u.coeff(k) - want).norm() < 1e-15);
        }
    }

    #[test]
    fn limits_enforced() {
        let t = taylor_c(10);
        assert!(elliptic_series(FunctionKind::Sn, c(0.1, 0.0), 12, &t).is_err());
        let big = taylor_c(70);
        assert!(elliptic_series(FunctionKind::Sn, c(0.1, 0.0), 65, &big).is_err());
    }
}

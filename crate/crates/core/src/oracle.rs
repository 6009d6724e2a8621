//! Brute-force checks that do not use the elliptic formulas: tridiagonal
//! solves, the resolvent norm of a finite section and Newton eigenvalues.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::operator::{truncate, weight, OperatorSpec, Tridiagonal};

const PIVOT_FLOOR: f64 = 1e-300;
const POWER_CAP: usize = 500;
const RESTARTS: usize = 3;

/// `P (T − shift) = L U` for a tridiagonal `T`, with row interchanges between
/// neighbours. `U` has a second superdiagonal `du2` from the fill-in.
#[derive(Debug, Clone, PartialEq)]
pub struct LUFactor {
    dl: Vec<C64>,
    d: Vec<C64>,
    du: Vec<C64>,
    du2: Vec<C64>,
    /// `swapped[i]` records an interchange of rows `i` and `i + 1`.
    swapped: Vec<bool>,
}

fn cabs1(z: C64) -> f64 {
    z.re.abs() + z.im.abs()
}

impl LUFactor {
    /// Factors `tri − shift`.
    pub fn new(tri: &Tridiagonal, shift: C64) -> Result<Self> {
        let n = tri.dim();
        let mut dl = tri.off().to_vec();
        let mut du = tri.off().to_vec();
        let mut d = vec![-shift; n];
        let mut du2 = vec![C64::new(0.0, 0.0); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if cabs1(d[i]) >= cabs1(dl[i]) {
                if cabs1(d[i]) != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d.iter().any(|p| p.norm() <= PIVOT_FLOOR) {
            return Err(Error::Singular("zero pivot in tridiagonal factorization"));
        }
        Ok(Self { dl, d, du, du2, swapped })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    fn check(&self, b: &[C64]) -> Result<()> {
        if b.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: b.len() });
        }
        Ok(())
    }

    /// Solves `(T − shift) x = b`.
    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        self.check(b)?;
        let n = self.dim();
        let mut x = b.to_vec();
        for i in 0..n - 1 {
            if self.swapped[i] {
                let t = x[i];
                x[i] = x[i + 1];
                x[i + 1] = t - self.dl[i] * x[i];
            } else {
                let t = x[i];
                x[i + 1] -= self.dl[i] * t;
            }
        }
        x[n - 1] /= self.d[n - 1];
        if n > 1 {
            x[n - 2] = (x[n - 2] - self.du[n - 2] * x[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.du[i] * x[i + 1] - self.du2[i] * x[i + 2]) / self.d[i];
        }
        Ok(x)
    }

    /// Solves `(T − shift)^H x = b` with the same factors.
    pub fn solve_adjoint(&self, b: &[C64]) -> Result<Vec<C64>> {
        self.check(b)?;
        let n = self.dim();
        let mut x = b.to_vec();
        x[0] /= self.d[0].conj();
        if n > 1 {
            x[1] = (x[1] - self.du[0].conj() * x[0]) / self.d[1].conj();
        }
        for i in 2..n {
            x[i] = (x[i] - self.du[i - 1].conj() * x[i - 1] - self.du2[i - 2].conj() * x[i - 2])
                / self.d[i].conj();
        }
        for i in (0..n - 1).rev() {
            if self.swapped[i] {
                let t = x[i + 1];
                x[i + 1] = x[i] - self.dl[i].conj() * t;
                x[i] = t;
            } else {
                let t = x[i + 1];
                x[i] -= self.dl[i].conj() * t;
            }
        }
        Ok(x)
    }
}

/// `x` with `(tri − shift) x = rhs`.
pub fn tridiag_solve(tri: &Tridiagonal, shift: C64, rhs: &[C64]) -> Result<Vec<C64>> {
    LUFactor::new(tri, shift)?.solve(rhs)
}

/// `⟨e₁, (J_n − z)⁻¹ e₁⟩`.
pub fn m_oracle(spec: &OperatorSpec, z: C64, n: usize) -> Result<C64> {
    let tri = truncate(spec, n);
    let mut e1 = vec![C64::new(0.0, 0.0); tri.dim()];
    e1[0] = C64::new(1.0, 0.0);
    Ok(tridiag_solve(&tri, z, &e1)?[0])
}

fn norm(x: &[C64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    let mut uniform = || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * 2.0 - 1.0;
    let mut x: Vec<C64> = (0..n).map(|_| C64::new(uniform(), uniform())).collect();
    let s = norm(&x);
    x.iter_mut().for_each(|v| *v /= s);
    x
}

/// One power-iteration run from `x`; the flag reports convergence.
fn power_run(lu: &LUFactor, mut x: Vec<C64>, tol: f64) -> Result<(f64, bool)> {
    let mut est = 0.0;
    for _ in 0..POWER_CAP {
        let y = lu.solve(&x)?;
        let next = norm(&y);
        if !next.is_finite() {
            return Ok((f64::INFINITY, true));
        }
        if (next - est).abs() <= tol * next {
            return Ok((next, true));
        }
        est = next;
        x = lu.solve_adjoint(&y)?;
        let s = norm(&x);
        if !(s.is_finite() && s > 0.0) {
            return Ok((f64::INFINITY, true));
        }
        x.iter_mut().for_each(|v| *v /= s);
    }
    Ok((est, false))
}

/// `‖(J_n − z)⁻¹‖` by power iteration on `x ↦ A^{−H}A^{−1}x` from a start
/// vector drawn from ChaCha8 seeded with `seed`. A run that hits the iteration
/// cap is followed by three restarts and the largest estimate wins.
pub fn resolvent_norm(spec: &OperatorSpec, z: C64, n: usize, tol: f64, seed: u64) -> Result<f64> {
    let lu = LUFactor::new(&truncate(spec, n), z)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut best, done) = power_run(&lu, random_unit(&mut rng, lu.dim()), tol)?;
    if !done {
        for _ in 0..RESTARTS {
            let (e, _) = power_run(&lu, random_unit(&mut rng, lu.dim()), tol)?;
            best = best.max(e);
        }
    }
    Ok(best)
}

/// `P_{n+1}(z) / P_{n+1}′(z)` for the characteristic polynomial of the
/// `n × n` section, by the differentiated recurrence with rescaling.
fn newton_step(spec: &OperatorSpec, n: usize, z: C64) -> Option<C64> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let (mut p0, mut p1) = (one, z);
    let (mut d0, mut d1) = (zero, one);
    for k in 2..=n {
        let w = weight(spec, k - 1);
        let w2 = w * w;
        let p2 = z * p1 - w2 * p0;
        let d2 = p1 + z * d1 - w2 * d0;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
        let big = p0.norm().max(p1.norm()).max(d0.norm()).max(d1.norm());
        if big > 1e100 || (big < 1e-100 && big > 0.0) {
            p0 /= big;
            p1 /= big;
            d0 /= big;
            d1 /= big;
        }
    }
    if d1 == zero {
        None
    } else {
        Some(p1 / d1)
    }
}

/// Eigenvalue of the `n × n` section near `z0` by Newton's method.
pub fn eig_root(spec: &OperatorSpec, n: usize, z0: C64, tol: f64, max_iter: usize) -> Result<C64> {
    let mut z = z0;
    for _ in 0..max_iter {
        match newton_step(spec, n.max(1), z) {
            Some(step) if step.re.is_finite() && step.im.is_finite() => {
                z -= step;
                if step.norm() < tol {
                    return Ok(z);
                }
            }
            Some(_) => break,
            None => z += tol,
        }
    }
    Err(Error::NoConvergence(max_iter))
}

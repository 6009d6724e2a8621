//! Self-check suites run by `ejspec verify`.

use std::f64::consts::PI;
use std::fmt;

use ejspec_core::elliptic::{
    elliptic_constants, fourier_eval, jacobi_triple, taylor_c, FunctionKind, Modulus,
};
use ejspec_core::operator::{apply, kernel_solutions, truncate, OperatorSpec, Tridiagonal};
use ejspec_core::oracle::{eig_root, m_oracle, resolvent_norm, LUFactor};
use ejspec_core::powerseries::elliptic_series;
use ejspec_core::quadrature::gauss_kronrod;
use ejspec_core::spectral::{
    eigenvalue, eigenvector, first_entry, moment, moment_closed_form, orthogonality_sums,
    orthopoly, projection_norm, rodriguez, spectral_measure_weight, weyl_m,
};
use ejspec_core::{Complex64 as C64, Result};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Elliptic,
    Operator,
    Spectral,
    Oracle,
    All,
}

/// Outcome of one check: the largest observed error against its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub error: f64,
    pub bound: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error <= self.bound
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {:<34} error {:.3e} (bound {:.1e})", self.name, self.error, self.bound)
    }
}

fn check(name: &'static str, error: Result<f64>, bound: f64) -> Check {
    Check { name, error: error.unwrap_or(f64::INFINITY), bound }
}

/// Uniform draws from a seeded ChaCha8 stream.
pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let t = (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * t
    }

    /// A point of the closed disk of radius `r`.
    pub fn disk(&mut self, r: f64) -> C64 {
        C64::from_polar(r * self.uniform(0.0, 1.0).sqrt(), self.uniform(-PI, PI))
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn moduli(s: &mut Sampler, count: usize, r: f64) -> Result<Vec<Modulus>> {
    (0..count).map(|_| elliptic_constants(s.disk(r))).collect()
}

/// A point of the period cell away from the poles at `±iK′`.
fn cell_point(s: &mut Sampler, m: &Modulus) -> C64 {
    m.big_k * (2.0 * s.uniform(0.0, 1.0)) + C64::i() * m.big_k_prime * s.uniform(-0.4, 0.4)
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    it.into_iter().try_fold(0.0f64, |acc, e| Ok(acc.max(e?)))
}

fn pythagorean(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let ms = moduli(&mut s, 20, 0.95)?;
    max_over(ms.iter().flat_map(|m| {
        let us: Vec<C64> = (0..200).map(|_| m.big_k * (2.0 * s.uniform(0.0, 1.0))).collect();
        us.into_iter().map(move |u| {
            let t = jacobi_triple(u, m)?;
            let a2 = m.alpha * m.alpha;
            let e1 = (t.dn * t.dn + a2 * t.sn * t.sn - 1.0).norm();
            let e2 = (t.sn * t.sn + t.cn * t.cn - 1.0).norm();
            Ok(e1.max(e2))
        })
    }))
}

fn shifts(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let ms = moduli(&mut s, 20, 0.95)?;
    let mut worst = 0.0f64;
    for m in &ms {
        let kk = m.big_k * 2.0;
        let kp = C64::i() * m.big_k_prime;
        for _ in 0..50 {
            let u = cell_point(&mut s, m);
            let t = jacobi_triple(u, m)?;
            let a = jacobi_triple(u + kk, m)?;
            let b = jacobi_triple(u + kp * 2.0, m)?;
            worst = worst
                .max(rel(a.sn, -t.sn))
                .max(rel(a.cn, -t.cn))
                .max(rel(b.sn, t.sn))
                .max(rel(b.cn, -t.cn));
            if t.sn.norm() > 1e-2 {
                let h = jacobi_triple(u + kp, m)?;
                let inv = (m.alpha * t.sn).inv();
                worst = worst.max(rel(h.sn, inv)).max(rel(h.cn, -C64::i() * t.dn * inv));
            }
        }
    }
    Ok(worst)
}

fn additions(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let ms = moduli(&mut s, 20, 0.95)?;
    let mut worst = 0.0f64;
    for m in &ms {
        for _ in 0..50 {
            let (u, v) = (cell_point(&mut s, m) * 0.5, cell_point(&mut s, m) * 0.5);
            let (tu, tv) = (jacobi_triple(u, m)?, jacobi_triple(v, m)?);
            let (p, q) = (jacobi_triple(u + v, m)?, jacobi_triple(u - v, m)?);
            let den = 1.0 - m.alpha * m.alpha * tu.sn * tu.sn * tv.sn * tv.sn;
            let sum = tu.cn * tv.cn * 2.0 / den;
            let diff = -(tu.sn * tv.sn * tu.dn * tv.dn * 2.0) / den;
            worst = worst.max(rel(p.cn + q.cn, sum)).max(rel(p.cn - q.cn, diff));
        }
    }
    Ok(worst)
}

fn derivatives(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let ms = moduli(&mut s, 20, 0.95)?;
    let h = 1e-5;
    let mut worst = 0.0f64;
    for m in &ms {
        for _ in 0..20 {
            let u = cell_point(&mut s, m);
            let t = jacobi_triple(u, m)?;
            let (p, q) = (jacobi_triple(u + h, m)?, jacobi_triple(u - h, m)?);
            let d = |a: C64, b: C64| (a - b) / (2.0 * h);
            worst = worst
                .max(rel(d(p.sn, q.sn), t.cn * t.dn))
                .max(rel(d(p.cn, q.cn), -t.sn * t.dn))
                .max(rel(d(p.dn, q.dn), -m.alpha * m.alpha * t.sn * t.cn));
        }
    }
    Ok(worst)
}

fn taylor_sums(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let table = taylor_c(21);
    let ms = moduli(&mut s, 20, 0.95)?;
    let mut worst = 0.0f64;
    for m in &ms {
        let series: Vec<_> = [FunctionKind::Sn, FunctionKind::Cn, FunctionKind::Dn]
            .into_iter()
            .map(|k| elliptic_series(k, m.alpha, 20, &table))
            .collect::<Result<_>>()?;
        for _ in 0..10 {
            let u = s.disk(0.5);
            let t = jacobi_triple(u, m)?;
            worst = worst
                .max(rel(series[0].eval(u), t.sn))
                .max(rel(series[1].eval(u), t.cn))
                .max(rel(series[2].eval(u), t.dn));
        }
    }
    Ok(worst)
}

fn fourier(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let ms = moduli(&mut s, 10, 0.95)?;
    let mut worst = 0.0f64;
    for m in &ms {
        for _ in 0..20 {
            let u = cell_point(&mut s, m);
            let t = jacobi_triple(u, m)?;
            for kind in [FunctionKind::Sn, FunctionKind::Cn, FunctionKind::Dn] {
                worst = worst.max(rel(fourier_eval(kind, u, m, 400)?, t.get(kind)));
            }
        }
    }
    Ok(worst)
}

/// Largest `|sn(tK)|` over `t ∈ (0, 1)` in steps of `10⁻³`, for moduli in the
/// closed unit disk kept `0.1` away from `±1`; the check wants it below one.
fn modulus_maximum(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let mut worst = 0.0f64;
    let mut found = 0;
    while found < 20 {
        let a = if found < 4 { C64::from_polar(1.0, s.uniform(-PI, PI)) } else { s.disk(1.0) };
        if (a - 1.0).norm() < 0.1 || (a + 1.0).norm() < 0.1 {
            continue;
        }
        found += 1;
        let m = elliptic_constants(a)?;
        for j in 1..1000 {
            let t = jacobi_triple(m.big_k * (j as f64 * 1e-3), &m)?;
            worst = worst.max(t.sn.norm());
        }
    }
    Ok(worst)
}

/// `K` against `∫_0^{π/2} (1 − α² sin² s)^{−1/2} ds`.
fn quarter_period(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let ms = moduli(&mut s, 10, 0.95)?;
    max_over(ms.iter().map(|m| {
        let a2 = m.alpha * m.alpha;
        let k = gauss_kronrod(|x| (1.0 - a2 * x.sin().powi(2)).sqrt().inv(), 0.0, PI / 2.0, 1e-14)?;
        Ok(rel(k, m.big_k))
    }))
}

fn listed_polynomials() -> Result<f64> {
    let t = taylor_c(8);
    let listed: [&[u64]; 8] = [
        &[1],
        &[1],
        &[1, 1],
        &[1, 4],
        &[1, 14, 1],
        &[1, 44, 16],
        &[1, 135, 135, 1],
        &[1, 408, 912, 64],
    ];
    let same = listed.iter().enumerate().all(|(i, want)| {
        let got: Vec<u64> = t.coefficients(i + 1).iter().map(|b| b.try_into().unwrap_or(u64::MAX)).collect();
        got == *want
    });
    Ok(if same { 0.0 } else { 1.0 })
}

/// The elliptic identities, expansions and special checks.
pub fn elliptic_suite(seed: u64) -> Vec<Check> {
    vec![
        check("sn/cn/dn Pythagorean identities", pythagorean(seed), 1e-11),
        check("period and quarter-period shifts", shifts(seed + 1), 1e-10),
        check("cn addition formulas", additions(seed + 2), 1e-10),
        check("derivative formulas", derivatives(seed + 3), 1e-7),
        check("Taylor partial sums", taylor_sums(seed + 4), 1e-10),
        check("Fourier series", fourier(seed + 5), 1e-10),
        check("max |sn(tK)| on (0, 1)", modulus_maximum(seed + 6), 1.0 - f64::EPSILON),
        check("K against quadrature", quarter_period(seed + 7), 1e-12),
        check("listed polynomials C1..C8", listed_polynomials(), 0.0),
    ]
}

const MOMENT_MODULI: [(f64, f64); 3] = [(0.5, 0.0), (0.0, 0.5), (0.3, 0.4)];

/// Worst relative error of `(J^{2k})₁₁ = C_{2k}(α²)` for `k ≤ 6` and worst
/// absolute odd moment.
pub fn moment_errors() -> Result<(f64, f64)> {
    let table = taylor_c(12);
    let (mut even, mut odd) = (0.0f64, 0.0f64);
    for (re, im) in MOMENT_MODULI {
        let spec = OperatorSpec::standard(c(re, im));
        for k in 0..=6 {
            let n = 2 * k + 2;
            let got = moment(&spec, 2 * k, n)?;
            let want = moment_closed_form(&spec, 2 * k, &table)?;
            even = even.max((got - want).norm() / want.norm());
            odd = odd.max(moment(&spec, 2 * k + 1, n)?.norm());
        }
    }
    Ok((even, odd))
}

fn kernel_residual() -> Result<f64> {
    let a = c(0.3, 0.4);
    let n = 300;
    let (u, v) = kernel_solutions(a, n)?;
    let tri = truncate(&OperatorSpec::standard(a), n);
    let mut worst = 0.0f64;
    for x in [&u, &v] {
        let y = apply(&tri, x)?;
        let scale = x.iter().map(|e| e.norm()).fold(0.0, f64::max);
        worst = worst.max(y[1..n - 1].iter().map(|e| e.norm()).fold(0.0, f64::max) / scale);
    }
    Ok(worst)
}

fn unitary_equivalence() -> Result<f64> {
    let a = c(0.4, 0.3);
    let (p, m) = (OperatorSpec::standard(a), OperatorSpec::standard(-a));
    max_over((0..3).map(|n| {
        let z0 = eigenvalue(&p, n)?;
        let x = eig_root(&p, 100, z0, 1e-14, 100)?;
        let y = eig_root(&m, 100, z0, 1e-14, 100)?;
        Ok((x - y).norm())
    }))
}

pub fn operator_suite(_seed: u64) -> Vec<Check> {
    let moments = moment_errors();
    vec![
        check("even moments equal C_2k(α²)", moments.clone().map(|m| m.0), 1e-10),
        check("odd moments vanish", moments.map(|m| m.1), 1e-14),
        check("kernel solutions", kernel_residual(), 1e-13),
        check("J(α) and J(-α) share eigenvalues", unitary_equivalence(), 1e-10),
    ]
}

fn eigenvector_residual() -> Result<f64> {
    let mut worst = 0.0f64;
    for a in [c(0.5, 0.0), c(0.0, 0.5), c(0.3, 0.4)] {
        let spec = OperatorSpec::standard(a);
        for n in -2..=2 {
            let lambda = eigenvalue(&spec, n)?;
            let v = eigenvector(&spec, n, 400, 1e-14)?;
            let jv = apply(&truncate(&spec, 400), &v)?;
            let r: f64 = jv[..399].iter().zip(&v).map(|(y, x)| (y - lambda * x).norm_sqr()).sum();
            let nv: f64 = v.iter().map(|x| x.norm_sqr()).sum();
            worst = worst.max((r / nv).sqrt());
            worst = worst.max(rel(v[0], first_entry(&spec, n)?));
        }
    }
    Ok(worst)
}

fn m_duality(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let mut worst = 0.0f64;
    for a in [c(0.5, 0.0), c(0.0, 0.5), c(0.3, 0.4)] {
        let spec = OperatorSpec::standard(a);
        for _ in 0..5 {
            let z = c(s.uniform(-6.0, 6.0), s.uniform(0.5, 3.0) * if s.uniform(0.0, 1.0) < 0.5 { -1.0 } else { 1.0 });
            worst = worst.max((weyl_m(&spec, z, 1e-14)? - m_oracle(&spec, z, 2000)?).norm());
        }
    }
    Ok(worst)
}

fn orthogonality() -> Result<f64> {
    let mut worst = 0.0f64;
    for a in [c(0.5, 0.0), c(0.4, 0.3)] {
        let m = elliptic_constants(a)?;
        for n in 0..3 {
            for k in 0..3 {
                let o = orthogonality_sums(&m, n, k, 80)?;
                let want = if n == k { m.odd_weight_over_alpha(n) * PI / (m.big_k * 2.0) } else { c(0.0, 0.0) };
                worst = worst.max((o.gamma - want).norm()).max((o.delta + want).norm());
            }
        }
    }
    Ok(worst)
}

fn projection_norms() -> Result<f64> {
    let spec = OperatorSpec::standard(c(0.5, 0.0));
    max_over((0..2).map(|n| Ok((projection_norm(&spec, n, 32)?.norm - 1.0).abs())))
}

fn rodriguez_agreement(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let table = taylor_c(40);
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let a = s.disk(0.9);
        let z = c(s.uniform(-2.0, 2.0), s.uniform(-2.0, 2.0));
        for spec in [OperatorSpec::standard(a), OperatorSpec::tilde(a)] {
            for n in 1..=20 {
                let (_, p) = orthopoly(&spec, n, z)?;
                worst = worst.max(rel(rodriguez(&spec, n, z, &table)?, p));
            }
        }
    }
    Ok(worst)
}

fn measure_mass() -> Result<f64> {
    let spec = OperatorSpec::standard(c(0.5, 0.0));
    let m = spec.modulus()?;
    let total: C64 = (-60..60).map(|n| spectral_measure_weight(spec.mode, &m, n)).sum();
    Ok((total - 1.0).norm())
}

pub fn spectral_suite(seed: u64) -> Vec<Check> {
    vec![
        check("eigenvector residual and first entry", eigenvector_residual(), 1e-8),
        check("m-function against the oracle", m_duality(seed), 1e-6),
        check("orthogonality sums", orthogonality(), 1e-9),
        check("projection norms for real α", projection_norms(), 1e-6),
        check("Rodriguez against recurrence", rodriguez_agreement(seed + 1), 1e-10),
        check("spectral measure total mass", measure_mass(), 1e-8),
    ]
}

fn lu_backward_error(seed: u64) -> Result<f64> {
    let mut s = Sampler::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let n = 50;
        let off: Vec<C64> = (1..n).map(|_| s.disk(3.0)).collect();
        let tri = Tridiagonal::new(n, off)?;
        let shift = s.disk(2.0);
        let b: Vec<C64> = (0..n).map(|_| s.disk(1.0)).collect();
        let x = LUFactor::new(&tri, shift)?.solve(&b)?;
        let ax = apply(&tri, &x)?;
        let r: f64 = ax.iter().zip(&x).zip(&b).map(|((y, x), b)| (y - shift * x - b).norm_sqr()).sum();
        let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
        worst = worst.max((r / nb).sqrt());
    }
    Ok(worst)
}

fn newton_eigenvalues() -> Result<f64> {
    let mut worst = 0.0f64;
    for spec in [OperatorSpec::standard(c(0.5, 0.0)), OperatorSpec::standard(c(0.0, 0.5)), OperatorSpec::tilde(c(0.5, 0.0))] {
        for n in -3..=3 {
            let want = eigenvalue(&spec, n)?;
            worst = worst.max((eig_root(&spec, 600, want, 1e-13, 100)? - want).norm());
        }
    }
    Ok(worst)
}

fn normal_resolvent(seed: u64) -> Result<f64> {
    let spec = OperatorSpec::standard(c(0.5, 0.0));
    let lambda = eig_root(&spec, 400, eigenvalue(&spec, 0)?, 1e-14, 100)?;
    let z = lambda + C64::i();
    let r = resolvent_norm(&spec, z, 400, 1e-10, seed)?;
    let again = resolvent_norm(&spec, z, 400, 1e-10, seed)?;
    Ok((r - 1.0).abs() + (r - again).abs())
}

pub fn oracle_suite(seed: u64) -> Vec<Check> {
    vec![
        check("tridiagonal LU backward error", lu_backward_error(seed), 1e-12),
        check("Newton roots at predicted eigenvalues", newton_eigenvalues(), 1e-6),
        check("resolvent norm of a normal section", normal_resolvent(seed), 1e-6),
    ]
}

pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::Elliptic => elliptic_suite(seed),
        Suite::Operator => operator_suite(seed),
        Suite::Spectral => spectral_suite(seed),
        Suite::Oracle => oracle_suite(seed),
        Suite::All => [Suite::Elliptic, Suite::Operator, Suite::Spectral, Suite::Oracle]
            .into_iter()
            .flat_map(|s| run(s, seed))
            .collect(),
    }
}

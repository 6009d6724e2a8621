//! Elliptic machinery for a complex modulus: complete integrals, the nome,
//! theta functions, the Jacobian triple `sn, cn, dn`, their Taylor and Fourier
//! representations, and the digamma function.
//!
//! All quantities depend on `α²` except where a formula carries an explicit
//! `α`; those use the half nome `q^{1/2}` fixed by `α = 4q^{1/2}S₂²/θ₃²`, see
//! [`Modulus::half_nome`].

mod digamma;
mod jacobi;
mod taylor;
mod theta;

pub use digamma::digamma;
pub use jacobi::{fourier_eval, jacobi_triple, EllipticTriple, FunctionKind};
pub use taylor::{taylor_c, TaylorTable};
pub use theta::{theta, ThetaIndex};

use core::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Principal square root of `1 − α²`, normalised so the result has
/// non-negative real part and, on the imaginary axis, non-negative imaginary part.
pub fn complementary_modulus(alpha: C64) -> C64 {
    let mut r = (C64::new(1.0, 0.0) - alpha * alpha).sqrt();
    if r.re < 0.0 || (r.re == 0.0 && r.im < 0.0) {
        r = -r;
    }
    r
}

/// Cached elliptic constants for one modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    pub alpha: C64,
    pub alpha_prime: C64,
    pub big_k: C64,
    pub big_k_prime: C64,
    pub nome: C64,
    /// `q^{1/2}/α`; finite at `α = 0` where it tends to `1/4`.
    half_nome_ratio: C64,
    unit_limit: bool,
}

impl Modulus {
    /// The `α = 1` limit object: `K = ∞`, `q = 1`, with `sn = tanh`, `cn = dn = sech`.
    pub fn unit_limit() -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            alpha_prime: C64::new(0.0, 0.0),
            big_k: C64::new(f64::INFINITY, 0.0),
            big_k_prime: C64::new(PI / 2.0, 0.0),
            nome: C64::new(1.0, 0.0),
            half_nome_ratio: C64::new(1.0, 0.0),
            unit_limit: true,
        }
    }

    pub fn is_unit_limit(&self) -> bool {
        self.unit_limit
    }

    /// `q^{1/2}` on the branch satisfying `α = θ₂(0,q)²/θ₃(0,q)²`.
    pub fn half_nome(&self) -> C64 {
        self.alpha * self.half_nome_ratio
    }

    /// `q^{1/2}/α`, well defined at `α = 0`.
    pub fn half_nome_over_alpha(&self) -> C64 {
        self.half_nome_ratio
    }

    /// `q^{N+1/2} / (α (1 + q^{2N+1}))`, the weight attached to `λ_N`, written
    /// through `|N|`-symmetry so negative indices never raise `q` to a negative power.
    pub fn odd_weight_over_alpha(&self, n: i64) -> C64 {
        let m = if n >= 0 { n } else { -n - 1 } as u64;
        let qn = pow_u64(self.nome, m);
        let q2 = qn * qn * self.nome;
        self.half_nome_ratio * qn / (C64::new(1.0, 0.0) + q2)
    }

    /// `q^{|N|} / (1 + q^{2|N|})`, the tilde-branch weight attached to `πN/K`.
    pub fn even_weight(&self, n: i64) -> C64 {
        let qn = pow_u64(self.nome, n.unsigned_abs());
        qn / (C64::new(1.0, 0.0) + qn * qn)
    }
}

pub(crate) fn pow_u64(z: C64, n: u64) -> C64 {
    let mut base = z;
    let mut e = n;
    let mut acc = C64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

fn on_excluded_rays(alpha: C64) -> bool {
    alpha.im == 0.0 && alpha.re.abs() >= 1.0
}

/// Elliptic constants `(α, α′, K, K′, q)` for a modulus off the rays `(−∞,−1] ∪ [1,∞)`.
///
/// The nome comes from the ascending series in `ε = (1−√α′)/(2(1+√α′))`,
/// polished by Newton's method on `θ₄(0,q)/θ₃(0,q) = √α′`; then
/// `K = (π/2)θ₃(0,q)²` and `K′ = −(2K/π) Log q^{1/2}`.
pub fn elliptic_constants(alpha: C64) -> Result<Modulus> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::Domain("modulus must be finite"));
    }
    if on_excluded_rays(alpha) {
        return Err(Error::Domain(
            "modulus on the excluded rays (-inf,-1] or [1,inf); use the unit limit or the tilde branch",
        ));
    }
    let alpha_prime = complementary_modulus(alpha);
    let root = alpha_prime.sqrt();
    let one = C64::new(1.0, 0.0);
    let eps = (one - root) / ((one + root) * 2.0);
    let e4 = eps.powu(4);
    let mut q = eps * (one + e4 * (2.0 + e4 * (15.0 + e4 * (150.0 + e4 * 1707.0))));

    if q.norm() > 0.0 {
        // Newton polish on g(q) = θ₄/θ₃ − √α′.
        let mut converged = false;
        for _ in 0..60 {
            let [t3, t4, _, d3, d4] = theta::null_values(q)?;
            let g = t4 / t3 - root;
            let dg = (d4 * t3 - t4 * d3) / (t3 * t3);
            let step = g / dg;
            q -= step;
            if !(q.re.is_finite() && q.im.is_finite()) || q.norm() >= theta::NOME_LIMIT {
                return Err(Error::Convergence("nome inversion left the unit disk"));
            }
            if step.norm() <= 4.0 * f64::EPSILON * q.norm() || g.norm() <= 4.0 * f64::EPSILON {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence("nome inversion did not converge"));
        }
    }

    let [t3, _, s2, _, _] = theta::null_values(q)?;
    let big_k = t3 * t3 * (PI / 2.0);
    let half_nome_ratio = t3 * t3 / (s2 * s2 * 4.0);
    let h = alpha * half_nome_ratio;
    let big_k_prime = if h.norm() == 0.0 {
        C64::new(f64::INFINITY, 0.0)
    } else {
        -big_k * h.ln() * (2.0 / PI)
    };
    Ok(Modulus {
        alpha,
        alpha_prime,
        big_k,
        big_k_prime,
        nome: q,
        half_nome_ratio,
        unit_limit: false,
    })
}

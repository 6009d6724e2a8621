//! Grids of `log10 ‖(J_n − z)⁻¹‖`.

use alloc::vec::Vec;

use num_complex::Complex64 as C64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::operator::{Mode, OperatorSpec};
use crate::oracle::resolvent_norm;
use crate::spectral::eigenvalue;

/// `count` equally spaced points from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 || !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::Domain("axis needs lo < hi and at least two points"));
        }
        Ok(Self { lo, hi, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count)
            .map(|j| if j + 1 == self.count { self.hi } else { self.lo + step * j as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMeta {
    pub spec: OperatorSpec,
    pub dim: usize,
    pub tol: f64,
    pub seed: u64,
}

/// `values[i * re_axis.len() + j]` is the value at `re_axis[j] + i·im_axis[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoField {
    pub re_axis: Vec<f64>,
    pub im_axis: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: FieldMeta,
}

impl PseudoField {
    pub fn value(&self, i_im: usize, j_re: usize) -> f64 {
        self.values[i_im * self.re_axis.len() + j_re]
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Start-vector seed for the grid point `z`, fixed by `seed` and the bits of `z`.
pub fn point_seed(seed: u64, z: C64) -> u64 {
    splitmix(splitmix(seed ^ z.re.to_bits()) ^ z.im.to_bits())
}

/// `log10` of the resolvent norm at `z`, `+∞` when the shifted section is singular.
pub fn point_value(meta: &FieldMeta, z: C64) -> Result<f64> {
    match resolvent_norm(&meta.spec, z, meta.dim, meta.tol, point_seed(meta.seed, z)) {
        Ok(r) => Ok(r.log10()),
        Err(Error::Singular(_)) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// Grid points in output order: imaginary part outer, real part inner.
pub fn grid_points(re: &[f64], im: &[f64]) -> Vec<C64> {
    im.iter().flat_map(|&y| re.iter().map(move |&x| C64::new(x, y))).collect()
}

/// The field evaluated point by point on the current thread.
pub fn field(meta: FieldMeta, re: AxisRange, im: AxisRange) -> Result<PseudoField> {
    let (re_axis, im_axis) = (re.points(), im.points());
    let values = grid_points(&re_axis, &im_axis)
        .into_iter()
        .map(|z| point_value(&meta, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(PseudoField { re_axis, im_axis, values, meta })
}

/// A window holding `λ_N` for `|N| ≤ 6` with a margin, and `|Im z| ≤ 4`.
pub fn default_window(spec: &OperatorSpec, count: usize) -> Result<(AxisRange, AxisRange)> {
    let reach = match spec.mode {
        Mode::Standard => eigenvalue(spec, 6)?.norm().max(eigenvalue(spec, -7)?.norm()),
        Mode::Tilde => eigenvalue(spec, 6)?.norm(),
    };
    let half = (reach * 1.15).ceil();
    Ok((AxisRange::new(-half, half, count)?, AxisRange::new(-4.0, 4.0, count)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(a: C64, dim: usize) -> FieldMeta {
        FieldMeta { spec: OperatorSpec::standard(a), dim, tol: 1e-8, seed: 11 }
    }

    #[test]
    fn axis_points() {
        let a = AxisRange::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(a.points(), alloc::vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(AxisRange::new(0.0, 1.0, 1).is_err());
        assert!(AxisRange::new(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn seeds_depend_on_coordinates() {
        let z = C64::new(0.5, -1.0);
        assert_eq!(point_seed(3, z), point_seed(3, z));
        assert_ne!(point_seed(3, z), point_seed(4, z));
        assert_ne!(point_seed(3, z), point_seed(3, z.conj()));
    }

    #[test]
    fn small_field_shape_and_symmetry() {
        let re = AxisRange::new(-3.0, 3.0, 4).unwrap();
        let im = AxisRange::new(-1.0, 1.0, 3).unwrap();
        let f = field(meta(C64::new(0.5, 0.0), 60), re, im).unwrap();
        assert_eq!(f.values.len(), 12);
        for j in 0..4 {
            assert!((f.value(0, j) - f.value(2, j)).abs() < 1e-6);
        }
        let g = field(meta(C64::new(-0.5, 0.0), 60), re, im).unwrap();
        for (a, b) in f.values.iter().zip(&g.values) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn singular_point_is_infinite() {
        assert_eq!(point_value(&meta(C64::new(0.5, 0.0), 7), C64::new(0.0, 0.0)).unwrap(), f64::INFINITY);
    }

    #[test]
    fn default_window_contains_low_eigenvalues() {
        let spec = OperatorSpec::standard(C64::new(0.5, 0.0));
        let (re, im) = default_window(&spec, 201).unwrap();
        assert!(re.hi > eigenvalue(&spec, 6).unwrap().re && im.hi == 4.0);
        assert!(default_window(&OperatorSpec::tilde(C64::new(0.5, 0.0)), 11).is_ok());
    }
}

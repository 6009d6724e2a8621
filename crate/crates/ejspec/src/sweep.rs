//! Parallel pseudospectra sweeps.

use ejspec_core::pseudospectra::{grid_points, point_value, AxisRange, FieldMeta, PseudoField};
use ejspec_core::Result;
use rayon::prelude::*;

/// Environment variable capping the sweep thread count; `0` or unset means automatic.
pub const THREADS_VAR: &str = "EJSPEC_THREADS";

/// Thread count requested through [`THREADS_VAR`], `0` for automatic.
pub fn requested_threads() -> usize {
    std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

/// The field of `ejspec_core::pseudospectra::field`, with grid points spread
/// over a rayon pool of `threads` workers (`0` for automatic). Each point is
/// seeded from its own coordinates and results are collected in grid order,
/// so the output does not depend on the schedule.
pub fn par_field(meta: FieldMeta, re: AxisRange, im: AxisRange, threads: usize) -> anyhow::Result<PseudoField> {
    let (re_axis, im_axis) = (re.points(), im.points());
    let points = grid_points(&re_axis, &im_axis);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let values = pool.install(|| {
        points.par_iter().map(|&z| point_value(&meta, z)).collect::<Result<Vec<f64>>>()
    })?;
    Ok(PseudoField { re_axis, im_axis, values, meta })
}

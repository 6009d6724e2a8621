//! Discrete spectrum, eigenvectors, the Weyl function and the associated
//! orthogonal polynomials.

mod cd;
mod eigen;
mod fourier;
mod poly;
mod weyl;

pub use cd::{cd_asymptotic, cd_table, segment_cd, CDPair};
pub use eigen::{
    eigenvalue, eigenvector, eigenvector_asymptotic, eigenvector_large_index, first_entry,
    spectral_item, SpectralItem,
};
pub use fourier::{
    eigen_pairing, fourier_gamma_delta, fourier_table, generating_function_residuals,
    orthogonality_sums, projection_norm, OrthogonalitySums, ProjectionNorm,
};
pub use poly::{orthopoly, rodriguez};
pub use weyl::{
    meixner_pollaczek, meixner_pollaczek_check, moment, moment_closed_form,
    spectral_measure_weight, weyl_m, POLE_DISTANCE,
};

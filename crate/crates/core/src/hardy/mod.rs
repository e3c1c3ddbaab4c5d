//! Periodic-grid discretization of the boundary operators: Riesz transforms
//! as Fourier multipliers, the Clifford–Riesz–Hilbert transform, the Hardy
//! projection, the Cauchy extension, Poisson kernels, and the numeric suites
//! built on them.

mod grid;
mod kernels;
mod quadrature;
mod spectral;
mod suites;

pub use grid::{FieldMeta, Grid, SpinorField};
pub use kernels::{convolution_crosscheck, gamma_half, kernels, omega, CrosscheckReport};
pub use quadrature::{
    integrate, riesz_of_schwartz_at_origin, schwartz_closed_form, schwartz_normalization,
    SchwartzReport,
};
pub use spectral::{
    abs_frequency, frequency_table, riesz, riesz_symbol, spectral_derivative, CliffordOps,
    FrequencyTable, Spectrum,
};
pub use suites::{
    crb_identity, dirac_residual, localized_field, random_band_limited, rbc_apply, rbc_identity,
    suite_crb, suite_dirac, suite_idempotency, suite_involution, suite_kernels, suite_rbc,
    suite_schwartz, DiracReport, NumericReport, OrthoProjector, SuiteConfig, MIN_DIRAC_ORDER,
    TOL_MULTIPLIER, TOL_OFF_AXIS, TOL_PERIODIZATION, TOL_PIPELINE, TOL_QUADRATURE,
};

//! The type-refined Catalan system: coefficients, Jacobian, spectral data,
//! analytic hypotheses and asymptotic estimators.

mod plan;
mod modular;
pub mod coeffs;
pub mod dlw;
pub mod estimate;
pub mod jacobian;
pub mod scaled;
pub mod spectral;

pub use coeffs::{compute_coefficients, CoeffTable};
pub use dlw::{check_dlw_conditions, support_period, DlwCheck, DlwOptions, DlwReport};
pub use estimate::{
    estimate_A, estimate_amplitude, estimate_kappa, estimate_lambda, AmplitudeEstimate, LambdaEstimate,
};
pub use jacobian::{
    eval_jacobian_at, jacobian, jacobian_from_values, partial_sums, tail_corrected_values, ColumnSumReport,
    JacobianMatrix, JacobianSeries,
};
pub use scaled::{compute_scaled, ScaledTable};
pub use spectral::{max_column_sum, spectral_radius, spectral_radius_with, SpectralEstimate, SpectralOptions};

use crate::types::TypeId;

/// Read access to `c_t(n)` in the forms the estimators need.
pub trait CoeffSource {
    fn order(&self) -> usize;

    fn num_types(&self) -> usize;

    /// `c_t(n) / Cat_n`.
    fn ratio(&self, t: TypeId, n: usize) -> f64;

    /// `c_t(n) / 4^n`.
    fn scaled(&self, t: TypeId, n: usize) -> f64;

    /// `ln c_t(n)`, or `None` when the coefficient is zero or not resolved.
    fn ln_coeff(&self, t: TypeId, n: usize) -> Option<f64>;

    /// Whether zero coefficients are known to be exactly zero.
    fn is_exact(&self) -> bool;
}

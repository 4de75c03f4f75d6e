//! Circulant approximations of real symmetric Toeplitz matrices.
//!
//! The crate builds the Frobenius-nearest circulant `C_Σ` of a symmetric
//! Toeplitz matrix `Σ`, the classical spectral-symbol circulant `C_GS` for the
//! exponential-decay case `ρ_m = ρ^m`, closed-form eigensystems of circulants,
//! and direct and closed-form residual norms `(1/M)‖Σ − C‖²_F`.
//!
//! ```
//! use circulant_core::{nearest_circulant, SymmetricToeplitz};
//!
//! let sigma = SymmetricToeplitz::exponential(0.5, 4).unwrap();
//! let c = nearest_circulant(&sigma);
//! assert_eq!(c.row(), &[1.0, 0.40625, 0.25, 0.40625]);
//! assert!(c.is_symmetric());
//! ```

pub mod approximation;
pub mod eigen;
mod error;
pub mod geom_series;
pub mod io;
pub mod num;
pub mod oracle;
pub mod toeplitz;
pub mod verify;

pub use approximation::{
    gs_circulant, leading_term_gs, leading_term_nearest, nearest_circulant, nearest_eigenvalues,
    residual_offdiagonals, scaled_residual_norm_sq_closed_gs,
    scaled_residual_norm_sq_closed_nearest, scaled_residual_norm_sq_direct,
    scaled_residual_norm_sq_general, ApproximationMethod, ResidualReport,
};
pub use eigen::{
    circulant_eigenvalues, circulant_eigenvector, symmetric_circulant_eigenvalues, unit_root,
    ComplexScalar, EigenSystem,
};
pub use error::{Error, Result};
pub use toeplitz::{
    common_correlation, cyclic_shift_power, frobenius_norm, is_symmetric_circulant,
    toeplitz_offdiag_norm, Circulant, CommonCorrelation, DenseMatrix, ExponentialToeplitz,
    SymmetricToeplitz,
};

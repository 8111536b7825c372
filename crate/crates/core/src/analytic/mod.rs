//! Gamma-function numerics and Mellin-transform smooth sums.

mod gamma;
mod mellin;

pub use gamma::{
    gamma, gamma_quotient, gamma_quotient_ratio, gamma_r, log_gamma, log_gamma_r, stirling_ratio,
    GammaQuotient, POLE_DISTANCE,
};
pub use mellin::{
    mellin_kernel, smooth_sum_contour, smooth_sum_direct, Coefficients, ContourResult,
    ContourSpec, SmoothKernel, CONTOUR_TOL,
};

//! Quadratic-phase wave-packet dynamics and interference-based integer
//! factorization.
//!
//! The library connects three faces of the same quadratic phase factor
//! `exp(-2*pi*i*n^2*t/T)`:
//!
//! * [`propagator`] — Talbot (grating) and particle-in-a-box Green's
//!   functions, revivals, and quantum-carpet density grids;
//! * [`revival`] — the autocorrelation of a Gaussian-weighted quadratic
//!   spectrum and its exact decomposition into Gauss-sum-weighted complex
//!   Gaussians near fractional revivals;
//! * [`factor`] — detectors that read the factors of `N` off revival
//!   scores `N*|S_N(ell)|^2 ~ gcd(ell, N)` or curlicue magnitudes
//!   `|s_N(n)|^2 = N*gcd(n, N)`, with arithmetic confirmation.
//!
//! [`phase`], [`fraction`] and [`gauss`] hold the exact-reduction
//! machinery all of that rests on.

pub mod error;
pub mod factor;
pub mod fraction;
pub mod gauss;
pub mod phase;
pub mod propagator;
mod quadrature;
pub mod revival;

pub use error::{Error, Result};
pub use factor::{
    confirm_and_recurse, curlicue_factor, detect_candidates, factor, scan_revival,
    trial_division, FactorMethod, FactorOptions, FactorReport, ScanRecord,
};
pub use fraction::{decompose_real_time, reduce_time, ReducedFraction};
pub use gauss::{
    curlicue_series, curlicue_series_with_budget, gauss_sum_table, CurlicueSeries,
    GaussSumTable,
};
pub use phase::{cis_turns, frac_turns, frac_turns_int_times, phase_sum};
pub use propagator::{
    box_expand, box_via_talbot, carpet_grid, periodic_grid, propagate_box, propagate_talbot,
    uniform_grid, BoxCoefficients, Geometry, PropagatorConfig, TalbotForm, WavePacket,
    WavePacketGrid,
};
pub use revival::{
    autocorrelation, auto_delta_n, decomposition_sum, default_m_range, shape_function_closed,
    shape_function_quadrature, RevivalParams, ShapeEval, WeightTable,
};

/// `Complex64` is the amplitude type used throughout.
pub use num_complex::Complex64;

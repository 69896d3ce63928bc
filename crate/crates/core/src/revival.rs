//! Autocorrelation of a Gaussian-weighted quadratic spectrum and its exact
//! rewriting as a sum of Gauss-sum-weighted shape functions.
//!
//! The autocorrelation of a superposition with occupation weights `W(m)`
//! and phases quadratic in `m` is
//!
//! ```text
//! S_N(tau) = sum_m W(m) exp[-2*pi*i*(m + m^2/N)*tau]
//! ```
//!
//! with `tau` in units of the classical period (`T_cl = 1`) and
//! `N = T/T_cl`. Near `tau = ell + delta_t` this splits exactly into
//! `sum_m W_m^(r) * I_m^(r)(delta_t)` where `q/r` approximates `ell/N`,
//! the `W_m^(r)` are Gauss sums, and the shape functions `I_m^(r)` are
//! complex Gaussians centered at `delta_t = m/r`.

use crate::error::{domain, Result};
use crate::fraction::ReducedFraction;
use crate::gauss::gauss_sum_table;
use crate::phase::phase_sum;
use crate::quadrature::adaptive_simpson;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::ops::RangeInclusive;

/// Discretized Gaussian occupation weights
/// `W(m) = (2*pi*dn^2)^(-1/2) * exp[-(m/dn)^2/2]` for `|m| <= cutoff`,
/// re-indexed so the central quantum number sits at `m = 0`.
#[derive(Debug, Clone)]
pub struct WeightTable {
    delta_n: f64,
    center: i64,
    cutoff: i64,
    weights: Vec<(i64, f64)>,
}

impl WeightTable {
    /// Gaussian weights with the default cutoff `ceil(8*delta_n)`, beyond
    /// which the discarded mass is below `e^-32`.
    pub fn gaussian(delta_n: f64) -> Result<Self> {
        if !(delta_n.is_finite() && delta_n > 0.0) {
            return Err(domain("WeightTable: delta_n must be positive"));
        }
        Self::gaussian_with_cutoff(delta_n, (8.0 * delta_n).ceil() as i64)
    }

    pub fn gaussian_with_cutoff(delta_n: f64, cutoff: i64) -> Result<Self> {
        if !(delta_n.is_finite() && delta_n > 0.0) {
            return Err(domain("WeightTable: delta_n must be positive"));
        }
        if cutoff < 0 {
            return Err(domain("WeightTable: cutoff must be non-negative"));
        }
        let norm = 1.0 / (2.0 * PI * delta_n * delta_n).sqrt();
        let weights = (-cutoff..=cutoff)
            .map(|m| {
                let x = m as f64 / delta_n;
                (m, norm * (-0.5 * x * x).exp())
            })
            .collect();
        Ok(WeightTable {
            delta_n,
            center: 0,
            cutoff,
            weights,
        })
    }

    pub fn delta_n(&self) -> f64 {
        self.delta_n
    }

    /// Central quantum number after re-indexing (0 by construction).
    pub fn center(&self) -> i64 {
        self.center
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    /// `(m, W(m))` pairs for `|m| <= cutoff`.
    pub fn entries(&self) -> &[(i64, f64)] {
        &self.weights
    }

    pub fn weight(&self, m: i64) -> f64 {
        if m.abs() > self.cutoff {
            0.0
        } else {
            self.weights[(m + self.cutoff) as usize].1
        }
    }

    /// Continuous extension `W~(mu)` of the discrete weights.
    pub fn continuous(&self, mu: f64) -> f64 {
        let norm = 1.0 / (2.0 * PI * self.delta_n * self.delta_n).sqrt();
        let x = mu / self.delta_n;
        norm * (-0.5 * x * x).exp()
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().map(|&(_, w)| w).sum()
    }
}

/// Parameters of a revival system: the integer ratio `N = T/T_cl` and the
/// occupation weights. Times are dimensionless (`T_cl = 1`).
#[derive(Debug, Clone)]
pub struct RevivalParams {
    n: u64,
    weight: WeightTable,
}

impl RevivalParams {
    pub fn new(n: u64, weight: WeightTable) -> Result<Self> {
        if n < 2 {
            return Err(domain("RevivalParams: N must be >= 2"));
        }
        Ok(RevivalParams { n, weight })
    }

    /// `N` with the Gaussian width set by the auto rule
    /// `delta_n = 1.2*N/(2*pi)`, just above the worst-case non-overlap
    /// bound `delta_n > r/(2*pi)` at `r = N`.
    pub fn with_auto_width(n: u64) -> Result<Self> {
        Self::new(n, WeightTable::gaussian(auto_delta_n(n))?)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn weight(&self) -> &WeightTable {
        &self.weight
    }
}

/// The auto width rule `1.2*N/(2*pi)`.
pub fn auto_delta_n(n: u64) -> f64 {
    1.2 * n as f64 / (2.0 * PI)
}

/// The autocorrelation `S_N(tau) = sum_m W(m) exp[-2*pi*i*(m + m^2/N)*tau]`.
pub fn autocorrelation(params: &RevivalParams, tau: f64) -> Complex64 {
    phase_sum(params.weight.entries(), 1.0, 1.0 / params.n as f64, tau)
}

/// A shape function evaluated in closed form: the complex Gaussian
/// `amplitude = prefactor * exp[-(dt - m/r)^2 / (2*sigma_r^2)]
///                        * exp[-i*(dt - m/r)^2 / (2*sigma_i^2)]`.
#[derive(Debug, Clone, Copy)]
pub struct ShapeEval {
    pub m: i64,
    pub fraction: ReducedFraction,
    pub delta_t: f64,
    /// Full complex value of the shape function.
    pub amplitude: Complex64,
    /// Width of the real Gaussian; minimal value `1/(2*pi*delta_n)` at
    /// `epsilon + delta_t = 0`.
    pub sigma_r: f64,
    /// Signed width of the imaginary Gaussian: its square carries the sign
    /// of the chirp, and it diverges (returned as infinity) at
    /// `epsilon + delta_t = 0` where the phase factor degenerates to 1.
    pub sigma_i: f64,
    /// Complex amplitude `N~ = [1 + 4*pi*i*dn^2*(eps + dt)/N]^(-1/2)`,
    /// principal branch.
    pub prefactor: Complex64,
}

/// Closed-form shape function for the Gaussian weight, i.e. the analytic
/// integral of [`shape_function_quadrature`]'s integrand.
pub fn shape_function_closed(
    m: i64,
    fraction: &ReducedFraction,
    delta_t: f64,
    params: &RevivalParams,
) -> ShapeEval {
    let dn = params.weight.delta_n();
    let n = params.n as f64;
    let a = delta_t - m as f64 / fraction.r as f64;
    let b = (fraction.epsilon + delta_t) / n;
    let dn2 = dn * dn;
    // prefactor from the complex Gaussian integral: 1/sqrt(1 + 4*pi*i*dn^2*b)
    let prefactor = Complex64::new(1.0, 4.0 * PI * dn2 * b).sqrt().finv();
    let sigma_r_sq = 1.0 / (4.0 * PI * PI * dn2) + 4.0 * dn2 * b * b;
    let sigma_r = sigma_r_sq.sqrt();
    // signed square of the imaginary width; opposite sign to the chirp b
    let (sigma_i, phase_arg) = if b == 0.0 {
        (f64::INFINITY, 0.0)
    } else {
        let sigma_i_sq = -(1.0 / (16.0 * PI * PI * PI * dn2 * dn2 * b) + b / PI);
        (
            sigma_i_sq.signum() * sigma_i_sq.abs().sqrt(),
            a * a / (2.0 * sigma_i_sq),
        )
    };
    let amplitude = prefactor
        * (-a * a / (2.0 * sigma_r_sq)).exp()
        * Complex64::new(0.0, -phase_arg).exp();
    ShapeEval {
        m,
        fraction: *fraction,
        delta_t,
        amplitude,
        sigma_r,
        sigma_i,
        prefactor,
    }
}

/// Shape function by adaptive quadrature of
/// `I_m^(r)(dt) = integral dmu W~(mu) exp{-2*pi*i*[(dt - m/r)*mu
///                + (eps + dt)*mu^2/N]}` over `|mu| <= 8*delta_n`.
pub fn shape_function_quadrature(
    m: i64,
    fraction: &ReducedFraction,
    delta_t: f64,
    params: &RevivalParams,
) -> Result<Complex64> {
    let dn = params.weight.delta_n();
    let n = params.n as f64;
    let a = delta_t - m as f64 / fraction.r as f64;
    let b = (fraction.epsilon + delta_t) / n;
    let lim = 8.0 * dn;
    let weight = params.weight.clone();
    let integrand = move |mu: f64| {
        let turns = a * mu + b * mu * mu;
        weight.continuous(mu) * crate::phase::cis_turns(-turns)
    };
    // start with enough panels to resolve the fastest oscillation
    let cycles = (a.abs() * lim + b.abs() * lim * lim).max(1.0);
    let panels = (4.0 * cycles).min(2e5) as usize + 16;
    adaptive_simpson(integrand, -lim, lim, 1e-9, panels, 50_000_000)
}

/// The decomposition `sum_m W_m^(r) * I_m^(r)(delta_t)` over `m_range`,
/// using the Gauss-sum table and the closed-form shape functions.
///
/// With `fraction` produced by `decompose_real_time` this equals
/// `autocorrelation(params, (q/r)*N + eps + delta_t)` exactly; callers
/// must make `m_range` wide enough that discarded Gaussians are below
/// their tolerance (see [`default_m_range`]).
pub fn decomposition_sum(
    params: &RevivalParams,
    fraction: &ReducedFraction,
    delta_t: f64,
    m_range: RangeInclusive<i64>,
) -> Complex64 {
    let table = gauss_sum_table(fraction.r, fraction.q)
        .expect("ReducedFraction guarantees r >= 1");
    let mut acc = Complex64::new(0.0, 0.0);
    for m in m_range {
        let shape = shape_function_closed(m, fraction, delta_t, params);
        acc += table.value(m) * shape.amplitude;
    }
    acc
}

/// Index range covering every shape function whose real Gaussian reaches
/// `exp(-72)` of its peak (|dt - m/r| <= 12*sigma_r), plus one.
pub fn default_m_range(
    params: &RevivalParams,
    fraction: &ReducedFraction,
    delta_t: f64,
) -> RangeInclusive<i64> {
    let dn = params.weight.delta_n();
    let b = (fraction.epsilon + delta_t) / params.n as f64;
    let sigma_r =
        (1.0 / (4.0 * PI * PI * dn * dn) + 4.0 * dn * dn * b * b).sqrt();
    let half = 12.0 * sigma_r + 1.0;
    let r = fraction.r as f64;
    let lo = (r * (delta_t - half)).floor() as i64 - 1;
    let hi = (r * (delta_t + half)).ceil() as i64 + 1;
    lo..=hi
}

//! Talbot and particle-in-a-box propagators applied to sampled wave
//! packets, and space-time density grids ("quantum carpets").
//!
//! Units: `hbar = M = 1`. The characteristic time `T` after which a state
//! revives is `d^2/pi` for a grating of period `d` and `4*L^2/pi` for a box
//! of length `L`; all propagation times are passed as the dimensionless
//! ratio `t/T`. Quadratic phases `exp(-2*pi*i*n^2*t/T)` are reduced with
//! exact integer arithmetic on the binary representation of `t/T`, so a
//! revival at `t = T` is exact rather than approximate.

use crate::error::{domain, resource, Result};
use crate::phase::{cis_turns, frac_turns_int_times};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Maximum number of density samples a carpet may hold.
pub const CARPET_CELL_BUDGET: u64 = 1 << 26;

/// Propagation geometry: an infinite grating of period `d` or a box of
/// length `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    Talbot { period: f64 },
    Box { length: f64 },
}

/// Which form of the Talbot propagator to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TalbotForm {
    /// Fresnel kernel summed over grating images, integrated against the
    /// partial wave.
    Direct,
    /// Fourier series with quadratic phases (the Poisson-summation pair of
    /// the direct form).
    Spectral,
}

/// Geometry plus the truncation order of mode/image sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorConfig {
    pub geometry: Geometry,
    pub mode_cutoff: usize,
}

impl PropagatorConfig {
    pub fn talbot(period: f64, mode_cutoff: usize) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(domain("PropagatorConfig: period must be positive"));
        }
        Ok(PropagatorConfig {
            geometry: Geometry::Talbot { period },
            mode_cutoff,
        })
    }

    pub fn particle_box(length: f64, mode_cutoff: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(domain("PropagatorConfig: length must be positive"));
        }
        Ok(PropagatorConfig {
            geometry: Geometry::Box { length },
            mode_cutoff,
        })
    }

    /// The revival/Talbot time under `hbar = M = 1`.
    pub fn talbot_time(&self) -> f64 {
        match self.geometry {
            Geometry::Talbot { period } => period * period / PI,
            Geometry::Box { length } => 4.0 * length * length / PI,
        }
    }

    /// Spatial extent of one period or of the box.
    pub fn extent(&self) -> f64 {
        match self.geometry {
            Geometry::Talbot { period } => period,
            Geometry::Box { length } => length,
        }
    }
}

/// A wave packet sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct WavePacket {
    positions: Vec<f64>,
    amplitudes: Vec<Complex64>,
    grid_step: f64,
}

impl WavePacket {
    /// Build from samples, checking the grid is uniform.
    pub fn from_samples(positions: Vec<f64>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if positions.len() != amplitudes.len() {
            return Err(domain("WavePacket: positions/amplitudes length mismatch"));
        }
        if positions.len() < 2 {
            return Err(domain("WavePacket: need at least two samples"));
        }
        let step = positions[1] - positions[0];
        if !(step.is_finite() && step > 0.0) {
            return Err(domain("WavePacket: grid must be increasing"));
        }
        let span = positions[positions.len() - 1] - positions[0];
        for (i, w) in positions.windows(2).enumerate() {
            if ((w[1] - w[0]) - step).abs() > 1e-9 * span.max(1.0) {
                return Err(domain(format!(
                    "WavePacket: grid is not uniform at index {i}"
                )));
            }
        }
        Ok(WavePacket {
            positions,
            amplitudes,
            grid_step: step,
        })
    }

    /// A normalized Gaussian `(2*pi*sigma^2)^(-1/4) exp[-(x-c)^2/(4*sigma^2)]`
    /// sampled on `grid`, then renormalized so `sum |amp|^2 * dx = 1`.
    pub fn gaussian(grid: &[f64], center: f64, sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(domain("WavePacket: sigma must be positive"));
        }
        let amps: Vec<Complex64> = grid
            .iter()
            .map(|&x| {
                let u = (x - center) / sigma;
                Complex64::new((-u * u / 4.0).exp(), 0.0)
            })
            .collect();
        let mut packet = WavePacket::from_samples(grid.to_vec(), amps)?;
        let norm = packet.norm_sq().sqrt();
        if norm == 0.0 {
            return Err(domain("WavePacket: packet vanishes on the grid"));
        }
        for a in &mut packet.amplitudes {
            *a /= norm;
        }
        Ok(packet)
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// `sum |amp|^2 * dx`.
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid_step
    }

    /// `|amp|^2` per sample.
    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Box eigenmode expansion coefficients `psi_n`, `n = 1..=cutoff`.
#[derive(Debug, Clone)]
pub struct BoxCoefficients {
    coeffs: Vec<Complex64>,
}

impl BoxCoefficients {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        BoxCoefficients { coeffs }
    }

    /// Coefficient of mode `n` (1-based).
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `sum |psi_n|^2`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// A space-time density grid; rows are time slices.
#[derive(Debug, Clone)]
pub struct WavePacketGrid {
    pub x_grid: Vec<f64>,
    /// Times in units of `T`.
    pub t_grid: Vec<f64>,
    pub density: Vec<Vec<f64>>,
}

/// Inclusive uniform grid of `n` points on `[a, b]`.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(|i| a + i as f64 * step).collect()
}

/// Half-open uniform grid of `n` points on `[a, b)` for periodic domains.
pub fn periodic_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1);
    let step = (b - a) / n as f64;
    (0..n).map(|i| a + i as f64 * step).collect()
}

fn box_length(config: &PropagatorConfig) -> Result<f64> {
    match config.geometry {
        Geometry::Box { length } => Ok(length),
        Geometry::Talbot { .. } => Err(domain("operation requires the box geometry")),
    }
}

/// Expand a packet supported on `[0, L]` in box eigenfunctions by trapezoid
/// quadrature on the packet's own grid:
/// `psi_n = integral dy phi(y) * sqrt(2/L) * sin(n*pi*y/L)`.
pub fn box_expand(packet: &WavePacket, config: &PropagatorConfig) -> Result<BoxCoefficients> {
    let length = box_length(config)?;
    let slack = 1e-9 * length;
    for (&x, a) in packet.positions().iter().zip(packet.amplitudes()) {
        if (x < -slack || x > length + slack) && a.norm() > 1e-12 {
            return Err(domain(format!(
                "box_expand: packet has amplitude {} outside [0, L] at x={x}",
                a.norm()
            )));
        }
    }
    let dx = packet.grid_step();
    let scale = (2.0 / length).sqrt();
    let last = packet.len() - 1;
    let coeffs: Vec<Complex64> = (1..=config.mode_cutoff)
        .into_par_iter()
        .map(|n| {
            let k = n as f64 * PI / length;
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, (&x, &a)) in packet
                .positions()
                .iter()
                .zip(packet.amplitudes())
                .enumerate()
            {
                let w = if j == 0 || j == last { 0.5 } else { 1.0 };
                acc += w * a * (k * x).sin();
            }
            acc * scale * dx
        })
        .collect();
    Ok(BoxCoefficients::new(coeffs))
}

/// Evolve box coefficients to time `t_frac = t/T` and sample on `x_grid`:
/// `psi(x,t) = sum_n psi_n * sqrt(2/L) sin(n*pi*x/L) * exp(-2*pi*i*n^2*t/T)`.
pub fn propagate_box(
    coeffs: &BoxCoefficients,
    t_frac: f64,
    config: &PropagatorConfig,
    x_grid: &[f64],
) -> Result<WavePacket> {
    let length = box_length(config)?;
    if !t_frac.is_finite() {
        return Err(domain("propagate_box: t/T must be finite"));
    }
    let scale = (2.0 / length).sqrt();
    let phased: Vec<Complex64> = coeffs
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let n = (i + 1) as u64;
            c * cis_turns(-frac_turns_int_times(n * n, t_frac))
        })
        .collect();
    let amps: Vec<Complex64> = x_grid
        .par_iter()
        .map(|&x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, c) in phased.iter().enumerate() {
                let k = (i + 1) as f64 * PI / length;
                acc += c * (k * x).sin();
            }
            acc * scale
        })
        .collect();
    WavePacket::from_samples(x_grid.to_vec(), amps)
}

/// Propagate one period's partial wave under the Talbot propagator.
///
/// The spectral form is
/// `psi(x,t) = sum_m c_m exp(-2*pi*i*m*x/d) exp(-2*pi*i*m^2*t/T)` with
/// `c_m` the Fourier coefficients of the periodized partial wave; the
/// direct form integrates the Fresnel kernel over the image sum
/// `|n| <= mode_cutoff`. Both return one period of the evolved wave.
pub fn propagate_talbot(
    partial_wave: &WavePacket,
    t_frac: f64,
    config: &PropagatorConfig,
    form: TalbotForm,
    x_grid: &[f64],
) -> Result<WavePacket> {
    let period = match config.geometry {
        Geometry::Talbot { period } => period,
        Geometry::Box { .. } => {
            return Err(domain("propagate_talbot requires the Talbot geometry"))
        }
    };
    if !t_frac.is_finite() {
        return Err(domain("propagate_talbot: t/T must be finite"));
    }
    match form {
        TalbotForm::Spectral => {
            let cutoff = config.mode_cutoff as i64;
            let dx = partial_wave.grid_step();
            // Fourier coefficients of the periodized partial wave
            let modes: Vec<(i64, Complex64)> = (-cutoff..=cutoff)
                .into_par_iter()
                .map(|m| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (&y, &a) in partial_wave
                        .positions()
                        .iter()
                        .zip(partial_wave.amplitudes())
                    {
                        acc += a * cis_turns(m as f64 * y / period);
                    }
                    let c = acc * dx / period;
                    let phase = cis_turns(-frac_turns_int_times((m * m) as u64, t_frac));
                    (m, c * phase)
                })
                .collect();
            let amps: Vec<Complex64> = x_grid
                .par_iter()
                .map(|&x| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for &(m, cm) in &modes {
                        acc += cm * cis_turns(-(m as f64) * x / period);
                    }
                    acc
                })
                .collect();
            WavePacket::from_samples(x_grid.to_vec(), amps)
        }
        TalbotForm::Direct => {
            if t_frac == 0.0 {
                return Err(domain(
                    "propagate_talbot: the Fresnel kernel is singular at t = 0; use the identity",
                ));
            }
            let t = t_frac * config.talbot_time();
            let alpha = 0.5 / t;
            // N(t) = sqrt(alpha/(i*pi)), principal branch
            let norm = (Complex64::new(0.0, PI / alpha)).sqrt().finv();
            let dx = partial_wave.grid_step();
            let images = config.mode_cutoff as i64;
            let amps: Vec<Complex64> = x_grid
                .par_iter()
                .map(|&x| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for n in -images..=images {
                        let shift = x - n as f64 * period;
                        for (&y, &a) in partial_wave
                            .positions()
                            .iter()
                            .zip(partial_wave.amplitudes())
                        {
                            let u = shift - y;
                            let (s, c) = (alpha * u * u).sin_cos();
                            acc += a * Complex64::new(c, s);
                        }
                    }
                    acc * norm * dx
                })
                .collect();
            WavePacket::from_samples(x_grid.to_vec(), amps)
        }
    }
}

/// One term of the free-space Green's function pair
/// `G_T(x,t|y,0) = (1/2L) sum_n exp[-i*n*pi*(x-y)/L] exp(-2*pi*i*n^2*t/T)`,
/// truncated at `|n| <= mode_cutoff`.
fn g_t(x: f64, y: f64, t_frac: f64, length: f64, cutoff: i64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -cutoff..=cutoff {
        let spatial = cis_turns(-(n as f64) * (x - y) / (2.0 * length));
        let temporal = cis_turns(-frac_turns_int_times((n * n) as u64, t_frac));
        acc += spatial * temporal;
    }
    acc / (2.0 * length)
}

/// The box Green's function as a difference of two free Green's functions,
/// `G_box(x,t|y,0) = G_T(x,t|y,0) - G_T(x,t|-y,0)`, which enforces the
/// vanishing boundary at the walls.
pub fn box_via_talbot(y: f64, x: f64, t_frac: f64, config: &PropagatorConfig) -> Complex64 {
    let length = config.extent();
    let cutoff = config.mode_cutoff as i64;
    g_t(x, y, t_frac, length, cutoff) - g_t(x, -y, t_frac, length, cutoff)
}

/// Compute a space-time density grid by repeated propagation.
///
/// `t_fracs` are times in units of `T`; the spatial grid has `nx` points
/// (inclusive of the walls for the box, one half-open period for the
/// grating). For the Talbot geometry the spectral form is used.
pub fn carpet_grid(
    packet: &WavePacket,
    config: &PropagatorConfig,
    t_fracs: &[f64],
    nx: usize,
) -> Result<WavePacketGrid> {
    if nx < 16 {
        return Err(domain("carpet_grid: need at least 16 spatial points"));
    }
    if t_fracs.is_empty() {
        return Err(domain("carpet_grid: need at least one time"));
    }
    let cells = nx as u64 * t_fracs.len() as u64;
    if cells > CARPET_CELL_BUDGET {
        return Err(resource(format!(
            "carpet_grid: {cells} cells exceed the budget of {CARPET_CELL_BUDGET}"
        )));
    }
    match config.geometry {
        Geometry::Box { length } => {
            let x_grid = uniform_grid(0.0, length, nx);
            let coeffs = box_expand(packet, config)?;
            let density: Result<Vec<Vec<f64>>> = t_fracs
                .iter()
                .map(|&tf| Ok(propagate_box(&coeffs, tf, config, &x_grid)?.density()))
                .collect();
            Ok(WavePacketGrid {
                x_grid,
                t_grid: t_fracs.to_vec(),
                density: density?,
            })
        }
        Geometry::Talbot { period } => {
            let x_grid = periodic_grid(-period / 2.0, period / 2.0, nx);
            let density: Result<Vec<Vec<f64>>> = t_fracs
                .iter()
                .map(|&tf| {
                    Ok(
                        propagate_talbot(packet, tf, config, TalbotForm::Spectral, &x_grid)?
                            .density(),
                    )
                })
                .collect();
            Ok(WavePacketGrid {
                x_grid,
                t_grid: t_fracs.to_vec(),
                density: density?,
            })
        }
    }
}

//! Quadratic Gauss sums and curlicue series.
//!
//! Both sums have unit-modulus terms whose phases are rationals with a
//! fixed denominator, so the phase argument is reduced modulo the
//! denominator in exact integer arithmetic and the complex exponentials
//! come from a precomputed table of roots of unity. Precision is then
//! independent of the modulus.

use crate::error::{domain, resource, Result};
use crate::phase::cis_turns;
use num_complex::Complex64;
use rayon::prelude::*;

/// Default term budget for [`curlicue_series`].
pub const CURLICUE_TERM_BUDGET: u64 = 10_000_000;

/// Table of the `r` Gauss sums
/// `W_m = (1/r) * sum_p exp[-2*pi*i*(p^2*q + p*m)/r]`, `m = 0..r-1`.
///
/// The table is `r`-periodic; [`GaussSumTable::value`] reduces its index
/// modulo `r`.
#[derive(Debug, Clone)]
pub struct GaussSumTable {
    r: u64,
    q: u64,
    values: Vec<Complex64>,
}

impl GaussSumTable {
    pub fn r(&self) -> u64 {
        self.r
    }

    /// The quadratic coefficient, reduced mod `r`.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Entry at any integer index, reduced mod `r`.
    pub fn value(&self, m: i64) -> Complex64 {
        self.values[m.rem_euclid(self.r as i64) as usize]
    }
}

/// `exp(-2*pi*i*j/r)` for `j = 0..r-1`.
fn neg_roots_of_unity(r: u64) -> Vec<Complex64> {
    (0..r).map(|j| cis_turns(-(j as f64) / r as f64)).collect()
}

/// Compute the full Gauss-sum table for a fraction `q/r` by direct
/// summation, with phases reduced mod `r` in integer arithmetic.
pub fn gauss_sum_table(r: u64, q: u64) -> Result<GaussSumTable> {
    if r == 0 {
        return Err(domain("gauss_sum_table: r must be >= 1"));
    }
    let q = q % r;
    let roots = neg_roots_of_unity(r);
    let inv_r = 1.0 / r as f64;
    // p^2*q mod r, reused across m
    let sq_q: Vec<u64> = (0..r)
        .map(|p| ((p as u128 * p as u128 % r as u128) * q as u128 % r as u128) as u64)
        .collect();
    let values: Vec<Complex64> = (0..r)
        .into_par_iter()
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            // p*m mod r by incremental addition, no division in the loop
            let mut pm = 0u64;
            for &s in &sq_q {
                let mut idx = s + pm;
                if idx >= r {
                    idx -= r;
                }
                acc += roots[idx as usize];
                pm += m;
                if pm >= r {
                    pm -= r;
                }
            }
            acc * inv_r
        })
        .collect();
    Ok(GaussSumTable { r, q, values })
}

/// The curlicue series `s_N(n) = sum_{m=0}^{N-1} exp(-2*pi*i*m^2*n/N)`
/// for `n = 0..N-1`.
#[derive(Debug, Clone)]
pub struct CurlicueSeries {
    n: u64,
    values: Vec<Complex64>,
}

impl CurlicueSeries {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, n: i64) -> Complex64 {
        self.values[n.rem_euclid(self.n as i64) as usize]
    }
}

/// Curlicue series with the default `10^7`-term budget.
pub fn curlicue_series(n: u64) -> Result<CurlicueSeries> {
    curlicue_series_with_budget(n, CURLICUE_TERM_BUDGET)
}

/// Curlicue series with an explicit budget on the total number of terms
/// (`N^2` for the full table).
pub fn curlicue_series_with_budget(n: u64, max_terms: u64) -> Result<CurlicueSeries> {
    if n < 1 {
        return Err(domain("curlicue_series: N must be >= 1"));
    }
    let terms = (n as u128) * (n as u128);
    if terms > max_terms as u128 {
        return Err(resource(format!(
            "curlicue_series: N={n} needs {terms} terms, budget is {max_terms}"
        )));
    }
    let roots = neg_roots_of_unity(n);
    let values: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| {
            // phase index (m^2*k) mod n via second differences:
            // (m+1)^2*k - m^2*k = (2m+1)*k, which itself steps by 2k
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0u64; // m^2*k mod n at current m
            let mut step = k % n; // (2m+1)*k mod n at current m
            let two_k = (2 * (k % n)) % n;
            for _ in 0..n {
                acc += roots[idx as usize];
                idx += step;
                if idx >= n {
                    idx -= n;
                }
                step += two_k;
                if step >= n {
                    step -= n;
                }
            }
            acc
        })
        .collect();
    Ok(CurlicueSeries { n, values })
}

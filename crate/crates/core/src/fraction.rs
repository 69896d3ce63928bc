//! Rational decomposition of revival times.
//!
//! A time `t` (in units of the classical period) close to an integer `ell`
//! is written as `t = (q/r)*N + epsilon + delta_t` with `q/r` a reduced
//! fraction approximating `ell/N`, `epsilon = ell - (q/r)*N` the rational
//! correction, and `delta_t = t - ell` the sub-period offset. The
//! correction vanishes exactly when `ell * r == q * N`, i.e. when `ell`
//! shares the factor `N/r` with `N`.

use crate::error::{domain, Result};
use num_integer::Integer;

/// A reduced fraction `q/r` together with the correction
/// `epsilon = ell - (q/r)*N` in units of the classical period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedFraction {
    /// Numerator, non-negative, coprime to `r`.
    pub q: u64,
    /// Denominator, positive.
    pub r: u64,
    /// Rational correction, exact up to one final rounding.
    pub epsilon: f64,
}

/// Reduce an integer time `ell` against `n`: returns `q/r = ell/n` in
/// lowest terms with `epsilon = 0` exactly.
pub fn reduce_time(ell: u64, n: u64) -> Result<ReducedFraction> {
    if ell < 1 {
        return Err(domain("reduce_time: ell must be >= 1"));
    }
    if n < 2 {
        return Err(domain("reduce_time: N must be >= 2"));
    }
    let g = ell.gcd(&n);
    Ok(ReducedFraction {
        q: ell / g,
        r: n / g,
        epsilon: 0.0,
    })
}

/// Decompose a real time `t` into `(q/r)*N + epsilon + delta_t`.
///
/// `ell = round(t)` and `delta_t = t - ell`; `q/r` is the best rational
/// approximation to `ell/N` with `r <= r_max` (continued-fraction
/// convergents and semiconvergents, ties broken toward smaller `r`), and
/// `epsilon = ell - (q/r)*N` evaluated in exact integer arithmetic before
/// a single rounding. The reconstruction `t = (q/r)*N + epsilon + delta_t`
/// holds to machine precision.
pub fn decompose_real_time(t: f64, n: u64, r_max: u64) -> Result<(ReducedFraction, f64)> {
    if r_max < 1 {
        return Err(domain("decompose_real_time: r_max must be >= 1"));
    }
    if n < 2 {
        return Err(domain("decompose_real_time: N must be >= 2"));
    }
    if !t.is_finite() || t.abs() >= 9.0e18 {
        return Err(domain("decompose_real_time: t must be finite"));
    }
    let ell = t.round();
    let delta_t = t - ell;
    let fraction = if ell >= 1.0 {
        let ell_int = ell as u64;
        let (q, r) = best_rational(ell_int, n, r_max);
        // epsilon = (ell*r - q*N) / r, integer numerator
        let num = ell_int as i128 * r as i128 - q as i128 * n as i128;
        ReducedFraction {
            q,
            r,
            epsilon: num as f64 / r as f64,
        }
    } else {
        // non-positive ell: nearest admissible fraction is 0/1 and the
        // whole integer part is carried by epsilon
        ReducedFraction {
            q: 0,
            r: 1,
            epsilon: ell,
        }
    };
    Ok((fraction, delta_t))
}

/// Best rational approximation to `num/den` with denominator at most
/// `r_max`, by walking continued-fraction convergents and checking the
/// final semiconvergent. Ties go to the smaller denominator.
fn best_rational(num: u64, den: u64, r_max: u64) -> (u64, u64) {
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    if den <= r_max {
        return (num, den);
    }
    // convergents h/k of num/den; (h0,k0) trails (h1,k1)
    let (mut h0, mut k0, mut h1, mut k1) = (0u64, 1u64, 1u64, 0u64);
    let (mut a, mut b) = (num, den);
    loop {
        let q = a / b;
        let h2 = q.checked_mul(h1).and_then(|v| v.checked_add(h0));
        let k2 = q.checked_mul(k1).and_then(|v| v.checked_add(k0));
        let (h2, k2) = match (h2, k2) {
            (Some(h), Some(k)) => (h, k),
            _ => break,
        };
        if k2 > r_max {
            break;
        }
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        let r = a - q * b;
        if r == 0 {
            return (h1, k1);
        }
        a = b;
        b = r;
    }
    // last in-range convergent is h1/k1; the best semiconvergent toward the
    // next convergent is (j*h1 + h0)/(j*k1 + k0) with the largest j in range
    let j = if k1 > 0 { (r_max - k0) / k1 } else { 0 };
    if j == 0 {
        return (h1, k1);
    }
    let (hs, ks) = (j * h1 + h0, j * k1 + k0);
    // compare |num/den - h1/k1| with |num/den - hs/ks| by cross-multiplication
    let err_conv = (num as i128 * k1 as i128 - h1 as i128 * den as i128).unsigned_abs();
    let err_semi = (num as i128 * ks as i128 - hs as i128 * den as i128).unsigned_abs();
    // err/(den*k): compare err_conv * ks vs err_semi * k1
    if err_semi * (k1 as u128) < err_conv * (ks as u128) {
        (hs, ks)
    } else {
        (h1, k1)
    }
}

//! Phase-accurate evaluation of quadratic-phase exponential sums.
//!
//! Every sum in this crate has terms of the form `exp[-2*pi*i*(...)*tau]`
//! where the bracket grows quadratically in a summation index. Evaluating
//! the argument naively in f64 loses the fractional part of the cycle count
//! once the argument is large, which destroys the interference structure
//! these sums exist to expose. The helpers here keep the *fractional* cycle
//! count accurate:
//!
//! * products are split into high and low parts with `mul_add` two-products,
//!   and only fractional parts of the high words enter the phase;
//! * when the multiplier is an exact integer, the reduction is done in
//!   integer arithmetic on the binary representation of the float, which is
//!   exact for every finite `f64`.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// Exact product splitting: returns `(hi, lo)` with `hi + lo == a * b`
/// and `hi` the rounded product.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let hi = a * b;
    let lo = a.mul_add(b, -hi);
    (hi, lo)
}

/// Fractional part of a cycle count, reduced to `[-0.5, 0.5]`.
///
/// Exact for all finite inputs: `round` is exact and the subtraction of two
/// values within 0.5 of each other does not round.
#[inline]
pub fn frac_turns(x: f64) -> f64 {
    x - x.round()
}

/// `exp(2*pi*i*turns)`. Callers pass negative turns for `e^{-2 pi i ...}`.
#[inline]
pub fn cis_turns(turns: f64) -> Complex64 {
    let (s, c) = (TAU * turns).sin_cos();
    Complex64::new(c, s)
}

/// Decompose a finite float as `mantissa * 2^exponent` exactly.
fn decode_f64(x: f64) -> (i64, i32) {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1i64 } else { -1i64 };
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & 0x000f_ffff_ffff_ffff) as i64;
    let (mant, exp) = if exp_field == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), exp_field - 1075)
    };
    (sign * mant, exp)
}

/// Exact fractional cycle count of `k * x` for a non-negative integer `k`,
/// reduced to `[-0.5, 0.5]`.
///
/// Works on the binary representation: `x = m * 2^e` exactly, so
/// `frac(k * x)` is `(k * m mod 2^-e) * 2^e`, computed in 128-bit integer
/// arithmetic. The only rounding is the final conversion of the remainder
/// to f64, below 2^-53 of a cycle.
pub fn frac_turns_int_times(k: u64, x: f64) -> f64 {
    if k == 0 || x == 0.0 {
        return 0.0;
    }
    debug_assert!(x.is_finite());
    let (mant, exp) = decode_f64(x);
    if exp >= 0 {
        // k * x is an integer
        return 0.0;
    }
    let shift = (-exp) as u32;
    if shift >= 117 {
        // |x| < 2^-64, so |k * x| < 1 and the product is its own fraction
        return frac_turns(k as f64 * x);
    }
    let prod = (k as i128) * (mant as i128); // |prod| < 2^117
    let modulus = 1i128 << shift;
    let rem = prod.rem_euclid(modulus);
    frac_turns(rem as f64 / modulus as f64)
}

/// Fractional cycle count of `(linear*m + quadratic*m^2) * tau`, with the
/// products carried as hi/lo pairs so that arguments up to 2^50 cycles keep
/// the fraction accurate to well under 1e-10 of a cycle.
pub fn quadratic_phase_turns(linear: f64, quadratic: f64, m: i64, tau: f64) -> f64 {
    let mf = m as f64;
    let m2 = mf * mf; // exact for |m| <= 2^26
    let (h1, l1) = two_prod(linear, mf);
    let (p1, e1) = two_prod(h1, tau);
    let (h2, l2) = two_prod(quadratic, m2);
    let (p2, e2) = two_prod(h2, tau);
    let tail = l1.mul_add(tau, e1) + l2.mul_add(tau, e2);
    frac_turns(frac_turns(p1) + frac_turns(p2) + frac_turns(tail))
}

/// Weighted quadratic-phase sum
/// `sum_m w_m * exp[-2*pi*i*(linear*m + quadratic*m^2)*tau]`.
///
/// Pure function; weights are `(index, weight)` pairs.
pub fn phase_sum(weights: &[(i64, f64)], linear: f64, quadratic: f64, tau: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(m, w) in weights {
        let turns = quadratic_phase_turns(linear, quadratic, m, tau);
        acc += w * cis_turns(-turns);
    }
    acc
}

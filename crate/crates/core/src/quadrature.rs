//! Adaptive Simpson quadrature for complex-valued integrands.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` with adaptive
/// Simpson subdivision. The interval is first split into `panels` equal
/// panels so oscillatory integrands start resolved.
pub(crate) fn adaptive_simpson<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    panels: usize,
    max_evals: u64,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut evals = 0u64;
    let panel_tol = tol / panels as f64;
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        let x1 = if i + 1 == panels { b } else { x0 + h };
        let fa = f(x0);
        let fm = f(0.5 * (x0 + x1));
        let fb = f(x1);
        evals += 3;
        let whole = simpson(fa, fm, fb, x1 - x0);
        total += step(
            &f,
            x0,
            x1,
            fa,
            fm,
            fb,
            whole,
            panel_tol,
            40,
            &mut evals,
            max_evals,
        )?;
    }
    Ok(total)
}

fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + 4.0 * fm + fb) * (h / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
    evals: &mut u64,
    max_evals: u64,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if *evals > max_evals {
        return Err(Error::Convergence(format!(
            "quadrature exceeded {max_evals} evaluations before reaching tolerance"
        )));
    }
    let m = 0.5 * (a + b);
    let fl = f(0.5 * (a + m));
    let fr = f(0.5 * (m + b));
    *evals += 2;
    let left = simpson(fa, fl, fm, m - a);
    let right = simpson(fm, fr, fb, b - m);
    let err = (left + right - whole).norm();
    if err < 15.0 * tol || (b - a) < 1e-14 {
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    if depth == 0 {
        return Err(Error::Convergence(
            "quadrature recursion depth exhausted".into(),
        ));
    }
    let lv = step(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1, evals, max_evals)?;
    let rv = step(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1, evals, max_evals)?;
    Ok(lv + rv)
}

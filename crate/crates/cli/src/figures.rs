//! Fixed reference datasets: the revival scan around small integers for
//! N = 1309 and the curlicue components for N = 21.

use crate::output::fmt_f64;
use std::io;
use std::path::Path;
use wavefactor_core::{curlicue_series, scan_revival};

/// Write `fig1_N1309.csv` (`ell,delta_tau,S2` over +-0.4, 801 samples,
/// ell in {2,3,5,7,11,13,14,17,19}) and `fig2_N21.csv` (`n,abs_re,abs_im`)
/// into `outdir`. Deterministic: repeated runs produce identical bytes.
pub fn emit_figure_datasets(outdir: &Path) -> Result<(), String> {
    let ells: Vec<u64> = vec![2, 3, 5, 7, 11, 13, 14, 17, 19];
    let scan = scan_revival(1309, Some(250.0), &ells, 0.4, 801)
        .map_err(|e| e.to_string())?;
    let mut fig1 = String::from("ell,delta_tau,S2\n");
    for rec in &scan {
        for &(dtau, s2) in &rec.window {
            fig1.push_str(&format!(
                "{},{},{}\n",
                rec.ell,
                fmt_f64(dtau),
                fmt_f64(s2)
            ));
        }
    }
    write_file(&outdir.join("fig1_N1309.csv"), fig1.as_bytes())?;

    let series = curlicue_series(21).map_err(|e| e.to_string())?;
    let mut fig2 = String::from("n,abs_re,abs_im\n");
    for (n, v) in series.values().iter().enumerate() {
        fig2.push_str(&format!(
            "{n},{},{}\n",
            fmt_f64(v.re.abs()),
            fmt_f64(v.im.abs())
        ));
    }
    write_file(&outdir.join("fig2_N21.csv"), fig2.as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), String> {
    io::Write::write_all(
        &mut std::fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?,
        bytes,
    )
    .map_err(|e| format!("{}: {e}", path.display()))
}

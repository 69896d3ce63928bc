//! Output sinks and formatting for CSV, JSON and PGM emission.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

/// Floating-point fields are printed with 17 significant digits so the
/// decimal text round-trips to the exact f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Where a command writes: a file when `--output` is given, stdout
/// otherwise.
pub enum Sink {
    Stdout(io::Stdout),
    File(BufWriter<File>),
}

impl Sink {
    pub fn open(output: Option<&PathBuf>) -> io::Result<Sink> {
        match output {
            Some(path) => Ok(Sink::File(BufWriter::new(File::create(path)?))),
            None => Ok(Sink::Stdout(io::stdout())),
        }
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Sink::Stdout(s) => s.write(buf),
            Sink::File(f) => f.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Sink::Stdout(s) => s.flush(),
            Sink::File(f) => f.flush(),
        }
    }
}

/// Write a CSV table: a header row, then rows of preformatted fields.
pub fn write_csv<W: Write>(
    out: &mut W,
    header: &[&str],
    rows: impl Iterator<Item = Vec<String>>,
) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Write an 8-bit binary PGM (P5) with the density normalized to its
/// maximum; rows are time slices.
pub fn write_pgm<W: Write>(out: &mut W, density: &[Vec<f64>]) -> io::Result<()> {
    let height = density.len();
    let width = density.first().map_or(0, |r| r.len());
    let max = density
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, &b| a.max(b));
    writeln!(out, "P5")?;
    writeln!(out, "{width} {height}")?;
    writeln!(out, "255")?;
    let scale = if max > 0.0 { 255.0 / max } else { 0.0 };
    let mut bytes = Vec::with_capacity(width * height);
    for row in density {
        for &v in row {
            bytes.push((v * scale).round().clamp(0.0, 255.0) as u8);
        }
    }
    out.write_all(&bytes)
}

/// Write CSV emitted carpet rows in `x,t,density` long format.
pub fn write_carpet_csv<W: Write>(
    out: &mut W,
    x_grid: &[f64],
    t_grid: &[f64],
    density: &[Vec<f64>],
) -> io::Result<()> {
    writeln!(out, "x,t,density")?;
    for (ti, row) in t_grid.iter().zip(density) {
        for (x, v) in x_grid.iter().zip(row) {
            writeln!(out, "{},{},{}", fmt_f64(*x), fmt_f64(*ti), fmt_f64(*v))?;
        }
    }
    Ok(())
}

/// Flat `key=value` configuration file; `#` starts a comment.
pub fn read_config(path: &Path) -> io::Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)?;
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => entries.push((k.trim().to_string(), v.trim().to_string())),
            None => {
                return Err(io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("config line {} is not key=value: {line:?}", lineno + 1),
                ))
            }
        }
    }
    Ok(entries)
}

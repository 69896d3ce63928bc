//! Command-line surface for the wavefactor library: factorization runs,
//! autocorrelation windows, curlicue and Gauss-sum tables, quantum-carpet
//! grids, and the fixed reference datasets.
//!
//! Exit codes: 0 on success, 1 on computation/resource/I-O errors, 2 on
//! usage errors. Runs are deterministic: identical invocations produce
//! byte-identical output files for any `--threads` value.

mod figures;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use output::{fmt_f64, read_config, write_carpet_csv, write_csv, write_pgm, Sink};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use wavefactor_core::{
    auto_delta_n, autocorrelation, carpet_grid, curlicue_series, decompose_real_time, factor,
    gauss_sum_table, periodic_grid, uniform_grid, Error as CoreError, FactorMethod,
    FactorOptions, PropagatorConfig, RevivalParams, WavePacket, WeightTable,
};

#[derive(Parser)]
#[command(
    name = "wavefactor",
    version,
    about = "Quadratic-phase wave-packet dynamics and interference-based factorization"
)]
struct Cli {
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format (per-command default: json for factor, csv otherwise)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Flat key=value file overriding defaults (CLI flags take precedence)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cap library parallelism at this many threads
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pgm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Revival,
    Curlicue,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeometryArg {
    Box,
    Talbot,
}

/// Gaussian weight width: a positive real or "auto" for `1.2*N/(2*pi)`.
#[derive(Clone, Copy, Debug)]
enum DeltaN {
    Auto,
    Value(f64),
}

impl FromStr for DeltaN {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(DeltaN::Auto);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| format!("expected a real number or \"auto\", got {s:?}"))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(format!("delta-n must be positive, got {v}"));
        }
        Ok(DeltaN::Value(v))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Factorize N by scanning for fractional revivals or curlicue periods
    Factor {
        n: u64,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long = "delta-n")]
        delta_n: Option<DeltaN>,
        /// Window half-width around each scanned integer
        #[arg(long)]
        window: Option<f64>,
        /// Odd number of samples per window
        #[arg(long)]
        samples: Option<usize>,
        /// Detection threshold on N*|S_N(ell)|^2
        #[arg(long)]
        threshold: Option<f64>,
        /// Cap on the scanned ell range
        #[arg(long)]
        lmax: Option<u64>,
    },
    /// Autocorrelation |S_N|^2 on a window around an integer time
    Autocorr {
        n: u64,
        #[arg(long)]
        center: i64,
        #[arg(long)]
        halfwidth: f64,
        /// Odd number of samples across the window
        #[arg(long)]
        samples: usize,
        #[arg(long = "delta-n")]
        delta_n: Option<DeltaN>,
    },
    /// Curlicue series s_N(n) for n = 0..N-1
    Curlicue { n: u64 },
    /// Space-time density grid of an evolving Gaussian packet
    Carpet {
        #[arg(long, value_enum)]
        geometry: GeometryArg,
        /// Box length or grating period
        #[arg(long)]
        size: f64,
        /// Final time in units of the revival time T
        #[arg(long)]
        tmax: f64,
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        nt: usize,
    },
    /// Gauss-sum table W_m for a fraction q/r
    GaussSum {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        q: u64,
    },
    /// Decompose a time t into (q/r)*N + epsilon + delta_t
    Decompose {
        #[arg(long)]
        t: f64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        rmax: u64,
    },
    /// Write the fixed reference datasets fig1_N1309.csv and fig2_N21.csv
    Figures {
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Run(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

/// Configuration entries from `--config`, consulted when a flag is absent.
struct Overrides(Vec<(String, String)>);

impl Overrides {
    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.iter().rev().find(|(k, _)| k == key) {
            None => Ok(None),
            Some((_, v)) => v
                .parse()
                .map(Some)
                .map_err(|e| usage(format!("config key {key}: {e}"))),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help/--version
            e.exit();
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let overrides = Overrides(match &cli.config {
        Some(path) => read_config(path).map_err(|e| usage(format!("--config: {e}")))?,
        None => Vec::new(),
    });
    let threads = match cli.threads {
        Some(t) => Some(t),
        None => overrides.get::<usize>("threads")?,
    };
    if let Some(t) = threads {
        if t == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Run(e.to_string()))?;
    }
    let format = match cli.format {
        Some(f) => Some(f),
        None => match overrides.get::<String>("format")? {
            Some(s) => Some(parse_format(&s)?),
            None => None,
        },
    };
    let output = cli.output.clone();

    match cli.command {
        Command::Factor {
            n,
            method,
            delta_n,
            window,
            samples,
            threshold,
            lmax,
        } => {
            if n < 2 {
                return Err(usage("factor: N must be at least 2"));
            }
            let method = match method {
                Some(Method::Revival) => FactorMethod::Revival,
                Some(Method::Curlicue) => FactorMethod::Curlicue,
                None => match overrides.get::<String>("method")?.as_deref() {
                    Some("revival") => FactorMethod::Revival,
                    Some("curlicue") => FactorMethod::Curlicue,
                    Some(other) => {
                        return Err(usage(format!("config key method: unknown value {other:?}")))
                    }
                    None => FactorMethod::Revival,
                },
            };
            let delta_n = resolve_delta_n(delta_n, &overrides)?;
            let window = window
                .or(overrides.get("window")?)
                .unwrap_or(0.4);
            let samples = samples.or(overrides.get("samples")?).unwrap_or(1);
            let threshold = threshold
                .or(overrides.get("threshold")?)
                .unwrap_or(1.5);
            let lmax = match lmax {
                Some(l) => Some(l),
                None => overrides.get("lmax")?,
            };
            if samples == 0 || samples % 2 == 0 {
                return Err(usage("factor: --samples must be odd"));
            }
            if !(window.is_finite() && window >= 0.0) {
                return Err(usage("factor: --window must be non-negative"));
            }
            if !(threshold.is_finite() && threshold > 0.0) {
                return Err(usage("factor: --threshold must be positive"));
            }
            let opts = FactorOptions {
                delta_n,
                window_halfwidth: window,
                samples_per_window: samples,
                threshold_ratio: threshold,
                ell_max: lmax,
                term_budget: FactorOptions::default().term_budget,
            };
            let report = factor(n, method, &opts)?;
            let mut sink = Sink::open(output.as_ref())?;
            match format.unwrap_or(Format::Json) {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut sink, &report)
                        .map_err(|e| CliError::Run(e.to_string()))?;
                    writeln!(sink)?;
                }
                Format::Csv => {
                    write_csv(
                        &mut sink,
                        &["ell", "delta_tau", "s2", "flagged"],
                        report.scan.iter().flat_map(|rec| {
                            rec.window.iter().map(move |&(dtau, s2)| {
                                vec![
                                    rec.ell.to_string(),
                                    fmt_f64(dtau),
                                    fmt_f64(s2),
                                    rec.flagged.to_string(),
                                ]
                            })
                        }),
                    )?;
                }
                Format::Pgm => return Err(usage("factor: --format pgm is not supported")),
            }
            sink.flush()?;
        }
        Command::Autocorr {
            n,
            center,
            halfwidth,
            samples,
            delta_n,
        } => {
            if n < 2 {
                return Err(usage("autocorr: N must be at least 2"));
            }
            if samples == 0 || samples % 2 == 0 {
                return Err(usage("autocorr: --samples must be odd"));
            }
            if !(halfwidth.is_finite() && halfwidth >= 0.0) {
                return Err(usage("autocorr: --halfwidth must be non-negative"));
            }
            if matches!(format, Some(Format::Json) | Some(Format::Pgm)) {
                return Err(usage("autocorr: only --format csv is supported"));
            }
            let delta_n = resolve_delta_n(delta_n, &overrides)?
                .unwrap_or_else(|| auto_delta_n(n));
            let params = RevivalParams::new(n, WeightTable::gaussian(delta_n)?)?;
            let half = (samples / 2) as i64;
            let step = if half == 0 { 0.0 } else { halfwidth / half as f64 };
            let mut sink = Sink::open(output.as_ref())?;
            write_csv(
                &mut sink,
                &["delta_tau", "re", "im", "s2"],
                (-half..=half).map(|j| {
                    let dtau = j as f64 * step;
                    let z = autocorrelation(&params, center as f64 + dtau);
                    vec![
                        fmt_f64(dtau),
                        fmt_f64(z.re),
                        fmt_f64(z.im),
                        fmt_f64(z.norm_sqr()),
                    ]
                }),
            )?;
            sink.flush()?;
        }
        Command::Curlicue { n } => {
            if n < 1 {
                return Err(usage("curlicue: N must be at least 1"));
            }
            if matches!(format, Some(Format::Json) | Some(Format::Pgm)) {
                return Err(usage("curlicue: only --format csv is supported"));
            }
            let series = curlicue_series(n)?;
            let mut sink = Sink::open(output.as_ref())?;
            write_csv(
                &mut sink,
                &["n", "re", "im", "magnitude"],
                series.values().iter().enumerate().map(|(k, v)| {
                    vec![
                        k.to_string(),
                        fmt_f64(v.re),
                        fmt_f64(v.im),
                        fmt_f64(v.norm()),
                    ]
                }),
            )?;
            sink.flush()?;
        }
        Command::Carpet {
            geometry,
            size,
            tmax,
            nx,
            nt,
        } => {
            if !(size.is_finite() && size > 0.0) {
                return Err(usage("carpet: --size must be positive"));
            }
            if !(tmax.is_finite() && tmax >= 0.0) {
                return Err(usage("carpet: --tmax must be non-negative"));
            }
            if nx < 16 || nt < 16 {
                return Err(usage("carpet: --nx and --nt must be at least 16"));
            }
            let times: Vec<f64> = (0..nt)
                .map(|j| tmax * j as f64 / (nt - 1) as f64)
                .collect();
            let (config, packet) = match geometry {
                GeometryArg::Box => {
                    let config = PropagatorConfig::particle_box(size, 256)?;
                    let grid = uniform_grid(0.0, size, 4097);
                    let packet = WavePacket::gaussian(&grid, size / 2.0, size / 20.0)?;
                    (config, packet)
                }
                GeometryArg::Talbot => {
                    let config = PropagatorConfig::talbot(size, 128)?;
                    let grid = periodic_grid(-size / 2.0, size / 2.0, 2048);
                    let packet = WavePacket::gaussian(&grid, 0.0, size / 20.0)?;
                    (config, packet)
                }
            };
            let grid = carpet_grid(&packet, &config, &times, nx)?;
            let mut sink = Sink::open(output.as_ref())?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    write_carpet_csv(&mut sink, &grid.x_grid, &grid.t_grid, &grid.density)?
                }
                Format::Pgm => write_pgm(&mut sink, &grid.density)?,
                Format::Json => return Err(usage("carpet: --format json is not supported")),
            }
            sink.flush()?;
        }
        Command::GaussSum { r, q } => {
            if r < 1 {
                return Err(usage("gauss-sum: --r must be at least 1"));
            }
            if matches!(format, Some(Format::Json) | Some(Format::Pgm)) {
                return Err(usage("gauss-sum: only --format csv is supported"));
            }
            let table = gauss_sum_table(r, q)?;
            let mut sink = Sink::open(output.as_ref())?;
            write_csv(
                &mut sink,
                &["m", "re", "im", "magnitude"],
                table.values().iter().enumerate().map(|(m, v)| {
                    vec![
                        m.to_string(),
                        fmt_f64(v.re),
                        fmt_f64(v.im),
                        fmt_f64(v.norm()),
                    ]
                }),
            )?;
            sink.flush()?;
        }
        Command::Decompose { t, n, rmax } => {
            if n < 2 {
                return Err(usage("decompose: --N must be at least 2"));
            }
            if rmax < 1 {
                return Err(usage("decompose: --rmax must be at least 1"));
            }
            if !t.is_finite() {
                return Err(usage("decompose: --t must be finite"));
            }
            let (frac, delta_t) = decompose_real_time(t, n, rmax)?;
            let mut sink = Sink::open(output.as_ref())?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    write_csv(
                        &mut sink,
                        &["q", "r", "epsilon", "delta_t"],
                        std::iter::once(vec![
                            frac.q.to_string(),
                            frac.r.to_string(),
                            fmt_f64(frac.epsilon),
                            fmt_f64(delta_t),
                        ]),
                    )?;
                }
                Format::Json => {
                    writeln!(
                        sink,
                        "{}",
                        serde_json::json!({
                            "q": frac.q,
                            "r": frac.r,
                            "epsilon": frac.epsilon,
                            "delta_t": delta_t,
                        })
                    )?;
                }
                Format::Pgm => {
                    return Err(usage("decompose: --format pgm is not supported"))
                }
            }
            sink.flush()?;
        }
        Command::Figures { outdir } => {
            std::fs::create_dir_all(&outdir)?;
            figures::emit_figure_datasets(&outdir).map_err(CliError::Run)?;
        }
    }
    Ok(())
}

fn parse_format(s: &str) -> Result<Format, CliError> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        "pgm" => Ok(Format::Pgm),
        other => Err(usage(format!("config key format: unknown value {other:?}"))),
    }
}

fn resolve_delta_n(
    flag: Option<DeltaN>,
    overrides: &Overrides,
) -> Result<Option<f64>, CliError> {
    let resolved = match flag {
        Some(d) => Some(d),
        None => overrides.get::<DeltaN>("delta-n")?,
    };
    Ok(match resolved {
        Some(DeltaN::Auto) | None => None,
        Some(DeltaN::Value(v)) => Some(v),
    })
}

//! `qhardy` — command-line front end: parse series from JSON, dispatch
//! analyses, emit JSON (default) or CSV reports on standard output.
//!
//! Exit codes: 0 on success, 2 on input validation errors (the diagnostic
//! names the offending flag), 3 on numerical failures (the diagnostic
//! carries the library error name verbatim).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;

use qhardy::hardy::BoundaryGrid;
use qhardy::inner::{self, InnerReport};
use qhardy::outer;
use qhardy::quat::{Quaternion, UnitImaginary};
use qhardy::series::QSeries;
use qhardy::splitting;

const MAX_TRUNCATION: usize = 4096;
const MAX_NODES: usize = 65536;

#[derive(Parser)]
#[command(name = "qhardy", version, about = "Hardy-space analysis of quaternionic power series")]
struct Cli {
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for randomized internals; every current analysis is
    /// deterministic, so fixed inputs give identical reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// ⋆-product of two series.
    Star { f: PathBuf, g: PathBuf },
    /// Conjugate series (coefficients conjugated).
    Conj { f: PathBuf },
    /// Symmetrization f ⋆ f^c (real coefficients).
    Symm { f: PathBuf },
    /// ⋆-inverse truncated to the given degree.
    Inv {
        f: PathBuf,
        #[arg(short = 'N', long = "truncate")]
        truncate: usize,
    },
    /// Evaluate the series at a quaternion point.
    Eval {
        f: PathBuf,
        /// Point as "w,x,y,z".
        #[arg(long)]
        at: String,
    },
    /// Splitting f = F + G·J on the given slice (J chosen orthogonal).
    Split {
        f: PathBuf,
        /// Slice axis as "x,y,z" (normalized).
        #[arg(long, default_value = "1,0,0")]
        slice: String,
    },
    /// Inner-function test by one of three methods.
    #[command(group(ArgGroup::new("method").required(true)))]
    Inner {
        f: PathBuf,
        /// Boundary-moment test at lags 0..=K.
        #[arg(long, group = "method")]
        moment: bool,
        /// Splitting-component test on a slice.
        #[arg(long, group = "method")]
        splitting: bool,
        /// H²/H^∞ norm test on a boundary grid.
        #[arg(long, group = "method")]
        norm: bool,
        /// Largest moment lag.
        #[arg(short = 'K', default_value_t = 20)]
        max_lag: usize,
        /// Slice axis "x,y,z" for --splitting.
        #[arg(long, default_value = "1,0,0")]
        slice: String,
        /// Boundary angle nodes (default: exactness bound rounded to a power of two).
        #[arg(short = 'M', long = "nodes")]
        nodes: Option<usize>,
        /// Sphere samples for --norm.
        #[arg(long, default_value_t = 64)]
        slices: usize,
        /// Angles per slice for --norm.
        #[arg(long, default_value_t = 1024)]
        angles: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Classify the zero set into isolated points and spheres.
    Zeros {
        f: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Degree-n optimal approximant of f^{-⋆} with diagnostics.
    Approximant {
        f: PathBuf,
        #[arg(short = 'n', long = "degree")]
        degree: usize,
    },
    /// Approximant diagnostics for n = 0..nmax plus convergence targets.
    Cyclicity {
        f: PathBuf,
        #[arg(long)]
        nmax: usize,
    },
    /// Outer test via the symmetrization log integral; --factor computes
    /// the outer factor of a slice preserving series instead.
    Outer {
        f: PathBuf,
        #[arg(short = 'M', long = "nodes", default_value_t = 2048)]
        nodes: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long)]
        factor: bool,
        /// Output degree for --factor.
        #[arg(short = 'N', long = "truncate", default_value_t = 40)]
        truncate: usize,
    },
    /// Interior mean-value defect of log|f| at a point.
    Meanvalue {
        f: PathBuf,
        /// Point as "w,x,y,z".
        #[arg(long)]
        omega: String,
        #[arg(short = 'M', long = "nodes", default_value_t = 2048)]
        nodes: usize,
    },
    /// ⋆-product of Möbius factors for the zeros listed in a JSON file.
    Blaschke {
        /// JSON array of quaternions [[w,x,y,z], ...].
        zeros: PathBuf,
        #[arg(short = 'N', long = "truncate")]
        truncate: usize,
    },
    /// Möbius transformation sending 0 to omega, truncated.
    Mobius {
        /// Point as "w,x,y,z".
        #[arg(long)]
        omega: String,
        #[arg(short = 'N', long = "truncate")]
        truncate: usize,
    },
}

enum AppError {
    Input(String),
    Numeric(qhardy::Error),
}

impl From<qhardy::Error> for AppError {
    fn from(e: qhardy::Error) -> Self {
        AppError::Numeric(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(payload) => {
            println!("{payload}");
            ExitCode::SUCCESS
        }
        Err(AppError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

// ---------------------------------------------------------------------------
// output formatting: JSON with 17 significant digits, or CSV with the same
// number rendering so both reports carry identical values
// ---------------------------------------------------------------------------

struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.7e}")
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
    value.serialize(&mut ser).expect("report serialization cannot fail");
    String::from_utf8(out).expect("JSON output is UTF-8")
}

fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn series_csv(s: &QSeries) -> String {
    let mut out = String::from("n,w,x,y,z");
    for (n, c) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("\n{n},{},{},{},{}", num(c.w), num(c.x), num(c.y), num(c.z)));
    }
    out
}

fn quaternion_csv(q: Quaternion) -> String {
    format!("w,x,y,z\n{},{},{},{}", num(q.w), num(q.x), num(q.y), num(q.z))
}

fn approximant_csv_row(r: &outer::ApproximantReport) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.n,
        num(r.dist2),
        num(r.p_at_0.w),
        num(r.p_at_0.x),
        num(r.p_at_0.y),
        num(r.p_at_0.z),
        num(r.basis_mass)
    )
}

const APPROXIMANT_CSV_HEADER: &str = "n,dist2,p0_w,p0_x,p0_y,p0_z,basis_mass";

fn inner_csv(r: &InnerReport) -> String {
    let (head, tail) = match &r.method {
        inner::InnerMethod::Moment { max_lag } => ("max_lag".to_string(), format!("{max_lag}")),
        inner::InnerMethod::Splitting { slice, nodes } => {
            let [x, y, z] = slice.components();
            (
                "nodes,slice_x,slice_y,slice_z".to_string(),
                format!("{nodes},{},{},{}", num(x), num(y), num(z)),
            )
        }
        inner::InnerMethod::Norm { slices, angles } => {
            ("slices,angles".to_string(), format!("{slices},{angles}"))
        }
    };
    format!(
        "verdict,max_defect,tol,{head}\n{},{},{},{tail}",
        r.verdict,
        num(r.max_defect),
        num(r.tol)
    )
}

fn zeros_csv(z: &inner::ZeroSet) -> String {
    let mut out = String::from("kind,a,b,c,d");
    for q in &z.isolated {
        out.push_str(&format!(
            "\nisolated,{},{},{},{}",
            num(q.w),
            num(q.x),
            num(q.y),
            num(q.z)
        ));
    }
    for &(x, y) in &z.spheres {
        out.push_str(&format!("\nsphere,{},{},,", num(x), num(y)));
    }
    out
}

// ---------------------------------------------------------------------------
// input parsing
// ---------------------------------------------------------------------------

fn load_series(path: &Path) -> Result<QSeries, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| AppError::Input(format!("{} is not a valid series: {e}", path.display())))
}

fn load_quaternions(path: &Path) -> Result<Vec<Quaternion>, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        AppError::Input(format!("{} is not a quaternion list: {e}", path.display()))
    })
}

fn parse_components(flag: &str, text: &str, expected: usize) -> Result<Vec<f64>, AppError> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() == expected && v.iter().all(|c| c.is_finite()) => Ok(v),
        _ => Err(AppError::Input(format!(
            "{flag} expects {expected} comma-separated finite numbers, got \"{text}\""
        ))),
    }
}

fn parse_point(flag: &str, text: &str) -> Result<Quaternion, AppError> {
    let v = parse_components(flag, text, 4)?;
    Ok(Quaternion::new(v[0], v[1], v[2], v[3]))
}

fn parse_slice(flag: &str, text: &str) -> Result<UnitImaginary, AppError> {
    let v = parse_components(flag, text, 3)?;
    UnitImaginary::new(v[0], v[1], v[2])
        .ok_or_else(|| AppError::Input(format!("{flag} must be a nonzero direction")))
}

fn check_range(flag: &str, value: usize, max: usize) -> Result<(), AppError> {
    if value > max {
        return Err(AppError::Input(format!("{flag} must be at most {max}, got {value}")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct MeanValueReport {
    defect: f64,
    omega: Quaternion,
    nodes: usize,
}

fn run(cli: Cli) -> Result<String, AppError> {
    let csv = cli.csv;
    // reserved: every current analysis is deterministic, the seed pins any
    // future randomized ones
    let _ = cli.seed;
    match cli.command {
        Command::Star { f, g } => {
            let product = load_series(&f)?.star(&load_series(&g)?);
            Ok(if csv { series_csv(&product) } else { to_json(&product) })
        }
        Command::Conj { f } => {
            let out = load_series(&f)?.conjugate();
            Ok(if csv { series_csv(&out) } else { to_json(&out) })
        }
        Command::Symm { f } => {
            let out = load_series(&f)?.symmetrize();
            Ok(if csv { series_csv(&out) } else { to_json(&out) })
        }
        Command::Inv { f, truncate } => {
            check_range("--truncate", truncate, MAX_TRUNCATION)?;
            let out = load_series(&f)?.star_inverse(truncate)?;
            Ok(if csv { series_csv(&out) } else { to_json(&out) })
        }
        Command::Eval { f, at } => {
            let point = parse_point("--at", &at)?;
            let value = load_series(&f)?.eval(point);
            Ok(if csv { quaternion_csv(value) } else { to_json(&value) })
        }
        Command::Split { f, slice } => {
            let axis = parse_slice("--slice", &slice)?;
            let pair = splitting::split(&load_series(&f)?, axis, axis.orthogonal())?;
            if csv {
                let [ix, iy, iz] = pair.i.components();
                let [jx, jy, jz] = pair.j.components();
                let mut out = String::from("part,n,a,b,c");
                out.push_str(&format!("\nI,,{},{},{}", num(ix), num(iy), num(iz)));
                out.push_str(&format!("\nJ,,{},{},{}", num(jx), num(jy), num(jz)));
                for (n, c) in pair.f.iter().enumerate() {
                    out.push_str(&format!("\nF,{n},{},{},", num(c.re), num(c.im)));
                }
                for (n, c) in pair.g.iter().enumerate() {
                    out.push_str(&format!("\nG,{n},{},{},", num(c.re), num(c.im)));
                }
                Ok(out)
            } else {
                Ok(to_json(&pair))
            }
        }
        Command::Inner {
            f,
            moment,
            splitting: use_splitting,
            norm,
            max_lag,
            slice,
            nodes,
            slices,
            angles,
            tol,
        } => {
            let series = load_series(&f)?;
            let report = if moment {
                check_range("-K", max_lag, MAX_NODES)?;
                inner::is_inner_moment(&series, max_lag.max(1), tol)
            } else if use_splitting {
                let axis = parse_slice("--slice", &slice)?;
                let nodes =
                    nodes.unwrap_or_else(|| (2 * series.degree() + 1).next_power_of_two());
                check_range("-M/--nodes", nodes, MAX_NODES)?;
                inner::is_inner_splitting(&series, axis, nodes, tol)?
            } else {
                debug_assert!(norm);
                check_range("--slices", slices, MAX_NODES)?;
                check_range("--angles", angles, MAX_NODES)?;
                if slices == 0 || angles == 0 {
                    return Err(AppError::Input(
                        "--slices and --angles must be at least 1".to_string(),
                    ));
                }
                let grid = BoundaryGrid::fibonacci(slices, angles);
                inner::is_inner_norm(&series, &grid, tol)
            };
            Ok(if csv { inner_csv(&report) } else { to_json(&report) })
        }
        Command::Zeros { f, tol } => {
            let zeros = inner::zero_structure(&load_series(&f)?, tol)?;
            Ok(if csv { zeros_csv(&zeros) } else { to_json(&zeros) })
        }
        Command::Approximant { f, degree } => {
            check_range("-n/--degree", degree, MAX_TRUNCATION)?;
            let report = outer::optimal_approximant(&load_series(&f)?, degree)?;
            Ok(if csv {
                format!("{APPROXIMANT_CSV_HEADER}\n{}", approximant_csv_row(&report))
            } else {
                to_json(&report)
            })
        }
        Command::Cyclicity { f, nmax } => {
            check_range("--nmax", nmax, MAX_TRUNCATION)?;
            if nmax == 0 {
                return Err(AppError::Input("--nmax must be at least 1".to_string()));
            }
            let report = outer::cyclicity_report(&load_series(&f)?, nmax)?;
            Ok(if csv {
                let mut out = String::from(APPROXIMANT_CSV_HEADER);
                for r in &report.reports {
                    out.push('\n');
                    out.push_str(&approximant_csv_row(r));
                }
                out
            } else {
                to_json(&report)
            })
        }
        Command::Outer { f, nodes, tol, factor, truncate } => {
            check_range("-M/--nodes", nodes, MAX_NODES)?;
            let series = load_series(&f)?;
            if factor {
                check_range("--truncate", truncate, MAX_TRUNCATION)?;
                let out = outer::outer_factor_slice_preserving(&series, nodes.max(1), truncate)?;
                Ok(if csv { series_csv(&out) } else { to_json(&out) })
            } else {
                let report = outer::is_outer(&series, nodes.max(1), tol);
                Ok(if csv {
                    format!(
                        "verdict,defect,nodes,tol\n{},{},{},{}",
                        report.verdict,
                        num(report.defect),
                        report.nodes,
                        num(report.tol)
                    )
                } else {
                    to_json(&report)
                })
            }
        }
        Command::Meanvalue { f, omega, nodes } => {
            check_range("-M/--nodes", nodes, MAX_NODES)?;
            let point = parse_point("--omega", &omega)?;
            let defect = outer::mean_value_defect(&load_series(&f)?, point, nodes.max(1))?;
            let report = MeanValueReport { defect, omega: point, nodes };
            Ok(if csv {
                format!("defect,nodes\n{},{}", num(report.defect), report.nodes)
            } else {
                to_json(&report)
            })
        }
        Command::Blaschke { zeros, truncate } => {
            check_range("--truncate", truncate, MAX_TRUNCATION)?;
            let points = load_quaternions(&zeros)?;
            let out = inner::blaschke(&points, truncate)?;
            Ok(if csv { series_csv(&out) } else { to_json(&out) })
        }
        Command::Mobius { omega, truncate } => {
            check_range("--truncate", truncate, MAX_TRUNCATION)?;
            let point = parse_point("--omega", &omega)?;
            let out = inner::mobius(point, truncate)?;
            Ok(if csv { series_csv(&out) } else { to_json(&out) })
        }
    }
}

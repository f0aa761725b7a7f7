//! Command-line surface: family verification, parameter sweeps, limit-set
//! renders, and the classical-witness search.
//!
//! Exit codes: 0 pass, 1 check failed, 2 usage or I/O error, 3 no witness
//! found within budget.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use schottky::explorer::{limit_set_sample, Parallelism};
use schottky::family::{self, evaluate_pinch, in_f, noded_point, Membership, ParameterPoint};
use schottky::render::{render, ImageFormat, Viewport};
use schottky::witness::{witness_search, WitnessSearchConfig, WitnessVerdict};
use schottky_cli::report::build_check_report;

const CSV_COLUMNS: &str = "CSV column order for `sweep` (floats use 17 significant digits):\n  \
    p, r, in_f,\n  \
    t2_re_gamma1..t2_re_gamma6, t2_im_gamma1..t2_im_gamma6,\n  \
    length_gamma1..length_gamma6\n\
    in_f is one of interior/boundary/outside; value columns are filled for\n\
    interior and boundary rows and left empty for outside rows.";

#[derive(Parser)]
#[command(
    name = "schottky",
    version,
    about = "Verify and explore a two-parameter family of rank-3 Schottky groups",
    after_help = CSV_COLUMNS
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// A parameter that is either a decimal or the literal token `noded`.
#[derive(Clone, Copy, Debug)]
enum ParamValue {
    Noded,
    Value(f64),
}

impl FromStr for ParamValue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "noded" {
            return Ok(ParamValue::Noded);
        }
        s.parse::<f64>()
            .map(ParamValue::Value)
            .map_err(|e| format!("expected a decimal or `noded`: {e}"))
    }
}

impl ParamValue {
    fn resolve_p(self) -> f64 {
        match self {
            ParamValue::Noded => noded_point().p,
            ParamValue::Value(v) => v,
        }
    }

    fn resolve_r(self) -> f64 {
        match self {
            ParamValue::Noded => noded_point().r,
            ParamValue::Value(v) => v,
        }
    }
}

/// A parameter point: `P,R` (decimals) or the token `noded`.
#[derive(Clone, Copy, Debug)]
struct PointSpec(ParameterPoint);

impl FromStr for PointSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "noded" {
            return Ok(PointSpec(noded_point()));
        }
        let (p, r) = s
            .split_once(',')
            .ok_or_else(|| "expected `P,R` or `noded`".to_string())?;
        let p: f64 = p.trim().parse().map_err(|e| format!("bad p: {e}"))?;
        let r: f64 = r.trim().parse().map_err(|e| format!("bad r: {e}"))?;
        Ok(PointSpec(ParameterPoint::new(p, r)))
    }
}

/// `P0:P1:NP,R0:R1:NR` — inclusive ranges with sample counts.
#[derive(Clone, Copy, Debug)]
struct GridSpec {
    p0: f64,
    p1: f64,
    np: usize,
    r0: f64,
    r1: f64,
    nr: usize,
}

impl FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (ps, rs) = s
            .split_once(',')
            .ok_or_else(|| "expected `P0:P1:NP,R0:R1:NR`".to_string())?;
        let axis = |chunk: &str, name: &str| -> Result<(f64, f64, usize), String> {
            let parts: Vec<&str> = chunk.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("{name} axis needs `lo:hi:count`"));
            }
            let lo: f64 = parts[0]
                .trim()
                .parse()
                .map_err(|e| format!("{name} lo: {e}"))?;
            let hi: f64 = parts[1]
                .trim()
                .parse()
                .map_err(|e| format!("{name} hi: {e}"))?;
            let n: usize = parts[2]
                .trim()
                .parse()
                .map_err(|e| format!("{name} count: {e}"))?;
            Ok((lo, hi, n))
        };
        let (p0, p1, np) = axis(ps, "p")?;
        let (r0, r1, nr) = axis(rs, "r")?;
        Ok(GridSpec {
            p0,
            p1,
            np,
            r0,
            r1,
            nr,
        })
    }
}

/// `XMIN,XMAX,YMIN,YMAX`.
#[derive(Clone, Copy, Debug)]
struct ViewportSpec {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Default for ViewportSpec {
    fn default() -> Self {
        ViewportSpec {
            x_min: -2.0,
            x_max: 2.0,
            y_min: -2.0,
            y_max: 2.0,
        }
    }
}

impl FromStr for ViewportSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let vals: Vec<f64> = s
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("expected `XMIN,XMAX,YMIN,YMAX`: {e}"))?;
        if vals.len() != 4 {
            return Err("expected four comma-separated values".to_string());
        }
        Ok(ViewportSpec {
            x_min: vals[0],
            x_max: vals[1],
            y_min: vals[2],
            y_max: vals[3],
        })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify every checkable claim at one parameter point; JSON report.
    Check {
        /// p coordinate, or `noded`
        #[arg(long)]
        p: ParamValue,
        /// r coordinate, or `noded`
        #[arg(long)]
        r: ParamValue,
        /// Membership/classification tolerance override
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the pinch traces over a grid or a straight parameter path; CSV.
    #[command(after_help = CSV_COLUMNS)]
    Sweep {
        /// Grid `P0:P1:NP,R0:R1:NR`
        #[arg(long, conflicts_with_all = ["path_from", "path_to", "steps"])]
        grid: Option<GridSpec>,
        /// Path start `P,R` or `noded`
        #[arg(long, requires = "path_to", requires = "steps")]
        path_from: Option<PointSpec>,
        /// Path end `P,R` or `noded`
        #[arg(long, requires = "path_from")]
        path_to: Option<PointSpec>,
        /// Number of samples along the path (endpoints included)
        #[arg(long)]
        steps: Option<usize>,
        /// Membership tolerance override
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the limit set and render it to SVG or PPM.
    Limitset {
        /// p coordinate, or `noded`
        #[arg(long)]
        p: ParamValue,
        /// r coordinate, or `noded`
        #[arg(long)]
        r: ParamValue,
        /// Maximum word length sampled
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Maximum words evaluated
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        /// Seed recorded in the output metadata
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Planar window `XMIN,XMAX,YMIN,YMAX`
        #[arg(long, default_value = "-2,2,-2,2")]
        viewport: ViewportSpec,
        /// Output format: svg or ppm
        #[arg(long, default_value = "ppm")]
        format: ImageFormat,
        /// Output file
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a classical system of six circles; JSON report.
    Witness {
        /// p coordinate, or `noded`
        #[arg(long)]
        p: ParamValue,
        /// r coordinate, or `noded`
        #[arg(long)]
        r: ParamValue,
        /// Total objective evaluations across restarts
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
        /// Search seed
        #[arg(long, default_value_t = 2026)]
        seed: u64,
        /// Verification tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(payload: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, payload).with_context(|| format!("writing {}", path.display()))?
        }
        None if payload.ends_with('\n') => print!("{payload}"),
        None => println!("{payload}"),
    }
    Ok(())
}

fn run_check(p: ParamValue, r: ParamValue, tolerance: f64, out: Option<PathBuf>) -> Result<u8> {
    let pt = ParameterPoint::new(p.resolve_p(), r.resolve_r());
    let report = build_check_report(pt, tolerance);
    let pass = report.verdict == "pass";
    let json = serde_json::to_string_pretty(&report)?;
    emit(&json, &out)?;
    Ok(if pass { 0 } else { 1 })
}

// --- sweep ------------------------------------------------------------

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn sweep_rows(points: &[ParameterPoint], tolerance: f64) -> String {
    let mut csv = String::from("p,r,in_f");
    for part in ["t2_re", "t2_im", "length"] {
        for k in 1..=6 {
            csv.push_str(&format!(",{part}_gamma{k}"));
        }
    }
    csv.push('\n');
    for pt in points {
        let membership = in_f(*pt, tolerance);
        csv.push_str(&format!(
            "{},{},{}",
            fmt17(pt.p),
            fmt17(pt.r),
            membership.membership
        ));
        let geometry_ok = pt.p > 0.0 && pt.p < 1.0 && pt.r > 0.0 && pt.r < 1.0;
        if membership.membership == Membership::Outside || !geometry_ok {
            csv.push_str(&",".repeat(18));
        } else {
            let rows = evaluate_pinch(*pt).expect("geometry is defined");
            for row in &rows {
                csv.push_str(&format!(",{}", fmt17(row.trace_squared.re)));
            }
            for row in &rows {
                csv.push_str(&format!(",{}", fmt17(row.trace_squared.im)));
            }
            for row in &rows {
                csv.push_str(&format!(",{}", fmt17(row.translation_length)));
            }
        }
        csv.push('\n');
    }
    csv
}

fn run_sweep(
    grid: Option<GridSpec>,
    path_from: Option<PointSpec>,
    path_to: Option<PointSpec>,
    steps: Option<usize>,
    tolerance: f64,
    out: Option<PathBuf>,
) -> Result<u8> {
    let points: Vec<ParameterPoint> = match (grid, path_from, path_to, steps) {
        (Some(g), None, None, None) => {
            if g.np == 0 || g.nr == 0 {
                bail!("grid is empty: sample counts must be positive");
            }
            let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
                (0..n)
                    .map(|i| {
                        if n == 1 {
                            lo
                        } else {
                            lo + (hi - lo) * i as f64 / (n - 1) as f64
                        }
                    })
                    .collect()
            };
            let ps = axis(g.p0, g.p1, g.np);
            let rs = axis(g.r0, g.r1, g.nr);
            ps.iter()
                .flat_map(|&p| rs.iter().map(move |&r| ParameterPoint::new(p, r)))
                .collect()
        }
        (None, Some(from), Some(to), Some(steps)) => {
            if steps == 0 {
                bail!("path needs at least one step");
            }
            (0..steps)
                .map(|i| {
                    let s = if steps == 1 {
                        0.0
                    } else {
                        i as f64 / (steps - 1) as f64
                    };
                    ParameterPoint::new(
                        from.0.p + s * (to.0.p - from.0.p),
                        from.0.r + s * (to.0.r - from.0.r),
                    )
                })
                .collect()
        }
        _ => bail!("use either --grid or --path-from/--path-to/--steps"),
    };
    let csv = sweep_rows(&points, tolerance);
    emit(&csv, &out)?;
    Ok(0)
}

// --- limitset ----------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn run_limitset(
    p: ParamValue,
    r: ParamValue,
    depth: usize,
    budget: usize,
    seed: u64,
    viewport: ViewportSpec,
    format: ImageFormat,
    out: PathBuf,
) -> Result<u8> {
    let pt = ParameterPoint::new(p.resolve_p(), r.resolve_r());
    let gens =
        family::generators(pt).map_err(|e| anyhow::anyhow!("parameters outside (0,1): {e}"))?;
    if depth == 0 {
        eprintln!("warning: depth 0 yields an empty sample");
    }
    let sample = limit_set_sample(&gens, depth, budget, seed, Parallelism::Parallel);
    let vp = Viewport {
        x_min: viewport.x_min,
        x_max: viewport.x_max,
        y_min: viewport.y_min,
        y_max: viewport.y_max,
        ..Viewport::default()
    };
    let image = render(&sample, &vp, format)?;
    std::fs::write(&out, &image.bytes).with_context(|| format!("writing {}", out.display()))?;
    let produced = sample.evaluated - sample.skipped_non_loxodromic;
    eprintln!(
        "limit set: {} distinct points; {} fixed points merged by deduplication",
        sample.points.len(),
        produced.saturating_sub(sample.points.len()),
    );
    eprintln!(
        "words evaluated: {} (skipped non-loxodromic: {}, truncated: {}); plotted {} px, clipped {}, dropped at infinity {}",
        sample.evaluated,
        sample.skipped_non_loxodromic,
        sample.truncated,
        image.plotted,
        image.clipped,
        image.dropped_infinite,
    );
    Ok(0)
}

// --- witness -----------------------------------------------------------

fn run_witness(
    p: ParamValue,
    r: ParamValue,
    budget: u64,
    seed: u64,
    tolerance: f64,
    out: Option<PathBuf>,
) -> Result<u8> {
    let pt = ParameterPoint::new(p.resolve_p(), r.resolve_r());
    let gens =
        family::generators(pt).map_err(|e| anyhow::anyhow!("parameters outside (0,1): {e}"))?;
    let cfg = WitnessSearchConfig {
        budget,
        seed,
        tolerance,
        ..WitnessSearchConfig::default()
    };
    let report = witness_search(&gens, &cfg);
    let json = serde_json::to_string_pretty(&report)?;
    emit(&json, &out)?;
    Ok(match report.verdict {
        WitnessVerdict::WitnessFound => 0,
        WitnessVerdict::NoWitnessWithinBudget => 3,
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Check { p, r, tol, out } => run_check(p, r, tol, out),
        Cmd::Sweep {
            grid,
            path_from,
            path_to,
            steps,
            tol,
            out,
        } => run_sweep(grid, path_from, path_to, steps, tol, out),
        Cmd::Limitset {
            p,
            r,
            depth,
            budget,
            seed,
            viewport,
            format,
            out,
        } => run_limitset(p, r, depth, budget, seed, viewport, format, out),
        Cmd::Witness {
            p,
            r,
            budget,
            seed,
            tol,
            out,
        } => run_witness(p, r, budget, seed, tol, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

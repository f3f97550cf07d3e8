//! Command implementations behind the `tripnet` binary. Each command renders
//! its whole output to a string; `main` only decides where it goes.

pub mod svg;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use thiserror::Error;

use tripnet_core::nets::{base_curve, max_hole};
use tripnet_core::oracle::suite::{
    curve_oracle_suite, irregular_suite, lagrange_suite, local_optimum_suite, theorem_suite, PGrid,
    Parity, SuiteReport,
};
use tripnet_core::oracle::{grid_diagonal_scale, PerturbationConfig, SweepConfig};
use tripnet_core::{
    crossover_aspect, crossover_w, curve_sample, net_scale_factor, odd_crossover_unshifted,
    optimal_split, placement, Net, Split,
};

use svg::{Frame, Svg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tripnet_core::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Parser)]
#[command(
    name = "tripnet",
    version,
    about = "Optimal axis-aligned tripwire nets for rectangular intruders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the inscribing curve C_n(p) of a 1 x n hole.
    Curve(CurveArgs),
    /// Sample the base curve (best of parallel lines and grid) for k lines.
    BaseCurve(BaseCurveArgs),
    /// Emit the optimal net for k lines and aspect ratio p.
    OptimalNet(OptimalNetArgs),
    /// Run a brute-force verification suite; exit status 0 iff it passes.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Decimal digits for numbers, 1..=17.
    #[arg(long, default_value_t = 9)]
    pub precision: usize,
}

impl OutputArgs {
    fn precision(&self) -> Result<usize> {
        if (1..=17).contains(&self.precision) {
            Ok(self.precision)
        } else {
            usage(format!(
                "--precision must be in 1..=17, got {}",
                self.precision
            ))
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RangeArgs {
    /// Smallest aspect ratio sampled.
    #[arg(long, default_value_t = 1.0)]
    pub p_min: f64,
    /// Largest aspect ratio sampled.
    #[arg(long, default_value_t = 4.0)]
    pub p_max: f64,
    /// Sampling step.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Single sample instead of a range.
    #[arg(long)]
    pub p: Option<f64>,
}

impl RangeArgs {
    fn samples(&self) -> Result<Vec<f64>> {
        if let Some(p) = self.p {
            if !(p >= 1.0 && p.is_finite()) {
                return usage(format!("--p must be at least 1, got {p}"));
            }
            return Ok(vec![p]);
        }
        if !(self.p_min >= 1.0 && self.p_min < self.p_max && self.p_max.is_finite()) {
            return usage(format!(
                "need 1 <= --p-min < --p-max, got [{}, {}]",
                self.p_min, self.p_max
            ));
        }
        if !(self.step > 0.0) {
            return usage(format!("--step must be positive, got {}", self.step));
        }
        Ok(PGrid::new(self.p_min, self.p_max, self.step)?.points())
    }
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Hole aspect ratio n >= 1.
    #[arg(long, default_value_t = 1.0)]
    pub n: f64,
    #[command(flatten)]
    pub range: RangeArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BaseCurveArgs {
    /// Number of lines k >= 1.
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub range: RangeArgs,
    /// Overlay the curve of the evenly spaced net N(v, h); needs --overlay-h.
    #[arg(long, requires = "overlay_h")]
    pub overlay_v: Option<usize>,
    #[arg(long, requires = "overlay_v")]
    pub overlay_h: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OptimalNetArgs {
    /// Number of lines k >= 1.
    #[arg(long)]
    pub k: usize,
    /// Intruder aspect ratio p >= 1.
    #[arg(long)]
    pub p: f64,
    /// Output format (json or svg).
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 9)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    CurveOracle,
    TheoremEven,
    TheoremOdd,
    Irregular,
    Lagrange,
    LocalOptimum,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Hole aspect ratio (curve-oracle).
    #[arg(long, default_value_t = 1.0)]
    pub n: f64,
    /// Line count (defaults: 4 even, 3 odd and local-optimum, 4 otherwise).
    #[arg(long)]
    pub k: Option<usize>,
    /// Intruder aspect ratio (irregular).
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// p-grid for the theorem suites; step defaults to 1/64, or 1/8 for curve-oracle.
    #[arg(long, default_value_t = 1.0)]
    pub p_min: f64,
    #[arg(long, default_value_t = 8.0)]
    pub p_max: f64,
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Perturbation bound (local-optimum).
    #[arg(long, default_value_t = 0.02)]
    pub epsilon: f64,
    /// Angle grid for the rotation sweep (curve-oracle).
    #[arg(long, default_value_t = 1e-5)]
    pub theta_res: f64,
    /// Random trials (irregular: per split, default 1000; local-optimum: default 500).
    #[arg(long)]
    pub count: Option<usize>,
    /// Short side for the lagrange suite; defaults to the grid's diagonal
    /// scale at several aspect ratios.
    #[arg(long)]
    pub c_prime: Option<f64>,
    /// Pivot centre height (local-optimum).
    #[arg(long, default_value_t = 0.5)]
    pub pivot_height: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Rendered output of one command.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
    /// First failed assertion, for `verify`.
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self {
            text,
            success: true,
            failure: None,
        }
    }
}

/// Fixed-point with `precision` digits (round half to even on the exact
/// binary value), trailing zeros removed.
pub fn fmt_num(x: f64, precision: usize) -> String {
    let mut s = format!("{x:.precision$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn round(x: f64, precision: usize) -> f64 {
    fmt_num(x, precision)
        .parse()
        .expect("formatted float parses")
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Curve(a) => cmd_curve(a).map(Outcome::ok),
        Command::BaseCurve(a) => cmd_base_curve(a).map(Outcome::ok),
        Command::OptimalNet(a) => cmd_optimal_net(a).map(Outcome::ok),
        Command::Verify(a) => cmd_verify(a),
    }
}

pub fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Curve(a) => a.output.out.as_ref(),
        Command::BaseCurve(a) => a.output.out.as_ref(),
        Command::OptimalNet(a) => a.out.as_ref(),
        Command::Verify(a) => a.out.as_ref(),
    }
}

#[derive(Serialize)]
struct CurveRow {
    p: f64,
    c: f64,
    branch: &'static str,
}

#[derive(Serialize)]
struct CurveDoc {
    n: f64,
    w_n: f64,
    markers: Vec<f64>,
    samples: Vec<CurveRow>,
}

pub fn cmd_curve(a: &CurveArgs) -> Result<String> {
    let prec = a.output.precision()?;
    let ps = a.range.samples()?;
    let n = a.n;
    let w = crossover_w(n)?;
    let rows = ps
        .iter()
        .map(|&p| {
            let s = curve_sample(n, p)?;
            Ok(CurveRow {
                p,
                c: s.c,
                branch: s.branch.as_str(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match a.output.format {
        Format::Csv => {
            let mut out = String::from("p,c,branch\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    fmt_num(r.p, prec),
                    fmt_num(r.c, prec),
                    r.branch
                ));
            }
            out
        }
        Format::Json => {
            let doc = CurveDoc {
                n: round(n, prec),
                w_n: round(w, prec),
                markers: vec![round(n, prec), round(w, prec)],
                samples: rows
                    .into_iter()
                    .map(|r| CurveRow {
                        p: round(r.p, prec),
                        c: round(r.c, prec),
                        ..r
                    })
                    .collect(),
            };
            to_json(&doc)
        }
        Format::Svg => {
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.p, r.c)).collect();
            let mut svg = Svg::new(640.0, 420.0, prec.min(6));
            svg.comment(&format!(
                "inscribing curve n={} w_n={}",
                fmt_num(n, prec),
                fmt_num(w, prec)
            ));
            let frame = plot_frame(&pts);
            frame.axes(&mut svg, "p", "c");
            plot_line(&mut svg, &frame, &pts, "steelblue");
            frame.marker(&mut svg, n, &format!("p = n = {}", fmt_num(n, 4)), "gray");
            frame.marker(
                &mut svg,
                w,
                &format!("w_n = {}", fmt_num(w, 6)),
                "firebrick",
            );
            svg.finish()
        }
    })
}

fn plot_frame(pts: &[(f64, f64)]) -> Frame {
    let x0 = pts.first().map_or(1.0, |p| p.0);
    let x1 = pts.last().map_or(2.0, |p| p.0);
    let x1 = if x1 > x0 { x1 } else { x0 + 1.0 };
    let y1 = pts.iter().map(|p| p.1).fold(0.0, f64::max) * 1.05;
    Frame {
        x_range: (x0, x1),
        y_range: (0.0, if y1 > 0.0 { y1 } else { 1.0 }),
        width: 640.0,
        height: 420.0,
        margin: 50.0,
    }
}

fn plot_line(svg: &mut Svg, frame: &Frame, pts: &[(f64, f64)], colour: &str) {
    let mapped: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| frame.map(x, y)).collect();
    svg.polyline(&mapped, &format!("stroke=\"{colour}\" stroke-width=\"2\""));
}

#[derive(Serialize)]
struct BaseRow {
    p: f64,
    c: f64,
    net: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    overlay: Option<f64>,
}

#[derive(Serialize)]
struct Overlay {
    split: String,
    /// Parallel/grid crossover, the overlay hole's aspect ratio, w_1 and
    /// w of the overlay hole.
    markers: [f64; 4],
}

#[derive(Serialize)]
struct BaseDoc {
    k: usize,
    crossover: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    crossover_unshifted_formula: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    overlay: Option<Overlay>,
    samples: Vec<BaseRow>,
}

pub fn cmd_base_curve(a: &BaseCurveArgs) -> Result<String> {
    if a.k == 0 {
        return usage("--k must be at least 1");
    }
    let prec = a.output.precision()?;
    let ps = a.range.samples()?;
    let k = a.k;
    let crossover = if k >= 2 {
        Some(crossover_aspect(k)?)
    } else {
        None
    };
    let unshifted = if k >= 3 && k % 2 == 1 {
        Some(odd_crossover_unshifted(k)?)
    } else {
        None
    };

    let overlay = match (a.overlay_v, a.overlay_h) {
        (Some(v), Some(h)) => {
            let split = Split::new(v, h).canonical();
            let ratio = (split.vertical + 1) as f64 / (split.horizontal + 1) as f64;
            Some((split, ratio))
        }
        _ => None,
    };
    let rows = ps
        .iter()
        .map(|&p| {
            let (c, term) = base_curve(k, p)?;
            let overlay = overlay
                .map(|(split, _)| net_scale_factor(&split.net(), p))
                .transpose()?;
            Ok(BaseRow {
                p,
                c,
                net: term.as_str(),
                overlay,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let overlay_doc = overlay
        .map(|(split, ratio)| -> Result<Overlay> {
            Ok(Overlay {
                split: split.to_string(),
                markers: [
                    crossover.unwrap_or(f64::NAN),
                    ratio,
                    crossover_w(1.0)?,
                    crossover_w(ratio)?,
                ],
            })
        })
        .transpose()?;

    Ok(match a.output.format {
        Format::Csv => {
            let mut out = String::from(if overlay.is_some() {
                "p,c,net,overlay\n"
            } else {
                "p,c,net\n"
            });
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{}",
                    fmt_num(r.p, prec),
                    fmt_num(r.c, prec),
                    r.net
                ));
                if let Some(o) = r.overlay {
                    out.push_str(&format!(",{}", fmt_num(o, prec)));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let doc = BaseDoc {
                k,
                crossover: crossover.map(|x| round(x, prec)),
                crossover_unshifted_formula: unshifted.map(|x| round(x, prec)),
                overlay: overlay_doc.map(|o| Overlay {
                    markers: o.markers.map(|x| round(x, prec)),
                    ..o
                }),
                samples: rows
                    .into_iter()
                    .map(|r| BaseRow {
                        p: round(r.p, prec),
                        c: round(r.c, prec),
                        overlay: r.overlay.map(|x| round(x, prec)),
                        ..r
                    })
                    .collect(),
            };
            to_json(&doc)
        }
        Format::Svg => {
            let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.p, r.c)).collect();
            let mut all = pts.clone();
            all.extend(rows.iter().filter_map(|r| r.overlay.map(|o| (r.p, o))));
            let mut frame = plot_frame(&pts);
            frame.y_range.1 = all.iter().map(|p| p.1).fold(0.0, f64::max) * 1.05;
            let mut svg = Svg::new(640.0, 420.0, prec.min(6));
            svg.comment(&format!(
                "base curve k={k} crossover={}",
                crossover.map_or("none".into(), |x| fmt_num(x, prec))
            ));
            frame.axes(&mut svg, "p", "scale factor");
            if let Some(o) = &overlay_doc {
                let ov: Vec<(f64, f64)> = rows
                    .iter()
                    .filter_map(|r| r.overlay.map(|c| (r.p, c)))
                    .collect();
                plot_line(&mut svg, &frame, &ov, "darkorange");
                for (i, m) in o.markers.iter().enumerate() {
                    frame.marker(
                        &mut svg,
                        *m,
                        &format!("p{} = {}", i + 1, fmt_num(*m, 4)),
                        "gray",
                    );
                }
            }
            plot_line(&mut svg, &frame, &pts, "steelblue");
            if let Some(x) = crossover {
                frame.marker(
                    &mut svg,
                    x,
                    &format!("crossover {}", fmt_num(x, 6)),
                    "firebrick",
                );
            }
            if let Some(x) = unshifted {
                frame.marker(
                    &mut svg,
                    x,
                    &format!("unshifted formula {}", fmt_num(x, 6)),
                    "purple",
                );
            }
            svg.finish()
        }
    })
}

#[derive(Serialize)]
struct NetDoc {
    k: usize,
    p: f64,
    split: String,
    net: Net,
    scale_factor: f64,
    hole: HoleDoc,
}

#[derive(Serialize)]
struct HoleDoc {
    x: f64,
    y: f64,
    width: f64,
    height: f64,
    branch: String,
    intruder: Vec<[f64; 2]>,
}

/// Optimal net plus the largest intruder drawn in its maximizing hole.
pub fn cmd_optimal_net(a: &OptimalNetArgs) -> Result<String> {
    if a.k == 0 {
        return usage("--k must be at least 1");
    }
    if !(1..=17).contains(&a.precision) {
        return usage(format!(
            "--precision must be in 1..=17, got {}",
            a.precision
        ));
    }
    let prec = a.precision;
    let split = optimal_split(a.k, a.p)?;
    let net = split.net();
    let hole = max_hole(&net, a.p)?;
    let ratio = hole.width.max(hole.height) / hole.width.min(hole.height);
    let pl = placement(ratio.max(1.0), a.p)?;
    let origin = tripnet_core::Point::new(hole.x, hole.y);
    let corners = pl.embed(origin, hole.width, hole.height);

    match a.format {
        Format::Json => {
            let doc = NetDoc {
                k: a.k,
                p: a.p,
                split: split.to_string(),
                net: net.clone(),
                scale_factor: round(hole.scale, prec),
                hole: HoleDoc {
                    x: round(hole.x, prec),
                    y: round(hole.y, prec),
                    width: round(hole.width, prec),
                    height: round(hole.height, prec),
                    branch: pl.branch.to_string(),
                    intruder: corners
                        .iter()
                        .map(|q| [round(q.x, prec), round(q.y, prec)])
                        .collect(),
                },
            };
            Ok(to_json(&doc))
        }
        Format::Svg => {
            let size = 400.0;
            let m = 20.0;
            let map = |x: f64, y: f64| (m + x * size, m + (1.0 - y) * size);
            let mut svg = Svg::new(size + 2.0 * m, size + 2.0 * m, prec);
            svg.comment(&format!(
                "{split} k={} p={} scale factor {}",
                a.k,
                fmt_num(a.p, prec),
                fmt_num(hole.scale, prec)
            ));
            svg.rect(
                m,
                m,
                size,
                size,
                "fill=\"none\" stroke=\"black\" stroke-width=\"2\"",
            );
            let (hx, hy) = map(hole.x, hole.y + hole.height);
            svg.rect(
                hx,
                hy,
                hole.width * size,
                hole.height * size,
                "fill=\"#fde9c9\" stroke=\"none\"",
            );
            let red = "stroke=\"firebrick\" stroke-width=\"2\"";
            for &x in net.vertical() {
                svg.line(map(x, 0.0), map(x, 1.0), red);
            }
            for &y in net.horizontal() {
                svg.line(map(0.0, y), map(1.0, y), red);
            }
            let pts: Vec<(f64, f64)> = corners.iter().map(|q| map(q.x, q.y)).collect();
            svg.polygon(
                &pts,
                "fill=\"steelblue\" fill-opacity=\"0.6\" stroke=\"navy\" stroke-width=\"1\"",
            );
            Ok(svg.finish())
        }
        Format::Csv => usage("optimal-net supports --format json or svg"),
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let step = |default: f64| a.step.unwrap_or(default);
    let report: SuiteReport = match a.suite {
        Suite::CurveOracle => {
            let cfg = SweepConfig {
                theta_resolution: a.theta_res,
                ..SweepConfig::default()
            };
            curve_oracle_suite(a.n, cfg, step(0.125))?
        }
        Suite::TheoremEven => theorem_suite(
            a.k.unwrap_or(4),
            PGrid::new(a.p_min, a.p_max, step(1.0 / 64.0))?,
            Parity::Even,
        )?,
        Suite::TheoremOdd => theorem_suite(
            a.k.unwrap_or(3),
            PGrid::new(a.p_min, a.p_max, step(1.0 / 64.0))?,
            Parity::Odd,
        )?,
        Suite::Irregular => {
            irregular_suite(a.k.unwrap_or(4), a.p, a.count.unwrap_or(1000), a.seed)?
        }
        Suite::Lagrange => {
            let k = a.k.unwrap_or(4);
            let c_primes = match a.c_prime {
                Some(c) => vec![c],
                None => {
                    let w1 = crossover_w(1.0)?;
                    [w1, 3.0, 5.0, 10.0]
                        .iter()
                        .map(|&p| grid_diagonal_scale(k, p))
                        .collect::<std::result::Result<_, _>>()?
                }
            };
            lagrange_suite(k, &c_primes)?
        }
        Suite::LocalOptimum => {
            let cfg = PerturbationConfig {
                pivot_height: a.pivot_height,
                ..Default::default()
            };
            local_optimum_suite(
                a.k.unwrap_or(3),
                a.count.unwrap_or(500),
                a.epsilon,
                a.seed,
                cfg,
            )?
        }
    };
    Ok(Outcome {
        text: report.to_json() + "\n",
        success: report.passed,
        failure: report.failures.first().cloned(),
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("document serializes") + "\n"
}

//! Command-line interface.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use floatgeo_core::directions::default_directions;
use floatgeo_core::{
    buoyancy_point, contact_point, decompose_flotation_2d, default_paths, make_counterexample, reconstruct,
    reconstruct_from_samples, singular_set, CurvePiece, Dim, FlotationCurve, Polytope, PolytopeFlotation, Vec3,
    EPS_GEO,
};
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{CliError, CliResult};
use crate::schema::{
    BuoyancyDoc, CrossingDoc, CurveDoc, FlotationDoc, PairDoc, PolytopeDoc, ReconstructionDoc, VerifyDoc,
};
use crate::svg::Figure;
use crate::sweep::sweep;
use crate::table::{columns, num, nums, Table};
use crate::verify;

/// Environment variable overriding the geometric tolerance used to build
/// input bodies.
pub const TOL_VAR: &str = "FLOATGEO_TOL";

const DELTA_MIN: f64 = 1e-3;
/// Angles used to draw curves.
const CURVE_STEPS: usize = 1440;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "floatgeo", version, about = "Flotation and buoyancy surfaces of convex polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input document.
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Density in [1e-3, 1 - 1e-3]; defaults to the input's density.
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Number of directions.
    #[arg(long, global = true, default_value_t = 360)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tent height of the counterexample.
    #[arg(long, global = true, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the flotation surface: levels and contact points.
    Flotation {
        /// Scan for singular directions and fit vertices instead.
        #[arg(long)]
        crossings: bool,
    },
    /// Sample the buoyancy surface: centroids of the submerged caps.
    Buoyancy,
    /// Split a planar flotation curve into hyperbolic arcs and corners.
    Decompose,
    /// Rebuild a polygon from a flotation curve or from flotation samples.
    Reconstruct {
        /// Known polygon to measure the reconstruction against.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Build two polygons with equal flotation curves at density 1/2.
    Counterexample,
    /// Run the invariant suite and report residuals.
    Verify,
}

/// Parses the arguments, runs the command and returns the exit status.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("floatgeo: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<()> {
    if cli.samples < 4 {
        return Err(CliError::Invalid(format!("--samples must be at least 4, got {}", cli.samples)));
    }
    if cli.threads == 0 {
        return Err(CliError::Invalid("--threads must be at least 1".into()));
    }
    if let Some(d) = cli.delta {
        check_delta(d)?;
    }
    let eps = geo_tolerance()?;
    let bytes = match &cli.command {
        Command::Flotation { crossings } => flotation(cli, eps, *crossings)?,
        Command::Buoyancy => buoyancy(cli, eps)?,
        Command::Decompose => decompose(cli, eps)?,
        Command::Reconstruct { truth } => reconstruct_cmd(cli, eps, truth.as_deref())?,
        Command::Counterexample => counterexample(cli, eps)?,
        Command::Verify => {
            let p = read_polytope(cli, eps)?;
            let delta = resolve_delta(cli, &p)?;
            let report = verify::run(&p, delta, cli.samples, cli.seed, cli.threads)?;
            write_out(cli, &verify_output(cli, &report)?)?;
            if !report.pass {
                let failed = report.checks.iter().filter(|c| !c.pass).count();
                return Err(CliError::ChecksFailed {
                    failed,
                    total: report.checks.len(),
                });
            }
            return Ok(());
        }
    };
    write_out(cli, &bytes)
}

fn check_delta(d: f64) -> CliResult<()> {
    if !(DELTA_MIN..=1.0 - DELTA_MIN).contains(&d) {
        return Err(CliError::Invalid(format!(
            "--delta must lie in [{DELTA_MIN}, {}], got {d}",
            1.0 - DELTA_MIN
        )));
    }
    Ok(())
}

fn geo_tolerance() -> CliResult<f64> {
    match std::env::var(TOL_VAR) {
        Err(_) => Ok(EPS_GEO),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(CliError::Invalid(format!("{TOL_VAR} must be a positive number, got {s:?}"))),
        },
    }
}

fn input_path(cli: &Cli) -> CliResult<&Path> {
    cli.input
        .as_deref()
        .ok_or_else(|| CliError::Invalid("missing --in".into()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

fn read_polytope(cli: &Cli, eps: f64) -> CliResult<Polytope> {
    let doc: PolytopeDoc = read_json(input_path(cli)?)?;
    doc.to_polytope(eps)
}

fn resolve_delta(cli: &Cli, p: &Polytope) -> CliResult<f64> {
    let d = cli.delta.or(p.density()).ok_or_else(|| {
        CliError::Invalid("no density: pass --delta or set \"density\" in the input".into())
    })?;
    check_delta(d)?;
    Ok(d)
}

fn planar(p: &Polytope, what: &str) -> CliResult<()> {
    if p.dim() != Dim::Two {
        return Err(CliError::Invalid(format!("{what} needs a planar body")));
    }
    Ok(())
}

fn write_out(cli: &Cli, bytes: &[u8]) -> CliResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, bytes).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout().write_all(bytes).map_err(|source| CliError::Write {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn to_json<T: Serialize>(doc: &T) -> CliResult<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(doc).map_err(|e| CliError::Invalid(format!("json: {e}")))?;
    s.push(b'\n');
    Ok(s)
}

fn flotation(cli: &Cli, eps: f64, crossings: bool) -> CliResult<Vec<u8>> {
    let p = read_polytope(cli, eps)?;
    let delta = resolve_delta(cli, &p)?;
    let dim = p.dim();
    if crossings {
        let access = PolytopeFlotation::new(&p, delta)?;
        let set = singular_set(&access, &default_paths(dim), cli.samples)?;
        return match cli.format {
            Format::Json => to_json(&CrossingDoc::new(dim, &set)),
            Format::Csv => {
                let mut header = columns("v", dim.get());
                header.push("residual".into());
                let mut t = Table::new(&header)?;
                for g in &set.groups {
                    let mut row = nums(&g.point.to_vec(dim));
                    row.push(num(g.residual));
                    t.row(&row)?;
                }
                t.finish()
            }
            Format::Svg => {
                planar(&p, "svg output")?;
                let mut fig = Figure::new();
                fig.polygon("polygon", "black", p.vertices());
                for g in &set.groups {
                    fig.dot("vertices", "red", g.point);
                }
                Ok(fig.render().into_bytes())
            }
        };
    }
    let dirs = default_directions(dim, cli.samples);
    let samples = sweep(&dirs, cli.threads, |&t| contact_point(&p, t, delta))?;
    match cli.format {
        Format::Json => to_json(&FlotationDoc::new(dim, delta, &samples)),
        Format::Csv => {
            let d = dim.get();
            let mut header = columns("theta", d);
            header.push("h".into());
            header.extend(columns("contact", d));
            header.push("residual".into());
            let mut t = Table::new(&header)?;
            for s in &samples {
                let mut row = nums(&s.theta.to_vec(dim));
                row.push(num(s.h));
                row.extend(nums(&s.contact.to_vec(dim)));
                row.push(num(s.residual));
                t.row(&row)?;
            }
            t.finish()
        }
        Format::Svg => {
            planar(&p, "svg output")?;
            let mut fig = Figure::new();
            fig.polygon("polygon", "black", p.vertices());
            let pts: Vec<Vec3> = samples.iter().map(|s| s.contact).collect();
            fig.polygon("curve", "blue", &pts);
            Ok(fig.render().into_bytes())
        }
    }
}

fn buoyancy(cli: &Cli, eps: f64) -> CliResult<Vec<u8>> {
    let p = read_polytope(cli, eps)?;
    let delta = resolve_delta(cli, &p)?;
    let dim = p.dim();
    let dirs = default_directions(dim, cli.samples);
    let samples = sweep(&dirs, cli.threads, |&t| buoyancy_point(&p, t, delta))?;
    match cli.format {
        Format::Json => to_json(&BuoyancyDoc::new(dim, delta, &samples)),
        Format::Csv => {
            let d = dim.get();
            let mut header = columns("theta", d);
            header.push("h".into());
            header.extend(columns("center", d));
            let mut t = Table::new(&header)?;
            for s in &samples {
                let mut row = nums(&s.theta.to_vec(dim));
                row.push(num(s.h));
                row.extend(nums(&s.center.to_vec(dim)));
                t.row(&row)?;
            }
            t.finish()
        }
        Format::Svg => {
            planar(&p, "svg output")?;
            let mut fig = Figure::new();
            fig.polygon("polygon", "black", p.vertices());
            let pts: Vec<Vec3> = samples.iter().map(|s| s.center).collect();
            fig.polygon("curve", "blue", &pts);
            Ok(fig.render().into_bytes())
        }
    }
}

fn draw_curve(fig: &mut Figure, curve: &FlotationCurve) {
    let pts: Vec<Vec3> = (0..CURVE_STEPS)
        .filter_map(|k| curve.contact(TAU * k as f64 / CURVE_STEPS as f64).ok())
        .collect();
    fig.polygon("curve", "blue", &pts);
    for piece in &curve.pieces {
        match piece {
            CurvePiece::Arc(a) => {
                let r = a.angle_range;
                let ends = [a.chord_endpoints(r.start), a.chord_endpoints(r.end)];
                for i in 0..2 {
                    let reach = ends[0][i].dist(a.apex).max(ends[1][i].dist(a.apex));
                    fig.segment("asymptotes", "gray", a.apex, a.apex + a.directions[i] * reach);
                }
            }
            CurvePiece::Corner(c) => fig.dot("corners", "blue", c.point),
        }
    }
}

fn decompose(cli: &Cli, eps: f64) -> CliResult<Vec<u8>> {
    let p = read_polytope(cli, eps)?;
    planar(&p, "decompose")?;
    let delta = resolve_delta(cli, &p)?;
    let dec = decompose_flotation_2d(&p, delta)?;
    match cli.format {
        Format::Json => to_json(&CurveDoc::from_decomposition(&dec)),
        Format::Csv => {
            let header: Vec<String> = [
                "kind", "angle_start", "angle_end", "x", "y", "d1_x", "d1_y", "d2_x", "d2_y", "area_const",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let mut t = Table::new(&header)?;
            for piece in &dec.curve.pieces {
                let r = piece.range();
                let mut row = vec![String::new(), num(r.start), num(r.end)];
                match piece {
                    CurvePiece::Arc(a) => {
                        row[0] = "arc".into();
                        row.extend(nums(&[
                            a.apex.x,
                            a.apex.y,
                            a.directions[0].x,
                            a.directions[0].y,
                            a.directions[1].x,
                            a.directions[1].y,
                            a.area_const,
                        ]));
                    }
                    CurvePiece::Corner(c) => {
                        row[0] = "corner".into();
                        row.extend(nums(&[c.point.x, c.point.y]));
                        row.extend(std::iter::repeat_n(String::new(), 5));
                    }
                }
                t.row(&row)?;
            }
            t.finish()
        }
        Format::Svg => {
            let mut fig = Figure::new();
            fig.polygon("polygon", "black", p.vertices());
            if !dec.w.is_empty() {
                fig.polygon("w", "green", &dec.w);
            }
            draw_curve(&mut fig, &dec.curve);
            Ok(fig.render().into_bytes())
        }
    }
}

fn reconstruct_cmd(cli: &Cli, eps: f64, truth: Option<&Path>) -> CliResult<Vec<u8>> {
    if cli.delta == Some(0.5) {
        return Err(floatgeo_core::Error::HalfDensity.into());
    }
    let path = input_path(cli)?;
    let value: serde_json::Value = read_json(path)?;
    let parse = |source| CliError::Parse {
        path: path.into(),
        source,
    };
    let (mut report, curve, delta) = if value.get("pieces").is_some() {
        let doc: CurveDoc = serde_json::from_value(value).map_err(parse)?;
        let delta = cli.delta.unwrap_or(doc.delta);
        check_delta(delta)?;
        let curve = FlotationCurve { delta, ..doc.to_curve() };
        (reconstruct(&curve, delta)?, Some(curve), delta)
    } else if value.get("samples").is_some() {
        let doc: FlotationDoc = serde_json::from_value(value).map_err(parse)?;
        let delta = cli.delta.unwrap_or(doc.delta);
        check_delta(delta)?;
        (reconstruct_from_samples(&doc.curve_points()?, delta)?, None, delta)
    } else {
        return Err(CliError::Invalid(format!(
            "{} holds neither a curve (\"pieces\") nor flotation samples (\"samples\")",
            path.display()
        )));
    };
    if let Some(t) = truth {
        let doc: PolytopeDoc = read_json(t)?;
        report.compare_to(&doc.to_polytope(eps)?);
    }
    match cli.format {
        Format::Json => to_json(&ReconstructionDoc::new(&report, delta)),
        Format::Csv => {
            let mut t = Table::new(&columns("v", 2))?;
            for v in &report.polygon {
                t.row(&nums(&[v.x, v.y]))?;
            }
            t.finish()
        }
        Format::Svg => {
            let mut fig = Figure::new();
            if !report.w.is_empty() {
                fig.polygon("w", "green", &report.w);
            }
            fig.polygon("polygon", "black", &report.polygon);
            for s in report.recovered_from_w.iter().chain(&report.chased_segments) {
                fig.segment("segments", "red", s[0], s[1]);
            }
            if let Some(c) = &curve {
                draw_curve(&mut fig, c);
            }
            Ok(fig.render().into_bytes())
        }
    }
}

fn counterexample(cli: &Cli, eps: f64) -> CliResult<Vec<u8>> {
    let base = read_polytope(cli, eps)?;
    planar(&base, "counterexample")?;
    let (p, q) = make_counterexample(&base, cli.epsilon)?;
    match cli.format {
        Format::Json => to_json(&PairDoc {
            epsilon: cli.epsilon,
            p: PolytopeDoc::from_polytope(&p),
            q: PolytopeDoc::from_polytope(&q),
        }),
        Format::Csv => {
            let mut header = vec!["body".to_string()];
            header.extend(columns("v", 2));
            let mut t = Table::new(&header)?;
            for (name, body) in [("p", &p), ("q", &q)] {
                for v in body.vertices() {
                    let mut row = vec![name.to_string()];
                    row.extend(nums(&[v.x, v.y]));
                    t.row(&row)?;
                }
            }
            t.finish()
        }
        Format::Svg => {
            let mut fig = Figure::new();
            fig.polygon("polygon", "black", p.vertices());
            fig.polygon("polygon_q", "red", q.vertices());
            let dec = decompose_flotation_2d(&p, 0.5)?;
            draw_curve(&mut fig, &dec.curve);
            Ok(fig.render().into_bytes())
        }
    }
}

fn verify_output(cli: &Cli, report: &VerifyDoc) -> CliResult<Vec<u8>> {
    match cli.format {
        Format::Json => to_json(report),
        Format::Csv => {
            let header: Vec<String> = ["name", "residual", "tolerance", "samples", "pass"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            let mut t = Table::new(&header)?;
            for c in &report.checks {
                t.row(&[
                    c.name.clone(),
                    num(c.residual),
                    num(c.tolerance),
                    c.samples.to_string(),
                    c.pass.to_string(),
                ])?;
            }
            t.finish()
        }
        Format::Svg => Err(CliError::Invalid("verify writes json or csv".into())),
    }
}

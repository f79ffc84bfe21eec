//! The `pythagoras` command line.
//!
//! Exit status: 0 when every residual is within tolerance, 1 on a
//! verification failure, 2 on a usage error.

pub mod frame;
pub mod json;
pub mod suites;

use std::fmt::Write as _;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curved::cities::{CityTable, EARTH_RADIUS_KM};
use crate::curved::{
    geodesic_distance, latlon_point, right_hypotenuse, triangle_angles, GeodesicTriangle, Geometry, GeometryKind,
    SurfacePoint,
};
use crate::projections::{complex_subspace_volumes, real_projection_volumes};
use crate::simplex::RightSimplex;
use frame::{parse_frame, FrameInput};
use suites::{verify, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pythagoras", version, about = "Pythagorean identities on flat, curved and complex spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a randomized identity-vs-oracle suite and print a JSON report
    Verify(VerifyArgs),
    /// Geodesic distance between two points, optionally through a third
    Distance(DistanceArgs),
    /// Face volumes, heights and residuals of a right-corner simplex
    Simplex(SimplexArgs),
    /// Projection volumes of the frame in a JSON file
    Project(ProjectArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// euclid, spherical, hyperbolic, unified, proper, simplex, degua,
    /// projection, corollary, complex-line, complex-subspace or all
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    #[value(alias = "sphere")]
    Spherical,
    #[value(alias = "plane", alias = "flat")]
    Euclidean,
    #[value(alias = "hyperboloid")]
    Hyperbolic,
}

impl From<GeometryArg> for GeometryKind {
    fn from(g: GeometryArg) -> Self {
        match g {
            GeometryArg::Spherical => GeometryKind::Spherical,
            GeometryArg::Euclidean => GeometryKind::Euclidean,
            GeometryArg::Hyperbolic => GeometryKind::Hyperbolic,
        }
    }
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    #[arg(long, value_enum, default_value = "spherical")]
    pub geometry: GeometryArg,
    /// Radius of the sphere or pseudo-radius of the hyperboloid
    #[arg(long, default_value_t = EARTH_RADIUS_KM)]
    pub radius: f64,
    /// Start point: "lat,lon" in degrees on the sphere, "x,y" on the plane or
    /// hyperboloid, or "x0,x1,x2" embedding coordinates
    #[arg(long, allow_hyphen_values = true, required_unless_present = "cities", conflicts_with = "cities")]
    pub from: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "cities", conflicts_with = "cities")]
    pub to: Option<String>,
    /// Two names from the bundled city table, e.g. quito,portoalegre
    #[arg(long)]
    pub cities: Option<String>,
    /// Intermediate point or city; the two legs meet there
    #[arg(long, allow_hyphen_values = true)]
    pub via: Option<String>,
    /// Also print the right-angle hypotenuse from the two legs, curved and
    /// flat (√(b² + c²)), and their difference
    #[arg(long, requires = "via")]
    pub compare: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SimplexArgs {
    /// Leg lengths a_1 … a_n of the right corner
    #[arg(required = true, allow_negative_numbers = true)]
    pub legs: Vec<f64>,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    /// JSON frame file: {"n", "m", "vectors"}
    pub file: std::path::PathBuf,
    /// Entries are complex, written as [re, im]
    #[arg(long)]
    pub complex: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, passed: bool) -> Self {
        Output { stdout, stderr: String::new(), code: if passed { EXIT_OK } else { EXIT_FAILURE } }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Output { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output::ok(text, true),
                _ => Output { stdout: String::new(), stderr: text, code: EXIT_USAGE },
            };
        }
    };
    match cli.command {
        Command::Verify(a) => cmd_verify(&a),
        Command::Distance(a) => cmd_distance(&a),
        Command::Simplex(a) => cmd_simplex(&a),
        Command::Project(a) => cmd_project(&a),
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Output {
    if !(a.tolerance >= 0.0) {
        return Output::usage(format!("tolerance must be non-negative, got {}", a.tolerance));
    }
    let report = verify(a.suite, a.seed, a.tolerance, a.cases);
    Output::ok(json::to_string(&report) + "\n", report.failures == 0)
}

fn numbers(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("malformed coordinate {s:?} in {text:?}")))
        .collect()
}

/// Reads a point for `g`, or a city name when `cities` is given and the text
/// is not numeric.
fn parse_point(g: &Geometry, text: &str, cities: Option<&CityTable>) -> Result<SurfacePoint, String> {
    let coords = match (numbers(text), cities) {
        (Ok(c), _) => c,
        (Err(_), Some(table)) => {
            return table.get(text).and_then(|c| c.point(g.radius().unwrap())).map_err(|e| e.to_string())
        }
        (Err(e), None) => return Err(e),
    };
    let point = match (g.kind(), coords.as_slice()) {
        (_, &[x0, x1, x2]) => SurfacePoint::on(g, [x0, x1, x2]),
        (GeometryKind::Spherical, &[lat, lon]) => latlon_point(lat, lon, g.radius().unwrap()),
        (GeometryKind::Euclidean, &[x, y]) => SurfacePoint::on(g, [x, y, 0.0]),
        (GeometryKind::Hyperbolic, &[x1, x2]) => {
            let r = g.radius().unwrap();
            SurfacePoint::on(g, [r.hypot(x1).hypot(x2), x1, x2])
        }
        _ => return Err(format!("expected 2 or 3 coordinates, got {text:?}")),
    };
    point.map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct DistanceReport {
    geometry: GeometryKind,
    radius: Option<f64>,
    distance: f64,
    legs: Option<[f64; 2]>,
    via_angle_degrees: Option<f64>,
    right_hypotenuse: Option<f64>,
    flat_estimate: Option<f64>,
    discrepancy: Option<f64>,
}

fn distance_report(a: &DistanceArgs) -> Result<DistanceReport, String> {
    let g = Geometry::new(a.geometry.into(), a.radius).map_err(|e| e.to_string())?;
    let table = match &a.cities {
        Some(_) if g.kind() != GeometryKind::Spherical => return Err("--cities requires the spherical geometry".into()),
        Some(_) => Some(CityTable::bundled()),
        None => None,
    };
    let (from, to) = match &a.cities {
        Some(names) => {
            let (p, q) = names.split_once(',').ok_or("--cities expects two names separated by a comma")?;
            (parse_point(&g, p.trim(), table.as_ref())?, parse_point(&g, q.trim(), table.as_ref())?)
        }
        None => (
            parse_point(&g, a.from.as_deref().unwrap_or_default(), None)?,
            parse_point(&g, a.to.as_deref().unwrap_or_default(), None)?,
        ),
    };
    let dist = |p: &SurfacePoint, q: &SurfacePoint| geodesic_distance(&g, p, q).map_err(|e| e.to_string());
    let mut report = DistanceReport {
        geometry: g.kind(),
        radius: g.radius(),
        distance: dist(&from, &to)?,
        legs: None,
        via_angle_degrees: None,
        right_hypotenuse: None,
        flat_estimate: None,
        discrepancy: None,
    };
    if let Some(via) = &a.via {
        let table = table.or_else(|| (g.kind() == GeometryKind::Spherical).then(CityTable::bundled));
        let via = parse_point(&g, via, table.as_ref())?;
        let (b, c) = (dist(&from, &via)?, dist(&via, &to)?);
        report.legs = Some([b, c]);
        let angle = GeodesicTriangle::from_vertices(g, [via, from, to])
            .and_then(|t| triangle_angles(&t))
            .map(|(alpha, _, _)| alpha.to_degrees());
        report.via_angle_degrees = angle.ok();
        if a.compare {
            let flat = b.hypot(c);
            let curved = right_hypotenuse(&g, b, c).map_err(|e| e.to_string())?;
            report.right_hypotenuse = Some(curved);
            report.flat_estimate = Some(flat);
            report.discrepancy = Some(flat - curved);
        }
    }
    Ok(report)
}

pub fn cmd_distance(a: &DistanceArgs) -> Output {
    let r = match distance_report(a) {
        Ok(r) => r,
        Err(e) => return Output::usage(e),
    };
    if a.json {
        return Output::ok(json::to_string(&r) + "\n", true);
    }
    let mut out = String::new();
    match r.radius {
        Some(radius) => writeln!(out, "geometry          {} (R = {radius})", r.geometry),
        None => writeln!(out, "geometry          {}", r.geometry),
    }
    .unwrap();
    writeln!(out, "distance          {:.6}", r.distance).unwrap();
    if let Some([b, c]) = r.legs {
        writeln!(out, "leg from-via      {b:.6}").unwrap();
        writeln!(out, "leg via-to        {c:.6}").unwrap();
    }
    if let Some(angle) = r.via_angle_degrees {
        writeln!(out, "angle at via      {angle:.6} deg").unwrap();
    }
    if let (Some(rh), Some(flat), Some(d)) = (r.right_hypotenuse, r.flat_estimate, r.discrepancy) {
        writeln!(out, "right hypotenuse  {rh:.6}").unwrap();
        writeln!(out, "flat estimate     {flat:.6}").unwrap();
        writeln!(out, "discrepancy       {d:.6} ({:.3}%)", 100.0 * d / rh).unwrap();
    }
    Output::ok(out, true)
}

#[derive(Debug, Serialize)]
struct SimplexReport {
    legs: Vec<f64>,
    face_volumes: Vec<f64>,
    heights: Vec<f64>,
    volume: f64,
    hypotenusal_gram: f64,
    hypotenusal_pythagoras: f64,
    pythagoras_residual: f64,
    normal_closure_residual: f64,
}

pub fn cmd_simplex(a: &SimplexArgs) -> Output {
    if !(a.tolerance >= 0.0) {
        return Output::usage(format!("tolerance must be non-negative, got {}", a.tolerance));
    }
    let s = match RightSimplex::new(a.legs.clone()) {
        Ok(s) => s,
        Err(e) => return Output::usage(e),
    };
    let n = s.dimension();
    let r = SimplexReport {
        legs: s.legs().to_vec(),
        face_volumes: s.face_volumes(),
        heights: (0..=n).map(|k| s.height(k).unwrap()).collect(),
        volume: s.volume(),
        hypotenusal_gram: s.hypotenusal_volume_gram(),
        hypotenusal_pythagoras: s.hypotenusal_volume_pythagoras(),
        pythagoras_residual: s.pythagoras_residual(),
        normal_closure_residual: s.normal_closure_residual(),
    };
    let passed = r.pythagoras_residual <= a.tolerance && r.normal_closure_residual <= a.tolerance;
    if a.json {
        return Output::ok(json::to_string(&r) + "\n", passed);
    }
    let mut out = String::new();
    let list = |xs: &[f64]| xs.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" ");
    writeln!(out, "legs                     {}", list(&r.legs)).unwrap();
    for (k, (v, h)) in r.face_volumes.iter().zip(&r.heights).enumerate() {
        writeln!(out, "face {k:<3} volume {v:<22} height {h}").unwrap();
    }
    writeln!(out, "volume                   {}", r.volume).unwrap();
    writeln!(out, "hypotenusal (Gram)       {}", r.hypotenusal_gram).unwrap();
    writeln!(out, "hypotenusal (Pythagoras) {}", r.hypotenusal_pythagoras).unwrap();
    writeln!(out, "pythagoras residual      {:e}", r.pythagoras_residual).unwrap();
    writeln!(out, "normal closure residual  {:e}", r.normal_closure_residual).unwrap();
    Output::ok(out, passed)
}

pub fn cmd_project(a: &ProjectArgs) -> Output {
    if !(a.tolerance >= 0.0) {
        return Output::usage(format!("tolerance must be non-negative, got {}", a.tolerance));
    }
    let text = match std::fs::read_to_string(&a.file) {
        Ok(t) => t,
        Err(e) => return Output::usage(format!("{}: {e}", a.file.display())),
    };
    let report = match parse_frame(&text, a.complex) {
        Ok(FrameInput::Real(f)) => real_projection_volumes(&f),
        Ok(FrameInput::Complex(f)) => complex_subspace_volumes(&f),
        Err(e) => return Output::usage(format!("{}: {e}", a.file.display())),
    };
    Output::ok(json::to_string(&report) + "\n", report.residual <= a.tolerance)
}

//! Command-line interface for the `hyp4` crate.
//!
//! Exposes the verification suites, the closed-form bound registry, orbit
//! counting against those bounds, cone boundary meshes and film
//! intersection counting. Machine-readable results go to stdout as pretty
//! JSON; meshes and CSV tables go to the paths named on the command line.
//!
//! Exit codes: `0` when every requested check passes, `1` when a
//! verification suite or an orbit count violates its bound, `2` on
//! configuration errors (bad flags, unreadable files, invalid geometry).

use std::collections::BTreeMap;
use std::fs;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use nalgebra::{Unit, Vector3};
use serde::Deserialize;
use serde_json::json;

use hyp4::bounds;
use hyp4::films::{
    count_film_film_intersections, count_film_plane_intersections, write_roots_csv,
};
use hyp4::verify::{self, SuiteConfig, VerificationReport};
use hyp4::{
    ElementaryGroup, FilmSheet, GeodesicPlane2, Isometry4, MargulisCone, Point4, RuledFilm,
};

/// Word-length cap per generator when a group spec does not give one.
const DEFAULT_TRUNCATION: u32 = 64;

#[derive(Parser)]
#[command(name = "hyp4", version, about = "Thin-part geometry toolkit for hyperbolic 4-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs one Monte-Carlo verification suite, or `all` of them.
    Verify(VerifyArgs),
    /// Evaluates a closed-form bound from the registry on named inputs.
    Bounds(BoundsArgs),
    /// Enumerates an orbit inside a ball and compares the counts with the
    /// registered orbit-count bounds.
    Orbit(OrbitArgs),
    /// Samples the boundary of a thin-part cone and writes it as a mesh.
    ConeMesh(ConeMeshArgs),
    /// Counts transversal intersections of a ruled film with a geodesic
    /// plane or with the orbit of a second film.
    FilmCount(FilmCountArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite identifier (see `verify --help` output of `all` runs), or `all`.
    suite: String,
    /// Trials per suite.
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Base RNG seed; per-trial streams derive from it deterministically.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Margulis-style constant μ used by the suites that take one.
    #[arg(long, default_value_t = 0.1)]
    mu: f64,
    /// Thin-part threshold ν used by the cone suites.
    #[arg(long, default_value_t = 0.3)]
    nu: f64,
    /// Writes the full report (array of reports for `all`) as JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Formula identifier, e.g. `C1`, `k_lemma5` or `N_theorem4`.
    formula_id: String,
    /// Named inputs as `key=value` pairs, e.g. `--in r=0.1 nu=1`.
    #[arg(long = "in", value_name = "KEY=VALUE", num_args = 1.., required = true)]
    inputs: Vec<String>,
}

#[derive(Args)]
struct OrbitArgs {
    /// Group description: inline JSON or a path to a JSON file.
    #[arg(long)]
    group: String,
    /// Ball center as four comma-separated coordinates `x1,x2,x3,x4`.
    #[arg(long)]
    center: String,
    /// Ball radius.
    #[arg(long)]
    radius: f64,
    /// Thin-part threshold ν fed to the closed-form bounds.
    #[arg(long, default_value_t = 0.3)]
    nu: f64,
}

#[derive(Args)]
struct ConeMeshArgs {
    /// Group description: inline JSON or a path to a JSON file.
    #[arg(long)]
    group: String,
    /// Thin-part threshold ν of the cone.
    #[arg(long)]
    nu: f64,
    /// Grid resolution per mesh direction.
    #[arg(long, default_value_t = 48)]
    res: usize,
    /// Output path; `.csv` writes ambient coordinates, anything else OBJ.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FilmCountArgs {
    /// Job description: inline JSON or a path to a JSON file.
    #[arg(long)]
    spec: String,
}

/// One isometry or group, as given on the command line or in job files.
///
/// `kind` selects the constructor: `loxodromic` (with `lambda`, optional
/// `theta`/`rotation_plane`/`orientation`), `parabolic` (with
/// `translation`, optional `theta`/`rotation_axis`/`orientation`) or
/// `group` (with `generators`, a list of the former two). `truncation`
/// caps the word length per generator when the spec is used as a group.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    kind: String,
    #[serde(default)]
    lambda: Option<f64>,
    #[serde(default)]
    theta: Option<f64>,
    #[serde(default)]
    rotation_plane: Option<[[f64; 3]; 2]>,
    #[serde(default)]
    rotation_axis: Option<[f64; 3]>,
    #[serde(default)]
    translation: Option<[f64; 3]>,
    #[serde(default)]
    orientation: Option<f64>,
    #[serde(default)]
    generators: Option<Vec<GroupSpec>>,
    #[serde(default)]
    truncation: Option<Vec<u32>>,
}

/// A film job: one film plus either a plane or a second film with a group.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilmJob {
    film: FilmSpec,
    #[serde(default)]
    plane: Option<PlaneSpec>,
    #[serde(default)]
    film2: Option<FilmSpec>,
    #[serde(default)]
    group: Option<GroupSpec>,
    /// Optional path for the film-film root table
    /// (`sheet1,s,t,sheet2,u,v,x1,x2,x3,x4,sign`).
    #[serde(default)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilmSpec {
    isometry: GroupSpec,
    x: [f64; 4],
    z: [f64; 4],
}

/// A geodesic 2-plane: either three spanning points or a vertical plane
/// over a boundary line.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaneSpec {
    #[serde(default)]
    points: Option<[[f64; 4]; 3]>,
    #[serde(default)]
    vertical: Option<VerticalPlaneSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerticalPlaneSpec {
    point: [f64; 3],
    direction: [f64; 3],
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Orbit(args) => cmd_orbit(args),
        Command::ConeMesh(args) => cmd_cone_mesh(args),
        Command::FilmCount(args) => cmd_film_count(args),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let mut template = SuiteConfig::new(&args.suite, args.trials, args.seed);
    template.mu = args.mu;
    template.nu = args.nu;
    let (reports, json_text) = if args.suite == "all" {
        let reports = verify::run_all(&template)?;
        let text = serde_json::to_string_pretty(&reports)?;
        (reports, text)
    } else {
        let report = verify::run_suite(&template)?;
        let text = serde_json::to_string_pretty(&report)?;
        (vec![report], text)
    };
    for report in &reports {
        println!("{}", summary_line(report));
    }
    if let Some(path) = &args.json {
        fs::write(path, json_text + "\n")
            .with_context(|| format!("writing report to `{}`", path.display()))?;
    }
    if reports.iter().all(|r| r.pass) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

/// One deterministic line per suite; wall time is deliberately left out.
fn summary_line(report: &VerificationReport) -> String {
    format!(
        "{:<8} {}  trials={} violations={} degeneracies={} worst_margin={:.6e}",
        report.suite_id,
        if report.pass { "pass" } else { "FAIL" },
        report.trials,
        report.violations.len(),
        report.degeneracies,
        report.worst_margin,
    )
}

fn cmd_bounds(args: &BoundsArgs) -> Result<ExitCode> {
    let mut inputs = BTreeMap::new();
    for pair in &args.inputs {
        let (key, value) = pair
            .split_once('=')
            .with_context(|| format!("expected `key=value`, got `{pair}`"))?;
        let value: f64 = value
            .trim()
            .parse()
            .with_context(|| format!("parsing the value in `{pair}`"))?;
        if inputs.insert(key.trim().to_owned(), value).is_some() {
            bail!("duplicate input `{key}`");
        }
    }
    let bound = bounds::evaluate(&args.formula_id, &inputs)
        .with_context(|| format!("known formula ids: {}", bounds::formula_ids().join(", ")))?;
    println!("{}", serde_json::to_string_pretty(&bound)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbit(args: &OrbitArgs) -> Result<ExitCode> {
    let group = load_group(&args.group)?;
    let center = parse_point(&args.center)?;
    let orbit_count = group.count_orbit_in_ball(&center, args.radius)?;
    let ball_movers = group.count_ball_movers(&center, args.radius)?;
    let injectivity_radius = group.injectivity_radius(&center)?;
    let orbit_bound = bounds::lemma1_count_bound(args.radius, args.nu)?;
    let movers_bound = bounds::lemma2_count_bound(args.radius, args.nu)?;
    let hypothesis_met = injectivity_radius >= args.nu;
    let within_bounds =
        orbit_count as f64 <= orbit_bound.value && ball_movers as f64 <= movers_bound.value;
    let pass = !hypothesis_met || within_bounds;
    let out = json!({
        "center": center.coords(),
        "radius": args.radius,
        "nu": args.nu,
        "injectivity_radius": injectivity_radius,
        "hypothesis_met": hypothesis_met,
        "orbit_count": orbit_count,
        "orbit_bound": orbit_bound,
        "ball_movers": ball_movers,
        "movers_bound": movers_bound,
        "pass": pass,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    if pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_cone_mesh(args: &ConeMeshArgs) -> Result<ExitCode> {
    let group = load_group(&args.group)?;
    let cone = MargulisCone::new(group, args.nu)?;
    let mesh = cone.cone_boundary_mesh(args.res)?;
    let as_csv = args
        .out
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let file = File::create(&args.out)
        .with_context(|| format!("creating `{}`", args.out.display()))?;
    let mut writer = BufWriter::new(file);
    if as_csv {
        mesh.write_csv(&mut writer)?;
    } else {
        mesh.write_obj(&mut writer)?;
    }
    writer.flush()?;
    let out = json!({
        "out": args.out.display().to_string(),
        "format": if as_csv { "csv" } else { "obj" },
        "vertices": mesh.vertices.len(),
        "quads": mesh.quads.len(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_film_count(args: &FilmCountArgs) -> Result<ExitCode> {
    let text = read_spec_text(&args.spec)?;
    let job: FilmJob = serde_json::from_str(&text).context("parsing film job")?;
    let film = build_film(&job.film)?;
    match (&job.plane, &job.film2, &job.group) {
        (Some(plane_spec), None, None) => {
            if job.csv.is_some() {
                bail!("`csv` output applies to film-film jobs only");
            }
            let plane = build_plane(plane_spec)?;
            let result = count_film_plane_intersections(&film, &plane)?;
            let roots: Vec<_> = result
                .roots
                .iter()
                .map(|r| {
                    json!({
                        "sheet": sheet_name(r.sheet),
                        "s": r.s,
                        "t": r.t,
                        "point": r.point.coords(),
                    })
                })
                .collect();
            let out = json!({
                "mode": "film-plane",
                "count": result.count(),
                "roots": roots,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        (None, Some(film2_spec), Some(group_spec)) => {
            let film2 = build_film(film2_spec)?;
            let group = build_group(group_spec)?;
            let result = count_film_film_intersections(&film, &film2, &group)?;
            let roots: Vec<_> = result
                .roots
                .iter()
                .map(|r| {
                    json!({
                        "sheet1": sheet_name(r.sheet1),
                        "s": r.s,
                        "t": r.t,
                        "sheet2": sheet_name(r.sheet2),
                        "u": r.u,
                        "v": r.v,
                        "word": r.word,
                        "point": r.point.coords(),
                        "sign": r.sign,
                    })
                })
                .collect();
            let out = json!({
                "mode": "film-film",
                "total": result.total,
                "roots": roots,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            if let Some(path) = &job.csv {
                let file = File::create(path)
                    .with_context(|| format!("creating `{}`", path.display()))?;
                let mut writer = BufWriter::new(file);
                write_roots_csv(&result, &mut writer)?;
                writer.flush()?;
            }
        }
        _ => bail!("job must contain either `plane`, or `film2` together with `group`"),
    }
    Ok(ExitCode::SUCCESS)
}

fn sheet_name(sheet: FilmSheet) -> &'static str {
    match sheet {
        FilmSheet::Translational => "translational",
        FilmSheet::Rotational => "rotational",
    }
}

/// Returns the argument itself when it is inline JSON, otherwise the
/// contents of the file it names.
fn read_spec_text(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_owned())
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading spec file `{arg}`"))
    }
}

fn load_group(arg: &str) -> Result<ElementaryGroup> {
    let text = read_spec_text(arg)?;
    let spec: GroupSpec = serde_json::from_str(&text).context("parsing group spec")?;
    build_group(&spec)
}

fn build_group(spec: &GroupSpec) -> Result<ElementaryGroup> {
    if spec.kind == "group" {
        forbid(spec.lambda.is_some(), "lambda", "group")?;
        forbid(spec.theta.is_some(), "theta", "group")?;
        forbid(spec.rotation_plane.is_some(), "rotation_plane", "group")?;
        forbid(spec.rotation_axis.is_some(), "rotation_axis", "group")?;
        forbid(spec.translation.is_some(), "translation", "group")?;
        forbid(spec.orientation.is_some(), "orientation", "group")?;
        let generator_specs = spec
            .generators
            .as_ref()
            .context("`group` spec requires `generators`")?;
        let generators = generator_specs
            .iter()
            .map(build_element)
            .collect::<Result<Vec<_>>>()?;
        let truncation = match &spec.truncation {
            Some(t) => t.clone(),
            None => vec![DEFAULT_TRUNCATION; generators.len()],
        };
        Ok(ElementaryGroup::new(generators, truncation)?)
    } else {
        let g = build_element(spec)?;
        let truncation = match spec.truncation.as_deref() {
            Some([t]) => *t,
            Some(_) => bail!("a cyclic group takes exactly one truncation entry"),
            None => DEFAULT_TRUNCATION,
        };
        Ok(ElementaryGroup::cyclic(g, truncation)?)
    }
}

fn build_element(spec: &GroupSpec) -> Result<Isometry4> {
    match spec.kind.as_str() {
        "loxodromic" => {
            forbid(spec.translation.is_some(), "translation", "loxodromic")?;
            forbid(spec.rotation_axis.is_some(), "rotation_axis", "loxodromic")?;
            forbid(spec.generators.is_some(), "generators", "loxodromic")?;
            let lambda = spec.lambda.context("loxodromic spec requires `lambda`")?;
            let theta = spec.theta.unwrap_or(0.0);
            let orientation = spec.orientation.unwrap_or(1.0);
            match spec.rotation_plane {
                Some([p, q]) => Ok(Isometry4::loxodromic(
                    lambda,
                    theta,
                    (Vector3::from(p), Vector3::from(q)),
                    orientation,
                )?),
                None if theta == 0.0 => Ok(Isometry4::dilation(lambda)?),
                None => bail!("a twisting loxodromic spec requires `rotation_plane`"),
            }
        }
        "parabolic" => {
            forbid(spec.lambda.is_some(), "lambda", "parabolic")?;
            forbid(spec.rotation_plane.is_some(), "rotation_plane", "parabolic")?;
            forbid(spec.generators.is_some(), "generators", "parabolic")?;
            let tau = Vector3::from(
                spec.translation
                    .context("parabolic spec requires `translation`")?,
            );
            let theta = spec.theta.unwrap_or(0.0);
            let orientation = spec.orientation.unwrap_or(1.0);
            let axis = match spec.rotation_axis {
                Some(a) => Some(
                    Unit::try_new(Vector3::from(a), 1e-12)
                        .ok_or_else(|| anyhow!("`rotation_axis` must be nonzero"))?,
                ),
                None => None,
            };
            Ok(Isometry4::parabolic(theta, axis, tau, orientation)?)
        }
        "group" => bail!("`group` specs are not a single isometry; pass one generator"),
        other => bail!("unknown kind `{other}`; expected `loxodromic`, `parabolic` or `group`"),
    }
}

fn forbid(present: bool, field: &str, kind: &str) -> Result<()> {
    if present {
        bail!("field `{field}` does not apply to kind `{kind}`");
    }
    Ok(())
}

fn build_film(spec: &FilmSpec) -> Result<RuledFilm> {
    if spec.isometry.truncation.is_some() {
        bail!("`truncation` belongs on the group spec, not on a film isometry");
    }
    let g = build_element(&spec.isometry)?;
    let x = point4(spec.x)?;
    let z = point4(spec.z)?;
    Ok(RuledFilm::new(g, x, z)?)
}

fn build_plane(spec: &PlaneSpec) -> Result<GeodesicPlane2> {
    match (&spec.points, &spec.vertical) {
        (Some(points), None) => {
            let a = point4(points[0])?;
            let b = point4(points[1])?;
            let c = point4(points[2])?;
            Ok(GeodesicPlane2::through_points(&a, &b, &c)?)
        }
        (None, Some(v)) => {
            let direction = Unit::try_new(Vector3::from(v.direction), 1e-12)
                .ok_or_else(|| anyhow!("vertical plane `direction` must be nonzero"))?;
            Ok(GeodesicPlane2::vertical(Vector3::from(v.point), &direction)?)
        }
        _ => bail!("plane spec must give either `points` or `vertical`"),
    }
}

fn point4(c: [f64; 4]) -> Result<Point4> {
    Ok(Point4::new(c[0], c[1], c[2], c[3])?)
}

fn parse_point(text: &str) -> Result<Point4> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        bail!("expected four comma-separated coordinates, got `{text}`");
    }
    let mut c = [0.0; 4];
    for (slot, part) in c.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .with_context(|| format!("parsing coordinate `{part}`"))?;
    }
    point4(c)
}

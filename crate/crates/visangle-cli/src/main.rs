//! `visangle`: visual angles of planar convex bodies, exterior integrals
//! of functions of the visual angle, and constant-angle curves.
//!
//! Every command prints one versioned JSON report to stdout and exits 0
//! iff all checked identities pass; computational failures exit 1 with a
//! structured error, usage errors exit 2. Wall-clock timing goes to
//! stderr so reports stay byte-stable.

mod presets;
mod report;
mod weights;

use clap::{Args, Parser, Subcommand};
use report::{Check, RunReport};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use visangle::{
    area_series, circle_mean_estimates, crofton_check, curve, detect_circle, exterior_integral,
    limits, perimeter_identity, pp1_integral, uniqueness_experiment, visual_angle_on_circle,
    visual_angle_point, w_phi_on_circle, ExteriorConfig, FourierSupport, Point,
};

#[derive(Parser)]
#[command(
    name = "visangle",
    version,
    about = "Visual-angle geometry of planar convex bodies",
    after_help = "Bodies are JSON documents {\"a0\": number, \"harmonics\": \
                  [{\"k\": int, \"a\": number, \"b\": number}, ...]} giving the \
                  Fourier coefficients of the support function. The env var \
                  VAL_GRID overrides default grid sizes."
)]
struct Cli {
    /// Run a built-in demonstration instead of a subcommand
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(presets::PRESET_NAMES))]
    preset: Option<String>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Visual angle at a point, or sampled along a circle of viewpoints
    Angle(AngleArgs),
    /// Exterior integrals of functions of the visual angle
    #[command(subcommand)]
    Crofton(CroftonCmd),
    /// Constant-angle curves: sampling, limits, circles, identities
    #[command(subcommand)]
    Isotopic(IsotopicCmd),
}

#[derive(Args)]
struct AngleArgs {
    /// Body JSON file
    #[arg(long)]
    body: PathBuf,
    /// Evaluate at one viewpoint, given as "x,y"
    #[arg(long, conflicts_with = "circle")]
    point: Option<String>,
    /// Sample viewpoints on the circle of this radius about the origin
    #[arg(long)]
    circle: Option<f64>,
    /// Number of samples along the circle [default: VAL_GRID or 1024]
    #[arg(long)]
    grid: Option<usize>,
    /// Write per-sample CSV (columns phi,theta,w,w_phi) to this path
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CroftonCmd {
    /// Exterior integral of w - sin w against its closed form L^2/2 - pi F
    Check {
        #[arg(long)]
        body: PathBuf,
    },
    /// Exterior integral of a weight, cross-checked against the harmonic
    /// series
    Integral {
        #[arg(long)]
        body: PathBuf,
        /// crofton | sin3 | disc-area | cubic | expression in w
        #[arg(long)]
        f: String,
    },
    /// Fit the integral to a L^2 + b F across the family 1 + t cos(m phi)
    Uniqueness {
        /// crofton | sin3 | disc-area | cubic | expression in w
        #[arg(long)]
        f: String,
        /// Harmonic orders of the family
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        ms: Vec<usize>,
        /// Perturbation amplitude (clamped per body to keep convexity)
        #[arg(long, default_value_t = 0.08)]
        t: f64,
    },
}

#[derive(Subcommand)]
enum IsotopicCmd {
    /// Sample the curve of viewpoints seeing the body under a fixed angle
    Curve {
        #[arg(long)]
        body: PathBuf,
        /// Visual angle, in (0, pi)
        #[arg(long)]
        alpha: f64,
        /// Number of samples [default: VAL_GRID or 1024]
        #[arg(long)]
        n: Option<usize>,
        /// Write per-sample CSV (columns phi,X,Y) to this path
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Closed-form and extrapolated limits of the curves as alpha -> 0
    Limits {
        #[arg(long)]
        body: PathBuf,
    },
    /// Fit a circle to the constant-angle curve
    Detect {
        #[arg(long)]
        body: PathBuf,
        /// Visual angle, in (0, pi)
        #[arg(long)]
        alpha: f64,
        /// Also search over circle centers instead of fitting at the origin
        #[arg(long)]
        search_center: bool,
    },
    /// Build the body p^2 = c0 + c2 cos 2phi + c6 cos 6phi, whose
    /// quarter-angle curve is a circle
    Construct {
        #[arg(long)]
        c0: f64,
        #[arg(long, default_value_t = 0.0)]
        c2: f64,
        #[arg(long, default_value_t = 0.0)]
        c6: f64,
        /// Write the body JSON here
        #[arg(long)]
        out: PathBuf,
    },
    /// Circle-forced identities at the rational angle pi - (m/n) pi
    Identities {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match (&cli.preset, &cli.command) {
        (Some(_), Some(_)) => {
            eprintln!("error: --preset conflicts with a subcommand");
            return ExitCode::from(2);
        }
        (None, None) => {
            eprintln!("error: expected --preset or a subcommand; see --help");
            return ExitCode::from(2);
        }
        _ => {}
    }
    let started = Instant::now();
    let (command_name, outcome) = dispatch(&cli);
    let code = match outcome {
        Ok(report) => report.emit(),
        Err(error) => report::emit_error(&command_name, &error),
    };
    eprintln!("elapsed_ms={}", started.elapsed().as_millis());
    ExitCode::from(code)
}

fn dispatch(cli: &Cli) -> (String, visangle::Result<RunReport>) {
    if let Some(preset) = &cli.preset {
        return (format!("preset {preset}"), presets::run_preset(preset));
    }
    match cli.command.as_ref().expect("validated in main") {
        Command::Angle(args) => ("angle".into(), run_angle(args)),
        Command::Crofton(cmd) => match cmd {
            CroftonCmd::Check { body } => ("crofton check".into(), run_crofton_check(body)),
            CroftonCmd::Integral { body, f } => {
                ("crofton integral".into(), run_crofton_integral(body, f))
            }
            CroftonCmd::Uniqueness { f, ms, t } => (
                "crofton uniqueness".into(),
                run_crofton_uniqueness(f, ms, *t),
            ),
        },
        Command::Isotopic(cmd) => match cmd {
            IsotopicCmd::Curve {
                body,
                alpha,
                n,
                emit,
            } => ("isotopic curve".into(), run_curve(body, *alpha, *n, emit)),
            IsotopicCmd::Limits { body } => ("isotopic limits".into(), run_limits(body)),
            IsotopicCmd::Detect {
                body,
                alpha,
                search_center,
            } => (
                "isotopic detect".into(),
                run_detect(body, *alpha, *search_center),
            ),
            IsotopicCmd::Construct { c0, c2, c6, out } => (
                "isotopic construct".into(),
                run_construct(*c0, *c2, *c6, out),
            ),
            IsotopicCmd::Identities { body, m, n } => {
                ("isotopic identities".into(), run_identities(body, *m, *n))
            }
        },
    }
}

fn load_body(path: &Path) -> visangle::Result<FourierSupport> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| visangle::Error::InvalidBody(format!("cannot read {}: {e}", path.display())))?;
    FourierSupport::from_json_str(&text)
}

/// Grid-size default: explicit flag, then VAL_GRID, then the built-in.
fn grid_default(explicit: Option<usize>, fallback: usize) -> usize {
    explicit
        .or_else(|| std::env::var("VAL_GRID").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(fallback)
}

fn write_csv(path: &Path, header: &str, rows: &[Vec<f64>]) -> visangle::Result<()> {
    use std::io::Write;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path).map_err(|e| {
        visangle::Error::InvalidBody(format!("cannot create {}: {e}", path.display()))
    })?);
    let emit = |out: &mut dyn Write| -> std::io::Result<()> {
        writeln!(out, "{header}")?;
        for row in rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    };
    emit(&mut out)
        .map_err(|e| visangle::Error::InvalidBody(format!("cannot write {}: {e}", path.display())))
}

fn run_angle(args: &AngleArgs) -> visangle::Result<RunReport> {
    let body = load_body(&args.body)?;
    if let Some(spec) = &args.point {
        let (x, y) = parse_point(spec)?;
        let sample = visual_angle_point(&body, Point::new(x, y))?;
        return Ok(RunReport::new("angle")
            .with_body(body.descriptor())
            .with_data(serde_json::to_value(sample).expect("sample serializes")));
    }
    let Some(r) = args.circle else {
        return Err(visangle::Error::InvalidBody(
            "angle needs either --point x,y or --circle R".into(),
        ));
    };
    let n = grid_default(args.grid, 1024);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let phi = 2.0 * PI * i as f64 / n as f64;
        let sample = visual_angle_on_circle(&body, r, phi)?;
        let w_phi = w_phi_on_circle(&body, r, phi)?;
        rows.push(vec![phi, sample.theta, sample.w, w_phi]);
    }
    if let Some(path) = &args.emit {
        write_csv(path, "phi,theta,w,w_phi", &rows)?;
    }
    let means = circle_mean_estimates(&body, r, n.max(512))?;
    Ok(RunReport::new("angle")
        .with_body(body.descriptor())
        .with_data(serde_json::json!({
            "samples": n,
            "radius": r,
            "means": means,
            "emitted": args.emit.as_ref().map(|p| p.display().to_string()),
        })))
}

fn parse_point(spec: &str) -> visangle::Result<(f64, f64)> {
    let parts: Vec<&str> = spec.split(',').collect();
    let parsed = (parts.len() == 2)
        .then(|| Some((parts[0].trim().parse().ok()?, parts[1].trim().parse().ok()?)))
        .flatten();
    parsed.ok_or_else(|| {
        visangle::Error::InvalidBody(format!("--point expects \"x,y\", got {spec:?}"))
    })
}

fn run_crofton_check(path: &Path) -> visangle::Result<RunReport> {
    let body = load_body(path)?;
    let check = crofton_check(&body, &ExteriorConfig::default())?;
    let checks = vec![Check::residual(
        "deficit integral vs L^2/2 - pi F",
        check.relative_error,
        1e-3,
    )];
    Ok(RunReport::new("crofton check")
        .with_body(body.descriptor())
        .with_data(serde_json::to_value(check).expect("check serializes"))
        .with_checks(checks))
}

fn run_crofton_integral(path: &Path, f: &str) -> visangle::Result<RunReport> {
    let body = load_body(path)?;
    let weight = weights::weight_from_flag(f)?;
    let config = ExteriorConfig::default();
    let integral = exterior_integral(&body, &weight, &config)?;
    let series = visangle::cgr_rhs(&body, &weight);
    let checks = vec![Check::residual(
        "quadrature vs harmonic series",
        (integral.value - series).abs() / series.abs(),
        1e-3,
    )];
    Ok(RunReport::new("crofton integral")
        .with_body(body.descriptor())
        .with_data(serde_json::json!({
            "weight": weight.name(),
            "integral": integral,
            "series": series,
            "grids": {
                "theta_nodes": config.theta_nodes,
                "r_max_factor": config.r_max_factor,
            },
        }))
        .with_checks(checks))
}

fn run_crofton_uniqueness(f: &str, ms: &[usize], t: f64) -> visangle::Result<RunReport> {
    let weight = weights::weight_from_flag(f)?;
    let fit = uniqueness_experiment(ms, t, &weight, &ExteriorConfig::default())?;
    // only the deficit weight is expected to reproduce (1/2, -pi)
    let checks = if weight.name() == "crofton" {
        vec![
            Check::near("perimeter-sq coefficient", fit.perimeter_sq_coeff, 0.5, 1e-3),
            Check::near("area coefficient", fit.area_coeff, -PI, 1e-2),
            Check::residual("fit residual", fit.residual, 1e-3),
        ]
    } else {
        Vec::new()
    };
    Ok(RunReport::new("crofton uniqueness")
        .with_data(serde_json::to_value(fit).expect("fit serializes"))
        .with_checks(checks))
}

fn run_curve(
    path: &Path,
    alpha: f64,
    n: Option<usize>,
    emit: &Option<PathBuf>,
) -> visangle::Result<RunReport> {
    let body = load_body(path)?;
    let n = grid_default(n, 1024).max(512);
    let c = curve(&body, alpha, n)?;
    if let Some(path) = emit {
        let rows: Vec<Vec<f64>> = c
            .points
            .iter()
            .enumerate()
            .map(|(i, pt)| vec![2.0 * PI * i as f64 / c.points.len() as f64, pt.x, pt.y])
            .collect();
        write_csv(path, "phi,X,Y", &rows)?;
    }
    let checks = vec![Check::at_least(
        "isoperimetric ratio L^2 / 4 pi F",
        c.length * c.length / (4.0 * PI * c.area),
        1.0 - 1e-12,
    )];
    Ok(RunReport::new("isotopic curve")
        .with_body(body.descriptor())
        .with_data(serde_json::json!({
            "alpha": alpha,
            "samples": c.points.len(),
            "length": c.length,
            "area": c.area,
            "emitted": emit.as_ref().map(|p| p.display().to_string()),
        }))
        .with_checks(checks))
}

fn run_limits(path: &Path) -> visangle::Result<RunReport> {
    let body = load_body(path)?;
    let lim = limits(&body)?;
    let checks = vec![
        Check::near(
            "extrapolated vs closed-form length limit",
            lim.empirical_length_limit,
            lim.length_limit,
            1e-2 * lim.length_limit,
        ),
        Check::near(
            "extrapolated vs closed-form area limit",
            lim.empirical_area_limit,
            lim.area_limit,
            1e-2 * lim.area_limit,
        ),
        Check::at_least("isoperimetric ratio of the limit", lim.isoperimetric_ratio, 1.0 - 1e-12),
    ];
    Ok(RunReport::new("isotopic limits")
        .with_body(body.descriptor())
        .with_data(serde_json::to_value(lim).expect("limits serialize"))
        .with_checks(checks))
}

fn run_detect(path: &Path, alpha: f64, search_center: bool) -> visangle::Result<RunReport> {
    let body = load_body(path)?;
    let fit = detect_circle(&body, alpha, search_center)?;
    let checks = vec![Check::residual(
        "circle deviation",
        fit.deviation,
        visangle::isotopic::CIRCLE_TOL,
    )];
    Ok(RunReport::new("isotopic detect")
        .with_body(body.descriptor())
        .with_data(serde_json::to_value(fit).expect("fit serializes"))
        .with_checks(checks))
}

fn run_construct(c0: f64, c2: f64, c6: f64, out: &Path) -> visangle::Result<RunReport> {
    let q = visangle::construct_quarter(c0, c2, c6)?;
    std::fs::write(out, q.body.to_json_string()).map_err(|e| {
        visangle::Error::InvalidBody(format!("cannot write {}: {e}", out.display()))
    })?;
    let checks = vec![
        Check::residual("circle deviation at alpha = pi/2", q.fit.deviation, 1e-6),
        Check::near("circle radius^2 vs 2 c0", q.fit.radius.powi(2), 2.0 * c0, 1e-4 * c0),
    ];
    Ok(RunReport::new("isotopic construct")
        .with_body(q.body.descriptor())
        .with_data(serde_json::json!({
            "fit": q.fit,
            "projection_error": q.projection_error,
            "written": out.display().to_string(),
        }))
        .with_checks(checks))
}

fn run_identities(path: &Path, m: u32, n: u32) -> visangle::Result<RunReport> {
    let body = load_body(path)?;
    let ids = perimeter_identity(&body, m, n)?;
    let pp1 = pp1_integral(&body, ids.alpha);
    let series = area_series(&body, m, n)?;
    let checks = vec![
        Check::residual("perimeter identity residual", ids.residual, 1e-4),
        Check::at_most("perimeter vs 2 pi R sin(alpha/2)", ids.perimeter, ids.perimeter_bound),
        Check::at_most("area vs pi R^2 sin^2(alpha/2)", ids.area, ids.area_bound),
        Check::residual(
            "support correlation: closed form vs quadrature",
            (pp1.closed_form - pp1.quadrature).abs() / pp1.closed_form.abs(),
            1e-10,
        ),
        Check::residual(
            "scaled-area series vs sampled curve",
            series.minus_discrepancy.min(series.plus_discrepancy),
            1e-4,
        ),
    ];
    Ok(RunReport::new("isotopic identities")
        .with_body(body.descriptor())
        .with_data(serde_json::json!({
            "identities": ids,
            "support_correlation": pp1,
            "area_series": series,
        }))
        .with_checks(checks))
}

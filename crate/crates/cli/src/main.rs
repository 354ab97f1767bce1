//! `revsurf`: solve for generating curves with prescribed mean or skew
//! curvature, verify CSV curves, and print normal-curvature statistics.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use revsurf::curvature::{spacelike_moments_closed, statistical_curvatures};
use revsurf::{
    build_surface, default_theta_grid, export_curve_csv, export_mesh_obj, import_curve_csv,
    solve_mean, solve_skew, spacelike_moments, timelike_gaussian_moments, verify_roundtrip,
    AxisType, CurvatureProfile, Eta, ExportError, GraphVar, Grid, MeanError, MeanSolveRequest,
    PlanarCurve, Plane, PrincipalData, Sign, SkewFamily, SkewSolveRequest, Which,
};

const VERIFY_TOL: f64 = 1e-4;
const MOMENT_NODES: usize = 4096;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] revsurf::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("verification failed: max error {0:.16e} exceeds {VERIFY_TOL:e}")]
    Verification(f64),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) if e.is_domain_violation() => 3,
            CliError::Lib(
                revsurf::Error::Parse(_)
                | revsurf::Error::Mean(
                    MeanError::ConstantCount { .. }
                    | MeanError::ConstantViolation(_)
                    | MeanError::IncompatiblePair { .. },
                ),
            ) => 2,
            CliError::Verification(_) => 4,
            CliError::Lib(_) | CliError::Io { .. } => 1,
        }
    }
}

fn lib<E: Into<revsurf::Error>>(e: E) -> CliError {
    CliError::Lib(e.into())
}

fn io_at(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Parser)]
#[command(
    name = "revsurf",
    version,
    about = "Rotational surfaces in Minkowski 3-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generating curve with prescribed mean curvature H(s)
    SolveMean(SolveMeanArgs),
    /// Generating curve with prescribed skew curvature S(u)
    SolveSkew(SolveSkewArgs),
    /// Recompute curvatures of a CSV curve and compare with a profile
    Verify(VerifyArgs),
    /// Normal-curvature statistics from principal curvatures
    Moments(MomentsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MeanAxis {
    Timelike,
    SpacelikeTl,
    SpacelikeSp,
    Lightlike,
}

impl MeanAxis {
    fn pair(self) -> (AxisType, Plane) {
        match self {
            MeanAxis::Timelike => (AxisType::Timelike, Plane::Xz),
            MeanAxis::SpacelikeTl => (AxisType::Spacelike, Plane::Xz),
            MeanAxis::SpacelikeSp => (AxisType::Spacelike, Plane::Xy),
            MeanAxis::Lightlike => (AxisType::Lightlike, Plane::Yz),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    Mean,
    Skew,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    Spacelike,
    Timelike,
}

#[derive(clap::Args)]
struct MeshArgs {
    /// Also write the revolved surface as an OBJ mesh
    #[arg(long)]
    mesh: Option<PathBuf>,
    /// Angle grid for the mesh as lo:hi:M
    #[arg(long, value_parser = parse_theta, allow_hyphen_values = true)]
    theta: Option<(f64, f64, usize)>,
}

#[derive(clap::Args)]
struct SolveMeanArgs {
    #[arg(long, value_enum)]
    axis: MeanAxis,
    /// Expression in the variable s
    #[arg(long, allow_hyphen_values = true)]
    h_expr: String,
    /// Causal character of the curve: +1 spacelike, -1 timelike
    #[arg(long, value_parser = parse_eta, allow_hyphen_values = true, default_value = "+1")]
    eta: Eta,
    /// Integration constants, comma separated
    #[arg(long, value_parser = parse_f64, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    consts: Vec<f64>,
    /// Arc-length interval as lo:hi
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: (f64, f64),
    #[arg(long, default_value_t = 2001)]
    nodes: usize,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    mesh: MeshArgs,
}

#[derive(clap::Args)]
struct SolveSkewArgs {
    #[arg(long, value_parser = parse_family)]
    family: SkewFamily,
    /// Which coordinate is the graph over the radial one
    #[arg(long, value_parser = parse_graph, default_value = "1")]
    graph: GraphVar,
    /// Expression in the variable u
    #[arg(long, allow_hyphen_values = true)]
    s_expr: String,
    /// Sign in front of the integral of S/u
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    sign: Sign,
    #[arg(long, allow_hyphen_values = true)]
    a0: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    offset: f64,
    /// Radial interval as lo:hi
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    range: (f64, f64),
    /// Causal character of the curve for the xz families
    #[arg(long, value_parser = parse_eta, allow_hyphen_values = true, default_value = "+1")]
    eta: Eta,
    /// Sign in front of the integral for the axial coordinate
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true, default_value = "+")]
    outer_sign: Sign,
    #[arg(long, default_value_t = 2001)]
    nodes: usize,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    mesh: MeshArgs,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    which: WhichArg,
    /// Prescribed profile, in s for mean and u for skew
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
}

#[derive(clap::Args)]
struct MomentsArgs {
    #[arg(long, allow_hyphen_values = true)]
    k1: f64,
    #[arg(long, allow_hyphen_values = true)]
    k2: f64,
    #[arg(long, value_enum)]
    surface: SurfaceArg,
    /// Width of the Gaussian weight on timelike surfaces
    #[arg(long, default_value_t = 0.1)]
    a: f64,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    Ok((parse_f64(lo)?, parse_f64(hi)?))
}

fn parse_theta(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, m] = parts[..] else {
        return Err(format!("expected lo:hi:M, got {s:?}"));
    };
    let m = m
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("{m:?}: {e}"))?;
    Ok((parse_f64(lo)?, parse_f64(hi)?, m))
}

fn parse_eta(s: &str) -> Result<Eta, String> {
    Eta::parse(s).ok_or_else(|| format!("expected +1 or -1, got {s:?}"))
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    Sign::parse(s).ok_or_else(|| format!("expected + or -, got {s:?}"))
}

fn parse_family(s: &str) -> Result<SkewFamily, String> {
    SkewFamily::from_name(s).ok_or_else(|| format!("expected t-xz, s-xz or s-xy, got {s:?}"))
}

fn parse_graph(s: &str) -> Result<GraphVar, String> {
    match s {
        "1" => Ok(GraphVar::First),
        "2" => Ok(GraphVar::Second),
        _ => Err(format!("expected 1 or 2, got {s:?}")),
    }
}

fn profile(expr: &str, var: &str) -> Result<CurvatureProfile, CliError> {
    CurvatureProfile::parse(expr, var).map_err(lib)
}

fn write_outputs(curve: &PlanarCurve, out: &Path, mesh: &MeshArgs) -> Result<(), CliError> {
    export_curve_csv(curve, out).map_err(io_at(out))?;
    println!("case     {}", curve.meta.case);
    println!("nodes    {}", curve.len());
    println!("curve    {}", out.display());
    for note in &curve.meta.notes {
        println!("note     {note}");
    }
    if let Some(path) = &mesh.mesh {
        let axis = curve.meta.axis;
        let theta = match mesh.theta {
            Some((lo, hi, m)) => {
                Grid::uniform(lo, hi, m).map_err(|e| CliError::Usage(format!("--theta: {e}")))?
            }
            None => default_theta_grid(axis),
        };
        let surface = build_surface(curve, axis, &theta).map_err(lib)?;
        export_mesh_obj(&surface, path).map_err(io_at(path))?;
        println!("mesh     {}", path.display());
    }
    Ok(())
}

fn solve_mean_cmd(a: SolveMeanArgs) -> Result<(), CliError> {
    let (axis, plane) = a.axis.pair();
    let req = MeanSolveRequest {
        profile: profile(&a.h_expr, "s")?,
        axis,
        plane,
        eta: a.eta,
        constants: a.consts,
        s_range: a.range,
        n: a.nodes,
    };
    let curve = solve_mean(&req).map_err(lib)?;
    write_outputs(&curve, &a.out, &a.mesh)
}

fn solve_skew_cmd(a: SolveSkewArgs) -> Result<(), CliError> {
    let req = SkewSolveRequest {
        profile: profile(&a.s_expr, "u")?,
        family: a.family,
        graph_var: a.graph,
        eta: a.eta,
        sign: a.sign,
        outer_sign: a.outer_sign,
        a0: a.a0,
        offset0: a.offset,
        u_range: a.range,
        n: a.nodes,
    };
    let curve = solve_skew(&req).map_err(lib)?;
    write_outputs(&curve, &a.out, &a.mesh)
}

fn verify_cmd(a: VerifyArgs) -> Result<(), CliError> {
    let (which, var) = match a.which {
        WhichArg::Mean => (Which::Mean, "s"),
        WhichArg::Skew => (Which::Skew, "u"),
    };
    let prescribed = profile(&a.expr, var)?;
    let curve = import_curve_csv(&a.input).map_err(|e| match e {
        ExportError::Io(source) => io_at(&a.input)(source),
        e => lib(e),
    })?;
    let axis = curve.meta.axis;
    let surface = build_surface(&curve, axis, &default_theta_grid(axis)).map_err(lib)?;
    let r = verify_roundtrip(&surface, &prescribed, which);
    println!("case                  {}", curve.meta.case);
    println!("nodes checked         {}", r.nodes_checked);
    println!("max |H - H*|          {:.16e}", r.max_h_error);
    println!("max K spread          {:.16e}", r.max_k_residual);
    println!("max |S - S*|          {:.16e}", r.max_s_error);
    println!("max unit-speed error  {:.16e}", r.max_unit_speed_error);
    for flag in &r.flags {
        println!("flag                  {flag}");
    }
    if r.passes(VERIFY_TOL) {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(CliError::Verification(r.max_error()))
    }
}

fn moments_cmd(a: MomentsArgs) -> Result<(), CliError> {
    let pd = PrincipalData {
        kappa1: a.k1,
        kappa2: a.k2,
        spacelike_eigendirection_first: true,
    };
    match a.surface {
        SurfaceArg::Spacelike => {
            let (mu, sigma) = spacelike_moments(&pd, MOMENT_NODES);
            let (mu_c, sigma_c) = spacelike_moments_closed(&pd);
            let (h, s) = statistical_curvatures(-1.0, mu, sigma);
            println!("mu            {mu:.16e}");
            println!("sigma         {sigma:.16e}");
            println!("mu closed     {mu_c:.16e}");
            println!("sigma closed  {sigma_c:.16e}");
            println!("H             {h:.16e}");
            println!("S             {s:.16e}");
        }
        SurfaceArg::Timelike => {
            let g = timelike_gaussian_moments(&pd, a.a)
                .map_err(|e| CliError::Usage(format!("--a: {e}")))?;
            let sigma = g.var_a.sqrt();
            let (h, s) = statistical_curvatures(1.0, g.mean_a, sigma);
            println!("a             {:.16e}", a.a);
            println!("mu quadrature {:.16e}", g.mean_a);
            println!("mu closed     {:.16e}", g.mean_closed);
            println!("sigma         {sigma:.16e}");
            println!("H             {h:.16e}");
            println!("S             {s:.16e}");
            println!("a->0 limit    {:.16e}", g.limit_a_to_zero);
            println!(
                "note          the a->0 limit of the closed form is k1, not (k1+k2)/2 = {:.16e}",
                g.half_sum
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::SolveMean(a) => solve_mean_cmd(a),
        Command::SolveSkew(a) => solve_skew_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Moments(a) => moments_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

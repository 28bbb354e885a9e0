//! Command-line front end: estimates, degree sweeps, mesh and point
//! generation, extraction and compression, written as CSV or JSON.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::compress::{compress, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::io::{format_points_csv, read_points_csv};
use crate::mesh::{build_mesh, Domain};
use crate::points::PointSet;
use crate::points1d::NodeKind;
use crate::pointsets::{afp_extract, dlp_extract, generate, halton, load_pointset, Family};
use crate::projector::{hyper_disk, hyper_square_chebyshev, LebesgueEstimate, Projector};

/// Exit code for bad flags, configuration or I/O.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for numerical failures (rank loss, non-convergence, ...).
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lebesgue",
    version,
    about = "Certified Lebesgue constant estimates on Chebyshev polynomial meshes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the Lebesgue constant of one projector.
    Eval(EvalArgs),
    /// Estimate over a range of degrees, one row per degree.
    Sweep(SweepArgs),
    /// Write a mesh as CSV plus a JSON sidecar with its parameters.
    Mesh(MeshArgs),
    /// Write a point family as CSV.
    Points(PointsArgs),
    /// Extract approximate Fekete or discrete Leja points from a mesh.
    Extract(ExtractArgs),
    /// Compress a discrete measure preserving moments up to degree 2n.
    Compress(CompressArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainTag {
    Cube,
    Box,
    Simplex,
    Ball,
    /// `cube` with `--dim 2`.
    Square,
    /// `ball` with `--dim 2`.
    Disk,
    /// `cube` with `--dim 1`.
    Interval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NodeKindArg {
    Zeros,
    Lobatto,
}

impl From<NodeKindArg> for NodeKind {
    fn from(k: NodeKindArg) -> Self {
        match k {
            NodeKindArg::Zeros => NodeKind::ChebyshevZeros,
            NodeKindArg::Lobatto => NodeKind::ChebyshevLobatto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProjectorArg {
    Interp,
    Ls,
    Hyper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Afp,
    Dlp,
}

#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    /// Domain type; square, disk and interval fix the dimension.
    #[arg(long, value_enum, default_value = "cube")]
    pub domain: DomainTag,
    /// Space dimension.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Lower box corner, comma separated (box domains).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lo: Option<Vec<f64>>,
    /// Upper box corner, comma separated (box domains).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub hi: Option<Vec<f64>>,
    /// Ball centre, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub center: Option<Vec<f64>>,
    /// Ball radius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Simplex vertices as `x,y;x,y;x,y` (default: 0, e1, ..., ed).
    #[arg(long, allow_hyphen_values = true)]
    pub vertices: Option<String>,
    /// JSON domain description, e.g. a union of simplices; overrides the flags above.
    #[arg(long)]
    pub domain_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MeshParams {
    /// Oversampling factor m > 1 of the Chebyshev mesh.
    #[arg(long, default_value_t = 3.0)]
    pub m: f64,
    #[arg(long, value_enum, default_value = "zeros")]
    pub node_kind: NodeKindArg,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub mesh: MeshParams,
    /// chebyshev | legendre | lobatto | equispaced | padua | morrow-patterson |
    /// halton[:<count>] | simplex-grid | afp | dlp | file:<path>. Halton skips
    /// the origin (index 0) and keeps the points inside the domain.
    #[arg(long, default_value = "chebyshev")]
    pub pointset: String,
    #[arg(long, value_enum, default_value = "interp")]
    pub projector: ProjectorArg,
    /// The point file carries a trailing weight column (least squares).
    #[arg(long)]
    pub weighted: bool,
    /// Evaluate on this user mesh instead of a Chebyshev mesh.
    #[arg(long)]
    pub mesh_file: Option<PathBuf>,
    /// Norming constant of the user mesh.
    #[arg(long, default_value_t = 1.0, requires = "mesh_file")]
    pub mesh_c: f64,
    /// The user mesh is admissible for degree `mesh_power * n`.
    #[arg(long, default_value_t = 1, requires = "mesh_file")]
    pub mesh_power: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (standard output if absent).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub est: EstimateArgs,
    #[arg(long)]
    pub degree: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub est: EstimateArgs,
    /// Inclusive degree range `a:b`.
    #[arg(long)]
    pub degrees: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub mesh: MeshParams,
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PointsArgs {
    /// Point family (see `eval --help`); Halton points without `--domain`
    /// fill the unit cube [0, 1]^d.
    #[arg(long)]
    pub family: String,
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub mesh: MeshParams,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Number of Halton points.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExtractArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub mesh: MeshParams,
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompressArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    pub mesh: MeshParams,
    /// Projector degree n; moments are matched up to degree 2n.
    #[arg(long)]
    pub degree: usize,
    /// Point file to compress; without it the Chebyshev mesh of the domain is used.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// The input file carries a trailing weight column.
    #[arg(long)]
    pub weighted: bool,
    /// Degree of the generated mesh (defaults to --degree).
    #[arg(long)]
    pub mesh_degree: Option<usize>,
    /// Moment tolerance relative to the moment norm.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Output CSV (points and weights); the sidecar goes next to it as .json.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_vertices(s: &str) -> Result<Vec<Vec<f64>>> {
    s.split(';')
        .map(|v| {
            v.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::invalid(format!("bad vertex coordinate {x:?}")))
                })
                .collect()
        })
        .collect()
}

impl DomainArgs {
    pub fn resolve(&self) -> Result<Domain> {
        if let Some(path) = &self.domain_file {
            let domain: Domain = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            domain.validate()?;
            return Ok(domain);
        }
        let fixed = match self.domain {
            DomainTag::Square | DomainTag::Disk => Some(2),
            DomainTag::Interval => Some(1),
            _ => None,
        };
        let inferred = self
            .lo
            .as_ref()
            .or(self.hi.as_ref())
            .or(self.center.as_ref())
            .map(Vec::len);
        let d = match (fixed, self.dim) {
            (Some(f), Some(d)) if f != d => {
                return Err(Error::invalid(format!("--domain fixes dimension {f}, got --dim {d}")))
            }
            (Some(f), _) => f,
            (None, Some(d)) => d,
            (None, None) => match (inferred, &self.vertices) {
                (Some(d), _) => d,
                (None, Some(v)) => parse_vertices(v)?.len().saturating_sub(1),
                (None, None) => return Err(Error::invalid("--dim is required for this domain")),
            },
        };
        if d == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        let domain = match self.domain {
            DomainTag::Cube | DomainTag::Box | DomainTag::Square | DomainTag::Interval => Domain::Box {
                lo: self.lo.clone().unwrap_or_else(|| vec![-1.0; d]),
                hi: self.hi.clone().unwrap_or_else(|| vec![1.0; d]),
            },
            DomainTag::Simplex => match &self.vertices {
                Some(v) => Domain::Simplex {
                    vertices: parse_vertices(v)?,
                },
                None => Domain::unit_simplex(d),
            },
            DomainTag::Ball | DomainTag::Disk => Domain::Ball {
                center: self.center.clone().unwrap_or_else(|| vec![0.0; d]),
                radius: self.radius.unwrap_or(1.0),
            },
        };
        if domain.dim() != d {
            return Err(Error::invalid(format!(
                "geometry has dimension {}, expected {d}",
                domain.dim()
            )));
        }
        domain.validate()?;
        Ok(domain)
    }

    fn given(&self) -> bool {
        self.domain_file.is_some()
            || self.domain != DomainTag::Cube
            || self.lo.is_some()
            || self.hi.is_some()
    }
}

/// Parses `a:b` (inclusive) or a single degree.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::invalid(format!("bad degree range {s:?}, expected a:b"));
    let (a, b) = match s.split_once(':') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let a: usize = s.trim().parse().map_err(|_| bad())?;
            (a, a)
        }
    };
    if a > b {
        return Err(Error::invalid(format!("empty degree range {s:?}")));
    }
    Ok((a..=b).collect())
}

/// Builds the projector and estimate for one degree.
pub fn estimate_for_degree(args: &EstimateArgs, domain: &Domain, n: usize) -> Result<LebesgueEstimate> {
    let kind: NodeKind = args.mesh.node_kind.into();
    let m = args.mesh.m;
    let projector = match args.projector {
        ProjectorArg::Hyper => {
            let (nodes, weights, label) = match domain {
                Domain::Box { lo, hi } if lo.len() == 2 && lo.iter().chain(hi).all(|v| v.abs() == 1.0) => {
                    let (x, w) = hyper_square_chebyshev(n)?;
                    (x, w, "hyper-chebyshev")
                }
                Domain::Ball { center, radius } if center.len() == 2 && *radius == 1.0 && center.iter().all(|c| *c == 0.0) => {
                    let (x, w) = hyper_disk(n)?;
                    (x, w, "hyper-disk")
                }
                _ => {
                    return Err(Error::invalid(
                        "hyperinterpolation rules exist for the square [-1,1]^2 and the unit disk",
                    ))
                }
            };
            Projector::weighted_ls(&nodes, &weights, n, domain)?.with_label(label)
        }
        ProjectorArg::Interp | ProjectorArg::Ls => {
            let family: Family = args.pointset.parse()?;
            let set = match (&family, args.weighted) {
                (Family::File(path), true) => load_pointset(path, true, Some(domain.dim()))?,
                _ => generate(&family, domain, n, m, kind)?,
            };
            if args.projector == ProjectorArg::Interp {
                Projector::interpolation(&set.points, n, domain)?
            } else {
                let w = set
                    .points
                    .weights()
                    .map_or_else(|| vec![1.0; set.points.len()], <[f64]>::to_vec);
                Projector::weighted_ls(&set.points, &w, n, domain)?
            }
            .with_label(set.label)
        }
    };
    match &args.mesh_file {
        Some(path) => {
            let mesh = read_points_csv(path, false)?;
            projector.estimate_on_general_mesh(&mesh, args.mesh_c, args.mesh_power)
        }
        None => projector.estimate(&build_mesh(domain, n.max(1), m, kind)?),
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v:?}")
}

const ESTIMATE_HEADER: &str =
    "domain,dim,degree,m,kind,pointset_label,mesh_card,lower,factor,upper,midpoint,rel_err_bound";

fn estimate_csv_row(e: &LebesgueEstimate) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        e.domain,
        e.dim,
        e.degree,
        fmt_num(e.m),
        e.kind,
        e.pointset_label,
        e.mesh_card,
        fmt_num(e.lower),
        fmt_num(e.factor),
        fmt_num(e.upper),
        fmt_num(e.midpoint),
        fmt_num(e.rel_err_bound)
    )
}

const SWEEP_HEADER: &str = "degree,lower,upper,midpoint,rel_err_bound,mesh_card";

fn sweep_csv_row(e: &LebesgueEstimate) -> String {
    format!(
        "{},{},{},{},{},{}",
        e.degree,
        fmt_num(e.lower),
        fmt_num(e.upper),
        fmt_num(e.midpoint),
        fmt_num(e.rel_err_bound),
        e.mesh_card
    )
}

fn emit(text: &str, output: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Sidecar path next to a data file: same stem, `.json` extension.
pub fn sidecar_path(output: &Path) -> PathBuf {
    if output.extension().is_some_and(|e| e == "json") {
        let mut s = output.as_os_str().to_owned();
        s.push(".sidecar.json");
        PathBuf::from(s)
    } else {
        output.with_extension("json")
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn cmd_eval(a: &EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    let domain = a.est.domain.resolve()?;
    let e = estimate_for_degree(&a.est, &domain, a.degree)?;
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&e)?,
        Format::Csv => format!("{ESTIMATE_HEADER}\n{}\n", estimate_csv_row(&e)),
    };
    emit(&text, a.out.output.as_deref(), stdout)
}

fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<()> {
    let degrees = parse_degrees(&a.degrees)?;
    let domain = a.est.domain.resolve()?;
    // degrees run concurrently; collect keeps degree order
    let rows: Vec<LebesgueEstimate> = degrees
        .par_iter()
        .map(|&n| estimate_for_degree(&a.est, &domain, n))
        .collect::<Result<_>>()?;
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = format!("{SWEEP_HEADER}\n");
            for e in &rows {
                s.push_str(&sweep_csv_row(e));
                s.push('\n');
            }
            s
        }
    };
    emit(&text, a.out.output.as_deref(), stdout)
}

fn cmd_mesh(a: &MeshArgs, stdout: &mut dyn Write) -> Result<()> {
    let domain = a.domain.resolve()?;
    let mesh = build_mesh(&domain, a.degree, a.mesh.m, a.mesh.node_kind.into())?;
    emit(&format_points_csv(mesh.points(), false), a.output.as_deref(), stdout)?;
    if let Some(out) = &a.output {
        std::fs::write(sidecar_path(out), to_json(&mesh.sidecar())?)?;
    }
    Ok(())
}

fn cmd_points(a: &PointsArgs, stdout: &mut dyn Write) -> Result<()> {
    let mut family: Family = a.family.parse()?;
    if let (Family::Halton(None), Some(c)) = (&family, a.count) {
        family = Family::Halton(Some(c));
    }
    let set = match family {
        Family::Halton(Some(c)) if !a.domain.given() => {
            let d = a.domain.dim.ok_or_else(|| Error::invalid("--dim is required"))?;
            halton(d, c)?
        }
        _ => {
            let domain = if a.domain.given() || a.domain.dim.is_some() {
                a.domain.resolve()?
            } else {
                default_domain_for(&family)
            };
            generate(&family, &domain, a.degree, a.mesh.m, a.mesh.node_kind.into())?
        }
    };
    emit(&format_points_csv(&set.points, true), a.output.as_deref(), stdout)
}

fn default_domain_for(family: &Family) -> Domain {
    match family {
        Family::Padua | Family::MorrowPatterson => Domain::cube(2),
        Family::SimplexGrid => Domain::unit_simplex(2),
        _ => Domain::cube(1),
    }
}

fn cmd_extract(a: &ExtractArgs, stdout: &mut dyn Write) -> Result<()> {
    let domain = a.domain.resolve()?;
    let mesh = build_mesh(&domain, a.degree.max(1), a.mesh.m, a.mesh.node_kind.into())?;
    let set = match a.method {
        Method::Afp => afp_extract(&mesh, a.degree)?,
        Method::Dlp => dlp_extract(&mesh, a.degree)?,
    };
    emit(&format_points_csv(&set.points, false), a.output.as_deref(), stdout)
}

fn cmd_compress(a: &CompressArgs, stdout: &mut dyn Write) -> Result<()> {
    let domain = a.domain.resolve()?;
    let points: PointSet = match &a.input {
        Some(path) => load_pointset(path, a.weighted, Some(domain.dim()))?.points,
        None => build_mesh(
            &domain,
            a.mesh_degree.unwrap_or(a.degree).max(1),
            a.mesh.m,
            a.mesh.node_kind.into(),
        )?
        .into_points(),
    };
    let c = compress(&points, points.weights(), a.degree, &domain, a.tol)?;
    emit(&format_points_csv(&c.points, true), a.output.as_deref(), stdout)?;
    let sidecar = to_json(&c.sidecar(a.degree))?;
    match &a.output {
        Some(out) => std::fs::write(sidecar_path(out), sidecar)?,
        None => eprint!("{sidecar}"),
    }
    Ok(())
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Mesh(a) => cmd_mesh(a, stdout),
        Command::Points(a) => cmd_points(a, stdout),
        Command::Extract(a) => cmd_extract(a, stdout),
        Command::Compress(a) => cmd_compress(a, stdout),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gasket_core::exact::{parse_rational, parse_surd3, rat, Rational};
use gasket_core::gasket::{DEFAULT_LEVEL_CAP, MAX_LEVEL_CAP};
use gasket_core::geom::{inscribed_disk, Disk};
use gasket_core::sumset::{
    interior_coverage_check, kominers_min_summands, segment_sum, sumset_sample, BoundQuery, Segment, SumsetConfig,
};
use gasket_core::thickness::{default_radii, local_triangle, upper_bound_witness, ScanGrid};
use gasket_core::{Gasket, MembershipWitness, Point, Side, WitnessedPoint, Word};
use serde::Serialize;

use crate::json::{self, to_pretty};
use crate::svg::{self, DEFAULT_RENDER_CAP};
use crate::{csv, scan, write_atomic, Failure};

/// Level of the sample that `cart:x,y` query points snap to.
pub const CARTESIAN_SNAP_LEVEL: u32 = 10;
/// Depth searched when witnessing an exact `u,w` query point.
const WITNESS_SEARCH_DEPTH: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Subject {
    Stage,
    Certificate,
    Parallelogram,
}

#[derive(Debug, Parser)]
#[command(name = "gasket", version, about = "Exact thickness certificates, scans and sumsets for the Sierpinski gasket")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format; defaults to json (svg for render).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the artifact here (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Validate the configuration and stop.
    #[arg(long)]
    dry_run: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cells of stage K_m.
    Stage {
        #[arg(long, default_value_t = 3)]
        level: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Certificate triangle for one query (x, r).
    Certificate {
        /// v1|v2|v3|m12|m13|m23, an exact basis pair "u,w", or "cart:x,y".
        #[arg(long)]
        x: String,
        /// Rational radius in (0, 1].
        #[arg(long)]
        r: String,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force thickness estimate over sample points and radii.
    Scan {
        #[arg(long, default_value_t = 8)]
        sample_level: u32,
        #[arg(long, default_value_t = 3)]
        query_level: u32,
        /// Comma-separated rationals; defaults to k/32 for k = 1..32.
        #[arg(long)]
        radii: Option<String>,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// The query (v1, 1) whose local hull is the whole base triangle.
    Witness {
        #[command(flatten)]
        common: Common,
    },
    /// Many-fold sums of a vertex sample, with the exact two-side parallelogram.
    Sumset {
        #[arg(long, default_value_t = 2)]
        n_terms: u32,
        #[arg(long, default_value_t = 5)]
        sample_level: u32,
        /// Grid pitch of the coverage check.
        #[arg(long, default_value = "1/32")]
        spacing: String,
        #[command(flatten)]
        common: Common,
    },
    /// Summand count above which a sum of thick sets has interior.
    Bound {
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Thickness: a decimal, a rational, or a token such as sqrt3/6.
        #[arg(long, default_value = "sqrt3/6")]
        c: String,
        #[command(flatten)]
        common: Common,
    },
    /// SVG figure of a stage, a certificate, or the two-side parallelogram.
    Render {
        #[arg(long, value_enum)]
        subject: Subject,
        #[arg(long, default_value_t = 4)]
        level: u32,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        r: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// What to compute, fully parsed and validated.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Stage { level: u32 },
    Certificate { x: WitnessedPoint, r: Rational },
    Scan { grid: ScanGrid, threads: Option<usize> },
    Witness,
    Sumset { cfg: SumsetConfig },
    Bound { query: BoundQuery },
    RenderStage { level: u32 },
    RenderCertificate { x: WitnessedPoint, r: Rational },
    RenderParallelogram,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Stage { .. } => "stage",
            Task::Certificate { .. } => "certificate",
            Task::Scan { .. } => "scan",
            Task::Witness => "witness",
            Task::Sumset { .. } => "sumset",
            Task::Bound { .. } => "bound",
            Task::RenderStage { .. } | Task::RenderCertificate { .. } | Task::RenderParallelogram => "render",
        }
    }

    fn formats(&self) -> &'static [Format] {
        match self {
            Task::Stage { .. } | Task::Certificate { .. } => &[Format::Json, Format::Svg],
            Task::Scan { .. } => &[Format::Json, Format::Csv],
            Task::Witness | Task::Bound { .. } => &[Format::Json],
            Task::Sumset { .. } => &[Format::Json, Format::Csv, Format::Svg],
            Task::RenderStage { .. } | Task::RenderCertificate { .. } | Task::RenderParallelogram => &[Format::Svg],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub dry_run: bool,
    pub level_cap: u32,
    pub render_cap: u32,
}

/// Parse arguments (program name first) into a validated config.
///
/// `env_level_cap` is the raw value of `GASKET_LEVEL_CAP`, if set.
pub fn parse_args<I, T>(args: I, env_level_cap: Option<&str>) -> Result<RunConfig, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ParseOutcome::Info(e.to_string()),
            _ => ParseOutcome::Failed(Failure::Usage(e.to_string().trim_end().to_string())),
        }
    })?;
    build_config(cli, env_level_cap).map_err(ParseOutcome::Failed)
}

/// Non-config outcomes of argument parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseOutcome {
    /// `--help` or `--version` text for stdout.
    Info(String),
    Failed(Failure),
}

fn level_cap_from_env(raw: Option<&str>) -> Result<u32, Failure> {
    let Some(raw) = raw else { return Ok(DEFAULT_LEVEL_CAP) };
    let cap: u32 = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("GASKET_LEVEL_CAP must be a non-negative integer, got '{raw}'")))?;
    if cap > MAX_LEVEL_CAP {
        return Err(Failure::Resource(format!("GASKET_LEVEL_CAP {cap} exceeds the hard maximum {MAX_LEVEL_CAP}")));
    }
    Ok(cap)
}

fn build_config(cli: Cli, env_level_cap: Option<&str>) -> Result<RunConfig, Failure> {
    let level_cap = level_cap_from_env(env_level_cap)?;
    let gasket = Gasket::with_level_cap(level_cap)?;
    let (task, common) = match cli.command {
        Command::Stage { level, common } => {
            gasket.check_level(level)?;
            (Task::Stage { level }, common)
        }
        Command::Certificate { x, r, common } => {
            let x = parse_query_point(&x, &gasket)?;
            let r = parse_radius(&r)?;
            (Task::Certificate { x, r }, common)
        }
        Command::Scan { sample_level, query_level, radii, threads, common } => {
            gasket.check_level(sample_level)?;
            gasket.check_level(query_level)?;
            if threads == Some(0) {
                return Err(Failure::Usage("--threads must be at least 1".into()));
            }
            let radii = match radii {
                Some(list) => list.split(',').map(parse_radius).collect::<Result<Vec<_>, _>>()?,
                None => default_radii(),
            };
            (Task::Scan { grid: ScanGrid::new(sample_level, query_level, radii)?, threads }, common)
        }
        Command::Witness { common } => (Task::Witness, common),
        Command::Sumset { n_terms, sample_level, spacing, common } => {
            gasket.check_level(sample_level)?;
            let spacing = parse_rational(&spacing).map_err(|e| Failure::Usage(format!("--spacing: {e}")))?;
            (Task::Sumset { cfg: SumsetConfig::new(n_terms, sample_level, spacing)? }, common)
        }
        Command::Bound { d, c, common } => {
            let c = parse_surd3(&c).map_err(|e| Failure::Usage(format!("--c: {e}")))?.to_f64();
            (Task::Bound { query: BoundQuery::new(d, c)? }, common)
        }
        Command::Render { subject, level, x, r, common } => {
            let task = match subject {
                Subject::Stage => {
                    gasket.check_level(level)?;
                    if level > DEFAULT_RENDER_CAP {
                        return Err(svg::RenderError::TooDeep { level, cap: DEFAULT_RENDER_CAP }.into());
                    }
                    Task::RenderStage { level }
                }
                Subject::Certificate => {
                    let (Some(x), Some(r)) = (x, r) else {
                        return Err(Failure::Usage("render --subject certificate needs --x and --r".into()));
                    };
                    Task::RenderCertificate { x: parse_query_point(&x, &gasket)?, r: parse_radius(&r)? }
                }
                Subject::Parallelogram => Task::RenderParallelogram,
            };
            (task, common)
        }
    };
    let format = common.format.unwrap_or(task.formats()[0]);
    if !task.formats().contains(&format) {
        let names: Vec<&str> = task.formats().iter().map(format_name).collect();
        return Err(Failure::Usage(format!(
            "{} does not produce {}; choose one of: {}",
            task.name(),
            format_name(&format),
            names.join(", ")
        )));
    }
    Ok(RunConfig { task, format, out: common.out, dry_run: common.dry_run, level_cap, render_cap: DEFAULT_RENDER_CAP })
}

fn format_name(f: &Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Svg => "svg",
    }
}

/// Radius in (0, 1]: `p/q`, `p/2^k`, an integer or a decimal.
pub fn parse_radius(s: &str) -> Result<Rational, Failure> {
    let r = parse_rational(s.trim()).map_err(|e| Failure::Usage(format!("radius '{s}': {e}")))?;
    if r <= rat(0, 1) || r > rat(1, 1) {
        return Err(Failure::Usage(format!("radius {s} must lie in (0, 1]")));
    }
    Ok(r)
}

/// Query point with a membership witness.
///
/// * `v1`, `v2`, `v3`: corners of the base triangle.
/// * `m12`, `m13`, `m23`: side midpoints.
/// * `u,w`: exact basis coordinates; a witness is searched for.
/// * `cart:x,y`: nearest point of the level-10 vertex sample.
pub fn parse_query_point(s: &str, gasket: &Gasket) -> Result<WitnessedPoint, Failure> {
    let s = s.trim();
    let mid = |side: Side| {
        WitnessedPoint::from_witness(MembershipWitness::new(Word::empty(), side, rat(1, 2)).expect("t = 1/2"))
    };
    match s {
        "v1" => return Ok(WitnessedPoint::vertex(1)?),
        "v2" => return Ok(WitnessedPoint::vertex(2)?),
        "v3" => return Ok(WitnessedPoint::vertex(3)?),
        "m12" => return Ok(mid(Side::S12)),
        "m23" => return Ok(mid(Side::S23)),
        "m13" | "m31" => return Ok(mid(Side::S31)),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("cart:") {
        let (a, b) = split_pair(rest)?;
        let parse = |t: &str| {
            t.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Failure::Usage(format!("bad coordinate '{t}'")))
        };
        gasket.check_level(CARTESIAN_SNAP_LEVEL)?;
        return Ok(gasket.nearest_sample_point([parse(a)?, parse(b)?], CARTESIAN_SNAP_LEVEL)?);
    }
    let (a, b) = split_pair(s)?;
    let p = Point::new(
        parse_rational(a.trim()).map_err(|e| Failure::Usage(format!("--x: {e}")))?,
        parse_rational(b.trim()).map_err(|e| Failure::Usage(format!("--x: {e}")))?,
    );
    Ok(WitnessedPoint::find(p, WITNESS_SEARCH_DEPTH)?)
}

fn split_pair(s: &str) -> Result<(&str, &str), Failure> {
    s.split_once(',').ok_or_else(|| {
        Failure::Usage(format!("expected v1|v2|v3|m12|m13|m23, 'u,w' or 'cart:x,y', got '{s}'"))
    })
}

#[derive(Serialize)]
struct DryRun<'a> {
    dry_run: bool,
    subcommand: &'a str,
    format: Format,
    level_cap: u32,
    valid: bool,
}

/// Produce the artifact for `cfg`; when `cfg.out` is set it is also
/// written there atomically.
pub fn run(cfg: &RunConfig) -> Result<String, Failure> {
    let artifact = if cfg.dry_run {
        to_pretty(&DryRun {
            dry_run: true,
            subcommand: cfg.task.name(),
            format: cfg.format,
            level_cap: cfg.level_cap,
            valid: true,
        })
    } else {
        produce(cfg)?
    };
    if let (Some(path), false) = (&cfg.out, cfg.dry_run) {
        write_atomic(path, artifact.as_bytes())?;
    }
    Ok(artifact)
}

fn parallelogram() -> (gasket_core::ConvexPolygon, [(Point, &'static str); 4]) {
    let (v1, v2, v3) = (Point::v1(), Point::v2(), Point::v3());
    let poly = segment_sum(&Segment::new(v1, v2), &Segment::new(v1, v3));
    (poly, [(v1 + v1, "2v1"), (v1 + v2, "v1+v2"), (v2 + v3, "v2+v3"), (v1 + v3, "v1+v3")])
}

fn produce(cfg: &RunConfig) -> Result<String, Failure> {
    let gasket = Gasket::with_level_cap(cfg.level_cap)?;
    Ok(match &cfg.task {
        Task::Stage { level } => {
            let stage = gasket.stage(*level)?;
            match cfg.format {
                Format::Svg => svg::render_stage(&stage, cfg.render_cap)?,
                _ => to_pretty(&json::StageJson::from(&stage)),
            }
        }
        Task::Certificate { x, r } => {
            let cert = local_triangle(x, *r)?;
            match cfg.format {
                Format::Svg => svg::render_certificate(&cert),
                _ => to_pretty(&json::CertificateJson::from(&cert)),
            }
        }
        Task::Scan { grid, threads } => {
            let report = scan::parallel_scan(&gasket, grid.clone(), *threads)?;
            match cfg.format {
                Format::Csv => csv::scan_csv(&report.entries),
                _ => to_pretty(&json::ScanJson::from(&report)),
            }
        }
        Task::Witness => to_pretty(&json::UpperWitnessJson::from(&upper_bound_witness(&gasket)?)),
        Task::Sumset { cfg: sc } => {
            let (poly, labels) = parallelogram();
            if cfg.format == Format::Svg {
                return Ok(svg::render_parallelogram(&poly, &labels));
            }
            let points = sumset_sample(&gasket, sc)?;
            if cfg.format == Format::Csv {
                return Ok(csv::points_csv(&points));
            }
            // disk at the parallelogram center; the parallelogram lies in n·E for n ≥ 2
            let disk = Disk::ball(Point::new(rat(1, 2), rat(1, 2)), rat(1, 5));
            let coverage = interior_coverage_check(&points, &disk, sc.coverage_spacing);
            to_pretty(&json::SumsetJson {
                n_terms: sc.n_terms,
                sample_level: sc.sample_level,
                point_count: points.len(),
                parallelogram: json::ParallelogramJson {
                    vertices: poly.vertices().iter().map(json::PointJson::from).collect(),
                    area: (&poly.area()).into(),
                    inradius: inscribed_disk(&poly).radius(),
                },
                coverage: json::CoverageJson::new(&disk, &sc.coverage_spacing, &coverage),
            })
        }
        Task::Bound { query } => to_pretty(&json::BoundJson::new(query.d, query.c, &kominers_min_summands(query))),
        Task::RenderStage { level } => svg::render_stage(&gasket.stage(*level)?, cfg.render_cap)?,
        Task::RenderCertificate { x, r } => svg::render_certificate(&local_triangle(x, *r)?),
        Task::RenderParallelogram => {
            let (poly, labels) = parallelogram();
            svg::render_parallelogram(&poly, &labels)
        }
    })
}

/// Full program: parse, run, print. Returns the exit status.
pub fn main_with<I, T>(args: I, env_level_cap: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = match parse_args(args, env_level_cap) {
        Ok(cfg) => run(&cfg).map(|artifact| (cfg, artifact)),
        Err(ParseOutcome::Info(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            return 0;
        }
        Err(ParseOutcome::Failed(f)) => Err(f),
    };
    match result {
        Ok((cfg, artifact)) => {
            if cfg.out.is_none() || cfg.dry_run {
                if let Err(e) = stdout.write_all(artifact.as_bytes()) {
                    let f = Failure::from(e);
                    let _ = writeln!(stderr, "{}", f.to_json());
                    return f.exit_code();
                }
            }
            0
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.to_json());
            f.exit_code()
        }
    }
}


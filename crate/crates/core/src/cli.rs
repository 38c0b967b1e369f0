//! `med` command-line front end: generate → layout → schedule →
//! render / verify / stats.
//!
//! Exit codes: 0 ok, 1 invalid input, 2 verification failure, 3 I/O.
//! Failures print one JSON line `{"error": kind, "message": ...}` to stderr.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::MedError;
use crate::export::{export_svg, export_timeline_json, parse_timeline, RenderMode, SvgStyle};
use crate::graphgen::{
    fr_layout, generate_ba, load_graph, load_layout, save_graph, save_layout, FrOptions,
    LayoutGraph, DEFAULT_ITERATIONS,
};
use crate::scheduler::{
    build_schedule_with, visual_angle_speed, GroupPolicy, MorphParams, Schedule, DEFAULT_DEG_PER_S,
    DEFAULT_DELTA, DEFAULT_ETA, DEFAULT_MIN_TRAVEL_S, DEFAULT_PX_PER_CM, DEFAULT_VIEW_DISTANCE_CM,
};
use crate::verifier::{verify_no_crossings, DEFAULT_DT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "med",
    version,
    about = "Morphing edge drawings of graph layouts"
)]
pub struct Cli {
    /// TOML file with per-command defaults (`[schedule] delta = 0.25`, ...).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a Barabási–Albert graph.
    Generate(GenerateArgs),
    /// Place a graph with Fruchterman–Reingold.
    Layout(LayoutArgs),
    /// Compute a crossing-free morphing schedule.
    Schedule(ScheduleArgs),
    /// Draw a layout as SVG.
    Render(RenderArgs),
    /// Check a timeline for stub crossings.
    Verify(VerifyArgs),
    /// Summarize groups, crossings and timing.
    Stats(StatsArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    /// Graph JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub height: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    /// Layout JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    /// Stub-tip speed in drawing units per second. Overrides the angular triple.
    #[arg(long)]
    pub speed: Option<f64>,
    /// Angular tip speed, degrees per second.
    #[arg(long)]
    pub angle: Option<f64>,
    /// Viewing distance, cm.
    #[arg(long)]
    pub distance: Option<f64>,
    /// Screen density, px per cm.
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long)]
    pub min_travel_ms: Option<f64>,
    /// Ignore crossings a stub never reaches when forming groups.
    #[arg(long)]
    pub prune_unreachable: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    SvgAnimated,
    SvgStaticPed,
    SvgStaticCed,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub layout: PathBuf,
    /// Timeline JSON; not needed for `svg-static-ced`.
    #[arg(long)]
    pub timeline: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Node ids to draw in the highlight color.
    #[arg(long, value_delimiter = ',')]
    pub highlight: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub layout: PathBuf,
    #[arg(long)]
    pub timeline: PathBuf,
    #[arg(long)]
    pub dt_ms: Option<f64>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long)]
    pub layout: PathBuf,
    #[arg(long)]
    pub timeline: PathBuf,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct Config {
    #[serde(default)]
    generate: GenerateConfig,
    #[serde(default)]
    layout: LayoutConfig,
    #[serde(default)]
    schedule: ScheduleConfig,
    #[serde(default)]
    render: RenderConfig,
    #[serde(default)]
    verify: VerifyConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct GenerateConfig {
    nodes: Option<usize>,
    m: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct LayoutConfig {
    width: Option<f64>,
    height: Option<f64>,
    iterations: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ScheduleConfig {
    delta: Option<f64>,
    eta: Option<f64>,
    speed: Option<f64>,
    angle: Option<f64>,
    distance: Option<f64>,
    density: Option<f64>,
    min_travel_ms: Option<f64>,
    prune_unreachable: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RenderConfig {
    format: Option<Format>,
    highlight: Option<Vec<usize>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct VerifyConfig {
    dt_ms: Option<f64>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            kind: "validation",
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            kind: "io",
            message: format!("{}: {e}", path.display()),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::json!({ "error": self.kind, "message": self.message }).to_string()
    }
}

impl From<MedError> for CliError {
    fn from(e: MedError) -> Self {
        match e {
            MedError::Io(e) => CliError {
                code: EXIT_IO,
                kind: "io",
                message: e.to_string(),
            },
            other => CliError::validation(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            let message = e.to_string();
            let first = message
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ");
            eprintln!("{}", CliError::validation(first).to_line());
            return EXIT_VALIDATION;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_line());
            e.code
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write_out(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn load_config(path: Option<&Path>) -> Result<Config, CliError> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    let text = String::from_utf8(read(path)?)
        .map_err(|_| CliError::validation(format!("{}: not UTF-8", path.display())))?;
    toml::from_str(&text).map_err(|e| {
        let msg = e.to_string().replace('\n', " ");
        CliError::validation(format!("{}: {}", path.display(), msg.trim()))
    })
}

fn with_context(path: &Path, e: MedError) -> CliError {
    let mut err = CliError::from(e);
    err.message = format!("{}: {}", path.display(), err.message);
    err
}

fn read_layout(path: &Path) -> Result<LayoutGraph, CliError> {
    load_layout(&read(path)?).map_err(|e| with_context(path, e))
}

fn read_schedule(layout: &LayoutGraph, path: &Path) -> Result<Schedule, CliError> {
    let timeline = parse_timeline(&read(path)?).map_err(|e| with_context(path, e))?;
    timeline
        .into_schedule(layout)
        .map_err(|e| with_context(path, e))
}

pub fn execute(cli: &Cli) -> Result<i32, CliError> {
    let config = load_config(cli.config.as_deref())?;
    match &cli.command {
        Command::Generate(a) => {
            let c = &config.generate;
            let n = a.nodes.or(c.nodes).unwrap_or(50);
            let m = a.m.or(c.m).unwrap_or(3);
            let seed = a.seed.or(c.seed).unwrap_or(1);
            let g = generate_ba(n, m, seed)?;
            write_out(a.out.as_deref(), &save_graph(&g))?;
        }
        Command::Layout(a) => {
            let c = &config.layout;
            let g = load_graph(&read(&a.input)?).map_err(|e| with_context(&a.input, e))?;
            let opts = FrOptions::new(
                a.width.or(c.width).unwrap_or(1000.0),
                a.height.or(c.height).unwrap_or(800.0),
                a.iterations.or(c.iterations).unwrap_or(DEFAULT_ITERATIONS),
                a.seed.or(c.seed).unwrap_or(1),
            );
            let layout = fr_layout(&g, &opts)?;
            write_out(a.out.as_deref(), &save_layout(&layout))?;
        }
        Command::Schedule(a) => {
            let c = &config.schedule;
            let layout = read_layout(&a.input)?;
            let speed = match a.speed.or(c.speed) {
                Some(s) => s,
                None => visual_angle_speed(
                    a.angle.or(c.angle).unwrap_or(DEFAULT_DEG_PER_S),
                    a.distance
                        .or(c.distance)
                        .unwrap_or(DEFAULT_VIEW_DISTANCE_CM),
                    a.density.or(c.density).unwrap_or(DEFAULT_PX_PER_CM),
                ),
            };
            let min_travel_ms = a
                .min_travel_ms
                .or(c.min_travel_ms)
                .unwrap_or(DEFAULT_MIN_TRAVEL_S * 1000.0);
            let params = MorphParams::new(
                a.delta.or(c.delta).unwrap_or(DEFAULT_DELTA),
                a.eta.or(c.eta).unwrap_or(DEFAULT_ETA),
                speed,
                min_travel_ms / 1000.0,
            )?;
            let policy = if a.prune_unreachable || c.prune_unreachable.unwrap_or(false) {
                GroupPolicy::ReachableOnly
            } else {
                GroupPolicy::Geometric
            };
            let schedule = build_schedule_with(&layout, &params, policy)?;
            write_out(a.out.as_deref(), &export_timeline_json(&schedule))?;
        }
        Command::Render(a) => {
            let c = &config.render;
            let layout = read_layout(&a.layout)?;
            let format = a.format.or(c.format).unwrap_or(Format::SvgAnimated);
            let schedule = match (&a.timeline, format) {
                (Some(path), _) => read_schedule(&layout, path)?,
                (None, Format::SvgStaticCed) => {
                    crate::scheduler::build_schedule(&layout, &MorphParams::default())?
                }
                (None, _) => {
                    return Err(CliError::validation(
                        "--timeline is required for svg-animated and svg-static-ped",
                    ))
                }
            };
            let mode = match format {
                Format::SvgAnimated => RenderMode::Animated,
                Format::SvgStaticPed => RenderMode::StaticPed,
                Format::SvgStaticCed => RenderMode::StaticCed,
            };
            let highlighted = if a.highlight.is_empty() {
                c.highlight.clone().unwrap_or_default()
            } else {
                a.highlight.clone()
            };
            if let Some(v) = highlighted
                .iter()
                .find(|&&v| v >= layout.graph().node_count())
            {
                return Err(CliError::validation(format!(
                    "highlighted node {v} does not exist"
                )));
            }
            let style = SvgStyle {
                highlighted,
                ..SvgStyle::default()
            };
            write_out(
                a.out.as_deref(),
                &export_svg(&layout, &schedule, mode, &style),
            )?;
        }
        Command::Verify(a) => {
            let layout = read_layout(&a.layout)?;
            let schedule = read_schedule(&layout, &a.timeline)?;
            let dt_ms = a
                .dt_ms
                .or(config.verify.dt_ms)
                .unwrap_or(DEFAULT_DT * 1000.0);
            if dt_ms.is_nan() || dt_ms <= 0.0 {
                return Err(CliError::validation(format!(
                    "dt-ms must be positive (got {dt_ms})"
                )));
            }
            let report = verify_no_crossings(&layout, &schedule, dt_ms / 1000.0)?;
            write_out(None, format!("{}\n", report.to_json()).as_bytes())?;
            if !report.ok {
                return Ok(EXIT_VERIFICATION);
            }
        }
        Command::Stats(a) => {
            let layout = read_layout(&a.layout)?;
            let schedule = read_schedule(&layout, &a.timeline)?;
            let stats = Stats::collect(&layout, &schedule);
            let mut bytes = serde_json::to_vec_pretty(&stats).expect("in-memory serialization");
            bytes.push(b'\n');
            write_out(None, &bytes)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct GroupStats {
    pub size: usize,
    pub makespan_s: f64,
    pub sequential_s: f64,
}

/// Two readings of "edges that do not morph"; neither is asserted.
#[derive(Debug, Serialize)]
pub struct NonMorphingCandidates {
    /// Edges in singleton groups: their timing is unconstrained.
    pub singleton_group_edges: usize,
    /// Edges that cross something, but only inside rest stubs.
    pub only_inevitable_crossing_edges: usize,
}

#[derive(Debug, Serialize)]
pub struct Stats {
    pub nodes: usize,
    pub edges: usize,
    pub groups: usize,
    pub largest_group: usize,
    pub schedulable_crossings: usize,
    pub inevitable_crossings: usize,
    pub period_s: f64,
    /// Period divided by the largest sequential group duration.
    pub sequential_baseline_ratio: f64,
    pub non_morphing_candidates: NonMorphingCandidates,
    pub group_stats: Vec<GroupStats>,
}

impl Stats {
    pub fn collect(layout: &LayoutGraph, schedule: &Schedule) -> Self {
        let group_stats: Vec<GroupStats> = schedule
            .groups
            .iter()
            .map(|g| GroupStats {
                size: g.len(),
                makespan_s: schedule.makespan(g),
                sequential_s: schedule.sequential_baseline(g),
            })
            .collect();
        let worst_sequential = group_stats
            .iter()
            .map(|g| g.sequential_s)
            .fold(0.0, f64::max);

        let m = layout.edge_count();
        let mut any = vec![false; m];
        let mut schedulable = vec![false; m];
        let (mut sched_pairs, mut inevitable_pairs) = (0, 0);
        for x in &schedule.crossings {
            any[x.e] = true;
            schedulable[x.e] |= x.schedulable;
            if x.e < x.c {
                if x.schedulable {
                    sched_pairs += 1;
                } else {
                    inevitable_pairs += 1;
                }
            }
        }
        Stats {
            nodes: layout.graph().node_count(),
            edges: m,
            groups: schedule.groups.len(),
            largest_group: schedule.groups.iter().map(|g| g.len()).max().unwrap_or(0),
            schedulable_crossings: sched_pairs,
            inevitable_crossings: inevitable_pairs,
            period_s: schedule.period,
            sequential_baseline_ratio: if worst_sequential > 0.0 {
                schedule.period / worst_sequential
            } else {
                0.0
            },
            non_morphing_candidates: NonMorphingCandidates {
                singleton_group_edges: schedule.groups.iter().filter(|g| g.is_singleton()).count(),
                only_inevitable_crossing_edges: (0..m)
                    .filter(|&e| any[e] && !schedulable[e])
                    .count(),
            },
            group_stats,
        }
    }
}

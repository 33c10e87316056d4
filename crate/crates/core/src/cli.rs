//! Command-line front end: `solve`, `oracle`, `bench` and `cases`.
//!
//! Exit codes: 0 on success, 1 for bad input, 2 when a result breaks one
//! of the solver's invariants.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::bench;
use crate::cases;
use crate::circle::{solve, SenseFilter, SolveReport};
use crate::dbm::dbm;
use crate::dubins::{sample_path, Word};
use crate::geom::Rotation;
use crate::instance::{read_patches, InstanceError, InstancePatch, InstanceRecord};
use crate::report::{to_json_line, to_json_pretty, ReportRecord};
use crate::svg::{self, Drawn};
use crate::tol;

#[derive(Debug, Parser)]
#[command(
    name = "dubins-circle",
    version,
    about = "Shortest Dubins paths from a start pose to a target circle, arriving tangentially"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance, or every line of an instance file.
    Solve(SolveArgs),
    /// Run the discretized baseline and compare it with the analytic optimum.
    Oracle(OracleArgs),
    /// Time the analytic solver against the baseline on seeded random instances.
    #[command(long_about = BENCH_ABOUT)]
    Bench(BenchArgs),
    /// Run the four reference cases and check their documented properties.
    Cases(CasesArgs),
}

const BENCH_ABOUT: &str = "Time the analytic solver against the baseline on seeded random instances.

Instances are drawn uniformly: rho in [0.5, 2), r in [0.5, 3), x0 and y0 in \
[-10(rho + r), 10(rho + r)), theta0 in [0, 2pi). Results are bucketed by the \
start's distance d_m to the circle center: >=4rho, [3rho, 4rho), [2rho, 3rho), \
[rho, 2rho), <rho. Each bucket is timed in its own loop per method after a \
warm-up. Exits with status 2 if any analytic length exceeds its baseline length.";

/// Instance given by flags, by a JSON-lines file, or both (flags win).
#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Start x in the world frame.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    /// Start y in the world frame.
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<f64>,
    /// Start heading in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<f64>,
    /// Minimum turning radius.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Target circle radius.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    /// Target circle center x [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub cx: Option<f64>,
    /// Target circle center y [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    pub cy: Option<f64>,
    /// Rotation sense at arrival: cw, ccw or both [default: both].
    #[arg(long)]
    pub sense: Option<SenseFilter>,
    /// File with one JSON instance object per line.
    #[arg(long, value_name = "FILE")]
    pub instances: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Write the full report as JSON (JSON lines for several instances).
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Draw the optimal paths as SVG (numbered per instance for several).
    #[arg(long, value_name = "FILE")]
    pub svg: Option<PathBuf>,
    /// Sample the optimal path every STEP length units as CSV (s,x,y,theta).
    #[arg(long, value_name = "STEP")]
    pub samples: Option<f64>,
    /// Destination of the samples; without it the CSV goes to standard
    /// output and the summary to standard error.
    #[arg(long, value_name = "FILE", requires = "samples")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Discretization levels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "360")]
    pub level: Vec<u32>,
    /// Write the comparison as JSON.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Number of random instances.
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Baseline discretization level.
    #[arg(long, default_value_t = 360)]
    pub level: u32,
    /// Write the table and per-instance lengths as JSON.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CasesArgs {
    /// Directory for case-a.svg .. case-d.svg.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Validation(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Validation(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Validation(m) => m,
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("writing {}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Failure {
    Failure::Input(format!("writing output: {e}"))
}

/// `out.svg` for a single instance, `out-3.svg` for the fourth of several.
fn numbered(path: &Path, index: usize, total: usize) -> PathBuf {
    if total == 1 {
        return path.to_path_buf();
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{index}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{index}"),
    };
    path.with_file_name(name)
}

fn records(args: &InstanceArgs) -> Result<Vec<InstanceRecord>, Failure> {
    let flags = InstancePatch {
        x0: args.x0,
        y0: args.y0,
        theta0: args.theta0,
        cx: args.cx,
        cy: args.cy,
        r: args.r,
        rho: args.rho,
        sense: args.sense,
    };
    let base = match &args.instances {
        Some(path) => {
            let file = File::open(path).map_err(|e| Failure::Input(format!("opening {}: {e}", path.display())))?;
            let patches = read_patches(BufReader::new(file))?;
            if patches.is_empty() {
                return Err(Failure::Input(format!("{} holds no instances", path.display())));
            }
            patches
        }
        None => vec![InstancePatch::default()],
    };
    base.into_iter()
        .enumerate()
        .map(|(i, p)| {
            p.overridden_by(&flags).complete().map_err(|e| match &args.instances {
                Some(_) => Failure::Input(format!("instance {}: {e}", i + 1)),
                None => Failure::from(e),
            })
        })
        .collect()
}

/// Every reported path must be one of the admissible families and end on
/// the circle with a tangential heading.
fn validate(rep: &SolveReport) -> Result<(), String> {
    let r = rep.instance.r;
    for sense in &rep.per_sense {
        for sol in &sense.optimal {
            let w: Word = sol.family();
            if !(w.is_empty() || w.is_circle_family()) {
                return Err(format!("{} optimum {w} is not an admissible family", sense.rotation));
            }
            let end = sol.path.endpoint();
            let (a, b) = (crate::geom::phi1(&end, r), crate::geom::phi2(&end));
            if a.abs() > tol::RESIDUAL || b.abs() > tol::RESIDUAL {
                return Err(format!(
                    "{} optimum misses the circle: residuals {a:e}, {b:e}",
                    sense.rotation
                ));
            }
        }
    }
    Ok(())
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if let Some(step) = args.samples {
        if !(step.is_finite() && step > 0.0) {
            return Err(Failure::Input(format!("--samples must be positive, got {step}")));
        }
    }
    let recs = records(&args.instance)?;
    let n = recs.len();
    let csv_to_stdout = args.samples.is_some() && args.csv.is_none();
    let mut json_lines = Vec::with_capacity(n);
    let mut csv = String::new();
    let mut breach = None;
    for (i, rec) in recs.iter().enumerate() {
        let rep = solve(&rec.problem()?, rec.sense_or_default());
        let record = ReportRecord::new(&rep, rec);
        let summary: &mut dyn Write = if csv_to_stdout { &mut *err } else { &mut *out };
        if n > 1 {
            writeln!(summary, "instance {}", i + 1).map_err(io)?;
        }
        writeln!(summary, "{}", record.summary()).map_err(io)?;
        if let Err(msg) = validate(&rep) {
            breach.get_or_insert(format!("instance {}: {msg}", i + 1));
        }
        if let Some(path) = &args.svg {
            let drawn: Vec<Drawn> = rep
                .per_sense
                .iter()
                .flat_map(|s| &s.optimal)
                .map(|s| Drawn {
                    path: &s.path,
                    label: format!("{} {} {:.9}", s.rotation, s.family(), s.length()),
                })
                .collect();
            write_file(&numbered(path, i, n), &svg::render(rec, &drawn))?;
        }
        if let Some(step) = args.samples {
            if i == 0 {
                csv.push_str(if n > 1 {
                    "instance,s,x,y,theta\n"
                } else {
                    "s,x,y,theta\n"
                });
            }
            for p in sample_path(&rep.best().path, step)? {
                let w = rec.to_world(&p.pose);
                if n > 1 {
                    csv.push_str(&format!("{},", i + 1));
                }
                csv.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", p.s, w.x, w.y, w.theta));
            }
        }
        json_lines.push(record);
    }
    if let Some(path) = &args.json {
        let text = if n == 1 {
            to_json_pretty(&json_lines[0]) + "\n"
        } else {
            json_lines.iter().map(|r| to_json_line(r) + "\n").collect()
        };
        write_file(path, &text)?;
    }
    if args.samples.is_some() {
        match &args.csv {
            Some(path) => write_file(path, &csv)?,
            None => out.write_all(csv.as_bytes()).map_err(io)?,
        }
    }
    match breach {
        Some(msg) => Err(Failure::Validation(msg)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleLevel {
    pub level: u32,
    pub length: f64,
    /// Baseline length minus analytic length.
    pub gap: f64,
    pub best_theta: f64,
    pub best_rotation: Rotation,
    pub family: Word,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub instance: InstanceRecord,
    pub analytic_length: f64,
    pub analytic_family: Word,
    /// Point-to-point solves the analytic method performed.
    pub analytic_evaluations: u64,
    pub levels: Vec<OracleLevel>,
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if args.level.contains(&0) {
        return Err(Failure::Input("discretization level must be at least 1".into()));
    }
    let recs = records(&args.instance)?;
    let mut all = Vec::new();
    let mut breach = None;
    for (i, rec) in recs.iter().enumerate() {
        let inst = rec.problem()?;
        let sense = rec.sense_or_default();
        let rep = solve(&inst, sense);
        let analytic = rep.length();
        let mut levels = Vec::new();
        for &l in &args.level {
            let res = dbm(&inst, l, sense)?;
            let gap = res.length() - analytic;
            if gap < -tol::EQUAL_LENGTH {
                breach.get_or_insert(format!(
                    "instance {}: DBM({l}) is shorter than the analytic optimum by {}",
                    i + 1,
                    -gap
                ));
            }
            levels.push(OracleLevel {
                level: l,
                length: res.length(),
                gap,
                best_theta: res.best_theta,
                best_rotation: res.best_rotation,
                family: res.best_path.family_tag(),
                evaluations: res.evaluations,
            });
        }
        let realized = rep
            .candidates
            .iter()
            .filter(|c| !matches!(c.outcome, crate::circle::Outcome::Screened))
            .count() as u64;
        if recs.len() > 1 {
            writeln!(out, "instance {}", i + 1).map_err(io)?;
        }
        writeln!(
            out,
            "analytic  length {analytic:.12} ({}) with {realized} point-to-point solves",
            rep.best().family()
        )
        .map_err(io)?;
        for l in &levels {
            writeln!(
                out,
                "DBM({:<5}) length {:.12} ({} {}, theta {:.6}) gap {:.3e}, {} point-to-point solves",
                l.level, l.length, l.best_rotation, l.family, l.best_theta, l.gap, l.evaluations
            )
            .map_err(io)?;
        }
        all.push(OracleRecord {
            instance: *rec,
            analytic_length: analytic,
            analytic_family: rep.best().family(),
            analytic_evaluations: realized,
            levels,
        });
    }
    if let Some(path) = &args.json {
        let text = if all.len() == 1 {
            to_json_pretty(&all[0]) + "\n"
        } else {
            all.iter().map(|r| to_json_line(r) + "\n").collect()
        };
        write_file(path, &text)?;
    }
    match breach {
        Some(msg) => Err(Failure::Validation(msg)),
        None => Ok(()),
    }
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let report = bench::run(args.count, args.seed, args.level)?;
    writeln!(out, "{}", report.table()).map_err(io)?;
    if let Some(path) = &args.json {
        write_file(path, &(to_json_pretty(&report) + "\n"))?;
    }
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(format!(
            "analytic length exceeds the baseline on instances {:?}",
            report.violations
        )))
    }
}

fn cmd_cases(args: &CasesArgs, out: &mut dyn Write) -> Result<(), Failure> {
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::Input(format!("creating {}: {e}", args.out_dir.display())))?;
    let mut failed = Vec::new();
    for case in cases::all() {
        let run = cases::run(&case);
        let verdict = if run.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "case {} {verdict}: {}", case.name, case.claim).map_err(io)?;
        for c in &run.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(out, "  [{mark}] {}: {}", c.name, c.detail).map_err(io)?;
        }
        let path = args.out_dir.join(format!("case-{}.svg", case.name.to_lowercase()));
        write_file(&path, &run.svg)?;
        if !run.passed() {
            failed.push(case.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("cases failing: {}", failed.join(", "))))
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out, err),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Cases(a) => cmd_cases(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

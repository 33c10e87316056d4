//! The four reference instances and the geometric property each one
//! demonstrates.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::circle::{solve, SenseFilter, Solution, SolveReport, TangencyMode};
use crate::dbm::{dbm, DbmResult};
use crate::dubins::{SegmentKind, Word};
use crate::geom::{phi1, phi2, Configuration};
use crate::instance::InstanceRecord;
use crate::svg::{self, Drawn};
use crate::tol;

/// Collinearity of the `CCC` junctions with the circle center, relative to `|A|·|B|`.
pub const COLLINEAR_TOL: f64 = 1e-7;
/// Distance from the circle center to the line carrying the straight segment.
pub const LINE_TOL: f64 = 1e-7;
/// Agreement of co-minimal lengths and of the internal final arc with its closed form.
pub const EQUAL_TOL: f64 = 1e-9;
/// DBM level used against the single-arc case.
pub const CASE_D_LEVEL: u32 = 360;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case {
    pub name: &'static str,
    pub claim: &'static str,
    pub instance: InstanceRecord,
}

fn record(x0: f64, y0: f64, theta0: f64, rho: f64, r: f64) -> InstanceRecord {
    InstanceRecord {
        x0,
        y0,
        theta0,
        cx: 0.0,
        cy: 0.0,
        r,
        rho,
        sense: None,
    }
}

pub fn case_a() -> Case {
    Case {
        name: "A",
        claim: "both rotation senses are CCC with the junctions collinear with the center",
        instance: record(-0.2, -0.5, FRAC_PI_2, 1.0, 1.0),
    }
}

pub fn case_b() -> Case {
    Case {
        name: "B",
        claim: "CSC optimum, RSR and RSL co-minimal, straight segment aimed at the center",
        instance: record(-5.0, 0.0, 3.0 * FRAC_PI_2, 1.0, 1.0),
    }
}

pub fn case_c() -> Case {
    Case {
        name: "C",
        claim: "internally tangent CSC, final arc pi - acos(1/3), LSL and LSR co-minimal",
        instance: record(-0.5, 0.0, FRAC_PI_2, 0.5, 2.0),
    }
}

/// Start placed on a right turning circle that encloses the target circle
/// and touches it, so a single arc reaches it.
pub fn case_d() -> Case {
    let (r, rho) = (1.0, 2.0);
    let deg = PI / 180.0;
    Case {
        name: "D",
        claim: "single-arc optimum that DBM(360) misses",
        instance: record(
            r * (269.5 * deg).cos() + rho * (179.5 * deg).cos(),
            r * (269.5 * deg).sin() + rho * (179.5 * deg).sin(),
            89.5 * deg,
            rho,
            r,
        ),
    }
}

pub fn all() -> [Case; 4] {
    [case_a(), case_b(), case_c(), case_d()]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

pub struct CaseRun {
    pub case: Case,
    pub report: SolveReport,
    pub baseline: Option<DbmResult>,
    pub checks: Vec<Check>,
    pub svg: String,
}

impl CaseRun {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `|A × B| / (|A|·|B|)` for the two junctions of a three-segment path.
pub fn junction_collinearity(sol: &Solution) -> Option<f64> {
    let j = sol.path.junctions();
    if sol.path.segments().len() != 3 {
        return None;
    }
    let (a, b) = (&j[1], &j[2]);
    let cross = a.x * b.y - a.y * b.x;
    Some(cross.abs() / (a.x.hypot(a.y) * b.x.hypot(b.y)))
}

/// Distance from the circle center to the line carrying the straight segment.
pub fn straight_line_offset(sol: &Solution) -> Option<f64> {
    let segs = sol.path.segments();
    let k = segs.iter().position(|s| s.kind == SegmentKind::S)?;
    let p: Configuration = sol.path.junctions()[k];
    let (s, c) = p.theta.sin_cos();
    Some((p.x * s - p.y * c).abs())
}

fn is_csc(w: Word) -> bool {
    w.len() == 3 && w.kinds().nth(1) == Some(SegmentKind::S)
}

fn is_ccc(w: Word) -> bool {
    w.len() == 3 && w.kinds().all(|k| k != SegmentKind::S)
}

fn family_length(rep: &SolveReport, family: &str) -> Option<f64> {
    rep.optimal
        .iter()
        .find(|s| s.family().to_string() == family)
        .map(Solution::length)
}

fn co_minimal(rep: &SolveReport, a: &str, b: &str) -> Check {
    let name = format!("{a} and {b} co-minimal");
    match (family_length(rep, a), family_length(rep, b)) {
        (Some(x), Some(y)) => Check::new(name, (x - y).abs() <= EQUAL_TOL, format!("{a} {x:.12}, {b} {y:.12}")),
        _ => {
            let found: Vec<String> = rep.optimal.iter().map(|s| s.family().to_string()).collect();
            Check::new(name, false, format!("optimal families: {}", found.join(", ")))
        }
    }
}

/// Two optimal `CSC` paths that share the first arc and the straight
/// segment and differ only in the direction of the final arc.
fn final_turn_pair(rep: &SolveReport) -> Check {
    let csc: Vec<&Solution> = rep.optimal.iter().filter(|s| is_csc(s.family())).collect();
    let pair = csc.iter().enumerate().find_map(|(i, a)| {
        csc[i + 1..].iter().find_map(|b| {
            let (sa, sb) = (a.path.segments(), b.path.segments());
            let shared = sa[0].kind == sb[0].kind
                && (sa[0].param - sb[0].param).abs() <= EQUAL_TOL
                && (sa[1].param - sb[1].param).abs() <= EQUAL_TOL;
            (shared && sa[2].kind != sb[2].kind && (a.length() - b.length()).abs() <= EQUAL_TOL).then_some((*a, *b))
        })
    });
    let name = "CSC pair differing only in the final turn";
    match pair {
        Some((a, b)) => Check::new(
            name,
            true,
            format!("{} and {} at {:.12}", a.family(), b.family(), a.length()),
        ),
        None => Check::new(name, false, format!("{} optimal CSC paths", csc.len())),
    }
}

fn residual_check(rep: &SolveReport) -> Check {
    let r = rep.instance.r;
    let worst = rep
        .per_sense
        .iter()
        .flat_map(|s| &s.optimal)
        .map(|s| {
            let e = s.path.endpoint();
            phi1(&e, r).abs().max(phi2(&e).abs())
        })
        .fold(0.0, f64::max);
    Check::new("terminal residuals", worst <= tol::RESIDUAL, format!("max {worst:.1e}"))
}

fn checks_a(rep: &SolveReport) -> Vec<Check> {
    let mut out = Vec::new();
    for sense in &rep.per_sense {
        let sol = sense.best();
        out.push(Check::new(
            format!("{} optimum is CCC", sense.rotation),
            is_ccc(sol.family()),
            format!("{} length {:.12}", sol.family(), sol.length()),
        ));
        let res = junction_collinearity(sol).unwrap_or(f64::INFINITY);
        out.push(Check::new(
            format!("{} junctions collinear with center", sense.rotation),
            res <= COLLINEAR_TOL,
            format!("residual {res:.1e}"),
        ));
    }
    out
}

fn line_checks(rep: &SolveReport, out: &mut Vec<Check>) {
    for sol in &rep.optimal {
        let off = straight_line_offset(sol).unwrap_or(f64::INFINITY);
        out.push(Check::new(
            format!("{} straight segment passes through center", sol.family()),
            off <= LINE_TOL,
            format!("offset {off:.1e}"),
        ));
    }
}

fn checks_b(rep: &SolveReport) -> Vec<Check> {
    let best = rep.best();
    let mut out = vec![
        Check::new(
            "optimum is CSC",
            is_csc(best.family()),
            format!("{} length {:.12}", best.family(), best.length()),
        ),
        co_minimal(rep, "RSR", "RSL"),
        final_turn_pair(rep),
    ];
    line_checks(rep, &mut out);
    out
}

fn checks_c(rep: &SolveReport) -> Vec<Check> {
    let best = rep.best();
    let expected = PI - (1.0f64 / 3.0).acos();
    let mut out = vec![Check::new(
        "optimum is internally tangent CSC",
        is_csc(best.family()) && best.tangency == TangencyMode::Internal,
        format!("{} {} tangency", best.family(), best.tangency),
    )];
    for sol in &rep.optimal {
        let arc = sol.path.segments().last().map_or(f64::NAN, |s| s.param);
        out.push(Check::new(
            format!("{} final arc equals pi - acos(1/3)", sol.family()),
            (arc - expected).abs() <= EQUAL_TOL,
            format!("{arc:.15} vs {expected:.15}"),
        ));
    }
    out.push(co_minimal(rep, "LSL", "LSR"));
    out.push(final_turn_pair(rep));
    line_checks(rep, &mut out);
    out
}

fn checks_d(rep: &SolveReport, baseline: &DbmResult) -> Vec<Check> {
    let best = rep.best();
    let margin = baseline.length() - best.length();
    vec![
        Check::new(
            "optimum is a single arc",
            best.family().len() == 1 && best.family().kinds().all(|k| k != SegmentKind::S),
            format!("{} length {:.12}", best.family(), best.length()),
        ),
        Check::new(
            format!("DBM({}) strictly longer", baseline.level),
            margin > tol::EQUAL_LENGTH,
            format!(
                "DBM {:.12} ({}), margin {margin:.6}",
                baseline.length(),
                baseline.best_path.family_tag()
            ),
        ),
    ]
}

/// Solves a case, evaluates its property checks and renders the paths.
pub fn run(case: &Case) -> CaseRun {
    let inst = case.instance.problem().expect("case parameters are valid");
    let report = solve(&inst, SenseFilter::Both);
    let baseline = (case.name == "D").then(|| dbm(&inst, CASE_D_LEVEL, SenseFilter::Both).expect("positive level"));
    let mut checks = match case.name {
        "A" => checks_a(&report),
        "B" => checks_b(&report),
        "C" => checks_c(&report),
        _ => checks_d(&report, baseline.as_ref().expect("computed for D")),
    };
    checks.push(residual_check(&report));

    let mut drawn: Vec<Drawn> = report
        .per_sense
        .iter()
        .flat_map(|s| &s.optimal)
        .map(|s| Drawn {
            path: &s.path,
            label: format!("{} {} {:.6}", s.rotation, s.family(), s.length()),
        })
        .collect();
    if let Some(b) = &baseline {
        drawn.push(Drawn {
            path: &b.best_path,
            label: format!("DBM({}) {} {:.6}", b.level, b.best_path.family_tag(), b.length()),
        });
    }
    let svg = svg::render(&case.instance, &drawn);
    CaseRun {
        case: *case,
        report,
        baseline,
        checks,
        svg,
    }
}

//! Shortest path from a pose to the target circle, arriving tangentially.
//!
//! The solver enumerates terminal headings in closed form for every path
//! type that can be optimal: `CSC` from the tangent lines through the circle
//! center, `CCC` from the roots of a quartic in the half-angle tangent of the
//! final-circle direction, and the degenerate `SC`, `CC`, `C` and zero-length
//! configurations from direct tangency geometry. Each heading is then
//! realized with the point-to-point planner and checked before it may win.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::dubins::{arc_angle, ccc_arcs, DubinsPath, PathFamily, PointToPoint, Segment, SegmentKind, Word};
use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::geom::{
    angle_distance, phi1, phi2, rotation_of, terminal_configuration, turn_center, wrap, Configuration, ProblemInstance,
    Rotation, Side, Vec2, QUARTER,
};
use crate::quartic::{real_roots_array, QuarticCoefficients};
use crate::tol;

/// How the final arc touches the target circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TangencyMode {
    External,
    Internal,
}

impl TangencyMode {
    pub const BOTH: [TangencyMode; 2] = [TangencyMode::External, TangencyMode::Internal];

    /// `+1` for external, `-1` for internal tangency.
    pub fn delta(self) -> f64 {
        match self {
            TangencyMode::External => 1.0,
            TangencyMode::Internal => -1.0,
        }
    }
}

impl fmt::Display for TangencyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TangencyMode::External => "external",
            TangencyMode::Internal => "internal",
        })
    }
}

/// Which construction produced a candidate heading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateSource {
    CscClosedForm,
    CccQuarticRoot,
    CccSingularSubstitution,
    Tangency,
}

impl fmt::Display for CandidateSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CandidateSource::CscClosedForm => "csc-closed-form",
            CandidateSource::CccQuarticRoot => "ccc-quartic-root",
            CandidateSource::CccSingularSubstitution => "ccc-singular-substitution",
            CandidateSource::Tangency => "tangency",
        })
    }
}

/// A terminal heading proposed by one of the closed-form constructions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalCandidate {
    pub theta_f: f64,
    pub rotation: Rotation,
    pub family_hint: Word,
    pub tangency: TangencyMode,
    pub source: CandidateSource,
    /// Direction of the straight segment, for `CSC` and `SC` candidates.
    pub alpha_s: Option<f64>,
    /// Closed-form radian of the final arc, for `CSC` and `SC` candidates.
    pub alpha_c: Option<f64>,
    /// The path the construction itself predicts.
    pub analytic: DubinsPath,
}

impl TerminalCandidate {
    pub fn terminal(&self, r: f64) -> Configuration {
        terminal_configuration(self.theta_f, self.rotation, r)
    }

    pub fn analytic_length(&self) -> f64 {
        self.analytic.total_length()
    }
}

/// Requested terminal rotation sense(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SenseFilter {
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "ccw")]
    CounterClockwise,
    #[default]
    Both,
}

impl SenseFilter {
    pub fn rotations(self) -> &'static [Rotation] {
        match self {
            SenseFilter::Clockwise => &[Rotation::Clockwise],
            SenseFilter::CounterClockwise => &[Rotation::CounterClockwise],
            SenseFilter::Both => &Rotation::BOTH,
        }
    }

    pub fn admits(self, rotation: Rotation) -> bool {
        self.rotations().contains(&rotation)
    }
}

impl FromStr for SenseFilter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cw" => Ok(SenseFilter::Clockwise),
            "ccw" => Ok(SenseFilter::CounterClockwise),
            "both" => Ok(SenseFilter::Both),
            other => Err(format!("unknown sense {other:?}, expected cw, ccw or both")),
        }
    }
}

impl fmt::Display for SenseFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SenseFilter::Clockwise => "cw",
            SenseFilter::CounterClockwise => "ccw",
            SenseFilter::Both => "both",
        })
    }
}

/// Switches for the optional candidate filters.
///
/// The filters only skip `CCC` candidates that cannot be optimal; turning
/// them off must not change any optimal length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Skip internally tangent `CCC` when `rho > r`.
    pub prune_internal_large_radius: bool,
    /// Skip `CCC` whose first circle center is at least `r + rho` from the
    /// origin. Only applied when `rho <= r`; see `far_start_circle_any_radius`.
    pub prune_far_start_circle: bool,
    /// Apply the far-start rule for `rho > r` as well. The rule does not hold
    /// there: a `CCC` can be optimal with its first center beyond `r + rho`,
    /// so enabling this can return a longer path than the true optimum.
    pub far_start_circle_any_radius: bool,
    /// Skip `CCC` whose first and middle circle centers are both farther than `r + rho`.
    pub prune_far_middle_circle: bool,
    /// An optimal `CCC` has a middle arc longer than half a turn. Skip `CCC`
    /// candidates whose middle arc is shorter, and all `CCC` of a rotation
    /// sense once a path of that sense no longer than `pi * rho` is accepted.
    pub prune_middle_arc_bound: bool,
    /// Realize every candidate instead of stopping once the remaining
    /// closed-form lengths exceed the best accepted path.
    pub exhaustive: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            prune_internal_large_radius: true,
            prune_far_start_circle: true,
            far_start_circle_any_radius: false,
            prune_far_middle_circle: true,
            prune_middle_arc_bound: true,
            exhaustive: false,
        }
    }
}

impl SolveOptions {
    /// All filters disabled.
    pub fn unfiltered() -> Self {
        Self {
            prune_internal_large_radius: false,
            prune_far_start_circle: false,
            far_start_circle_any_radius: false,
            prune_far_middle_circle: false,
            prune_middle_arc_bound: false,
            exhaustive: false,
        }
    }
}

/// Reason a family was skipped before realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PruneRule {
    /// The origin lies inside the first turning circle, so no straight
    /// segment through it can leave that circle.
    OriginInsideStartCircle,
    /// Internal tangency with `rho > r` never gives an optimal `CCC`.
    InternalTangencyLargeRadius,
    /// First circle center at least `r + rho` from the origin, with `rho <= r`.
    StartCircleFar,
    /// First and middle circle centers both farther than `r + rho`.
    BothCentersFar,
    /// Internal tangency with `r / 2 < rho <= r`.
    InternalTangencyInadmissible,
    /// A path of the same sense no longer than `pi * rho` is already known.
    MiddleArcBound,
    /// The middle arc of this candidate is shorter than half a turn.
    ShortMiddleArc,
}

impl fmt::Display for PruneRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PruneRule::OriginInsideStartCircle => "origin-inside-start-circle",
            PruneRule::InternalTangencyLargeRadius => "internal-tangency-large-radius",
            PruneRule::StartCircleFar => "start-circle-far",
            PruneRule::BothCentersFar => "both-centers-far",
            PruneRule::InternalTangencyInadmissible => "internal-tangency-inadmissible",
            PruneRule::MiddleArcBound => "middle-arc-bound",
            PruneRule::ShortMiddleArc => "short-middle-arc",
        })
    }
}

/// A family skipped before realization, with the quantity that triggered
/// the rule and the bound it was compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PruneRecord {
    pub family: Word,
    pub tangency: Option<TangencyMode>,
    pub rule: PruneRule,
    pub measured: f64,
    pub bound: f64,
}

impl PruneRecord {
    pub fn reason(&self) -> String {
        let (m, b) = (self.measured, self.bound);
        match self.rule {
            PruneRule::OriginInsideStartCircle => {
                format!("start circle center is {m} from the origin, inside radius rho = {b}")
            }
            PruneRule::InternalTangencyLargeRadius => format!("internal tangency with rho = {m} > r = {b}"),
            PruneRule::StartCircleFar => format!("first circle center distance {m} >= r + rho = {b}"),
            PruneRule::BothCentersFar => {
                format!("first and middle circle centers both farther than r + rho = {b} (nearest {m})")
            }
            PruneRule::InternalTangencyInadmissible => format!("internal tangency needs rho <= r / 2 = {b}, got {m}"),
            PruneRule::MiddleArcBound => format!("accepted path of length {m} <= pi * rho = {b}"),
            PruneRule::ShortMiddleArc => format!("middle arc below half a turn (sine {m} > {b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RejectReason {
    /// The point-to-point optimum to the candidate's terminal pose is of a
    /// family the candidate does not predict, and strictly shorter.
    FamilyMismatch { hint: Word, realized: Word },
    /// The realized endpoint misses the terminal constraints.
    TerminalResidual { phi1: f64, phi2: f64 },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::FamilyMismatch { hint, realized } => {
                write!(f, "realized {realized} is not a substring of {hint}")
            }
            RejectReason::TerminalResidual { phi1, phi2 } => {
                write!(f, "terminal residuals phi1={phi1:e}, phi2={phi2:e}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rejection {
    pub reason: RejectReason,
    /// Shortest point-to-point path to the candidate's terminal pose.
    pub path: DubinsPath,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Accepted(DubinsPath),
    Rejected(Rejection),
    /// Not realized: its closed-form length already exceeded the best
    /// accepted path of the same rotation sense.
    Screened,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateRecord {
    pub candidate: TerminalCandidate,
    pub outcome: Outcome,
}

/// One optimal path with its terminal data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution {
    pub path: DubinsPath,
    pub theta_f: f64,
    pub rotation: Rotation,
    pub tangency: TangencyMode,
    /// Index into [`SolveReport::candidates`].
    pub candidate: usize,
}

impl Solution {
    pub fn length(&self) -> f64 {
        self.path.total_length()
    }

    pub fn family(&self) -> Word {
        self.path.family_tag()
    }
}

/// Optimal paths for one rotation sense.
#[derive(Debug, Clone, PartialEq)]
pub struct SenseResult {
    pub rotation: Rotation,
    /// Co-minimal paths, shortest first; never empty.
    pub optimal: Vec<Solution>,
}

impl SenseResult {
    pub fn best(&self) -> &Solution {
        &self.optimal[0]
    }

    pub fn length(&self) -> f64 {
        self.best().length()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub instance: ProblemInstance,
    pub sense: SenseFilter,
    /// Global minimizers over the requested senses.
    pub optimal: Vec<Solution>,
    pub per_sense: Vec<SenseResult>,
    pub candidates: Vec<CandidateRecord>,
    pub pruned: Vec<PruneRecord>,
}

impl SolveReport {
    pub fn best(&self) -> &Solution {
        &self.optimal[0]
    }

    pub fn length(&self) -> f64 {
        self.best().length()
    }

    pub fn for_rotation(&self, rotation: Rotation) -> Option<&SenseResult> {
        self.per_sense.iter().find(|s| s.rotation == rotation)
    }
}

/// Radian of the final arc of a `CSC` path.
///
/// Internal tangency needs `rho <= r/2`: otherwise no line through the
/// origin touches the final circle.
pub fn alpha_c(rho: f64, r: f64, mode: TangencyMode) -> Result<f64> {
    ensure_positive(rho, "rho")?;
    ensure_positive(r, "r")?;
    match mode {
        TangencyMode::External => Ok((rho / (rho + r)).acos()),
        TangencyMode::Internal => {
            if rho > r / 2.0 {
                return Err(Error::InternalTangencyInadmissible { rho, r });
            }
            Ok(PI - (rho / (r - rho)).min(1.0).acos())
        }
    }
}

/// Coefficients, highest power first, of the quartic in `t = tan(ψ/2)` whose
/// roots give the directions `ψ` of the final circle center of a `CCC` path
/// with collinear concatenation points.
///
/// `(x_c, y_c)` is the first circle center and `delta` the tangency sign.
/// The polynomial is `16·(1+t²)²` times
/// `(x_c·y₃ − y_c·x₃)² + |c₃−c₁|⁴/16 − ρ²·|c₃−c₁|²` with
/// `c₃ = (r + δρ)·(cos ψ, sin ψ)`.
pub fn build_ccc_quartic(x_c: f64, y_c: f64, rho: f64, r: f64, delta: f64) -> QuarticCoefficients {
    let (x, y, d) = (x_c, y_c, delta);
    let k = d * rho + r;
    let (x2, y2, rho2, r2) = (x * x, y * y, rho * rho, r * r);
    let a1 = 2.0 * y2 * (rho2 + 9.0 * r2 + 18.0 * d * rho * r + 2.0 * x * k + x2)
        + (k + x).powi(2) * ((4.0 + d) * rho + r + x) * ((d - 4.0) * rho + r + x)
        + y2 * y2;
    let a2 = -8.0 * y * k * (-7.0 * rho2 + r2 + 2.0 * d * rho * r - 6.0 * x * k + x2 + y2);
    let a3 = 2.0
        * (-2.0 * y2 * (11.0 * rho2 + 3.0 * r2 + 6.0 * d * rho * r)
            + x2 * x2
            + y2 * y2
            + 2.0 * x2 * (7.0 * rho2 + 15.0 * r2 + 30.0 * d * rho * r + y2)
            + ((d - 4.0) * rho + r) * k * k * ((d + 4.0) * rho + r));
    let a4 = -8.0 * y * k * (-7.0 * rho2 + r2 + 2.0 * d * rho * r + 6.0 * x * k + x2 + y2);
    let a5 = 2.0 * y2 * (rho2 + 9.0 * r2 + 18.0 * d * rho * r - 2.0 * x * k + x2)
        + (k - x).powi(2) * ((4.0 + d) * rho + r - x) * ((d - 4.0) * rho + r - x)
        + y2 * y2;
    QuarticCoefficients::new(a1, a2, a3, a4, a5)
}

/// Terminal heading and rotation sense for a final circle of side `side`
/// whose center lies in direction `psi` from the origin.
fn final_pose(psi: f64, side: Side, mode: TangencyMode) -> (f64, Rotation) {
    let sd = side.sign() * mode.delta();
    (wrap(psi - sd * QUARTER), Rotation::from_delta(sd))
}

/// Signed distance from the origin to the final circle center.
fn final_radius(inst: &ProblemInstance, mode: TangencyMode) -> f64 {
    inst.r + mode.delta() * inst.rho
}

fn word(kinds: &[SegmentKind]) -> Word {
    Word::from_kinds(kinds)
}

fn turn(side: Side) -> SegmentKind {
    SegmentKind::turn(side)
}

/// Enough room for every candidate one instance can produce.
type Batch = ArrayVec<TerminalCandidate, 64>;

#[derive(Default)]
struct Collector {
    candidates: Batch,
    pruned: Vec<PruneRecord>,
}

impl Collector {
    fn prune(&mut self, family: Word, tangency: Option<TangencyMode>, rule: PruneRule, measured: f64, bound: f64) {
        self.pruned.push(PruneRecord {
            family,
            tangency,
            rule,
            measured,
            bound,
        });
    }
}

/// Per-instance quantities shared by the candidate constructions.
struct Setup {
    inst: ProblemInstance,
    right: Vec2,
    left: Vec2,
    scale: f64,
    alpha_external: f64,
    alpha_internal: Option<f64>,
}

impl Setup {
    fn new(inst: &ProblemInstance) -> Self {
        let (rho, r) = (inst.rho, inst.r);
        Self {
            inst: *inst,
            right: turn_center(&inst.start, Side::Right, rho).point(),
            left: turn_center(&inst.start, Side::Left, rho).point(),
            scale: inst.scale(),
            alpha_external: (rho / (rho + r)).acos(),
            alpha_internal: alpha_c(rho, r, TangencyMode::Internal).ok(),
        }
    }

    fn center(&self, side: Side) -> Vec2 {
        match side {
            Side::Right => self.right,
            Side::Left => self.left,
        }
    }

    fn alpha_c(&self, mode: TangencyMode) -> Option<f64> {
        match mode {
            TangencyMode::External => Some(self.alpha_external),
            TangencyMode::Internal => self.alpha_internal,
        }
    }

    /// Tangency modes admitting a straight segment through the origin.
    fn csc_modes(&self) -> &'static [TangencyMode] {
        if self.alpha_internal.is_some() {
            &TangencyMode::BOTH
        } else {
            &[TangencyMode::External]
        }
    }
}

/// Straight segment along the line through the origin with direction
/// `alpha_s`, from parameter `t_q` to the tangent point of the final circle,
/// followed by the final arc. `first` is the leading arc, if any.
fn straight_then_arc(
    setup: &Setup,
    alpha_s: f64,
    t_q: f64,
    first: Option<(Side, f64)>,
    mode: TangencyMode,
    out: &mut Batch,
) {
    let inst = &setup.inst;
    let Some(ac) = setup.alpha_c(mode) else {
        return;
    };
    let rho = inst.rho;
    let k = final_radius(inst, mode);
    let reach = ((k - rho) * (k + rho)).max(0.0).sqrt();
    // externally tangent circles are met before the origin, internal ones after
    let t_p = match mode {
        TangencyMode::External => -reach,
        TangencyMode::Internal => reach,
    };
    let straight = t_p - t_q;
    if straight < -tol::GEOMETRIC * setup.scale {
        return;
    }
    let straight = straight.max(0.0);
    for side in [Side::Right, Side::Left] {
        let sd = side.sign() * mode.delta();
        let mut pieces: ArrayVec<Segment, 3> = ArrayVec::new();
        let mut kinds: ArrayVec<SegmentKind, 3> = ArrayVec::new();
        if let Some((s1, arc1)) = first {
            pieces.push(Segment::new(turn(s1), arc1));
            kinds.push(turn(s1));
        }
        pieces.push(Segment::new(SegmentKind::S, straight));
        pieces.push(Segment::new(turn(side), ac));
        kinds.extend([SegmentKind::S, turn(side)]);
        out.push(TerminalCandidate {
            theta_f: wrap(alpha_s + side.sign() * ac),
            rotation: Rotation::from_delta(sd),
            family_hint: word(&kinds),
            tangency: mode,
            source: if first.is_some() {
                CandidateSource::CscClosedForm
            } else {
                CandidateSource::Tangency
            },
            alpha_s: Some(wrap(alpha_s)),
            alpha_c: Some(ac),
            analytic: DubinsPath::new(inst.start, rho, &pieces),
        });
    }
}

fn collect_csc(setup: &Setup, col: &mut Collector) {
    let inst = &setup.inst;
    let rho = inst.rho;
    let start = inst.start;
    for side in [Side::Right, Side::Left] {
        let c1 = setup.center(side);
        let m = c1.norm();
        if m < rho * (1.0 - tol::GEOMETRIC) {
            col.prune(
                word(&[turn(side), SegmentKind::S]),
                None,
                PruneRule::OriginInsideStartCircle,
                m,
                rho,
            );
            continue;
        }
        let s1 = side.sign();
        let gamma = c1.angle();
        let beta = (s1 * rho / m).clamp(-1.0, 1.0).asin();
        let t = ((m - rho) * (m + rho)).max(0.0).sqrt();
        // c1 = t_q·u + σ₁ρ·u⊥ for the two tangent directions u
        let lines: &[(f64, f64)] = if t == 0.0 {
            &[(gamma - beta, 0.0)][..]
        } else {
            &[(gamma - beta, t), (gamma - PI + beta, -t)][..]
        };
        for &(alpha_s, t_q) in lines {
            let arc1 = arc_angle(s1 * (alpha_s - start.theta));
            for &mode in setup.csc_modes() {
                straight_then_arc(setup, alpha_s, t_q, Some((side, arc1)), mode, &mut col.candidates);
            }
        }
    }
}

/// `CSC` candidates, one per tangent line through the origin, tangency mode
/// and final turn direction.
pub fn csc_candidates(inst: &ProblemInstance) -> Vec<TerminalCandidate> {
    let mut col = Collector::default();
    collect_csc(&Setup::new(inst), &mut col);
    col.candidates.to_vec()
}

/// `CCC` candidate whose final circle center lies in direction `ψ` with
/// `t = tan(ψ/2)`; `None` stands for `ψ = π`.
fn ccc_from_direction(
    inst: &ProblemInstance,
    side: Side,
    c1: Vec2,
    mode: TangencyMode,
    t: Option<f64>,
    opts: &SolveOptions,
    col: &mut Collector,
) {
    let rho = inst.rho;
    let k = final_radius(inst, mode);
    let dir = match t {
        Some(t) => Vec2::new(1.0 - t * t, 2.0 * t) * (1.0 / (1.0 + t * t)),
        None => Vec2::new(-1.0, 0.0),
    };
    let c3 = dir * k;
    let v = c3 - c1;
    let d = v.norm();
    if d >= 4.0 * rho || d <= tol::DEGENERATE_SEGMENT * rho {
        return;
    }
    let mid = (c1 + c3) * 0.5;
    let h = (4.0 * rho * rho - 0.25 * d * d).sqrt();
    let n = v.perp() * (1.0 / d);
    // the middle circle on the branch that makes A, B and the origin collinear
    let c2 = [1.0, -1.0]
        .into_iter()
        .map(|s| mid + n * (s * h))
        .min_by(|p, q| collinearity(c1, *p, c3).total_cmp(&collinearity(c1, *q, c3)))
        .expect("two branches");
    let family = word(&[turn(side), turn(side.opposite()), turn(side)]);
    let limit = inst.r + rho;
    let d1 = c1.norm();
    let d2 = c2.norm();
    if opts.prune_far_middle_circle && d1 > limit && d2 > limit {
        col.prune(family, Some(mode), PruneRule::BothCentersFar, d1.min(d2), limit);
        return;
    }
    // sine of the middle arc; an optimal CCC turns more than half a circle there
    let (a, b) = (c1 - c2, c3 - c2);
    let sine = side.opposite().sign() * a.cross(b) / (a.norm() * b.norm());
    if opts.prune_middle_arc_bound && sine > tol::COLLINEARITY {
        col.prune(family, Some(mode), PruneRule::ShortMiddleArc, sine, 0.0);
        return;
    }
    let (psi, source) = match t {
        Some(t) => (2.0 * t.atan(), CandidateSource::CccQuarticRoot),
        None => (PI, CandidateSource::CccSingularSubstitution),
    };
    let (theta_f, rotation) = final_pose(psi, side, mode);
    let arcs = ccc_arcs(side, inst.start.theta, theta_f, c1, c2, c3);
    col.candidates.push(TerminalCandidate {
        theta_f,
        rotation,
        family_hint: family,
        tangency: mode,
        source,
        alpha_s: None,
        alpha_c: None,
        analytic: DubinsPath::new(inst.start, rho, &arcs),
    });
}

/// Normalized cross product of the concatenation points.
fn collinearity(c1: Vec2, c2: Vec2, c3: Vec2) -> f64 {
    let a = (c1 + c2) * 0.5;
    let b = (c2 + c3) * 0.5;
    let scale = a.norm() * b.norm();
    if scale == 0.0 {
        0.0
    } else {
        a.cross(b).abs() / scale
    }
}

/// With `bound_from = Some(n)`, the first `n` collected candidates bound the
/// `CCC` work through their lengths.
fn collect_ccc(setup: &Setup, opts: &SolveOptions, bound_from: Option<usize>, col: &mut Collector) {
    let mut bound: Option<[f64; 2]> = None;
    let inst = &setup.inst;
    let (rho, r) = (inst.rho, inst.r);
    for side in [Side::Right, Side::Left] {
        let c1 = setup.center(side);
        let family = word(&[turn(side), turn(side.opposite()), turn(side)]);
        let d1 = c1.norm();
        let far_rule = opts.prune_far_start_circle && (rho <= r || opts.far_start_circle_any_radius);
        if far_rule && d1 >= r + rho {
            col.prune(family, None, PruneRule::StartCircleFar, d1, r + rho);
            continue;
        }
        for mode in TangencyMode::BOTH {
            if mode == TangencyMode::Internal {
                if rho > r / 2.0 && rho <= r {
                    col.prune(
                        family,
                        Some(mode),
                        PruneRule::InternalTangencyInadmissible,
                        rho,
                        r / 2.0,
                    );
                    continue;
                }
                if rho > r && opts.prune_internal_large_radius {
                    col.prune(family, Some(mode), PruneRule::InternalTangencyLargeRadius, rho, r);
                    continue;
                }
            }
            // every final circle center is at least this far from the first
            if (d1 - final_radius(inst, mode).abs()).abs() >= 4.0 * rho {
                continue;
            }
            if let (true, Some(n)) = (opts.prune_middle_arc_bound, bound_from) {
                let bound = *bound.get_or_insert_with(|| incumbent(&col.candidates[..n], inst));
                let best = bound[slot(Rotation::from_delta(side.sign() * mode.delta()))];
                if best <= PI * rho {
                    col.prune(family, Some(mode), PruneRule::MiddleArcBound, best, PI * rho);
                    continue;
                }
            }
            let coeffs = build_ccc_quartic(c1.x, c1.y, rho, r, mode.delta());
            if let Ok(roots) = real_roots_array(&coeffs) {
                for root in roots {
                    ccc_from_direction(inst, side, c1, mode, Some(root.value), opts, col);
                }
            }
            // t = tan(ψ/2) is unbounded at ψ = π
            ccc_from_direction(inst, side, c1, mode, None, opts, col);
        }
    }
}

/// `CCC` candidates from the quartic roots and the singular direction,
/// after the default filters.
pub fn ccc_candidates(inst: &ProblemInstance) -> Vec<TerminalCandidate> {
    let mut col = Collector::default();
    collect_ccc(&Setup::new(inst), &SolveOptions::default(), None, &mut col);
    col.candidates.to_vec()
}

fn collect_degenerate(setup: &Setup, col: &mut Collector) {
    let inst = &setup.inst;
    let (rho, r) = (inst.rho, inst.r);
    let start = inst.start;
    let pos = start.position();
    let eps = tol::GEOMETRIC * setup.scale;
    let out = &mut col.candidates;

    if phi1(&start, r).abs() <= tol::RESIDUAL && phi2(&start).abs() <= tol::RESIDUAL {
        out.push(TerminalCandidate {
            theta_f: start.theta,
            rotation: rotation_of(&start),
            family_hint: Word::default(),
            tangency: TangencyMode::External,
            source: CandidateSource::Tangency,
            alpha_s: None,
            alpha_c: None,
            analytic: DubinsPath::empty(start, rho),
        });
    }

    for side in [Side::Right, Side::Left] {
        let c1 = setup.center(side);
        let m = c1.norm();
        let s1 = side.sign();
        for mode in TangencyMode::BOTH {
            let k = final_radius(inst, mode);
            if k == 0.0 {
                continue;
            }
            let flip = if k < 0.0 { PI } else { 0.0 };

            // C: the start circle already touches the target
            if (m - k.abs()).abs() <= eps {
                let (theta_f, rotation) = final_pose(c1.angle() + flip, side, mode);
                let arc = arc_angle(s1 * (theta_f - start.theta));
                out.push(TerminalCandidate {
                    theta_f,
                    rotation,
                    family_hint: word(&[turn(side)]),
                    tangency: mode,
                    source: CandidateSource::Tangency,
                    alpha_s: None,
                    alpha_c: None,
                    analytic: DubinsPath::new(start, rho, &[Segment::new(turn(side), arc)]),
                });
            }

            // CC: a second circle touching both the start circle and the target
            let other = side.opposite();
            let (ra, rb) = (2.0 * rho, k.abs());
            if m <= eps || m > ra + rb + eps || m < (ra - rb).abs() - eps {
                continue;
            }
            let along = (m * m + rb * rb - ra * ra) / (2.0 * m);
            let h = (rb * rb - along * along).max(0.0).sqrt();
            let e = c1 * (1.0 / m);
            let branches: &[f64] = if h == 0.0 { &[0.0] } else { &[1.0, -1.0] };
            for &s in branches {
                let c2 = e * along + e.perp() * (s * h);
                let (theta_f, rotation) = final_pose(c2.angle() + flip, other, mode);
                let theta_a = (c1 - c2).angle() - s1 * QUARTER;
                let arc1 = arc_angle(s1 * (theta_a - start.theta));
                let arc2 = arc_angle(other.sign() * (theta_f - theta_a));
                out.push(TerminalCandidate {
                    theta_f,
                    rotation,
                    family_hint: word(&[turn(side), turn(other)]),
                    tangency: mode,
                    source: CandidateSource::Tangency,
                    alpha_s: None,
                    alpha_c: None,
                    analytic: DubinsPath::new(
                        start,
                        rho,
                        &[Segment::new(turn(side), arc1), Segment::new(turn(other), arc2)],
                    ),
                });
            }
        }
    }

    // SC: the heading line already passes through the origin
    let u = Vec2::from_angle(start.theta);
    if pos.cross(u).abs() <= eps {
        for &mode in setup.csc_modes() {
            straight_then_arc(setup, start.theta, pos.dot(u), None, mode, out);
        }
    }
}

/// Candidates for the degenerate types `SC`, `CC`, `C` and the zero-length
/// path, found by direct tangency tests. Empty when no tangency holds.
pub fn degenerate_candidates(inst: &ProblemInstance) -> Vec<TerminalCandidate> {
    let mut col = Collector::default();
    collect_degenerate(&Setup::new(inst), &mut col);
    col.candidates.to_vec()
}

fn terminal_residuals(c: &Configuration, r: f64) -> (f64, f64) {
    (phi1(c, r), phi2(c))
}

fn residuals_ok(c: &Configuration, r: f64) -> bool {
    let (a, b) = terminal_residuals(c, r);
    a.abs() <= tol::RESIDUAL && b.abs() <= tol::RESIDUAL
}

fn realize_with(
    p2p: &PointToPoint,
    cand: &TerminalCandidate,
    inst: &ProblemInstance,
) -> std::result::Result<DubinsPath, Rejection> {
    let goal = cand.terminal(inst.r);
    let path = p2p.solve(&goal);
    let end = path.endpoint();
    if !residuals_ok(&end, inst.r) {
        let (phi1, phi2) = terminal_residuals(&end, inst.r);
        return Err(Rejection {
            reason: RejectReason::TerminalResidual { phi1, phi2 },
            path,
        });
    }
    let hint = cand.family_hint;
    if path.family_tag().is_subsequence_of(&hint) {
        return Ok(path);
    }
    // an equally short path of the predicted family to the same pose
    let analytic = &cand.analytic;
    if analytic.total_length() <= path.total_length() + tol::REALIZATION_LENGTH
        && analytic.endpoint().distance(&goal) <= tol::REALIZATION_LENGTH * inst.scale()
        && residuals_ok(&analytic.endpoint(), inst.r)
    {
        return Ok(*analytic);
    }
    if let Some(family) = PathFamily::ALL.into_iter().find(|f| f.word() == hint) {
        if let Some(alt) = p2p.family(family, &goal) {
            if alt.total_length() <= path.total_length() + tol::REALIZATION_LENGTH
                && residuals_ok(&alt.endpoint(), inst.r)
            {
                return Ok(alt);
            }
        }
    }
    Err(Rejection {
        reason: RejectReason::FamilyMismatch {
            hint,
            realized: path.family_tag(),
        },
        path,
    })
}

/// Realizes a candidate as the shortest point-to-point path to its terminal
/// pose and checks it against the candidate's family and the terminal
/// constraints.
pub fn realize(cand: &TerminalCandidate, inst: &ProblemInstance) -> std::result::Result<DubinsPath, Rejection> {
    realize_with(&PointToPoint::new(inst.start, inst.rho), cand, inst)
}

/// All candidates with the pruning ledger.
pub fn enumerate_candidates(inst: &ProblemInstance, opts: &SolveOptions) -> (Vec<TerminalCandidate>, Vec<PruneRecord>) {
    let mut col = Collector::default();
    let setup = Setup::new(inst);
    collect_csc(&setup, &mut col);
    collect_ccc(&setup, opts, None, &mut col);
    collect_degenerate(&setup, &mut col);
    (col.candidates.to_vec(), col.pruned)
}

/// Shortest path to the target circle for the requested rotation sense(s).
pub fn solve(inst: &ProblemInstance, sense: SenseFilter) -> SolveReport {
    solve_with(inst, sense, &SolveOptions::default())
}

pub fn solve_with(inst: &ProblemInstance, sense: SenseFilter, opts: &SolveOptions) -> SolveReport {
    let setup = Setup::new(inst);
    let p2p = PointToPoint::new(inst.start, inst.rho);
    let mut col = Collector::default();
    let mut records: Vec<CandidateRecord> = Vec::new();
    let mut best = [f64::INFINITY; 2];

    // closed-form families first, so their lengths can bound the quartic work
    collect_csc(&setup, &mut col);
    collect_degenerate(&setup, &mut col);
    let closed_form = col.candidates.len();
    collect_ccc(&setup, opts, Some(closed_form), &mut col);
    screen(&mut records, &mut col.candidates, sense, &p2p, inst, opts, &mut best);
    let pruned = col.pruned;

    let accepted = |rec: &CandidateRecord| match rec.outcome {
        Outcome::Accepted(path) => Some(path),
        _ => None,
    };
    // used when every realized candidate of a sense was rejected
    let feasible = |rec: &CandidateRecord| match rec.outcome {
        Outcome::Rejected(rej) if residuals_ok(&rej.path.endpoint(), inst.r) => Some(rej.path),
        _ => None,
    };
    let mut per_sense = Vec::with_capacity(2);
    for &rotation in sense.rotations() {
        let optimal = co_minimal(&records, rotation, accepted).or_else(|| co_minimal(&records, rotation, feasible));
        if let Some(optimal) = optimal {
            per_sense.push(SenseResult { rotation, optimal });
        }
    }

    let mut optimal: Vec<Solution> = Vec::new();
    if let Some(min) = per_sense.iter().map(SenseResult::length).min_by(f64::total_cmp) {
        let mut all: Vec<Solution> = per_sense
            .iter()
            .flat_map(|s| s.optimal.iter().copied())
            .filter(|s| s.length() <= min + tol::EQUAL_LENGTH)
            .collect();
        all.sort_by(|a, b| a.length().total_cmp(&b.length()).then(a.candidate.cmp(&b.candidate)));
        optimal = all;
    }
    SolveReport {
        instance: *inst,
        sense,
        optimal,
        per_sense,
        candidates: records,
        pruned,
    }
}

/// Shortest closed-form length per rotation sense among candidates whose
/// analytic path meets the terminal constraints.
fn incumbent(cands: &[TerminalCandidate], inst: &ProblemInstance) -> [f64; 2] {
    let mut out = [f64::INFINITY; 2];
    for (s, best) in out.iter_mut().enumerate() {
        let shortest = cands
            .iter()
            .filter(|c| slot(c.rotation) == s)
            .min_by(|a, b| a.analytic_length().total_cmp(&b.analytic_length()));
        if let Some(c) = shortest {
            if residuals_ok(&c.analytic.endpoint(), inst.r) {
                *best = c.analytic_length();
            }
        }
    }
    out
}

fn slot(rotation: Rotation) -> usize {
    usize::from(rotation == Rotation::CounterClockwise)
}

/// Moves `fresh` into `records` and realizes them shortest first, skipping
/// those whose closed-form length already exceeds the best accepted path of
/// their sense.
fn screen(
    records: &mut Vec<CandidateRecord>,
    fresh: &mut Batch,
    sense: SenseFilter,
    p2p: &PointToPoint,
    inst: &ProblemInstance,
    opts: &SolveOptions,
    best: &mut [f64; 2],
) {
    let first = records.len();
    records.reserve(fresh.len());
    records.extend(
        fresh
            .drain(..)
            .filter(|c| sense.admits(c.rotation) && c.analytic_length().is_finite())
            .map(|candidate| CandidateRecord {
                candidate,
                outcome: Outcome::Screened,
            }),
    );
    let mut order: ArrayVec<(f64, usize), 64> = ArrayVec::new();
    let mut overflow: Vec<(f64, usize)> = Vec::new();
    for (i, rec) in records.iter().enumerate().skip(first) {
        let key = (rec.candidate.analytic_length(), i);
        if order.try_push(key).is_err() {
            overflow.push(key);
        }
    }
    let order: &mut [(f64, usize)] = if overflow.is_empty() {
        &mut order
    } else {
        overflow.extend_from_slice(&order);
        &mut overflow
    };
    order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    for &(length, i) in order.iter() {
        let rec = &mut records[i];
        let s = slot(rec.candidate.rotation);
        if !opts.exhaustive && length > best[s] + tol::REALIZATION_LENGTH {
            continue;
        }
        rec.outcome = match realize_with(p2p, &rec.candidate, inst) {
            Ok(path) => {
                best[s] = best[s].min(path.total_length());
                Outcome::Accepted(path)
            }
            Err(rej) => Outcome::Rejected(rej),
        };
    }
}

/// Paths of one sense within the equal-length tolerance of the shortest,
/// with duplicates of the same terminal pose and family removed.
fn co_minimal(
    records: &[CandidateRecord],
    rotation: Rotation,
    path_of: impl Fn(&CandidateRecord) -> Option<DubinsPath>,
) -> Option<Vec<Solution>> {
    let sols = || {
        records
            .iter()
            .enumerate()
            .filter(move |(_, rec)| rec.candidate.rotation == rotation)
            .filter_map(|(i, rec)| path_of(rec).map(|path| solution(rec, path, i)))
    };
    let min = sols().map(|s| s.length()).min_by(f64::total_cmp)?;
    let mut out: Vec<Solution> = Vec::with_capacity(1);
    for s in sols().filter(|s| s.length() <= min + tol::EQUAL_LENGTH) {
        let dup = out
            .iter()
            .any(|o| o.family() == s.family() && angle_distance(o.theta_f, s.theta_f) <= tol::GEOMETRIC);
        if !dup {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.length().total_cmp(&b.length()).then(a.candidate.cmp(&b.candidate)));
    Some(out)
}

fn solution(rec: &CandidateRecord, path: DubinsPath, index: usize) -> Solution {
    Solution {
        path,
        theta_f: rec.candidate.theta_f,
        rotation: rec.candidate.rotation,
        tangency: rec.candidate.tangency,
        candidate: index,
    }
}

/// Validates raw inputs and solves in one step.
pub fn solve_pose(x0: f64, y0: f64, theta0: f64, rho: f64, r: f64, sense: SenseFilter) -> Result<SolveReport> {
    ensure_finite(theta0, "theta0")?;
    let inst = ProblemInstance::from_pose(x0, y0, theta0, rho, r)?;
    Ok(solve(&inst, sense))
}

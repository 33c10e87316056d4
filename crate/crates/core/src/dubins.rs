//! Shortest bounded-curvature paths between two fixed configurations.
//!
//! Each of the six candidate families is built from the turning circles of
//! the start and goal poses: `LSL`/`RSR` use the outer tangent of two
//! same-direction circles, `LSR`/`RSL` the inner tangent of opposite-direction
//! circles, and `RLR`/`LRL` a third circle touching both end circles.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::geom::{turn_center, wrap, Configuration, Side, Vec2, QUARTER};
use crate::tol;

/// Kind of a path piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentKind {
    L,
    R,
    S,
}

impl SegmentKind {
    pub fn turn(side: Side) -> SegmentKind {
        match side {
            Side::Left => SegmentKind::L,
            Side::Right => SegmentKind::R,
        }
    }

    pub fn side(self) -> Option<Side> {
        match self {
            SegmentKind::L => Some(Side::Left),
            SegmentKind::R => Some(Side::Right),
            SegmentKind::S => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            SegmentKind::L => 'L',
            SegmentKind::R => 'R',
            SegmentKind::S => 'S',
        }
    }
}

/// One piece of a path: an arc of `param` radians or a line of `param` length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub param: f64,
}

impl Segment {
    pub fn new(kind: SegmentKind, param: f64) -> Self {
        Self { kind, param }
    }

    /// Arc length of the segment for turning radius `rho`.
    pub fn length(&self, rho: f64) -> f64 {
        match self.kind {
            SegmentKind::S => self.param,
            _ => self.param * rho,
        }
    }
}

/// A sequence of at most three segment kinds, e.g. `RSL` or `LR`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Word {
    kinds: [Option<SegmentKind>; 3],
}

impl Word {
    pub fn from_kinds(kinds: &[SegmentKind]) -> Self {
        assert!(kinds.len() <= 3, "a word has at most three letters");
        let mut w = Word::default();
        for (slot, k) in w.kinds.iter_mut().zip(kinds) {
            *slot = Some(*k);
        }
        w
    }

    pub fn kinds(&self) -> impl Iterator<Item = SegmentKind> + '_ {
        self.kinds.iter().map_while(|k| *k)
    }

    pub fn len(&self) -> usize {
        self.kinds().count()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds[0].is_none()
    }

    /// True when `self` can be obtained from `other` by deleting letters.
    pub fn is_subsequence_of(&self, other: &Word) -> bool {
        let mut it = other.kinds();
        self.kinds().all(|k| it.any(|o| o == k))
    }

    /// Membership in the twelve types that can be optimal for the
    /// circle-target problem: `CCC`, `CSC`, `SC`, `CC` and `C`.
    pub fn is_circle_family(&self) -> bool {
        use SegmentKind::*;
        let k: ArrayVec<SegmentKind, 3> = self.kinds().collect();
        match k.as_slice() {
            [a, S, b] => *a != S && *b != S,
            [a, b, c] => *a != S && *b != S && *c != S && a != b && b != c,
            [S, b] => *b != S,
            [a, b] => *a != S && *b != S && a != b,
            [a] => *a != S,
            _ => false,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in self.kinds() {
            write!(f, "{}", k.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let kinds = s
            .chars()
            .map(|c| match c {
                'L' => Ok(SegmentKind::L),
                'R' => Ok(SegmentKind::R),
                'S' => Ok(SegmentKind::S),
                other => Err(format!("unknown segment letter {other:?}")),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if kinds.len() > 3 {
            return Err(format!("word {s:?} is longer than three letters"));
        }
        Ok(Word::from_kinds(&kinds))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The six point-to-point families, in tie-breaking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PathFamily {
    LSL,
    RSR,
    LSR,
    RSL,
    RLR,
    LRL,
}

impl PathFamily {
    pub const ALL: [PathFamily; 6] = [
        PathFamily::LSL,
        PathFamily::RSR,
        PathFamily::LSR,
        PathFamily::RSL,
        PathFamily::RLR,
        PathFamily::LRL,
    ];

    pub fn word(self) -> Word {
        use SegmentKind::*;
        Word::from_kinds(match self {
            PathFamily::LSL => &[L, S, L],
            PathFamily::RSR => &[R, S, R],
            PathFamily::LSR => &[L, S, R],
            PathFamily::RSL => &[R, S, L],
            PathFamily::RLR => &[R, L, R],
            PathFamily::LRL => &[L, R, L],
        })
    }

    fn sides(self) -> (Side, Side) {
        match self {
            PathFamily::LSL | PathFamily::LRL => (Side::Left, Side::Left),
            PathFamily::RSR | PathFamily::RLR => (Side::Right, Side::Right),
            PathFamily::LSR => (Side::Left, Side::Right),
            PathFamily::RSL => (Side::Right, Side::Left),
        }
    }
}

impl fmt::Display for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// A C¹ concatenation of at most three segments with turning radius `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DubinsPath {
    start: Configuration,
    rho: f64,
    segments: [Segment; 3],
    count: usize,
    total_length: f64,
}

impl DubinsPath {
    /// Builds a path from its pieces. Parameters below the degeneracy
    /// threshold are clamped to zero.
    pub fn new(start: Configuration, rho: f64, pieces: &[Segment]) -> Self {
        assert!(pieces.len() <= 3, "a path has at most three segments");
        let mut segments = [Segment::new(SegmentKind::S, 0.0); 3];
        let mut total_length = 0.0;
        for (slot, seg) in segments.iter_mut().zip(pieces) {
            let param = if seg.param < tol::DEGENERATE_SEGMENT {
                0.0
            } else {
                seg.param
            };
            *slot = Segment::new(seg.kind, param);
            total_length += slot.length(rho);
        }
        Self {
            start,
            rho,
            segments,
            count: pieces.len(),
            total_length,
        }
    }

    /// The zero-length path sitting at `start`.
    pub fn empty(start: Configuration, rho: f64) -> Self {
        Self::new(start, rho, &[])
    }

    pub fn start(&self) -> Configuration {
        self.start
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments[..self.count]
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    /// Segment kinds including degenerate (zero) pieces.
    pub fn full_word(&self) -> Word {
        let kinds: ArrayVec<SegmentKind, 3> = self.segments().iter().map(|s| s.kind).collect();
        Word::from_kinds(&kinds)
    }

    /// Family tag after substring reduction: zero pieces are dropped and
    /// neighbouring pieces of the same kind merged.
    pub fn family_tag(&self) -> Word {
        let kinds: ArrayVec<SegmentKind, 3> = reduce(self.segments()).iter().map(|s| s.kind).collect();
        Word::from_kinds(&kinds)
    }

    /// Non-degenerate segments with same-kind neighbours merged.
    pub fn reduced_segments(&self) -> Vec<Segment> {
        reduce(self.segments()).to_vec()
    }

    /// Pose reached after travelling the whole path.
    pub fn endpoint(&self) -> Configuration {
        // folding `advance` would evaluate each junction heading's sine and cosine twice
        let (mut x, mut y, mut theta) = (self.start.x, self.start.y, self.start.theta);
        let (mut s0, mut c0) = theta.sin_cos();
        for seg in self.segments().iter().filter(|s| s.param != 0.0) {
            match seg.kind {
                SegmentKind::S => {
                    x += seg.param * c0;
                    y += seg.param * s0;
                }
                SegmentKind::L | SegmentKind::R => {
                    let sigma = if seg.kind == SegmentKind::L { 1.0 } else { -1.0 };
                    theta = wrap(theta + sigma * seg.param);
                    let (s1, c1) = theta.sin_cos();
                    x += sigma * self.rho * (s1 - s0);
                    y += sigma * self.rho * (c0 - c1);
                    (s0, c0) = (s1, c1);
                }
            }
        }
        Configuration::raw(x, y, theta)
    }

    /// Pose after travelling arc length `s` (clamped to the path length).
    pub fn pose_at(&self, s: f64) -> Configuration {
        let mut remaining = s.max(0.0);
        let mut pose = self.start;
        for seg in self.segments() {
            let len = seg.length(self.rho);
            if remaining >= len {
                pose = advance(&pose, seg.kind, seg.param, self.rho);
                remaining -= len;
            } else {
                let param = match seg.kind {
                    SegmentKind::S => remaining,
                    _ => remaining / self.rho,
                };
                return advance(&pose, seg.kind, param, self.rho);
            }
        }
        pose
    }

    /// Pose at the start of each segment followed by the final pose.
    pub fn junctions(&self) -> Vec<Configuration> {
        let mut out = Vec::with_capacity(self.count + 1);
        let mut pose = self.start;
        out.push(pose);
        for seg in self.segments() {
            pose = advance(&pose, seg.kind, seg.param, self.rho);
            out.push(pose);
        }
        out
    }
}

fn reduce(segments: &[Segment]) -> ArrayVec<Segment, 3> {
    let mut out: ArrayVec<Segment, 3> = ArrayVec::new();
    for seg in segments.iter().filter(|s| s.param > 0.0) {
        match out.last_mut() {
            Some(last) if last.kind == seg.kind => last.param += seg.param,
            _ => out.push(*seg),
        }
    }
    out
}

/// Exact integration of the unicycle model along one segment.
pub(crate) fn advance(pose: &Configuration, kind: SegmentKind, param: f64, rho: f64) -> Configuration {
    match kind {
        SegmentKind::S => {
            let (s, c) = pose.theta.sin_cos();
            Configuration::raw(pose.x + param * c, pose.y + param * s, pose.theta)
        }
        SegmentKind::L | SegmentKind::R => {
            let sigma = if kind == SegmentKind::L { 1.0 } else { -1.0 };
            let theta1 = pose.theta + sigma * param;
            let (s0, c0) = pose.theta.sin_cos();
            let (s1, c1) = theta1.sin_cos();
            Configuration::raw(
                pose.x + sigma * rho * (s1 - s0),
                pose.y + sigma * rho * (c0 - c1),
                theta1,
            )
        }
    }
}

/// Arc angle in `[0, 2π)`, with values within the degeneracy threshold of
/// a full turn snapped to zero.
pub(crate) fn arc_angle(a: f64) -> f64 {
    let w = wrap(a);
    if w > TAU - tol::DEGENERATE_SEGMENT {
        0.0
    } else {
        w
    }
}

/// Pose sampled along a path together with its arc length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub s: f64,
    pub pose: Configuration,
}

/// Samples a path at uniform arc-length spacing no larger than `step`.
///
/// The first sample is the start pose and the last one the endpoint.
pub fn sample_path(path: &DubinsPath, step: f64) -> Result<Vec<PathSample>> {
    ensure_positive(step, "step")?;
    let total = path.total_length();
    if total == 0.0 {
        return Ok(vec![PathSample {
            s: 0.0,
            pose: path.start(),
        }]);
    }
    let n = ((total / step).ceil() as usize).max(1);
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..n {
        let s = total * k as f64 / n as f64;
        out.push(PathSample {
            s,
            pose: path.pose_at(s),
        });
    }
    out.push(PathSample {
        s: total,
        pose: path.endpoint(),
    });
    Ok(out)
}

/// Point-to-point planner with the start circles precomputed, for repeated
/// queries from one start pose.
#[derive(Debug, Clone, Copy)]
pub struct PointToPoint {
    start: Configuration,
    rho: f64,
    left: Vec2,
    right: Vec2,
}

impl PointToPoint {
    pub fn new(start: Configuration, rho: f64) -> Self {
        Self {
            start,
            rho,
            left: turn_center(&start, Side::Left, rho).point(),
            right: turn_center(&start, Side::Right, rho).point(),
        }
    }

    fn start_center(&self, side: Side) -> Vec2 {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    /// Shortest path to `goal`; ties go to the earlier family in
    /// [`PathFamily::ALL`].
    pub fn solve(&self, goal: &Configuration) -> DubinsPath {
        let gl = turn_center(goal, Side::Left, self.rho).point();
        let gr = turn_center(goal, Side::Right, self.rho).point();
        let mut best: Option<DubinsPath> = None;
        for family in PathFamily::ALL {
            if let Some(p) = self.family_with_centers(family, goal, gl, gr) {
                if best.is_none_or(|b| p.total_length < b.total_length) {
                    best = Some(p);
                }
            }
        }
        // the same-direction families always exist
        let best = best.expect("LSL and RSR are always feasible");
        if best.total_length == 0.0 {
            DubinsPath::empty(self.start, self.rho)
        } else {
            best
        }
    }

    /// Length of the shortest path to `goal`.
    pub fn shortest_length(&self, goal: &Configuration) -> f64 {
        self.solve(goal).total_length
    }

    pub fn family(&self, family: PathFamily, goal: &Configuration) -> Option<DubinsPath> {
        let gl = turn_center(goal, Side::Left, self.rho).point();
        let gr = turn_center(goal, Side::Right, self.rho).point();
        self.family_with_centers(family, goal, gl, gr)
    }

    fn family_with_centers(&self, family: PathFamily, goal: &Configuration, gl: Vec2, gr: Vec2) -> Option<DubinsPath> {
        let (first, last) = family.sides();
        let c1 = self.start_center(first);
        let c2 = match last {
            Side::Left => gl,
            Side::Right => gr,
        };
        let pieces = match family {
            PathFamily::LSL | PathFamily::RSR => self.outer(first, c1, c2, goal.theta),
            PathFamily::LSR | PathFamily::RSL => self.inner(first, c1, c2, goal.theta)?,
            PathFamily::RLR | PathFamily::LRL => self.three_arcs(first, c1, c2, goal.theta)?,
        };
        Some(DubinsPath::new(self.start, self.rho, &pieces))
    }

    fn outer(&self, side: Side, c1: Vec2, c2: Vec2, goal_theta: f64) -> [Segment; 3] {
        let sigma = side.sign();
        let k = SegmentKind::turn(side);
        let v = c2 - c1;
        let d = v.norm();
        let psi = if d <= tol::DEGENERATE_SEGMENT * self.rho {
            // both circles coincide: a single arc
            goal_theta
        } else {
            v.angle()
        };
        [
            Segment::new(k, arc_angle(sigma * (psi - self.start.theta))),
            Segment::new(SegmentKind::S, d),
            Segment::new(k, arc_angle(sigma * (goal_theta - psi))),
        ]
    }

    fn inner(&self, first: Side, c1: Vec2, c2: Vec2, goal_theta: f64) -> Option<[Segment; 3]> {
        let rho = self.rho;
        let v = c2 - c1;
        let d = v.norm();
        let gap = d - 2.0 * rho;
        if gap < -tol::TANGENT_SNAP * rho {
            return None;
        }
        let straight = if gap <= tol::TANGENT_SNAP * rho {
            0.0
        } else {
            ((d - 2.0 * rho) * (d + 2.0 * rho)).sqrt()
        };
        let s1 = first.sign();
        let psi = v.angle() + s1 * (2.0 * rho).atan2(straight);
        Some([
            Segment::new(SegmentKind::turn(first), arc_angle(s1 * (psi - self.start.theta))),
            Segment::new(SegmentKind::S, straight),
            Segment::new(SegmentKind::turn(first.opposite()), arc_angle(-s1 * (goal_theta - psi))),
        ])
    }

    fn three_arcs(&self, outer: Side, c1: Vec2, c3: Vec2, goal_theta: f64) -> Option<[Segment; 3]> {
        let rho = self.rho;
        let v = c3 - c1;
        let d = v.norm();
        if d >= 4.0 * rho || d <= tol::DEGENERATE_SEGMENT * rho {
            return None;
        }
        let mid = (c1 + c3) * 0.5;
        let h = (4.0 * rho * rho - 0.25 * d * d).sqrt();
        let n = v.perp() * (1.0 / d);
        [1.0, -1.0]
            .into_iter()
            .map(|s| ccc_arcs(outer, self.start.theta, goal_theta, c1, mid + n * (s * h), c3))
            .min_by(|a, b| arcs_total(a).total_cmp(&arcs_total(b)))
    }
}

/// Arcs of an outer-middle-outer path given the three circle centers.
pub(crate) fn ccc_arcs(outer: Side, start_theta: f64, goal_theta: f64, c1: Vec2, c2: Vec2, c3: Vec2) -> [Segment; 3] {
    let s = outer.sign();
    let k = SegmentKind::turn(outer);
    let km = SegmentKind::turn(outer.opposite());
    // heading on an arc of side σ satisfies center = pos + ρ·dir(θ + σπ/2)
    let theta_a = (c1 - c2).angle() - s * QUARTER;
    let theta_b = (c3 - c2).angle() - s * QUARTER;
    [
        Segment::new(k, arc_angle(s * (theta_a - start_theta))),
        Segment::new(km, arc_angle(-s * (theta_b - theta_a))),
        Segment::new(k, arc_angle(s * (goal_theta - theta_b))),
    ]
}

fn arcs_total(a: &[Segment; 3]) -> f64 {
    a.iter().map(|s| s.param).sum()
}

/// Shortest path from `start` to `goal` among the six families.
pub fn solve_point_to_point(start: &Configuration, goal: &Configuration, rho: f64) -> Result<DubinsPath> {
    ensure_positive(rho, "rho")?;
    Ok(PointToPoint::new(*start, rho).solve(goal))
}

/// The path of exactly the given family, or `None` when that family cannot
/// connect the two poses.
pub fn evaluate_family(
    family: PathFamily,
    start: &Configuration,
    goal: &Configuration,
    rho: f64,
) -> Result<Option<DubinsPath>> {
    if rho.is_nan() || rho <= 0.0 {
        return Err(Error::NonPositive {
            name: "rho",
            value: rho,
        });
    }
    Ok(PointToPoint::new(*start, rho).family(family, goal))
}

#![allow(dead_code)]

pub mod props;

use dubins_circle::quartic::QuarticCoefficients;
use nalgebra::{Matrix1, Matrix2, Matrix3, Matrix4};

/// Real roots from the eigenvalues of the companion matrix.
pub fn companion_real_roots(c: &QuarticCoefficients) -> Vec<f64> {
    let a = c.as_array();
    let lead = a.iter().position(|v| *v != 0.0).expect("zero polynomial");
    let p: Vec<f64> = a[lead..].iter().map(|v| v / a[lead]).collect();
    let n = p.len() - 1;
    let eig: Vec<(f64, f64)> = match n {
        0 => Vec::new(),
        1 => Matrix1::new(-p[1])
            .complex_eigenvalues()
            .iter()
            .map(|z| (z.re, z.im))
            .collect(),
        2 => Matrix2::new(-p[1], -p[2], 1.0, 0.0)
            .complex_eigenvalues()
            .iter()
            .map(|z| (z.re, z.im))
            .collect(),
        3 => Matrix3::new(-p[1], -p[2], -p[3], 1.0, 0.0, 0.0, 0.0, 1.0, 0.0)
            .complex_eigenvalues()
            .iter()
            .map(|z| (z.re, z.im))
            .collect(),
        _ => Matrix4::new(
            -p[1], -p[2], -p[3], -p[4], 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
        )
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect(),
    };
    let mut re: Vec<f64> = eig
        .into_iter()
        .filter(|(re, im)| im.abs() <= 1e-8 * (1.0 + re.abs()))
        .map(|(re, _)| re)
        .collect();
    re.sort_by(f64::total_cmp);
    re
}

/// Largest relative gap between two sorted root lists, or infinity when the
/// counts differ.
pub fn root_discrepancy(got: &[f64], want: &[f64]) -> f64 {
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    got.iter()
        .zip(want)
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max)
}

use dubins_circle::circle::Solution;
use dubins_circle::dubins::{Segment, SegmentKind};
use dubins_circle::geom::ProblemInstance;
use rand::Rng;

/// The twelve path types that can be optimal, written out by hand.
pub const FAMILIES: [&str; 12] = [
    "RLR", "LRL", "RSR", "RSL", "LSL", "LSR", "SR", "SL", "RL", "LR", "R", "L",
];

/// Pose reached after one segment, from the closed-form unicycle solution.
pub fn step(pose: (f64, f64, f64), seg: &Segment, rho: f64) -> (f64, f64, f64) {
    let (x, y, th) = pose;
    let a = seg.param;
    match seg.kind {
        SegmentKind::S => (x + a * th.cos(), y + a * th.sin(), th),
        SegmentKind::L => (
            x + rho * ((th + a).sin() - th.sin()),
            y + rho * (th.cos() - (th + a).cos()),
            th + a,
        ),
        SegmentKind::R => (
            x + rho * (th.sin() - (th - a).sin()),
            y + rho * ((th - a).cos() - th.cos()),
            th - a,
        ),
    }
}

/// Every junction pose of a path, start and end included.
pub fn poses(inst: &ProblemInstance, segs: &[Segment]) -> Vec<(f64, f64, f64)> {
    let mut out = vec![(inst.start.x, inst.start.y, inst.start.theta)];
    for s in segs {
        let next = step(*out.last().unwrap(), s, inst.rho);
        out.push(next);
    }
    out
}

/// Terminal constraint residuals `(|p|² - r²)/2` and `p·heading` at the integrated endpoint.
pub fn terminal_residuals(inst: &ProblemInstance, sol: &Solution) -> (f64, f64) {
    let &(x, y, th) = poses(inst, sol.path.segments()).last().unwrap();
    (0.5 * (x * x + y * y - inst.r * inst.r), x * th.cos() + y * th.sin())
}

/// Letters of the nonzero segments.
pub fn word(sol: &Solution) -> String {
    sol.path
        .reduced_segments()
        .iter()
        .map(|s| format!("{:?}", s.kind))
        .collect()
}

/// Distance from the origin to the line through `a` and `b`.
pub fn origin_to_line(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    (a.0 * dy - a.1 * dx).abs() / dx.hypot(dy)
}

/// Center of the turning circle of the given turn at a pose.
pub fn turning_center(pose: (f64, f64, f64), kind: SegmentKind, rho: f64) -> (f64, f64) {
    let sign = if kind == SegmentKind::L { 1.0 } else { -1.0 };
    (pose.0 - sign * rho * pose.2.sin(), pose.1 + sign * rho * pose.2.cos())
}

/// Instances drawn like the benchmark: start anywhere within ten combined radii.
pub fn broad(rng: &mut impl Rng) -> ProblemInstance {
    let rho = rng.gen_range(0.5..2.0);
    let r = rng.gen_range(0.5..3.0);
    let span = 10.0 * (rho + r);
    ProblemInstance::from_pose(
        rng.gen_range(-span..span),
        rng.gen_range(-span..span),
        rng.gen_range(0.0..std::f64::consts::TAU),
        rho,
        r,
    )
    .unwrap()
}

/// Start within `reach · (r + rho)` of the center, radius ratio drawn in `ratio`.
pub fn near(rng: &mut impl Rng, ratio: (f64, f64), reach: f64) -> ProblemInstance {
    let r = rng.gen_range(0.5..3.0);
    let rho = r * rng.gen_range(ratio.0..ratio.1);
    let d = reach * (r + rho) * rng.gen::<f64>().sqrt();
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    ProblemInstance::from_pose(
        d * phi.cos(),
        d * phi.sin(),
        rng.gen_range(0.0..std::f64::consts::TAU),
        rho,
        r,
    )
    .unwrap()
}

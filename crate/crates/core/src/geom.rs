//! Frame conventions and planar geometry shared by the solvers.
//!
//! All solver code works in the circle-centered frame: the target circle is
//! centered at the origin. Headings are measured counter-clockwise from the
//! x axis and stored in `[0, 2π)`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Result};

/// Wraps an angle into `[0, 2π)`.
///
/// Non-finite input is rejected.
pub fn normalize_angle(a: f64) -> Result<f64> {
    ensure_finite(a, "angle")?;
    Ok(wrap(a))
}

pub(crate) fn wrap(a: f64) -> f64 {
    // fast paths for one turn either way; both agree with rem_euclid bit for bit
    let w = if (0.0..TAU).contains(&a) {
        return a;
    } else if (-TAU..0.0).contains(&a) {
        a + TAU
    } else if (TAU..2.0 * TAU).contains(&a) {
        return a - TAU;
    } else {
        a.rem_euclid(TAU)
    };
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Shortest unsigned angular distance between two headings, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = wrap(a - b);
    d.min(TAU - d)
}

/// Minimal 2D vector used for the circle constructions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Self { x: c, y: s }
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Turning direction of a circular arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// `+1` for a left (counter-clockwise) turn, `-1` for a right turn.
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Sense in which the vehicle travels around the target circle on arrival.
///
/// The terminal position for a heading `theta_f` is
/// `r·(cos(theta_f + δπ/2), sin(theta_f + δπ/2))` with `δ = +1` for
/// clockwise and `δ = -1` for counter-clockwise travel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rotation {
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "ccw")]
    CounterClockwise,
}

impl Rotation {
    pub const BOTH: [Rotation; 2] = [Rotation::Clockwise, Rotation::CounterClockwise];

    pub fn delta(self) -> f64 {
        match self {
            Rotation::Clockwise => 1.0,
            Rotation::CounterClockwise => -1.0,
        }
    }

    pub fn from_delta(delta: f64) -> Rotation {
        if delta >= 0.0 {
            Rotation::Clockwise
        } else {
            Rotation::CounterClockwise
        }
    }

    pub fn opposite(self) -> Rotation {
        match self {
            Rotation::Clockwise => Rotation::CounterClockwise,
            Rotation::CounterClockwise => Rotation::Clockwise,
        }
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rotation::Clockwise => "cw",
            Rotation::CounterClockwise => "ccw",
        })
    }
}

/// Planar pose of the vehicle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub x: f64,
    pub y: f64,
    /// Heading in `[0, 2π)`.
    pub theta: f64,
}

impl Configuration {
    pub fn new(x: f64, y: f64, theta: f64) -> Result<Self> {
        ensure_finite(x, "x")?;
        ensure_finite(y, "y")?;
        let theta = normalize_angle(theta)?;
        Ok(Self { x, y, theta })
    }

    /// Builds a configuration from values already known to be finite.
    pub(crate) fn raw(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: wrap(theta),
        }
    }

    pub(crate) fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// Mirror image across the x axis.
    pub fn mirrored(&self) -> Self {
        Self::raw(self.x, -self.y, -self.theta)
    }

    /// Euclidean distance between the positions of two configurations.
    pub fn distance(&self, other: &Configuration) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A start pose, turning radius `rho` and target circle radius `r`, in the
/// circle-centered frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub start: Configuration,
    pub rho: f64,
    pub r: f64,
}

impl ProblemInstance {
    pub fn new(start: Configuration, rho: f64, r: f64) -> Result<Self> {
        ensure_positive(rho, "rho")?;
        ensure_positive(r, "r")?;
        Ok(Self { start, rho, r })
    }

    /// Convenience constructor from raw pose components.
    pub fn from_pose(x0: f64, y0: f64, theta0: f64, rho: f64, r: f64) -> Result<Self> {
        Self::new(Configuration::new(x0, y0, theta0)?, rho, r)
    }

    /// The same instance reflected across the x axis.
    pub fn mirrored(&self) -> Self {
        Self {
            start: self.start.mirrored(),
            ..*self
        }
    }

    /// Length scale used to turn relative tolerances into absolute ones.
    pub(crate) fn scale(&self) -> f64 {
        self.r + self.rho + self.start.position().norm()
    }
}

/// Center of the minimum-radius turning circle on one side of a pose.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurnCenter {
    pub cx: f64,
    pub cy: f64,
    pub side: Side,
}

impl TurnCenter {
    pub(crate) fn point(&self) -> Vec2 {
        Vec2::new(self.cx, self.cy)
    }
}

/// Center of the turning circle of radius `rho` on the given side of `c`.
///
/// The right center sits at heading `theta - π/2`, the left one at
/// `theta + π/2`.
pub fn turn_center(c: &Configuration, side: Side, rho: f64) -> TurnCenter {
    debug_assert!(rho > 0.0);
    let (s, co) = c.theta.sin_cos();
    let k = side.sign() * rho;
    // cos(theta + π/2) = -sin(theta), sin(theta + π/2) = cos(theta)
    TurnCenter {
        cx: c.x - k * s,
        cy: c.y + k * co,
        side,
    }
}

/// Pose on the target circle of radius `r` with heading `theta_f`, reached
/// while travelling around the circle in the given sense.
pub fn terminal_configuration(theta_f: f64, rotation: Rotation, r: f64) -> Configuration {
    debug_assert!(r > 0.0);
    let (s, c) = theta_f.sin_cos();
    // cos(θ + δπ/2) = -δ sin θ, sin(θ + δπ/2) = δ cos θ
    let d = rotation.delta();
    Configuration::raw(-d * r * s, d * r * c, theta_f)
}

/// `phi1 = (x² + y² - r²) / 2`: zero exactly on the target circle.
pub fn phi1(c: &Configuration, r: f64) -> f64 {
    0.5 * (c.x * c.x + c.y * c.y - r * r)
}

/// `phi2 = x cos θ + y sin θ`: zero when the heading is tangential.
pub fn phi2(c: &Configuration) -> f64 {
    let (s, co) = c.theta.sin_cos();
    c.x * co + c.y * s
}

/// Which way a pose on (or near) the target circle travels around it.
pub(crate) fn rotation_of(c: &Configuration) -> Rotation {
    let h = Vec2::from_angle(c.theta);
    if c.position().cross(h) >= 0.0 {
        Rotation::CounterClockwise
    } else {
        Rotation::Clockwise
    }
}

pub(crate) const QUARTER: f64 = FRAC_PI_2;

//! Discretization baseline: point-to-point paths to `l + 1` evenly spaced
//! terminal headings on the target circle, keeping the shortest.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::circle::SenseFilter;
use crate::dubins::{DubinsPath, PointToPoint};
use crate::error::{Error, Result};
use crate::geom::{terminal_configuration, ProblemInstance, Rotation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbmResult {
    pub level: u32,
    /// Grid index of the winning heading.
    pub best_index: u32,
    pub best_theta: f64,
    pub best_rotation: Rotation,
    pub best_path: DubinsPath,
    /// Number of point-to-point solves performed.
    pub evaluations: u64,
}

impl DbmResult {
    pub fn length(&self) -> f64 {
        self.best_path.total_length()
    }
}

/// Grid heading `2π·i/l`. Written so that grids of levels `l` and `2l`
/// share their common points bit for bit.
pub fn grid_angle(i: u32, l: u32) -> f64 {
    TAU * f64::from(i) / f64::from(l)
}

/// Evaluates every heading `2π·i/l`, `i = 0..=l`, for each requested sense.
///
/// Ties go to the smaller index, then to the clockwise sense.
pub fn dbm(inst: &ProblemInstance, l: u32, sense: SenseFilter) -> Result<DbmResult> {
    if l == 0 {
        return Err(Error::InvalidLevel);
    }
    let p2p = PointToPoint::new(inst.start, inst.rho);
    let mut best: Option<(f64, u32, Rotation, DubinsPath)> = None;
    let mut evaluations = 0u64;
    for i in 0..=l {
        let theta = grid_angle(i, l);
        for &rotation in sense.rotations() {
            let goal = terminal_configuration(theta, rotation, inst.r);
            let path = p2p.solve(&goal);
            evaluations += 1;
            if best.as_ref().is_none_or(|b| path.total_length() < b.3.total_length()) {
                best = Some((theta, i, rotation, path));
            }
        }
    }
    let (best_theta, best_index, best_rotation, best_path) = best.expect("at least one grid point");
    Ok(DbmResult {
        level: l,
        best_index,
        best_theta,
        best_rotation,
        best_path,
        evaluations,
    })
}

/// Grid-resolution slack: how much longer the best grid path may be than
/// the true optimum at level `l`.
pub fn grid_slack(inst: &ProblemInstance, l: u32) -> f64 {
    TAU * (inst.r + 2.0 * inst.rho) / f64::from(l)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub level: u32,
    pub length: f64,
    pub gap: f64,
}

/// DBM lengths at several levels together with their gap to `reference`.
pub fn convergence(
    inst: &ProblemInstance,
    levels: &[u32],
    sense: SenseFilter,
    reference: f64,
) -> Result<Vec<ConvergencePoint>> {
    levels
        .iter()
        .map(|&level| {
            let res = dbm(inst, level, sense)?;
            Ok(ConvergencePoint {
                level,
                length: res.length(),
                gap: res.length() - reference,
            })
        })
        .collect()
}

//! World-frame problem instances and their JSON-lines file format.
//!
//! The solver works in a frame centered on the target circle. An
//! [`InstanceRecord`] carries the circle center explicitly and translates
//! to and from that frame.

use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circle::SenseFilter;
use crate::geom::{Configuration, ProblemInstance};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("reading instances: {0}")]
    Io(#[from] std::io::Error),

    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },

    #[error("missing value for {0}")]
    Missing(&'static str),

    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

/// Start pose, circle and turning radius in world coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub x0: f64,
    pub y0: f64,
    pub theta0: f64,
    #[serde(default)]
    pub cx: f64,
    #[serde(default)]
    pub cy: f64,
    pub r: f64,
    pub rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sense: Option<SenseFilter>,
}

impl InstanceRecord {
    /// Validates radii and finiteness, and normalizes `theta0` to `[0, 2π)`.
    pub fn normalized(self) -> Result<Self, InstanceError> {
        let start = self.problem()?.start;
        Ok(Self {
            theta0: start.theta,
            ..self
        })
    }

    /// The instance in the circle-centered frame.
    pub fn problem(&self) -> Result<ProblemInstance, InstanceError> {
        crate::error::ensure_finite(self.cx, "cx")?;
        crate::error::ensure_finite(self.cy, "cy")?;
        Ok(ProblemInstance::from_pose(
            self.x0 - self.cx,
            self.y0 - self.cy,
            self.theta0,
            self.rho,
            self.r,
        )?)
    }

    /// World-frame record for a circle-frame instance whose circle sits at `(cx, cy)`.
    pub fn from_problem(inst: &ProblemInstance, cx: f64, cy: f64) -> Self {
        Self {
            x0: inst.start.x + cx,
            y0: inst.start.y + cy,
            theta0: inst.start.theta,
            cx,
            cy,
            r: inst.r,
            rho: inst.rho,
            sense: None,
        }
    }

    /// Maps a circle-frame pose to world coordinates.
    pub fn to_world(&self, c: &Configuration) -> Configuration {
        Configuration {
            x: c.x + self.cx,
            y: c.y + self.cy,
            theta: c.theta,
        }
    }

    pub fn sense_or_default(&self) -> SenseFilter {
        self.sense.unwrap_or_default()
    }
}

/// A partially specified instance, as read from a file line or from
/// command-line flags.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstancePatch {
    pub x0: Option<f64>,
    pub y0: Option<f64>,
    pub theta0: Option<f64>,
    pub cx: Option<f64>,
    pub cy: Option<f64>,
    pub r: Option<f64>,
    pub rho: Option<f64>,
    pub sense: Option<SenseFilter>,
}

impl InstancePatch {
    /// Fields set in `over` replace those in `self`.
    pub fn overridden_by(self, over: &InstancePatch) -> Self {
        Self {
            x0: over.x0.or(self.x0),
            y0: over.y0.or(self.y0),
            theta0: over.theta0.or(self.theta0),
            cx: over.cx.or(self.cx),
            cy: over.cy.or(self.cy),
            r: over.r.or(self.r),
            rho: over.rho.or(self.rho),
            sense: over.sense.or(self.sense),
        }
    }

    /// Fills the circle center with the origin and checks the rest is present.
    pub fn complete(self) -> Result<InstanceRecord, InstanceError> {
        let rec = InstanceRecord {
            x0: self.x0.ok_or(InstanceError::Missing("x0"))?,
            y0: self.y0.ok_or(InstanceError::Missing("y0"))?,
            theta0: self.theta0.ok_or(InstanceError::Missing("theta0"))?,
            cx: self.cx.unwrap_or(0.0),
            cy: self.cy.unwrap_or(0.0),
            r: self.r.ok_or(InstanceError::Missing("r"))?,
            rho: self.rho.ok_or(InstanceError::Missing("rho"))?,
            sense: self.sense,
        };
        rec.normalized()
    }
}

impl From<InstanceRecord> for InstancePatch {
    fn from(r: InstanceRecord) -> Self {
        Self {
            x0: Some(r.x0),
            y0: Some(r.y0),
            theta0: Some(r.theta0),
            cx: Some(r.cx),
            cy: Some(r.cy),
            r: Some(r.r),
            rho: Some(r.rho),
            sense: r.sense,
        }
    }
}

/// Reads one JSON object per non-blank line.
pub fn read_patches(reader: impl BufRead) -> Result<Vec<InstancePatch>, InstanceError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let patch = serde_json::from_str(&line).map_err(|source| InstanceError::Json { line: i + 1, source })?;
        out.push(patch);
    }
    Ok(out)
}

/// Writes records as JSON lines.
pub fn write_records(mut w: impl std::io::Write, records: &[InstanceRecord]) -> std::io::Result<()> {
    for rec in records {
        serde_json::to_writer(&mut w, rec)?;
        writeln!(w)?;
    }
    Ok(())
}

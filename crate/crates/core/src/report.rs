//! Serializable solve reports.
//!
//! A [`ReportRecord`] echoes the world-frame instance and lists, per
//! rotation sense, the optimal paths with their segments and terminal
//! residuals, followed by the full candidate and pruning ledgers. Floats
//! are written with 17 significant digits so the JSON parses back to the
//! identical record.

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::circle::{
    CandidateSource, Outcome, PruneRecord, PruneRule, SenseFilter, Solution, SolveReport, TangencyMode,
};
use crate::dubins::{Segment, SegmentKind, Word};
use crate::geom::{phi1, phi2, Configuration, Rotation};
use crate::instance::InstanceRecord;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub phi1: f64,
    pub phi2: f64,
}

/// One optimal path. Poses are in the world frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathRecord {
    pub family: Word,
    pub theta_f: f64,
    pub rotation: Rotation,
    pub tangency: TangencyMode,
    /// `+1` external, `-1` internal tangency.
    pub delta: i8,
    pub length: f64,
    pub segments: Vec<Segment>,
    /// Radians of the last arc, if the path ends with one.
    pub final_arc: Option<f64>,
    pub start: Configuration,
    pub end: Configuration,
    pub residuals: Residuals,
    /// Index into the candidate ledger.
    pub candidate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SenseRecord {
    pub rotation: Rotation,
    pub length: f64,
    /// Co-minimal paths, shortest first.
    pub optimal: Vec<PathRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OutcomeRecord {
    Accepted { family: Word, length: f64 },
    Rejected { family: Word, length: f64, reason: String },
    Screened,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateEntry {
    pub family_hint: Word,
    pub theta_f: f64,
    pub rotation: Rotation,
    pub tangency: TangencyMode,
    pub source: CandidateSource,
    pub alpha_s: Option<f64>,
    pub alpha_c: Option<f64>,
    pub analytic_length: f64,
    pub outcome: OutcomeRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneEntry {
    pub family: Word,
    pub tangency: Option<TangencyMode>,
    pub rule: PruneRule,
    pub measured: f64,
    pub bound: f64,
    pub reason: String,
}

impl From<&PruneRecord> for PruneEntry {
    fn from(p: &PruneRecord) -> Self {
        Self {
            family: p.family,
            tangency: p.tangency,
            rule: p.rule,
            measured: p.measured,
            bound: p.bound,
            reason: p.reason(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub instance: InstanceRecord,
    pub sense: SenseFilter,
    /// Length of the global optimum over the requested senses.
    pub length: f64,
    pub optimal: Vec<PathRecord>,
    pub per_sense: Vec<SenseRecord>,
    pub candidates: Vec<CandidateEntry>,
    pub pruned: Vec<PruneEntry>,
}

fn path_record(sol: &Solution, world: &InstanceRecord, r: f64) -> PathRecord {
    let end = sol.path.endpoint();
    let segments = sol.path.reduced_segments();
    let final_arc = segments.last().filter(|s| s.kind != SegmentKind::S).map(|s| s.param);
    PathRecord {
        family: sol.family(),
        theta_f: sol.theta_f,
        rotation: sol.rotation,
        tangency: sol.tangency,
        delta: sol.tangency.delta() as i8,
        length: sol.length(),
        segments,
        final_arc,
        start: world.to_world(&sol.path.start()),
        end: world.to_world(&end),
        residuals: Residuals {
            phi1: phi1(&end, r),
            phi2: phi2(&end),
        },
        candidate: sol.candidate,
    }
}

impl ReportRecord {
    /// Converts a circle-frame report, placing it at the world-frame circle of `world`.
    pub fn new(rep: &SolveReport, world: &InstanceRecord) -> Self {
        let r = rep.instance.r;
        let candidates = rep
            .candidates
            .iter()
            .map(|rec| {
                let c = &rec.candidate;
                let outcome = match &rec.outcome {
                    Outcome::Accepted(p) => OutcomeRecord::Accepted {
                        family: p.family_tag(),
                        length: p.total_length(),
                    },
                    Outcome::Rejected(rej) => OutcomeRecord::Rejected {
                        family: rej.path.family_tag(),
                        length: rej.path.total_length(),
                        reason: rej.reason.to_string(),
                    },
                    Outcome::Screened => OutcomeRecord::Screened,
                };
                CandidateEntry {
                    family_hint: c.family_hint,
                    theta_f: c.theta_f,
                    rotation: c.rotation,
                    tangency: c.tangency,
                    source: c.source,
                    alpha_s: c.alpha_s,
                    alpha_c: c.alpha_c,
                    analytic_length: c.analytic_length(),
                    outcome,
                }
            })
            .collect();
        Self {
            instance: InstanceRecord {
                sense: Some(rep.sense),
                ..*world
            },
            sense: rep.sense,
            length: rep.length(),
            optimal: rep.optimal.iter().map(|s| path_record(s, world, r)).collect(),
            per_sense: rep
                .per_sense
                .iter()
                .map(|s| SenseRecord {
                    rotation: s.rotation,
                    length: s.length(),
                    optimal: s.optimal.iter().map(|p| path_record(p, world, r)).collect(),
                })
                .collect(),
            candidates,
            pruned: rep.pruned.iter().map(PruneEntry::from).collect(),
        }
    }

    pub fn best(&self) -> &PathRecord {
        &self.optimal[0]
    }

    /// Largest absolute terminal residual over every reported path.
    pub fn max_residual(&self) -> f64 {
        self.per_sense
            .iter()
            .flat_map(|s| &s.optimal)
            .map(|p| p.residuals.phi1.abs().max(p.residuals.phi2.abs()))
            .fold(0.0, f64::max)
    }

    /// Plain-text summary for terminal output.
    pub fn summary(&self) -> String {
        let i = &self.instance;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "start ({}, {}, {}), circle center ({}, {}) radius {}, rho {}",
            i.x0, i.y0, i.theta0, i.cx, i.cy, i.r, i.rho
        );
        for sense in &self.per_sense {
            for (k, p) in sense.optimal.iter().enumerate() {
                let label = if k == 0 {
                    format!("{}:", sense.rotation)
                } else {
                    "  or".to_string()
                };
                let family = if p.family.is_empty() {
                    "-".to_string()
                } else {
                    p.family.to_string()
                };
                let _ = writeln!(
                    s,
                    "{label:<5} {family:<4} length {:.9}  theta_f {:.9}  {} tangency",
                    p.length, p.theta_f, p.tangency
                );
                let segs: Vec<String> = p
                    .segments
                    .iter()
                    .map(|g| format!("{:?} {:.9}", g.kind, g.param))
                    .collect();
                if !segs.is_empty() {
                    let _ = writeln!(s, "      {}", segs.join(", "));
                }
            }
        }
        let b = self.best();
        let _ = writeln!(
            s,
            "optimal length {:.12} ({} {}), residuals {:.1e} / {:.1e}",
            self.length, b.rotation, b.family, b.residuals.phi1, b.residuals.phi2
        );
        let realized = self
            .candidates
            .iter()
            .filter(|c| !matches!(c.outcome, OutcomeRecord::Screened))
            .count();
        let _ = write!(
            s,
            "{} candidates ({} realized), {} pruned",
            self.candidates.len(),
            realized,
            self.pruned.len()
        );
        s
    }
}

/// Formatter adapter that writes every float with 17 significant digits.
pub struct Sig17<F>(pub F);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl<F: Formatter> Formatter for Sig17<F> {
    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }

    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

fn emit<T: Serialize, F: Formatter>(value: &T, fmt: F) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17(fmt));
    value.serialize(&mut ser).expect("serializing to memory");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Indented JSON with 17 significant digits per float.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    emit(value, PrettyFormatter::new())
}

/// Single-line JSON with 17 significant digits per float.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    emit(value, CompactFormatter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::solve;
    use crate::instance::InstanceRecord;

    fn record(x0: f64, y0: f64, theta0: f64, rho: f64, r: f64, cx: f64, cy: f64) -> ReportRecord {
        let world = InstanceRecord {
            x0: x0 + cx,
            y0: y0 + cy,
            theta0,
            cx,
            cy,
            r,
            rho,
            sense: None,
        };
        let rep = solve(&world.problem().unwrap(), SenseFilter::Both);
        ReportRecord::new(&rep, &world)
    }

    #[test]
    fn floats_have_seventeen_digits() {
        let s = to_json_line(&vec![0.1f64, -2.5e-300, 1.0]);
        assert_eq!(
            s,
            "[1.0000000000000001e-1,-2.5000000000000000e-300,1.0000000000000000e0]"
        );
    }

    #[test]
    fn report_round_trips() {
        for rec in [
            record(-0.2, -0.5, std::f64::consts::FRAC_PI_2, 1.0, 1.0, 3.0, -7.25),
            record(-5.0, 0.0, 1.5 * std::f64::consts::PI, 1.0, 1.0, 0.0, 0.0),
            record(0.0, 2.0, 0.0, 0.5, 2.0, 1.0, 1.0),
        ] {
            for text in [to_json_pretty(&rec), to_json_line(&rec)] {
                let back: ReportRecord = serde_json::from_str(&text).unwrap();
                assert_eq!(back, rec);
            }
        }
    }

    #[test]
    fn tangential_start_gives_empty_path() {
        let rec = record(0.0, 2.0, 0.0, 0.5, 2.0, 0.0, 0.0);
        assert_eq!(rec.length, 0.0);
        assert!(rec.best().segments.is_empty());
        assert!(rec.best().family.is_empty());
    }

    #[test]
    fn endpoints_reported_in_world_frame() {
        let rec = record(3.0, 1.0, 0.3, 0.8, 1.5, 10.0, -4.0);
        for p in &rec.optimal {
            let d = (p.end.x - 10.0).hypot(p.end.y + 4.0);
            assert!((d - 1.5).abs() < 1e-9);
            assert!(p.residuals.phi1.abs() < 1e-9 && p.residuals.phi2.abs() < 1e-9);
        }
        assert!(rec.summary().contains("optimal length"));
    }
}

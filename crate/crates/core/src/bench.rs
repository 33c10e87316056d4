//! Seeded random benchmark of the analytic solver against the
//! discretization baseline, bucketed by the start's distance to the
//! circle center.

use std::f64::consts::TAU;
use std::fmt;
use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circle::{solve, Outcome, SenseFilter, SolveReport};
use crate::dbm::dbm;
use crate::error::{Error, Result};
use crate::geom::ProblemInstance;
use crate::tol;

/// Turning radius range.
pub const RHO_RANGE: (f64, f64) = (0.5, 2.0);
/// Target circle radius range.
pub const R_RANGE: (f64, f64) = (0.5, 3.0);
/// Start coordinates are drawn from `[-SPAN·(rho + r), SPAN·(rho + r)]`.
pub const SPAN: f64 = 10.0;

/// Instances solved untimed before each timed loop.
const WARM_UP: usize = 50;

/// Distance `d_m` from the start to the circle center, in units of `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bucket {
    /// `d_m >= 4 rho`
    Far,
    /// `3 rho <= d_m < 4 rho`
    Three,
    /// `2 rho <= d_m < 3 rho`
    Two,
    /// `rho <= d_m < 2 rho`
    One,
    /// `d_m < rho`
    Near,
}

impl Bucket {
    pub const ALL: [Bucket; 5] = [Bucket::Far, Bucket::Three, Bucket::Two, Bucket::One, Bucket::Near];

    pub fn of(inst: &ProblemInstance) -> Bucket {
        let d = inst.start.x.hypot(inst.start.y) / inst.rho;
        if d >= 4.0 {
            Bucket::Far
        } else if d >= 3.0 {
            Bucket::Three
        } else if d >= 2.0 {
            Bucket::Two
        } else if d >= 1.0 {
            Bucket::One
        } else {
            Bucket::Near
        }
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bucket::Far => ">=4rho",
            Bucket::Three => "3rho",
            Bucket::Two => "2rho",
            Bucket::One => "rho",
            Bucket::Near => "<rho",
        })
    }
}

/// `count` instances drawn from the documented ranges; identical for equal seeds.
pub fn generate(count: usize, seed: u64) -> Vec<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rho = rng.gen_range(RHO_RANGE.0..RHO_RANGE.1);
            let r = rng.gen_range(R_RANGE.0..R_RANGE.1);
            let span = SPAN * (rho + r);
            let x0 = rng.gen_range(-span..span);
            let y0 = rng.gen_range(-span..span);
            let theta0 = rng.gen_range(0.0..TAU);
            ProblemInstance::from_pose(x0, y0, theta0, rho, r).expect("sampled values are valid")
        })
        .collect()
}

/// Per-instance outcome; every field is deterministic for a given seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchInstance {
    pub index: usize,
    pub instance: ProblemInstance,
    pub bucket: Bucket,
    pub analytic_length: f64,
    pub dbm_length: f64,
    /// Point-to-point solves the analytic method performed.
    pub analytic_evaluations: u64,
    pub dbm_evaluations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BucketRow {
    pub bucket: Bucket,
    pub count: usize,
    pub analytic_mean_seconds: f64,
    pub dbm_mean_seconds: f64,
    /// DBM mean time over analytic mean time.
    pub speedup: f64,
    pub analytic_mean_evaluations: f64,
    pub dbm_mean_evaluations: f64,
    /// DBM evaluations over analytic evaluations, a machine-independent
    /// measure of work.
    pub evaluation_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub count: usize,
    pub seed: u64,
    pub level: u32,
    /// Only populated buckets are listed.
    pub rows: Vec<BucketRow>,
    pub instances: Vec<BenchInstance>,
    /// Indices of instances where the analytic length exceeds the DBM length.
    pub violations: Vec<usize>,
}

fn realized(rep: &SolveReport) -> u64 {
    rep.candidates
        .iter()
        .filter(|c| !matches!(c.outcome, Outcome::Screened))
        .count() as u64
}

fn time_per_instance<T>(insts: &[ProblemInstance], mut f: impl FnMut(&ProblemInstance) -> T) -> (Vec<T>, f64) {
    for inst in insts.iter().take(WARM_UP) {
        black_box(f(inst));
    }
    let mut out = Vec::with_capacity(insts.len());
    let start = Instant::now();
    for inst in insts {
        out.push(black_box(f(black_box(inst))));
    }
    let secs = start.elapsed().as_secs_f64();
    (out, secs / insts.len() as f64)
}

/// Times both methods bucket by bucket, each in its own loop after a warm-up.
pub fn run(count: usize, seed: u64, level: u32) -> Result<BenchReport> {
    if count == 0 {
        return Err(Error::NonPositive {
            name: "count",
            value: 0.0,
        });
    }
    if level == 0 {
        return Err(Error::InvalidLevel);
    }
    let all = generate(count, seed);
    let mut instances: Vec<Option<BenchInstance>> = vec![None; count];
    let mut rows = Vec::new();
    for bucket in Bucket::ALL {
        let idx: Vec<usize> = (0..count).filter(|&i| Bucket::of(&all[i]) == bucket).collect();
        if idx.is_empty() {
            continue;
        }
        let insts: Vec<ProblemInstance> = idx.iter().map(|&i| all[i]).collect();
        // each report is reduced to what the table needs and dropped inside the loop
        let (analytic, analytic_secs) = time_per_instance(&insts, |p| {
            let rep = solve(p, SenseFilter::Both);
            (rep.length(), realized(&rep))
        });
        let (baseline, dbm_secs) = time_per_instance(&insts, |p| {
            let res = dbm(p, level, SenseFilter::Both).expect("level checked");
            (res.length(), res.evaluations)
        });
        let mut evals = (0u64, 0u64);
        for ((&i, &(length, realized)), &(dbm_length, dbm_evaluations)) in idx.iter().zip(&analytic).zip(&baseline) {
            let rec = BenchInstance {
                index: i,
                instance: all[i],
                bucket,
                analytic_length: length,
                dbm_length,
                analytic_evaluations: realized,
                dbm_evaluations,
            };
            evals.0 += rec.analytic_evaluations;
            evals.1 += rec.dbm_evaluations;
            instances[i] = Some(rec);
        }
        let n = idx.len() as f64;
        rows.push(BucketRow {
            bucket,
            count: idx.len(),
            analytic_mean_seconds: analytic_secs,
            dbm_mean_seconds: dbm_secs,
            speedup: dbm_secs / analytic_secs,
            analytic_mean_evaluations: evals.0 as f64 / n,
            dbm_mean_evaluations: evals.1 as f64 / n,
            evaluation_ratio: evals.1 as f64 / evals.0.max(1) as f64,
        });
    }
    let instances: Vec<BenchInstance> = instances
        .into_iter()
        .map(|r| r.expect("every instance is bucketed"))
        .collect();
    let violations = instances
        .iter()
        .filter(|b| b.analytic_length > b.dbm_length + tol::EQUAL_LENGTH)
        .map(|b| b.index)
        .collect();
    Ok(BenchReport {
        count,
        seed,
        level,
        rows,
        instances,
        violations,
    })
}

impl BenchReport {
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<8} {:>6} {:>13} {:>13} {:>9} {:>10} {:>10} {:>10}",
            "d_m", "count", "analytic(us)", "dbm(us)", "speedup", "p2p/solve", "p2p/dbm", "p2p ratio"
        );
        for row in &self.rows {
            let _ = writeln!(
                s,
                "{:<8} {:>6} {:>13.3} {:>13.3} {:>8.1}x {:>10.2} {:>10.0} {:>9.1}x",
                row.bucket.to_string(),
                row.count,
                row.analytic_mean_seconds * 1e6,
                row.dbm_mean_seconds * 1e6,
                row.speedup,
                row.analytic_mean_evaluations,
                row.dbm_mean_evaluations,
                row.evaluation_ratio
            );
        }
        let _ = write!(
            s,
            "{} instances, seed {}, DBM level {}, {} dominance violations",
            self.count,
            self.seed,
            self.level,
            self.violations.len()
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_seeded() {
        assert_eq!(generate(50, 3), generate(50, 3));
        assert_ne!(generate(50, 3), generate(50, 4));
        for p in generate(500, 1) {
            let lim = SPAN * (p.rho + p.r);
            assert!(p.start.x.abs() <= lim && p.start.y.abs() <= lim);
            assert!((RHO_RANGE.0..RHO_RANGE.1).contains(&p.rho));
            assert!((R_RANGE.0..R_RANGE.1).contains(&p.r));
        }
    }

    #[test]
    fn bucket_edges() {
        let at = |d: f64| Bucket::of(&ProblemInstance::from_pose(d, 0.0, 0.0, 0.5, 1.0).unwrap());
        assert_eq!(at(2.0), Bucket::Far);
        assert_eq!(at(1.99), Bucket::Three);
        assert_eq!(at(1.0), Bucket::Two);
        assert_eq!(at(0.5), Bucket::One);
        assert_eq!(at(0.49), Bucket::Near);
    }

    #[test]
    fn single_instance_fills_one_bucket() {
        let rep = run(1, 5, 36).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.rows[0].count, 1);
        assert_eq!(rep.instances[0].dbm_evaluations, 74);
        assert!(rep.violations.is_empty());
        assert!(run(0, 5, 36).is_err());
    }
}

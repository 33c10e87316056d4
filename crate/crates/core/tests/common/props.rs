//! Property checks shared by the invariant tests and the acceptance run.
//! Each returns a one-line summary, or the first violation found.

use std::f64::consts::PI;

use dubins_circle::circle::{solve, solve_with, SenseFilter, Solution, SolveOptions, SolveReport};
use dubins_circle::dbm::dbm;
use dubins_circle::dubins::SegmentKind;
use dubins_circle::geom::{ProblemInstance, Rotation};
use dubins_circle::instance::InstanceRecord;
use dubins_circle::quartic::{real_roots, QuarticCoefficients, RealRoot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    broad, companion_real_roots, near, origin_to_line, poses, root_discrepancy, terminal_residuals, turning_center,
    word, FAMILIES,
};

pub type Outcome = Result<String, String>;

/// Path-level check: `Ok(true)` if it applied, `Ok(false)` if not.
type Check<'a> = &'a mut dyn FnMut(&ProblemInstance, &Solution) -> Result<bool, String>;

fn all_optimal(rep: &SolveReport) -> impl Iterator<Item = &Solution> {
    rep.per_sense.iter().flat_map(|s| &s.optimal)
}

fn mixed(rng: &mut ChaCha8Rng, k: usize) -> ProblemInstance {
    if k.is_multiple_of(2) {
        broad(rng)
    } else {
        near(rng, (0.05, 3.0), 1.5)
    }
}

/// Draws instances until `want` of them hold a path `check` applies to.
fn collect(
    seed: u64,
    want: usize,
    draw: &mut dyn FnMut(&mut ChaCha8Rng) -> ProblemInstance,
    check: Check<'_>,
) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..want * 200 {
        let inst = draw(&mut rng);
        let rep = solve(&inst, SenseFilter::Both);
        let mut applied = false;
        for sol in all_optimal(&rep) {
            applied |= check(&inst, sol)?;
        }
        if applied {
            hits += 1;
            if hits == want {
                return Ok(hits);
            }
        }
    }
    Err(format!("only {hits} of {want} applicable instances found"))
}

fn is_csc_like(w: &str) -> bool {
    w.len() >= 2 && w.as_bytes()[w.len() - 2] == b'S'
}

/// Whether the final turning circle touches the target from outside,
/// judged from its center distance.
fn final_external(inst: &ProblemInstance, sol: &Solution) -> Result<bool, String> {
    let segs = sol.path.reduced_segments();
    let last = segs.last().ok_or("empty path")?;
    let end = *poses(inst, &segs).last().unwrap();
    let c = turning_center(end, last.kind, inst.rho);
    let d = c.0.hypot(c.1);
    if (d - (inst.r + inst.rho)).abs() <= 1e-7 {
        Ok(true)
    } else if (d - (inst.r - inst.rho).abs()).abs() <= 1e-7 {
        Ok(false)
    } else {
        Err(format!(
            "final circle center at {d} is tangent to neither side for {inst:?}"
        ))
    }
}

/// The straight segment of every optimal path lies on a line through the center.
pub fn straight_line_through_center(seed: u64, want: usize) -> Outcome {
    let mut worst: f64 = 0.0;
    let n = collect(
        seed,
        want,
        &mut |rng| {
            if rng.gen_bool(0.5) {
                broad(rng)
            } else {
                near(rng, (0.1, 2.0), 2.0)
            }
        },
        &mut |inst, sol| {
            let segs = sol.path.reduced_segments();
            let Some(k) = segs.iter().position(|s| s.kind == SegmentKind::S) else {
                return Ok(false);
            };
            let p = poses(inst, &segs);
            let off = origin_to_line((p[k].0, p[k].1), (p[k + 1].0, p[k + 1].1));
            worst = worst.max(off);
            if off > 1e-7 {
                return Err(format!("line misses the center by {off:e} for {inst:?}"));
            }
            Ok(true)
        },
    )?;
    Ok(format!("{n} instances, max offset {worst:.1e} (tol 1e-7)"))
}

/// The final arc of `CSC` and `SC` optima matches the tangency formulas.
pub fn final_arc_formulas(seed: u64, want: usize, want_internal: usize) -> Outcome {
    let (mut internal, mut worst) = (0usize, 0f64);
    let mut check = |inst: &ProblemInstance, sol: &Solution| {
        let w = word(sol);
        if !is_csc_like(&w) {
            return Ok(false);
        }
        let (rho, r) = (inst.rho, inst.r);
        let expected = if final_external(inst, sol)? {
            (rho / (rho + r)).acos()
        } else {
            internal += 1;
            PI - (rho / (r - rho)).acos()
        };
        let got = sol.path.reduced_segments().last().unwrap().param;
        worst = worst.max((got - expected).abs());
        if (got - expected).abs() > 1e-9 {
            return Err(format!("{w}: final arc {got} vs {expected} for {inst:?}"));
        }
        Ok(true)
    };
    let a = collect(seed, want, &mut broad, &mut check)?;
    let b = collect(
        seed + 1,
        want_internal * 2,
        &mut |rng| near(rng, (0.05, 0.45), 0.6),
        &mut check,
    )?;
    if internal < want_internal {
        return Err(format!("only {internal} internally tangent paths"));
    }
    Ok(format!(
        "{} instances, {internal} internal paths, max error {worst:.1e} (tol 1e-9)",
        a + b
    ))
}

/// Both junctions of a `CCC` optimum lie on a line through the center.
pub fn ccc_junctions_collinear(seed: u64, want: usize) -> Outcome {
    let mut worst: f64 = 0.0;
    let n = collect(seed, want, &mut |rng| near(rng, (0.2, 3.0), 1.0), &mut |inst, sol| {
        let w = word(sol);
        if w != "LRL" && w != "RLR" {
            return Ok(false);
        }
        let p = poses(inst, &sol.path.reduced_segments());
        let off = origin_to_line((p[1].0, p[1].1), (p[2].0, p[2].1));
        worst = worst.max(off);
        if off > 1e-7 {
            return Err(format!("{w} junctions miss the center by {off:e} for {inst:?}"));
        }
        Ok(true)
    })?;
    Ok(format!("{n} instances, max offset {worst:.1e} (tol 1e-7)"))
}

/// `CSC` optima are externally tangent when `rho >= r/2`; otherwise the
/// center is never strictly inside the first turning circle.
pub fn csc_tangency_rules(seed: u64, want: usize) -> Outcome {
    let (mut large, mut small) = (0usize, 0usize);
    let mut check = |inst: &ProblemInstance, sol: &Solution| {
        let w = word(sol);
        if !is_csc_like(&w) {
            return Ok(false);
        }
        if inst.rho >= inst.r / 2.0 {
            large += 1;
            if !final_external(inst, sol)? {
                return Err(format!("{w} internally tangent with rho >= r/2 for {inst:?}"));
            }
        } else if w.len() == 3 {
            small += 1;
            let s = inst.start;
            let c = turning_center((s.x, s.y, s.theta), sol.path.reduced_segments()[0].kind, inst.rho);
            if c.0.hypot(c.1) < inst.rho - 1e-9 {
                return Err(format!("{w}: center inside the first circle for {inst:?}"));
            }
        } else {
            return Ok(false);
        }
        Ok(true)
    };
    collect(seed, want, &mut |rng| near(rng, (0.5, 3.0), 3.0), &mut check)?;
    collect(seed + 1, want, &mut |rng| near(rng, (0.05, 0.5), 2.0), &mut check)?;
    Ok(format!("{large} paths with rho >= r/2, {small} with rho < r/2"))
}

/// Integrated endpoints meet both terminal constraints and every family is admissible.
pub fn residuals_and_families(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut paths) = (0f64, 0usize);
    for k in 0..count {
        let inst = mixed(&mut rng, k);
        let rep = solve(&inst, SenseFilter::Both);
        for sol in all_optimal(&rep) {
            paths += 1;
            let (p1, p2) = terminal_residuals(&inst, sol);
            worst = worst.max(p1.abs()).max(p2.abs());
            if p1.abs() > 1e-9 || p2.abs() > 1e-9 {
                return Err(format!("residuals {p1:e} {p2:e} for {inst:?}"));
            }
            let w = word(sol);
            if !(w.is_empty() || FAMILIES.contains(&w.as_str())) {
                return Err(format!("family {w} for {inst:?}"));
            }
        }
    }
    Ok(format!(
        "{count} instances, {paths} paths, max residual {worst:.1e} (tol 1e-9)"
    ))
}

/// Reflecting the start across the x axis swaps the per-sense lengths.
pub fn mirror_symmetry(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for k in 0..count {
        let inst = mixed(&mut rng, k);
        let a = solve(&inst, SenseFilter::Both);
        let b = solve(&inst.mirrored(), SenseFilter::Both);
        for rot in [Rotation::Clockwise, Rotation::CounterClockwise] {
            let la = a.for_rotation(rot).unwrap().length();
            let lb = b.for_rotation(rot.opposite()).unwrap().length();
            worst = worst.max((la - lb).abs());
            if (la - lb).abs() > 1e-9 {
                return Err(format!("{rot}: {la} vs mirrored {lb} for {inst:?}"));
            }
        }
    }
    Ok(format!("{count} instances, max difference {worst:.1e} (tol 1e-9)"))
}

/// Moving the circle center moves the solution with it.
pub fn translation_invariance(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for k in 0..count {
        let inst = mixed(&mut rng, k);
        let (cx, cy) = (rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
        let world = InstanceRecord::from_problem(&inst, cx, cy);
        let moved = solve(&world.problem().map_err(|e| e.to_string())?, SenseFilter::Both).length();
        let here = solve(&inst, SenseFilter::Both).length();
        worst = worst.max((moved - here).abs());
        if (moved - here).abs() > 1e-12 {
            return Err(format!("{moved} vs {here} at center ({cx}, {cy})"));
        }
    }
    Ok(format!("{count} instances, max difference {worst:.1e} (tol 1e-12)"))
}

/// Doubling the discretization level never lengthens the baseline result.
pub fn grid_nesting(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let inst = mixed(&mut rng, k);
        let l = rng.gen_range(8..120);
        let coarse = dbm(&inst, l, SenseFilter::Both).map_err(|e| e.to_string())?.length();
        let fine = dbm(&inst, 2 * l, SenseFilter::Both)
            .map_err(|e| e.to_string())?
            .length();
        if fine > coarse {
            return Err(format!("DBM({}) = {fine} above DBM({l}) = {coarse}", 2 * l));
        }
    }
    Ok(format!("{count} instances, DBM(2l) <= DBM(l) exactly"))
}

fn with_multiplicity(roots: &[RealRoot]) -> Vec<f64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity as usize))
        .collect()
}

/// Random quartics against the companion-matrix eigenvalues.
pub fn quartics_match_companion(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let c = QuarticCoefficients::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let got = with_multiplicity(&real_roots(&c).map_err(|e| e.to_string())?);
        let want = companion_real_roots(&c);
        let d = root_discrepancy(&got, &want);
        worst = worst.max(d);
        if d > 1e-7 {
            return Err(format!("{c:?}: got {got:?}, companion {want:?}"));
        }
    }
    Ok(format!("{count} quartics, max root discrepancy {worst:.1e} (tol 1e-7)"))
}

/// Coefficients of `lead · Π (x - r_i)` over the given roots.
pub fn from_roots(lead: f64, roots: &[f64]) -> QuarticCoefficients {
    let mut p = vec![lead];
    for r in roots {
        let mut next = vec![0.0; p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            next[i] += a;
            next[i + 1] -= a * r;
        }
        p = next;
    }
    let pad = 5 - p.len();
    let mut a = [0.0; 5];
    a[pad..].copy_from_slice(&p);
    QuarticCoefficients::new(a[0], a[1], a[2], a[3], a[4])
}

/// Quartics built with a double root, alone or next to two simple roots,
/// return it once with multiplicity two.
pub fn double_roots_recovered(seed: u64, count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for k in 0..count {
        let d = rng.gen_range(-3.0..3.0);
        let lead = rng.gen_range(0.5..2.0);
        let c = if k.is_multiple_of(2) {
            // (x - d)² ((x - s)² + m²)
            let (s, m): (f64, f64) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.5..2.0));
            let q = from_roots(lead, &[d, d]).as_array();
            let (q2, q1, q0) = (q[2], q[3], q[4]);
            let p = [1.0, -2.0 * s, s * s + m * m];
            let mut a = [0.0; 5];
            for (i, x) in p.iter().enumerate() {
                for (j, y) in [q2, q1, q0].iter().enumerate() {
                    a[i + j] += x * y;
                }
            }
            QuarticCoefficients::new(a[0], a[1], a[2], a[3], a[4])
        } else {
            let mut others = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            if others.iter().any(|o: &f64| (o - d).abs() < 0.5) || (others[0] - others[1]).abs() < 0.5 {
                others = [d - 1.5, d + 2.0];
            }
            from_roots(lead, &[d, d, others[0], others[1]])
        };
        let roots = real_roots(&c).map_err(|e| e.to_string())?;
        let Some(hit) = roots.iter().find(|r| (r.value - d).abs() <= 1e-6) else {
            return Err(format!("double root {d} missing from {roots:?}"));
        };
        worst = worst.max((hit.value - d).abs());
        let simple = roots.iter().filter(|r| r.multiplicity == 1).count();
        if hit.multiplicity != 2 || simple != if k.is_multiple_of(2) { 0 } else { 2 } {
            return Err(format!("double root {d}: got {roots:?}"));
        }
    }
    Ok(format!(
        "{count} constructed quartics, max double-root error {worst:.1e} (tol 1e-6)"
    ))
}

/// Per-sense optimal lengths with and without the candidate filters.
pub fn filters_preserve_optimum(seed: u64, count: usize, filtered: SolveOptions) -> Result<(usize, f64), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut changed, mut worst) = (0usize, 0f64);
    for k in 0..count {
        let inst = mixed(&mut rng, k);
        let a = solve_with(&inst, SenseFilter::Both, &filtered);
        let b = solve_with(&inst, SenseFilter::Both, &SolveOptions::unfiltered());
        let mut differs = false;
        for (x, y) in a.per_sense.iter().zip(&b.per_sense) {
            let d = (x.length() - y.length()).abs();
            worst = worst.max(d);
            differs |= d > 1e-9;
        }
        changed += usize::from(differs);
    }
    Ok((changed, worst))
}

//! Candidate filters: the same optimum with fewer quartics and realizations.

use dubins_circle::circle::{enumerate_candidates, solve_with, SenseFilter, SolveOptions};
use dubins_circle::geom::ProblemInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = ProblemInstance::from_pose(0.4, -0.9, 2.0, 1.0, 1.5)?;
    for (name, opts) in [
        ("filtered", SolveOptions::default()),
        ("unfiltered", SolveOptions::unfiltered()),
    ] {
        let (cands, pruned) = enumerate_candidates(&inst, &opts);
        let rep = solve_with(&inst, SenseFilter::Both, &opts);
        println!(
            "{name:<10} {} candidates, {} pruned, optimum {:.12} ({})",
            cands.len(),
            pruned.len(),
            rep.length(),
            rep.best().family()
        );
        for p in &pruned {
            println!("    {} {}", p.rule, p.reason());
        }
    }
    Ok(())
}

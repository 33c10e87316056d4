//! Shortest path to a target circle for both arrival senses, with the
//! candidate headings that were considered.

use dubins_circle::circle::{solve, Outcome, SenseFilter};
use dubins_circle::geom::ProblemInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = ProblemInstance::from_pose(3.0, -2.0, 2.5, 0.8, 1.5)?;
    let rep = solve(&inst, SenseFilter::Both);

    for sense in &rep.per_sense {
        for sol in &sense.optimal {
            println!(
                "{}: {} length {:.9}, theta_f {:.6}, {} tangency",
                sense.rotation,
                sol.family(),
                sol.length(),
                sol.theta_f,
                sol.tangency
            );
        }
    }
    println!("global optimum {:.9} ({})", rep.length(), rep.best().family());

    println!("\ncandidates:");
    for rec in &rep.candidates {
        let c = &rec.candidate;
        let status = match &rec.outcome {
            Outcome::Accepted(p) => format!("accepted as {} {:.6}", p.family_tag(), p.total_length()),
            Outcome::Rejected(r) => format!("rejected: {}", r.reason),
            Outcome::Screened => "not realized".to_string(),
        };
        println!(
            "  {:<4} {:<3} {:<8} theta_f {:.6} closed form {:.6}  {status}",
            c.family_hint.to_string(),
            c.rotation.to_string(),
            c.tangency.to_string(),
            c.theta_f,
            c.analytic_length()
        );
    }
    println!("\npruned before realization:");
    for p in &rep.pruned {
        println!("  {} [{}]: {}", p.family, p.rule, p.reason());
    }
    Ok(())
}

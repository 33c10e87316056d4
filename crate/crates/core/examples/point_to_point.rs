//! Classic point-to-point Dubins paths: the shortest path between two poses
//! and the length of every one of the six families.

use std::f64::consts::PI;

use dubins_circle::dubins::{evaluate_family, solve_point_to_point, PathFamily};
use dubins_circle::geom::Configuration;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let start = Configuration::new(0.0, 0.0, 0.0)?;
    let goal = Configuration::new(4.0, 1.0, PI / 2.0)?;
    let rho = 1.0;

    for family in PathFamily::ALL {
        match evaluate_family(family, &start, &goal, rho)? {
            Some(p) => println!("{family}: {:.6}", p.total_length()),
            None => println!("{family}: infeasible"),
        }
    }

    let best = solve_point_to_point(&start, &goal, rho)?;
    println!("shortest: {} of length {:.6}", best.family_tag(), best.total_length());
    for seg in best.reduced_segments() {
        println!("  {:?} {:.6}", seg.kind, seg.param);
    }
    let end = best.endpoint();
    println!("ends at ({:.3e}, {:.3e}) off target", end.x - goal.x, end.y - goal.y);
    Ok(())
}

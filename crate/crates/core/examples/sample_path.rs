//! Samples the optimal path at a fixed arc-length step, as CSV.

use dubins_circle::circle::{solve, SenseFilter};
use dubins_circle::dubins::sample_path;
use dubins_circle::geom::ProblemInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = ProblemInstance::from_pose(-5.0, 0.0, 1.5 * std::f64::consts::PI, 1.0, 1.0)?;
    let rep = solve(&inst, SenseFilter::Clockwise);
    println!("s,x,y,theta");
    for p in sample_path(&rep.best().path, 0.25)? {
        println!("{:.6},{:.6},{:.6},{:.6}", p.s, p.pose.x, p.pose.y, p.pose.theta);
    }
    Ok(())
}

//! The discretized baseline approaching the analytic optimum as the grid
//! is refined.

use dubins_circle::circle::{solve, SenseFilter};
use dubins_circle::dbm::{convergence, grid_slack};
use dubins_circle::geom::ProblemInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = ProblemInstance::from_pose(-2.0, 3.5, 0.7, 1.0, 1.2)?;
    let analytic = solve(&inst, SenseFilter::Both).length();
    println!("analytic {analytic:.12}");
    for p in convergence(&inst, &[90, 360, 1440, 5760], SenseFilter::Both, analytic)? {
        println!(
            "DBM({:>4}) {:.12}  gap {:.3e}  slack bound {:.3e}",
            p.level,
            p.length,
            p.gap,
            grid_slack(&inst, p.level)
        );
    }
    Ok(())
}

//! Draws both optimal paths for a circle that is not at the origin.

use dubins_circle::circle::{solve, SenseFilter};
use dubins_circle::instance::InstanceRecord;
use dubins_circle::svg::{render, Drawn};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let world = InstanceRecord {
        x0: 1.0,
        y0: 6.0,
        theta0: 4.0,
        cx: 5.0,
        cy: 5.0,
        r: 1.5,
        rho: 1.0,
        sense: None,
    };
    let rep = solve(&world.problem()?, SenseFilter::Both);
    let drawn: Vec<Drawn> = rep
        .per_sense
        .iter()
        .map(|s| Drawn {
            path: &s.best().path,
            label: format!("{} {}", s.rotation, s.best().family()),
        })
        .collect();
    let out = std::env::temp_dir().join("dubins-circle-example.svg");
    std::fs::write(&out, render(&world, &drawn))?;
    println!("wrote {}", out.display());
    Ok(())
}

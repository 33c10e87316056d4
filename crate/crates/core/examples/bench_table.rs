//! A small timing comparison against the discretized baseline.
//!
//! Run with `--release`; the full-size run is `dubins-circle bench`.

use dubins_circle::bench;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = bench::run(2_000, 42, 360)?;
    println!("{}", report.table());
    Ok(())
}

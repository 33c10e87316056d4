//! Writes a solve report as JSON and reads it back unchanged.

use dubins_circle::circle::solve;
use dubins_circle::instance::{read_patches, InstanceRecord};
use dubins_circle::report::{to_json_pretty, ReportRecord};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // one instance per line; the circle center defaults to the origin
    let file = r#"{"x0": -0.5, "y0": 0.0, "theta0": 1.5707963267948966, "r": 2.0, "rho": 0.5}"#;
    let rec: InstanceRecord = read_patches(file.as_bytes())?[0].complete()?;
    let rep = solve(&rec.problem()?, rec.sense_or_default());
    let report = ReportRecord::new(&rep, &rec);

    let text = to_json_pretty(&report);
    println!("{}", &text[..text.find("\"candidates\"").unwrap_or(text.len())]);
    let back: ReportRecord = serde_json::from_str(&text)?;
    assert_eq!(back, report);
    println!("... round trip exact; final arc {:?}", report.best().final_arc);
    Ok(())
}

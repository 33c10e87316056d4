//! Real roots of a quartic, including a double root.

use dubins_circle::quartic::{real_roots, QuarticCoefficients};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (t - 1)^2 (t + 2)(t - 3) = t^4 - 3t^3 - 3t^2 + 11t - 6
    let c = QuarticCoefficients::new(1.0, -3.0, -3.0, 11.0, -6.0);
    for root in real_roots(&c)? {
        println!(
            "t = {:+.12} (multiplicity {}), p(t) = {:.1e}",
            root.value,
            root.multiplicity,
            c.eval(root.value)
        );
    }

    // no real roots
    let none = QuarticCoefficients::new(1.0, 0.0, 1.0, 0.0, 1.0);
    println!("t^4 + t^2 + 1 has {} real roots", real_roots(&none)?.len());

    // leading zeros lower the degree
    let cubic = QuarticCoefficients::new(0.0, 2.0, 0.0, -2.0, 0.0);
    let values: Vec<f64> = real_roots(&cubic)?.iter().map(|r| r.value).collect();
    println!("2t^3 - 2t roots: {values:?}");
    Ok(())
}

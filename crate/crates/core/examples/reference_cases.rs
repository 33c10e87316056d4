//! The four reference instances and their property checks.

use dubins_circle::cases;

fn main() {
    for case in cases::all() {
        let run = cases::run(&case);
        println!(
            "case {} ({}): {}",
            case.name,
            if run.passed() { "pass" } else { "fail" },
            case.claim
        );
        for check in &run.checks {
            println!(
                "  {} {}: {}",
                if check.passed { "ok  " } else { "FAIL" },
                check.name,
                check.detail
            );
        }
    }
}

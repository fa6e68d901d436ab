//! Runs two groups of the verification battery and prints the reports.

use fracsolve::oracle::run_battery;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for group in ["ml_identities", "riesz_spectral"] {
        for r in run_battery(Some(group))? {
            println!(
                "{} {:<50} error {:.2e} (tolerance {:.0e}, {:.2} s)",
                if r.passed { "ok  " } else { "FAIL" },
                r.name,
                r.measured_error,
                r.tolerance,
                r.runtime
            );
        }
    }
    Ok(())
}

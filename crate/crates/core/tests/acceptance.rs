//! Acceptance gate: runs every criterion and prints one line per criterion.
//! All comparisons are exact (integer or rational equality, set equality); no
//! tolerances apply.

use std::process::ExitCode;
use std::time::Instant;

use flag_pieces::analysis::{Criterion, Status, Verifier, VerifyConfig};

fn main() -> ExitCode {
    let config = VerifyConfig { jobs: 2, ..VerifyConfig::default() };
    let mut verifier = Verifier::new(config).expect("default configuration is valid");
    let mut all_pass = true;
    println!("acceptance: {} criteria, tolerance exact", Criterion::ALL.len());
    for c in Criterion::ALL {
        let start = Instant::now();
        let (status, detail, failures) = match verifier.run(c) {
            Ok(checks) if checks.is_empty() => (false, "no checks produced".to_string(), Vec::new()),
            Ok(checks) => {
                let failed: Vec<_> = checks.iter().filter(|k| k.status == Status::Fail).cloned().collect();
                let skipped = checks.iter().filter(|k| k.status == Status::Skipped).count();
                let detail = format!("{} checks, {} failed, {} skipped", checks.len(), failed.len(), skipped);
                (failed.is_empty(), detail, failed)
            }
            Err(e) => (false, format!("fault: {e}"), Vec::new()),
        };
        all_pass &= status;
        println!(
            "criterion {:>2} {:<22} {}  ({detail}; {:.1}s)",
            c.number(),
            c.slug(),
            if status { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for f in failures {
            println!("    {}: expected {} got {}", f.id, f.expected, f.actual);
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

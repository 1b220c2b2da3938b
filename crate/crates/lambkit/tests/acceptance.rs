//! One line per acceptance criterion. Criteria 1-9 run in process with their
//! own time limits; criterion 10 runs the whole suite through the binary.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lambkit::claims::{self, DEFAULT_SEED};

const SUITE_LIMIT: Duration = Duration::from_secs(60);

fn main() -> ExitCode {
    let mut failed = 0;
    for claim in claims::claims() {
        let r = claim.run(DEFAULT_SEED);
        println!(
            "{} criterion {} [{}] {} ms (limit {} ms): {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.tag,
            r.millis,
            r.limit_millis,
            r.detail
        );
        failed += usize::from(!r.passed);
    }
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lambkit"))
        .arg("verify-paper")
        .env_remove("LAMBKIT_SEED")
        .output()
        .expect("run lambkit");
    let elapsed = start.elapsed();
    let ok = out.status.success() && elapsed < SUITE_LIMIT;
    let summary = String::from_utf8_lossy(&out.stdout)
        .lines()
        .last()
        .unwrap_or("")
        .to_string();
    println!(
        "{} criterion 10 [verify-paper] {} ms (limit {} ms): exit {:?}, {}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_millis(),
        SUITE_LIMIT.as_millis(),
        out.status.code(),
        summary
    );
    failed += usize::from(!ok);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

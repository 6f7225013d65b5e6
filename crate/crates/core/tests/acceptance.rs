//! One line per acceptance criterion; exits non-zero if any fails.
//! `ACCEPTANCE_SCALE` (percent, default 100) shrinks the corpora and
//! `ACCEPTANCE_ONLY` picks a single criterion label.

use pix_core::lab::{run_criterion, Criterion, GenParams};

fn main() {
    let scale = std::env::var("ACCEPTANCE_SCALE").ok().and_then(|s| s.parse().ok()).unwrap_or(100);
    let only = std::env::var("ACCEPTANCE_ONLY").ok();
    let params = GenParams {
        seed: 2024,
        instance_count: scale,
        ..GenParams::default()
    };
    let mut failed = 0;
    for c in Criterion::ALL {
        if only.as_deref().is_some_and(|o| o != c.label()) {
            continue;
        }
        let r = run_criterion(c, &params);
        println!("{}", r.line());
        for f in r.failures.iter().take(3) {
            println!("    instance {}: {}", f.instance, f.detail);
            println!("    {}", f.counterexample);
        }
        failed += usize::from(!r.passed());
    }
    println!("acceptance: {failed} criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}

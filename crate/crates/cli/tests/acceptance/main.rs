//! Acceptance run: one PASS/FAIL line per criterion, each against a fixed
//! time budget.

mod coxeter;
mod garside;
mod graphs;
mod oracle;

use std::path::Path;
use std::time::Instant;

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

pub struct Tally {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn new() -> Tally {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
    pub fn outcome(self, what: &str) -> Outcome {
        Outcome {
            pass: self.failures.is_empty(),
            detail: if self.failures.is_empty() {
                format!("{} {what} checks", self.checks)
            } else {
                format!("{} of {} failed, first: {}", self.failures.len(), self.checks, self.failures[0])
            },
        }
    }
}

pub fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    (1, "mincut lattice", 60, graphs::lattice),
    (2, "admissibility", 30, graphs::admissible),
    (3, "Garside normal forms", 120, garside::normal_forms),
    (4, "Bestvina curvature", 60, garside::curvature),
    (5, "Z³ window ≅ Ã_2 window", 30, coxeter::isomorphism),
    (6, "reversed triangle rejected", 10, coxeter::negative_control),
    (7, "Coxeter gates and retractions", 120, coxeter::gates),
    (8, "minimal-cut complex shadow", 300, coxeter::shadow),
    (9, "four-cycle reproducibility", 60, coxeter::four_cycle),
];

fn main() {
    // optional filter: criterion numbers as arguments
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, budget, run) in CRITERIA {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        let secs = start.elapsed().as_secs_f64();
        let pass = out.pass && secs < budget as f64;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {n}: {} {name}: {} ({secs:.1} s / {budget} s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

//! Generate feasible constrained instances and check every closed-form
//! extreme against sampled solutions.

use ria::oracle::{generate_feasible_instance, metamorphic_suite, sample_verify, InstanceSpec};
use ria::Relation;

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    for i in 0..5 {
        let spec = InstanceSpec::new(2, 2, 2, if i % 2 == 0 { Relation::Geq } else { Relation::Leq }, seed + i);
        let p = generate_feasible_instance(&spec).unwrap();
        let v = sample_verify(&p, 300, seed + i);
        let m = metamorphic_suite(&p, seed + i);
        let attained = v.attainment.iter().filter(|a| a.attained).count();
        println!(
            "{}: {} checks, {} violations, {attained}/{} extremes attained, metamorphic {}",
            v.instance,
            v.checks_run,
            v.violations.len(),
            v.attainment.len(),
            if m.pass() { "ok" } else { "FAILED" }
        );
    }
}

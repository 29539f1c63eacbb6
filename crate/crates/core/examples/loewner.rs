//! Löwner-maximal value of A1 - B1XB1* subject to B2XB2* ⪰ A2, with a
//! sampled dominance check.

use ria::extremal::{ConstrainedProblem, Sense};
use ria::loewner::{loewner_extremal, LoewnerOutcome};
use ria::{QHerm, QMat, Relation};

fn main() {
    let p = ConstrainedProblem::new(QHerm::int_diag(&[1, -1]), QMat::ints(&[&[1], &[0]]), QHerm::int_diag(&[1]), QMat::ints(&[&[1]]), Relation::Geq)
        .unwrap();
    match loewner_extremal(&p, Sense::Max).unwrap() {
        LoewnerOutcome::Bound(b) => {
            println!("X0 = {:?}", b.x0);
            println!("max = {:?}", b.phi);
            println!("i(max) = {}, i(M) = {}, i(J) = {}", b.phi_inertia, b.m_inertia, b.j_inertia);
            b.verify_dominance(&p, 200, 1).unwrap();
            println!("dominates 200 sampled feasible X");
        }
        LoewnerOutcome::NoBound { reason } => println!("no bound: {reason}"),
    }
    // X can grow without limit, so there is no Löwner-minimal value.
    if let LoewnerOutcome::NoBound { reason } = loewner_extremal(&p, Sense::Min).unwrap() {
        println!("min: {reason}");
    }
}

//! Global extremes of rank and inertia of A1 - B1XB1*, first over all
//! Hermitian X and then subject to B2XB2* ⪰ A2.

use ria::extremal::{constrained_extremal, unconstrained_extremal, ConstrainedProblem, Objective, Sense};
use ria::{QHerm, QMat, Relation};

fn main() {
    let a1 = QHerm::int_diag(&[1, -1]);
    let b1 = QMat::ints(&[&[1], &[0]]);
    let free = unconstrained_extremal(&a1, &b1).unwrap();
    let p = ConstrainedProblem::new(a1, b1, QHerm::int_diag(&[1]), QMat::ints(&[&[1]]), Relation::Geq).unwrap();
    let constrained = constrained_extremal(&p).unwrap();
    println!("{:<8} {:<4} {:>6} {:>12}", "", "", "free", "X >= 1");
    for o in [Objective::Rank, Objective::Iplus, Objective::Iminus] {
        for s in [Sense::Max, Sense::Min] {
            println!("{:<8} {:<4} {:>6} {:>12}", o.to_string(), s.to_string(), free.value(o, s), constrained.value(o, s));
        }
    }
    println!("ingredients: {:?}", constrained.ingredients);
}

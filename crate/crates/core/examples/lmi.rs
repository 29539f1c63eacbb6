//! Feasibility and the general solution of BXB* ⪰ A (and the other
//! relations) on a small instance.

use ria::lmi::{lmi_feasible, lmi_general_solution, solution_set_extremal};
use ria::sampling::GridSampler;
use ria::{LmiProblem, QHerm, QMat, Relation};

fn main() {
    let a = QHerm::int_diag(&[1, -1]);
    let b = QMat::ints(&[&[1, 0], &[0, 0]]);
    for rel in [Relation::Geq, Relation::Gt, Relation::Leq, Relation::Lt, Relation::Eq] {
        let p = LmiProblem::new(a.clone(), b.clone(), rel).unwrap();
        println!("BXB* {rel} A feasible: {}", lmi_feasible(&p).unwrap().feasible);
    }

    let p = LmiProblem::new(a, b, Relation::Geq).unwrap();
    let sol = lmi_general_solution(&p).unwrap();
    println!("X-hat = {:?}", sol.xhat.as_mat());
    let mut g = GridSampler::new(3);
    for _ in 0..5 {
        let (u, v) = sol.sample_uv(&mut g);
        let x = sol.realize(&u, &v).unwrap();
        assert!(p.is_solution(x.as_mat()));
    }
    println!("five sampled solutions satisfy the LMI");
    let ext = solution_set_extremal(&p).unwrap();
    println!("Löwner-smallest BXB* over the solution set: {:?}", ext.extremal_bxb);
}

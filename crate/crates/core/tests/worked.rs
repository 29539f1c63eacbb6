use ria::extremal::{constrained_extremal, ConstrainedProblem, Objective, Sense};
use ria::lmi::lmi_feasible;
use ria::loewner::{loewner_extremal, LoewnerOutcome};
use ria::oracle::{generate_feasible_instance, sample_verify, verify_batch, InstanceSpec};
use ria::{LmiProblem, QHerm, QMat, Relation};

fn pair(rel: Relation) -> ConstrainedProblem {
    ConstrainedProblem::new(QHerm::int_diag(&[1, -1]), QMat::ints(&[&[1], &[0]]), QHerm::int_diag(&[1]), QMat::ints(&[&[1]]), rel)
        .unwrap()
}

#[test]
fn feasibility_of_small_lmis() {
    let b = QMat::ints(&[&[1], &[0]]);
    let infeasible = LmiProblem::new(QHerm::int_diag(&[0, 1]), b.clone(), Relation::Geq).unwrap();
    assert!(!lmi_feasible(&infeasible).unwrap().feasible);
    let strict = LmiProblem::new(QHerm::int_diag(&[1, -1]), b, Relation::Gt).unwrap();
    assert!(lmi_feasible(&strict).unwrap().feasible);
}

#[test]
fn worked_pair_under_both_relations() {
    let geq = constrained_extremal(&pair(Relation::Geq)).unwrap();
    assert_eq!(geq.values.as_array(), [2, 1, 0, 0, 2, 1]);
    assert_eq!(geq.value(Objective::Iminus, Sense::Min), 1);
    // X ≤ 1 leaves X free to go negative, so the plus index can reach 1.
    let leq = constrained_extremal(&pair(Relation::Leq)).unwrap();
    assert_eq!(leq.value(Objective::Iplus, Sense::Max), 1);
    match loewner_extremal(&pair(Relation::Leq), Sense::Min).unwrap() {
        LoewnerOutcome::Bound(b) => assert_eq!(b.x0, QMat::int_diag(&[1])),
        o => panic!("{o:?}"),
    }
}

#[test]
fn oracle_runs_are_reproducible() {
    let specs: Vec<_> = (0..4).map(|s| InstanceSpec::new(2, 2, 2, Relation::Geq, 100 + s)).collect();
    let a = serde_json::to_string(&verify_batch(&specs).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_batch(&specs).unwrap()).unwrap();
    assert_eq!(a, b);
    let p = generate_feasible_instance(&specs[0]).unwrap();
    let v = sample_verify(&p, 100, 1);
    assert!(v.pass(), "{:?}", v.violations);
    assert_eq!(serde_json::to_string(&v).unwrap(), serde_json::to_string(&sample_verify(&p, 100, 1)).unwrap());
}

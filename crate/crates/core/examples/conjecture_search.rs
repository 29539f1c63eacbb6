//! Search tuples of individually solvable LMIs for a common solution.

use ria::oracle::{conjecture35_search, pair_criterion_agreement, ConjectureDims};

fn main() {
    let dims = ConjectureDims { m: 3, n: 3 };
    let rep = conjecture35_search(dims, 3, 200, 11).unwrap();
    println!("k = 3: {} of {} tuples have a common solution, by stage {:?}", rep.common_found, rep.instances, rep.by_stage);
    let pairs = pair_criterion_agreement(dims, 100, 11).unwrap();
    let agree = pairs.iter().filter(|p| p.criterion == p.search).count();
    println!("k = 2: closed-form criterion and search agree on {agree}/{}", pairs.len());
}

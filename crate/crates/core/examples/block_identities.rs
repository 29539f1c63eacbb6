//! Inertia of a bordered block matrix computed directly and through the
//! closed-form identities, on a random instance.

use ria::block::{block_predicates, schur_complement_inertia, schur_inertia};
use ria::sampling::GridSampler;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let mut g = GridSampler::new(seed);
    let a = g.structured_herm(3);
    let b = g.structured(3, 2);
    let d = g.structured_herm(2);
    println!("seed {seed}");
    println!("i[[A, B], [B*, D]] = {:?}", schur_inertia(&a, &b, &d).unwrap());
    println!("Schur complement: {:?}", schur_complement_inertia(&a, &b, &d).unwrap());
    for p in block_predicates(&a, &b, &d).unwrap() {
        println!("{p:?}");
    }
}

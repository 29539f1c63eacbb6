//! Hermitian and positive semidefinite solutions of AXA* = B, with a few
//! members of each family checked against the equation.

use ria::equations::{solve_axa_hermitian, solve_axa_psd};
use ria::sampling::GridSampler;
use ria::{QHerm, QMat};

fn main() {
    let a = QMat::ints(&[&[1, 1], &[0, 0]]);
    let b = QHerm::int_diag(&[2, 0]);
    let mut g = GridSampler::new(1);
    for (name, fam) in [("Hermitian", solve_axa_hermitian(&a, &b)), ("PSD", solve_axa_psd(&a, &b))] {
        let fam = fam.unwrap();
        println!("{name} family: form {:?}, parameters {:?}", fam.form, fam.param_shapes());
        for _ in 0..3 {
            let x = fam.realize(&fam.sample_params(&mut g)).unwrap();
            assert!(fam.check(x.as_mat()));
        }
        println!("  three sampled members satisfy AXA* = B");
    }

    let inconsistent = QHerm::int_diag(&[0, 1]);
    println!("AXA* = diag(0, 1): {}", solve_axa_hermitian(&a, &inconsistent).unwrap_err());
}

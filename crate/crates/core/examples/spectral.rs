//! Rank and inertia on both backends, and the Löwner comparison of two
//! Hermitian matrices.

use ria::spectral::{inertia, loewner_compare, rank};
use ria::{Hermitian, QHerm, QMat, ToleranceConfig};

fn main() {
    let cfg = ToleranceConfig::default();
    let h = QHerm::ints(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, -1]]);
    println!("exact inertia of H: {}", inertia(&h, &cfg));
    println!("float inertia of H: {}", inertia(&h.lift(), &cfg));

    let m = QMat::ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
    println!("rank of M: exact {}, float {}", rank(&m, &cfg), rank(&m.lift(), &cfg));

    let small = QHerm::int_diag(&[1, 0, -2]);
    let big = Hermitian::from_construction(h.as_mat() + &QMat::identity(3).scale(&ria::Qi::int(3, 0)));
    println!("diag(1,0,-2) vs H + 3I: {:?}", loewner_compare(&small, &big, &cfg).unwrap());
}

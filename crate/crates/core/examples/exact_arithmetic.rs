//! Exact complex-rational matrices: products, adjoints, inverses and the
//! Moore-Penrose inverse, with no rounding anywhere.

use ria::spectral::{inverse_q, pinv_q};
use ria::{QMat, Qi};

fn show(name: &str, m: &QMat) {
    println!("{name} =");
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.entries()[i * m.cols() + j].to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
}

fn main() {
    let half = Qi::ratio(1, 2);
    let a = QMat::from_rows(vec![vec![Qi::int(1, 0), Qi::i()], vec![half.clone(), Qi::int(2, -1)]]);
    show("A", &a);
    show("A*", &a.adjoint());
    show("A A*", &(&a * &a.adjoint()));
    if let Some(inv) = inverse_q(&a) {
        show("A^-1", &inv);
        assert_eq!(&a * &inv, QMat::identity(2));
    }

    // Rank-one: the pseudoinverse satisfies all four Penrose equations exactly.
    let b = QMat::ints(&[&[1, 2], &[2, 4], &[0, 0]]);
    let p = pinv_q(&b);
    show("B", &b);
    show("B+", &p);
    assert_eq!(&(&b * &p) * &b, b);
    assert_eq!(&(&p * &b) * &p, p);
    println!("B B+ B = B and B+ B B+ = B+ hold exactly");
}

//! proptest strategies over small grid matrices.

use proptest::prelude::*;

use crate::matrix::{QHerm, QMat};
use crate::sampling::GridSampler;

/// Grid matrix of the given shape, drawn through [`GridSampler`] from a proptest seed.
pub fn arb_qmat(rows: usize, cols: usize) -> impl Strategy<Value = QMat> {
    any::<u64>().prop_map(move |s| GridSampler::new(s).mat(rows, cols))
}

pub fn arb_structured(rows: usize, cols: usize) -> impl Strategy<Value = QMat> {
    any::<u64>().prop_map(move |s| GridSampler::new(s).structured(rows, cols))
}

pub fn arb_herm(n: usize) -> impl Strategy<Value = QHerm> {
    any::<u64>().prop_map(move |s| GridSampler::new(s).structured_herm(n))
}

pub fn arb_nonsingular(n: usize) -> impl Strategy<Value = QMat> {
    any::<u64>().prop_map(move |s| GridSampler::new(s).nonsingular(n))
}


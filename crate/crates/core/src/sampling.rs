//! Deterministic grid sampling of exact matrices.
//!
//! Every entry has real and imaginary parts drawn from `{-g, …, g}` (default
//! `g = 2`). Seeds are expanded with ChaCha8 so the same seed always yields
//! the same stream on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Hermitian, Mat, QHerm, QMat};
use crate::scalar::{Qi, Scalar};

/// Default half-width of the entry grid.
pub const DEFAULT_GRID: i64 = 2;

/// Mix a base seed with an index (SplitMix64 finalizer) for per-item streams.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct GridSampler {
    rng: ChaCha8Rng,
    grid: i64,
    real_only: bool,
}

impl GridSampler {
    pub fn new(seed: u64) -> Self {
        GridSampler { rng: ChaCha8Rng::seed_from_u64(seed), grid: DEFAULT_GRID, real_only: false }
    }

    pub fn with_grid(mut self, grid: i64) -> Self {
        self.grid = grid.max(0);
        self
    }

    pub fn real_only(mut self, yes: bool) -> Self {
        self.real_only = yes;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn usize(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn entry(&mut self) -> Qi {
        let g = self.grid;
        let re = self.rng.gen_range(-g..=g);
        let im = if self.real_only { 0 } else { self.rng.gen_range(-g..=g) };
        Qi::int(re, im)
    }

    pub fn real_entry(&mut self) -> Qi {
        let g = self.grid;
        Qi::int(self.rng.gen_range(-g..=g), 0)
    }

    pub fn mat(&mut self, rows: usize, cols: usize) -> QMat {
        Mat::from_fn(rows, cols, |_, _| self.entry())
    }

    /// `(R + R*)` with integer grid diagonal; stays on the integer lattice.
    pub fn herm(&mut self, n: usize) -> QHerm {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.real_entry();
            for j in i + 1..n {
                let e = self.entry();
                m[(j, i)] = e.conj();
                m[(i, j)] = e;
            }
        }
        Hermitian::from_construction(m)
    }

    /// Product of grid factors, so rank is at most `rank`.
    pub fn low_rank(&mut self, rows: usize, cols: usize, rank: usize) -> QMat {
        let l = self.mat(rows, rank);
        let r = self.mat(rank, cols);
        &l * &r
    }

    /// `G₁G₁* − G₂G₂*` with `p` and `q` columns: at most `p` positive and `q` negative eigenvalues.
    pub fn herm_with_signature(&mut self, n: usize, p: usize, q: usize) -> QHerm {
        let g1 = self.mat(n, p);
        let g2 = self.mat(n, q);
        let m = &(&g1 * &g1.adjoint()) - &(&g2 * &g2.adjoint());
        Hermitian::from_construction(m)
    }

    pub fn psd(&mut self, n: usize, rank: usize) -> QHerm {
        self.herm_with_signature(n, rank, 0)
    }

    /// Unit lower times unit upper triangular: determinant one, always invertible.
    pub fn nonsingular(&mut self, n: usize) -> QMat {
        let mut l = QMat::identity(n);
        let mut u = QMat::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = self.entry();
                u[(j, i)] = self.entry();
            }
        }
        &l * &u
    }

    /// Diagonal unitary with entries in `{1, i, -1, -i}`.
    pub fn unit_diagonal(&mut self, n: usize) -> QMat {
        let d: Vec<Qi> = (0..n)
            .map(|_| match self.rng.gen_range(0..4) {
                0 => Qi::int(1, 0),
                1 => Qi::int(0, 1),
                2 => Qi::int(-1, 0),
                _ => Qi::int(0, -1),
            })
            .collect();
        QMat::diag(&d)
    }

    /// A matrix of random shape class: full grid, low rank, or zero.
    pub fn structured(&mut self, rows: usize, cols: usize) -> QMat {
        match self.rng.gen_range(0..10) {
            0 => QMat::zeros(rows, cols),
            1..=4 => {
                let k = self.rng.gen_range(0..=rows.min(cols).max(1));
                self.low_rank(rows, cols, k)
            }
            _ => self.mat(rows, cols),
        }
    }

    /// Hermitian matrix of random signature class.
    pub fn structured_herm(&mut self, n: usize) -> QHerm {
        match self.rng.gen_range(0..10) {
            0 => QHerm::zeros(n),
            1..=5 => {
                let p = self.rng.gen_range(0..=n);
                let q = self.rng.gen_range(0..=n - p);
                self.herm_with_signature(n, p, q)
            }
            _ => self.herm(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = GridSampler::new(7).mat(3, 3);
        let b = GridSampler::new(7).mat(3, 3);
        assert_eq!(a, b);
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
    }

    #[test]
    fn nonsingular_has_full_rank() {
        let mut g = GridSampler::new(3);
        for n in 0..5 {
            let p = g.nonsingular(n);
            assert_eq!(crate::spectral::rank_q(&p), n);
        }
    }
}

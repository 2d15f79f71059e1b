#![allow(dead_code)]

use qbatt_core::matcore::{CMatrix, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut StdRng, rows: usize, cols: usize) -> CMatrix {
    let data = (0..rows * cols).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    CMatrix::from_vec(rows, cols, data).unwrap()
}

/// `G·G†/Tr` with complex-Gaussian `G`.
pub fn density_matrix(rng: &mut StdRng, n: usize) -> CMatrix {
    let g = gaussian(rng, n, n);
    let r = g.matmul(&g.adjoint());
    let t = r.trace().re;
    r.scale_re(1.0 / t).hermitian_part()
}

/// Haar-ish unitary from Gram–Schmidt on a Gaussian matrix.
pub fn unitary(rng: &mut StdRng, n: usize) -> CMatrix {
    let g = gaussian(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.col(j);
        for q in &cols {
            let d: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(q) {
                *x -= d * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = CMatrix::zeros(n, n);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            u[(i, j)] = c[i];
        }
    }
    u
}

pub fn hermitian(rng: &mut StdRng, n: usize) -> CMatrix {
    gaussian(rng, n, n).hermitian_part()
}

//! Jacobi rotations: two-sided for Hermitian eigenproblems, one-sided
//! (Hestenes) for singular values and kernels.

use super::{CMatrix, EigenPair, C64, ZERO};
use crate::error::{Error, Result};

/// Relative Hermiticity tolerance `‖a−a†‖_F / ‖a‖_F` accepted by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Complex Jacobi rotation that zeroes the (p, q) entry of the 2x2 Hermitian
/// block `[[a, b], [b*, d]]`.
///
/// Returns `(c, s, e)` describing `J = [[c, s], [-s·e, c·e]]` with `e` a unit
/// phase, so that `J† G J` is diagonal.
#[inline]
fn rotation(a: f64, d: f64, b: C64) -> (f64, f64, C64) {
    let mag = b.norm();
    let e = (b / mag).conj();
    let zeta = (d - a) / (2.0 * mag);
    let t = if zeta.abs() > 1e150 { 0.5 / zeta } else { zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt()) };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t, e)
}

#[inline]
fn rotate_cols(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, e: C64) {
    for k in 0..m.rows() {
        let xp = m[(k, p)];
        let xq = m[(k, q)] * e;
        m[(k, p)] = xp * c - xq * s;
        m[(k, q)] = xp * s + xq * c;
    }
}

#[inline]
fn rotate_rows(m: &mut CMatrix, p: usize, q: usize, c: f64, s: f64, e: C64) {
    let ec = e.conj();
    for k in 0..m.cols() {
        let xp = m[(p, k)];
        let xq = m[(q, k)] * ec;
        m[(p, k)] = xp * c - xq * s;
        m[(q, k)] = xp * s + xq * c;
    }
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Eigenvalues come back ascending (stored with zero imaginary part) and the
/// eigenvectors are orthonormal.
pub fn eig_hermitian(a: &CMatrix) -> Result<Vec<EigenPair>> {
    let n = a.ensure_square()?;
    let norm = a.norm_fro();
    let deviation = if norm > 0.0 { a.hermiticity_defect() / norm } else { 0.0 };
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }

    let mut m = a.hermitian_part();
    let mut v = CMatrix::identity(n);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * norm || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = m[(p, q)];
                if b.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let (c, s, e) = rotation(m[(p, p)].re, m[(q, q)].re, b);
                rotate_cols(&mut m, p, q, c, s, e);
                rotate_rows(&mut m, p, q, c, s, e);
                rotate_cols(&mut v, p, q, c, s, e);
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
            }
        }
    }
    if !converged {
        return Err(Error::NonConvergence { iterations: MAX_SWEEPS });
    }

    let mut pairs: Vec<EigenPair> = (0..n).map(|i| EigenPair { value: C64::new(m[(i, i)].re, 0.0), vector: v.col(i) }).collect();
    pairs.sort_by(|x, y| x.value.re.total_cmp(&y.value.re));
    Ok(pairs)
}

/// One-sided Jacobi: returns `(singular values, right singular vectors)`,
/// unsorted, with `a·v_j` having norm `σ_j`.
fn hestenes(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.cols();
    let mut w = a.clone();
    let mut v = CMatrix::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for k in 0..w.rows() {
                    let wp = w[(k, p)];
                    let wq = w[(k, q)];
                    alpha += wp.norm_sqr();
                    beta += wq.norm_sqr();
                    gamma += wp.conj() * wq;
                }
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let (c, s, e) = rotation(alpha, beta, gamma);
                rotate_cols(&mut w, p, q, c, s, e);
                rotate_cols(&mut v, p, q, c, s, e);
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma = (0..n).map(|j| (0..w.rows()).map(|k| w[(k, j)].norm_sqr()).sum::<f64>().sqrt()).collect();
    (sigma, v)
}

/// Singular values in descending order.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let (mut s, _) = hestenes(a);
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Orthonormal basis of `{v : ‖a·v‖ ≤ tol·‖a‖_F}`.
///
/// Vectors are returned in order of increasing residual, so the first one is
/// the best kernel candidate.
pub fn null_space(a: &CMatrix, tol: f64) -> Result<Vec<Vec<C64>>> {
    a.ensure_square()?;
    let norm = a.norm_fro();
    let (sigma, v) = hestenes(a);
    let mut idx: Vec<usize> = (0..sigma.len()).filter(|&j| sigma[j] <= tol * norm).collect();
    idx.sort_by(|&x, &y| sigma[x].total_cmp(&sigma[y]).then(x.cmp(&y)));
    Ok(idx.into_iter().map(|j| v.col(j)).collect())
}

//! General (non-Hermitian) complex eigensolver: Householder reduction to
//! Hessenberg form, shifted QR iteration to a Schur form, and back-substitution
//! for the eigenvectors of the triangular factor.

use super::{vec_norm, CMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Eigenvector matrices with Frobenius condition number above this are treated
/// as defective (not numerically diagonalizable).
pub const DEFECT_CONDITION_LIMIT: f64 = 1e6;

/// Largest dimension accepted by [`eig_general`].
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: C64,
    /// Unit 2-norm.
    pub vector: Vec<C64>,
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Right eigenpairs in Schur order, repeated by algebraic multiplicity.
    pub pairs: Vec<EigenPair>,
    /// True when the eigenvector matrix is singular or its condition number
    /// exceeds [`DEFECT_CONDITION_LIMIT`].
    pub defective: bool,
    /// `‖V‖_F·‖V⁻¹‖_F` for the eigenvector matrix `V` (infinite if singular).
    pub condition: f64,
}

impl EigenDecomposition {
    pub fn values(&self) -> Vec<C64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// Eigenvectors as the columns of a matrix.
    pub fn vectors(&self) -> CMatrix {
        let n = self.pairs.len();
        let mut v = CMatrix::zeros(n, n);
        for (j, p) in self.pairs.iter().enumerate() {
            for (i, &z) in p.vector.iter().enumerate() {
                v[(i, j)] = z;
            }
        }
        v
    }
}

/// Reduces `a` in place to upper Hessenberg form, returning the accumulated
/// unitary `q` with `a_in = q·h·q†`.
fn hessenberg(h: &mut CMatrix) -> CMatrix {
    let n = h.rows();
    let mut q = CMatrix::identity(n);
    if n < 3 {
        return q;
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // h <- (I - 2vv†) h on rows k+1..n
        for j in 0..n {
            let s: C64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= 2.0 * v[i] * s;
            }
        }
        // h <- h (I - 2vv†) and q <- q (I - 2vv†) on columns k+1..n
        for m in [&mut *h, &mut q] {
            for i in 0..n {
                let s: C64 = (0..v.len()).map(|j| m[(i, k + 1 + j)] * v[j]).sum();
                for j in 0..v.len() {
                    m[(i, k + 1 + j)] -= 2.0 * s * v[j].conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    q
}

/// Givens rotation `[[c*, s*], [-s, c]]` mapping `(x, y)` to `(r, 0)`.
#[inline]
fn givens(x: C64, y: C64) -> (C64, C64) {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if r == 0.0 {
        (ONE, ZERO)
    } else {
        (x / r, y / r)
    }
}

/// Eigenvalue of the 2x2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Shifted QR iteration on a Hessenberg matrix; on success `h` is upper
/// triangular and `z` holds the accumulated Schur vectors.
fn schur(h: &mut CMatrix, z: &mut CMatrix) -> Result<()> {
    let n = h.rows();
    if n < 2 {
        return Ok(());
    }
    let cap = 100 * n * n;
    let hnorm = h.norm_fro().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut total = 0usize;
    let mut its = 0usize;
    let mut hi = n - 1;
    let mut rots: Vec<(C64, C64)> = Vec::with_capacity(n);

    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            its = 0;
            continue;
        }

        total += 1;
        its += 1;
        if total > cap {
            return Err(Error::NonConvergence { iterations: cap });
        }

        let mu = if its % 10 == 0 {
            // exceptional shift to break cycles
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for k in l..=hi {
            h[(k, k)] -= mu;
        }
        rots.clear();
        for k in l..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c.conj() * x + s.conj() * y;
                h[(k + 1, j)] = -s * x + c * y;
            }
            h[(k + 1, k)] = ZERO;
            rots.push((c, s));
        }
        for (off, &(c, s)) in rots.iter().enumerate() {
            let k = l + off;
            for i in 0..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = c * x + s * y;
                h[(i, k + 1)] = -s.conj() * x + c.conj() * y;
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = c * x + s * y;
                z[(i, k + 1)] = -s.conj() * x + c.conj() * y;
            }
        }
        for k in l..=hi {
            h[(k, k)] += mu;
        }
    }
    Ok(())
}

/// Right eigenvectors of an upper-triangular `t`, as columns.
fn triangular_eigenvectors(t: &CMatrix) -> CMatrix {
    let n = t.rows();
    let small = (f64::EPSILON * t.norm_fro()).max(f64::MIN_POSITIVE);
    let mut y = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut x = vec![ZERO; k + 1];
        x[k] = ONE;
        for i in (0..k).rev() {
            let s: C64 = (i + 1..=k).map(|j| t[(i, j)] * x[j]).sum();
            let mut d = t[(i, i)] - lambda;
            if d.norm() < small {
                d = C64::new(small, 0.0);
            }
            x[i] = -s / d;
            let big = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if big > 1e100 {
                for z in &mut x {
                    *z /= big;
                }
            }
        }
        for (i, &z) in x.iter().enumerate() {
            y[(i, k)] = z;
        }
    }
    y
}

/// Full right eigen-decomposition of a square complex matrix (dimension ≤ 64).
pub fn eig_general(a: &CMatrix) -> Result<EigenDecomposition> {
    let n = a.ensure_square()?;
    if n > MAX_DIM {
        return Err(Error::Shape(format!("eig_general supports dimension ≤ {MAX_DIM}, got {n}")));
    }
    if !a.is_finite() {
        return Err(Error::Domain("matrix has non-finite entries".into()));
    }
    if n == 0 {
        return Ok(EigenDecomposition { pairs: Vec::new(), defective: false, condition: 0.0 });
    }
    let mut h = a.clone();
    let mut z = hessenberg(&mut h);
    schur(&mut h, &mut z)?;
    let y = triangular_eigenvectors(&h);
    let v = z.matmul(&y);

    let mut pairs = Vec::with_capacity(n);
    for k in 0..n {
        let mut vec = v.col(k);
        let norm = vec_norm(&vec);
        for c in &mut vec {
            *c /= norm;
        }
        pairs.push(EigenPair { value: h[(k, k)], vector: vec });
    }

    let mut decomp = EigenDecomposition { pairs, defective: false, condition: f64::INFINITY };
    let vm = decomp.vectors();
    match vm.inverse() {
        Some(inv) => {
            decomp.condition = vm.norm_fro() * inv.norm_fro();
            decomp.defective = !(decomp.condition <= DEFECT_CONDITION_LIMIT);
        }
        None => decomp.defective = true,
    }
    Ok(decomp)
}

/// `‖a·v − λ·v‖₂` for one eigenpair.
pub fn eigen_residual(a: &CMatrix, pair: &EigenPair) -> f64 {
    let av = a.mul_vec(&pair.vector);
    let diff: Vec<C64> = av.iter().zip(&pair.vector).map(|(x, y)| x - pair.value * y).collect();
    vec_norm(&diff)
}

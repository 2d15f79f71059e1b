//! Matrix exponential `exp(l·t)` for Liouvillian propagation.

use super::{eig_general, CMatrix, C64};
use crate::error::{Error, Result};

/// How a propagator was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagatorRoute {
    /// `V·exp(Λt)·V⁻¹` from a well-conditioned eigen-decomposition.
    Spectral,
    /// Scaling and squaring around a truncated Taylor series.
    ScalingSquaring,
}

const TAYLOR_NORM: f64 = 0.5;
const TAYLOR_MAX_TERMS: usize = 30;

/// `exp(l·t)`: spectral when `l` is numerically diagonalizable, otherwise
/// scaling and squaring.
pub fn propagator(l: &CMatrix, t: f64) -> Result<CMatrix> {
    propagator_with_route(l, t).map(|(p, _)| p)
}

pub fn propagator_with_route(l: &CMatrix, t: f64) -> Result<(CMatrix, PropagatorRoute)> {
    let n = l.ensure_square()?;
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("propagation time must be finite and ≥ 0, got {t}")));
    }
    if t == 0.0 {
        return Ok((CMatrix::identity(n), PropagatorRoute::Spectral));
    }
    let decomp = eig_general(l)?;
    if !decomp.defective {
        let v = decomp.vectors();
        if let Some(vinv) = v.inverse() {
            let mut scaled = v.clone();
            for (j, p) in decomp.pairs.iter().enumerate() {
                let e = (p.value * t).exp();
                for i in 0..n {
                    scaled[(i, j)] *= e;
                }
            }
            let out = scaled.matmul(&vinv);
            if out.is_finite() {
                return Ok((out, PropagatorRoute::Spectral));
            }
        }
    }
    scaling_squaring(l, t).map(|p| (p, PropagatorRoute::ScalingSquaring))
}

/// Taylor-based scaling and squaring, usable on any (including defective) input.
pub fn scaling_squaring(l: &CMatrix, t: f64) -> Result<CMatrix> {
    let n = l.ensure_square()?;
    let a = l.scale_re(t);
    let norm = a.norm_inf();
    let squarings = if norm > TAYLOR_NORM { (norm / TAYLOR_NORM).log2().ceil() as i32 } else { 0 };
    if squarings > 1000 {
        return Err(Error::NonConvergence { iterations: squarings as usize });
    }
    let b = a.scale_re(0.5f64.powi(squarings));

    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    let mut converged = false;
    for k in 1..=TAYLOR_MAX_TERMS {
        term = term.matmul(&b).scale(C64::new(1.0 / k as f64, 0.0));
        sum = &sum + &term;
        if term.norm_inf() <= f64::EPSILON * sum.norm_inf() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence { iterations: TAYLOR_MAX_TERMS });
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    if !sum.is_finite() {
        return Err(Error::NonConvergence { iterations: squarings as usize });
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_time_is_identity() {
        let l = CMatrix::from_real_rows(&[[-1.0, 2.0], [0.5, -3.0]]);
        assert_eq!(propagator(&l, 0.0).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn diagonal_decay() {
        let l = CMatrix::from_real_diag(&[-1.0, -2.0]);
        let p = propagator(&l, 1.0).unwrap();
        assert!((p[(0, 0)].re - (-1.0f64).exp()).abs() < 1e-14);
        assert!((p[(1, 1)].re - (-2.0f64).exp()).abs() < 1e-14);
        assert!(p[(0, 1)].norm() < 1e-15 && p[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn jordan_block_uses_fallback() {
        let l = CMatrix::from_real_rows(&[[-1.0, 1.0], [0.0, -1.0]]);
        let (p, route) = propagator_with_route(&l, 2.0).unwrap();
        assert_eq!(route, PropagatorRoute::ScalingSquaring);
        let e = (-2.0f64).exp();
        // exp of a Jordan block: e^{-t}[[1, t], [0, 1]]
        assert!((p[(0, 0)].re - e).abs() < 1e-13);
        assert!((p[(0, 1)].re - 2.0 * e).abs() < 1e-13);
        assert!((p[(1, 1)].re - e).abs() < 1e-13);
    }

    #[test]
    fn routes_agree_on_rotation_generator() {
        let l = CMatrix::from_real_rows(&[[-0.1, -1.0], [1.0, -0.2]]);
        let spectral = propagator(&l, 3.0).unwrap();
        let taylor = scaling_squaring(&l, 3.0).unwrap();
        assert!((&spectral - &taylor).norm_fro() < 1e-12);
    }

    #[test]
    fn negative_time_rejected() {
        assert!(propagator(&CMatrix::identity(2), -1.0).is_err());
    }
}

//! Spectral analysis of Liouvillians and long-time evolution.

use crate::error::{Error, Result};
use crate::liouville::{devectorize, vectorize, Superoperator};
use crate::matcore::{eig_general, null_space, propagator, CMatrix, C64};

/// Default threshold below which the gap counts as closed, in units of λ.
pub const DEFAULT_GAP_TOL: f64 = 1e-8;

/// Relative singular-value threshold for counting kernel dimensions.
pub const KERNEL_TOL: f64 = 1e-10;

/// Charging time used for long-time states, in units of 1/λ.
pub const DEFAULT_TAU: f64 = 20000.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    /// Sorted by descending real part; ties broken by descending imaginary part.
    pub eigenvalues: Vec<C64>,
    /// `|Re λ₁|`.
    pub gap: f64,
    pub kernel_dim: usize,
    /// Unit-trace kernel state, only when the kernel is one-dimensional.
    pub steady_state: Option<CMatrix>,
    pub bistable: bool,
    pub diagonalizable: bool,
}

fn sort_spectrum(values: &mut [C64]) {
    values.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
}

/// Full spectrum, gap, kernel dimension and (if unique) the steady state.
pub fn analyze(l: &Superoperator, gap_tol: f64) -> Result<SpectralReport> {
    if !(gap_tol >= 0.0) {
        return Err(Error::InvalidParameter(format!("gap tolerance must be ≥ 0, got {gap_tol}")));
    }
    let decomp = eig_general(&l.matrix)?;
    let mut eigenvalues = decomp.values();
    sort_spectrum(&mut eigenvalues);
    let gap = eigenvalues.get(1).map_or(0.0, |z| z.re.abs());

    let kernel = null_space(&l.matrix, KERNEL_TOL)?;
    let kernel_dim = kernel.len();
    let steady_state = if kernel_dim == 1 { Some(unit_trace(&kernel[0])?) } else { None };

    Ok(SpectralReport {
        eigenvalues,
        gap,
        kernel_dim,
        steady_state,
        bistable: kernel_dim >= 2 || gap < gap_tol,
        diagonalizable: !decomp.defective,
    })
}

fn unit_trace(v: &[C64]) -> Result<CMatrix> {
    let rho = devectorize(v)?;
    let t = rho.trace();
    if t.norm() <= f64::EPSILON {
        return Err(Error::Domain("kernel vector is traceless".into()));
    }
    Ok(rho.scale(C64::new(1.0, 0.0) / t).hermitian_part())
}

/// An orthonormal basis of the kernel, as matrices.
pub fn kernel_basis(l: &Superoperator) -> Result<Vec<CMatrix>> {
    null_space(&l.matrix, KERNEL_TOL)?.iter().map(|v| devectorize(v)).collect()
}

/// `exp(L·τ)·vec(ρ₀)`, with `ρ₀` in the generator's basis.
pub fn evolve_to(l: &Superoperator, rho0: &CMatrix, tau: f64) -> Result<CMatrix> {
    let v = vectorize(rho0)?;
    if tau == 0.0 {
        return Ok(rho0.clone());
    }
    let u = propagator(&l.matrix, tau)?;
    devectorize(&u.mul_vec(&v))
}

/// Fixed-step fourth-order Runge–Kutta, with the step shrunk so that an
/// integer number of steps lands exactly on `tau`.
pub fn rk4_evolve(l: &Superoperator, rho0: &CMatrix, tau: f64, dt: f64) -> Result<CMatrix> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParameter(format!("evolution time must be finite and ≥ 0, got {tau}")));
    }
    let norm = l.matrix.norm_fro();
    let bound = if norm > 0.0 { 0.1 / norm } else { f64::INFINITY };
    if !(dt > 0.0) || dt > bound {
        return Err(Error::StepTooLarge { dt, bound });
    }
    let mut v = vectorize(rho0)?;
    if tau == 0.0 {
        return Ok(rho0.clone());
    }
    let steps = (tau / dt).ceil() as usize;
    let h = tau / steps as f64;
    let m = &l.matrix;
    let axpy = |x: &[C64], k: &[C64], s: f64| -> Vec<C64> { x.iter().zip(k).map(|(a, b)| a + b * s).collect() };
    for _ in 0..steps {
        let k1 = m.mul_vec(&v);
        let k2 = m.mul_vec(&axpy(&v, &k1, 0.5 * h));
        let k3 = m.mul_vec(&axpy(&v, &k2, 0.5 * h));
        let k4 = m.mul_vec(&axpy(&v, &k3, h));
        for i in 0..v.len() {
            v[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    devectorize(&v)
}

/// Bare-basis state at time `tau` from a bare-basis initial state.
pub fn long_time_state(l: &Superoperator, rho0_bare: &CMatrix, tau: f64) -> Result<CMatrix> {
    let inner = evolve_to(l, &l.state_in(rho0_bare), tau)?;
    Ok(l.state_out(&inner, tau))
}

/// Smallest eigenvalue of the Hermitian part of a state.
pub fn min_eigenvalue(rho: &CMatrix) -> Result<f64> {
    let pairs = crate::matcore::eig_hermitian(&rho.hermitian_part())?;
    Ok(pairs.first().map_or(0.0, |p| p.value.re))
}

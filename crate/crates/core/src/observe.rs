//! Battery figures of merit computed from a bare-basis two-qubit state.

use crate::error::{Error, Result};
use crate::matcore::{eig_hermitian, kron, CMatrix, C64};
use crate::model::{pauli, BASIS_LABELS};

/// Below this stored energy the efficiency is reported as zero.
pub const ENERGY_FLOOR: f64 = 1e-12;

fn ensure_two_qubit(rho: &CMatrix) -> Result<()> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::Shape(format!("expected 4×4 state, got {}×{}", rho.rows(), rho.cols())));
    }
    Ok(())
}

/// Partial trace over the charger, in the battery basis `{|e⟩, |g⟩}`.
pub fn reduce_battery(rho: &CMatrix) -> Result<CMatrix> {
    ensure_two_qubit(rho)?;
    Ok(CMatrix::from_rows(&[
        [rho[(0, 0)] + rho[(2, 2)], rho[(0, 1)] + rho[(2, 3)]],
        [rho[(1, 0)] + rho[(3, 2)], rho[(1, 1)] + rho[(3, 3)]],
    ]))
}

/// Energy of the passive state of `rho` under `h`: largest populations paired
/// with the lowest energies.
pub fn passive_energy(rho: &CMatrix, h: &CMatrix) -> Result<f64> {
    if rho.rows() != h.rows() || rho.cols() != h.cols() {
        return Err(Error::Shape("state and Hamiltonian dimensions differ".into()));
    }
    let r = eig_hermitian(rho)?;
    let e = eig_hermitian(h)?;
    // both ascending; pair r descending with e ascending
    Ok(r.iter().rev().zip(&e).map(|(rp, ep)| rp.value.re * ep.value.re).sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryMetrics {
    /// Mean stored energy `E_B`.
    pub energy: f64,
    pub ergotropy: f64,
    /// `ergotropy / energy`.
    pub efficiency: f64,
    /// Battery inversion `⟨σz⟩`.
    pub n_pop: f64,
    /// Battery coherence `⟨e|ρ_B|g⟩`.
    pub coh: C64,
}

/// Energy, ergotropy and efficiency of the battery with level splitting `omega`.
pub fn battery_metrics(rho: &CMatrix, omega: f64) -> Result<BatteryMetrics> {
    ensure_two_qubit(rho)?;
    if !(omega > 0.0) {
        return Err(Error::InvalidParameter(format!("battery frequency must be > 0, got {omega}")));
    }
    let n_pop = (rho[(0, 0)] + rho[(2, 2)] - rho[(1, 1)] - rho[(3, 3)]).re;
    let coh = rho[(0, 1)] + rho[(2, 3)];
    let energy = 0.5 * omega * (n_pop + 1.0);
    let radius = (n_pop * n_pop + 4.0 * coh.norm_sqr()).sqrt();
    let ergotropy = (0.5 * omega * (radius + n_pop)).max(0.0);
    let efficiency = if energy <= ENERGY_FLOOR { 0.0 } else { ergotropy / energy };
    Ok(BatteryMetrics { energy, ergotropy, efficiency, n_pop, coh })
}

/// `ω|e⟩⟨e|` for the battery.
pub fn battery_hamiltonian(omega: f64) -> CMatrix {
    CMatrix::from_real_diag(&[omega, 0.0])
}

/// Wootters concurrence.
pub fn concurrence(rho: &CMatrix) -> Result<f64> {
    ensure_two_qubit(rho)?;
    let yy = kron(&pauli::y(), &pauli::y());
    let flipped = yy.matmul(&rho.conj()).matmul(&yy);
    let sqrt_rho = hermitian_sqrt(rho)?;
    // √ρ·ρ̃·√ρ shares its spectrum with ρ·ρ̃ and is Hermitian
    let r = sqrt_rho.matmul(&flipped).matmul(&sqrt_rho).hermitian_part();
    let l: Vec<f64> = eig_hermitian(&r)?.iter().map(|p| p.value.re).collect();
    // eigenvalues at rounding level would otherwise contribute ~1e-8 after the square root
    let floor = 8.0 * f64::EPSILON * l.iter().fold(0.0f64, |a, &b| a.max(b));
    let mut s: Vec<f64> = l.iter().map(|&x| if x <= floor { 0.0 } else { x.sqrt() }).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

fn hermitian_sqrt(rho: &CMatrix) -> Result<CMatrix> {
    let n = rho.rows();
    let pairs = eig_hermitian(&rho.hermitian_part())?;
    let mut out = CMatrix::zeros(n, n);
    for p in &pairs {
        let w = p.value.re.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        out.add_scaled(C64::new(w, 0.0), &CMatrix::outer(&p.vector, &p.vector));
    }
    Ok(out)
}

/// Entrywise magnitudes `|ρ_ij|` of a bare-basis state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tomogram {
    pub magnitudes: [[f64; 4]; 4],
}

impl Tomogram {
    /// Column labels `t_ee_ee`, `t_ee_eg`, … in row-major order.
    pub fn labels() -> Vec<String> {
        let mut out = Vec::with_capacity(16);
        for a in BASIS_LABELS {
            for b in BASIS_LABELS {
                out.push(format!("t_{a}_{b}"));
            }
        }
        out
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.magnitudes.iter().flatten().copied()
    }

    pub fn diagonal_sum(&self) -> f64 {
        (0..4).map(|i| self.magnitudes[i][i]).sum()
    }
}

pub fn tomogram(rho: &CMatrix) -> Result<Tomogram> {
    ensure_two_qubit(rho)?;
    let mut magnitudes = [[0.0; 4]; 4];
    for (i, row) in magnitudes.iter_mut().enumerate() {
        for (j, m) in row.iter_mut().enumerate() {
            *m = rho[(i, j)].norm();
        }
    }
    Ok(Tomogram { magnitudes })
}

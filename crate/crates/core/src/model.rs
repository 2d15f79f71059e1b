//! Driven charger–battery Hamiltonian in the frame rotating at the drive
//! frequency, its diagonalization, and the maps between the bare product basis
//! and the dressed eigenbasis.
//!
//! The product basis is ordered `|ee⟩, |eg⟩, |ge⟩, |gg⟩` everywhere in this
//! crate, with the charger as the first factor.

use crate::error::{Error, Result};
use crate::matcore::{eig_hermitian, kron, vec_norm, CMatrix, C64, I, ONE, ZERO};

pub const BASIS_LABELS: [&str; 4] = ["ee", "eg", "ge", "gg"];

/// Energies closer than this are treated as degenerate by [`diagonalize_general`].
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Single-qubit operators in the `{|e⟩, |g⟩}` basis.
pub mod pauli {
    use crate::matcore::{CMatrix, C64};

    /// `σ₊ = |e⟩⟨g|`.
    pub fn plus() -> CMatrix {
        CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]])
    }

    /// `σ₋ = |g⟩⟨e|`.
    pub fn minus() -> CMatrix {
        CMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]])
    }

    pub fn x() -> CMatrix {
        CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn y() -> CMatrix {
        CMatrix::from_rows(&[[C64::new(0.0, 0.0), C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]])
    }

    pub fn z() -> CMatrix {
        CMatrix::from_real_diag(&[1.0, -1.0])
    }
}

/// Which qubit a local operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Site {
    Charger,
    Battery,
}

impl Site {
    pub const BOTH: [Site; 2] = [Site::Charger, Site::Battery];

    pub fn index(self) -> usize {
        match self {
            Site::Charger => 0,
            Site::Battery => 1,
        }
    }
}

/// Embeds a single-qubit operator into the two-qubit space.
pub fn local(op: &CMatrix, site: Site) -> CMatrix {
    match site {
        Site::Charger => kron(op, &CMatrix::identity(2)),
        Site::Battery => kron(&CMatrix::identity(2), op),
    }
}

/// System parameters, all frequencies in units of the exchange coupling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Charger detuning from the drive.
    pub delta1: f64,
    /// Battery detuning from the drive.
    pub delta2: f64,
    /// Charger–battery exchange coupling λ.
    pub coupling: f64,
    /// Drive amplitude F.
    pub drive: f64,
    /// Drive frequency; only used where bath functions need lab-frame frequencies.
    pub omega_d: f64,
    /// Battery level splitting entering the stored energy.
    pub omega_battery: f64,
}

impl ModelParams {
    pub const DEFAULT_OMEGA_D: f64 = 5.0;

    pub fn new(delta1: f64, delta2: f64, coupling: f64, drive: f64) -> Result<Self> {
        let p = Self { delta1, delta2, coupling, drive, omega_d: Self::DEFAULT_OMEGA_D, omega_battery: 1.0 };
        p.validate()?;
        Ok(p)
    }

    /// Parameters from the detuning difference Δ = Δ1 − Δ2 and mean Δ̄.
    pub fn from_detuning(delta: f64, delta_bar: f64, coupling: f64, drive: f64) -> Result<Self> {
        Self::new(delta_bar + 0.5 * delta, delta_bar - 0.5 * delta, coupling, drive)
    }

    pub fn resonant(coupling: f64, drive: f64) -> Result<Self> {
        Self::new(0.0, 0.0, coupling, drive)
    }

    pub fn with_omega_d(mut self, omega_d: f64) -> Self {
        self.omega_d = omega_d;
        self
    }

    pub fn with_omega_battery(mut self, omega: f64) -> Self {
        self.omega_battery = omega;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.delta1, self.delta2, self.coupling, self.drive, self.omega_d, self.omega_battery].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("model parameters must be finite".into()));
        }
        if !(self.coupling > 0.0) {
            return Err(Error::InvalidParameter(format!("coupling must be > 0, got {}", self.coupling)));
        }
        if !(self.drive >= 0.0) {
            return Err(Error::InvalidParameter(format!("drive must be ≥ 0, got {}", self.drive)));
        }
        if !(self.omega_battery > 0.0) {
            return Err(Error::InvalidParameter(format!("battery frequency must be > 0, got {}", self.omega_battery)));
        }
        Ok(())
    }

    /// Δ = Δ1 − Δ2.
    pub fn detuning_diff(&self) -> f64 {
        self.delta1 - self.delta2
    }

    /// Δ̄ = (Δ1 + Δ2)/2.
    pub fn detuning_mean(&self) -> f64 {
        0.5 * (self.delta1 + self.delta2)
    }

    pub fn is_resonant(&self) -> bool {
        self.delta1 == 0.0 && self.delta2 == 0.0
    }

    /// Bare transition frequency `Δ_i + ω_d` of one qubit.
    pub fn lab_frequency(&self, site: Site) -> f64 {
        match site {
            Site::Charger => self.delta1 + self.omega_d,
            Site::Battery => self.delta2 + self.omega_d,
        }
    }
}

/// `(Δ1/2)σz⊗I + (Δ2/2)I⊗σz + λ(σ₊⊗σ₋ + σ₋⊗σ₊) + (F/2)(σ₊ + σ₋)⊗I`.
pub fn hamiltonian(p: &ModelParams) -> CMatrix {
    let z = pauli::z();
    let mut h = local(&z, Site::Charger).scale_re(0.5 * p.delta1);
    h.add_scaled(C64::new(0.5 * p.delta2, 0.0), &local(&z, Site::Battery));
    let exchange = &kron(&pauli::plus(), &pauli::minus()) + &kron(&pauli::minus(), &pauli::plus());
    h.add_scaled(C64::new(p.coupling, 0.0), &exchange);
    h.add_scaled(C64::new(0.5 * p.drive, 0.0), &local(&pauli::x(), Site::Charger));
    h
}

/// Closed-form quantities of the resonant spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonantConstants {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub g_plus: f64,
    pub g_minus: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    /// `M = √(F² + λ²)`, the 1↔3 and 2↔4 level spacing.
    pub m: f64,
}

impl ResonantConstants {
    pub fn new(coupling: f64, drive: f64) -> Self {
        let (l, f) = (coupling, drive);
        let m = f.hypot(l);
        // G−² = F² + λ² − λM = M·F²/(M + λ); the product form avoids cancellation at small F.
        let g_plus = (m * (m + l)).sqrt();
        let g_minus = f * (m / (m + l)).sqrt();
        let omega_plus = 0.5 * (m + l);
        let omega_minus = 0.5 * f * f / (m + l);
        let k_plus = (f * f + 2.0 * l * omega_plus).sqrt();
        let k_minus = (f * f - 2.0 * l * omega_minus).max(0.0).sqrt();
        Self { omega_plus, omega_minus, g_plus, g_minus, k_plus, k_minus, m }
    }
}

/// Dressed eigenbasis: energies in descending order and the matrix `u` whose
/// row `i` holds `⟨E_i|b⟩` over the bare basis states `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub energies: [f64; 4],
    pub u: CMatrix,
}

impl EigenSystem {
    /// `u·op·u†`: a bare-basis operator written in the eigenbasis.
    pub fn to_eigen_operator(&self, op: &CMatrix) -> CMatrix {
        self.u.matmul(op).matmul(&self.u.adjoint())
    }

    /// `u†·op·u`: an eigenbasis operator written in the bare basis.
    pub fn to_bare_operator(&self, op: &CMatrix) -> CMatrix {
        self.u.adjoint().matmul(op).matmul(&self.u)
    }

    /// `|E_i⟩` expanded over the bare basis.
    pub fn eigenstate(&self, i: usize) -> [C64; 4] {
        let row = self.u.row(i);
        [row[0].conj(), row[1].conj(), row[2].conj(), row[3].conj()]
    }

    /// Level spacing `E_m − E_n`.
    pub fn spacing(&self, m: usize, n: usize) -> f64 {
        self.energies[m] - self.energies[n]
    }

    pub fn unitarity_defect(&self) -> f64 {
        (&self.u.matmul(&self.u.adjoint()) - &CMatrix::identity(4)).norm_fro()
    }
}

/// Closed-form eigensystem for Δ1 = Δ2 = 0.
pub fn diagonalize_resonant(p: &ModelParams) -> Result<EigenSystem> {
    if !p.is_resonant() {
        return Err(Error::ResonanceRequired { delta1: p.delta1, delta2: p.delta2 });
    }
    let c = ResonantConstants::new(p.coupling, p.drive);
    let f = p.drive;
    let (wp, wm) = (c.omega_plus, c.omega_minus);
    // F/(2G±) and ω±/G± in their cancellation-free forms
    let a_plus = 0.5 * f / c.g_plus;
    let b_plus = wp / c.g_plus;
    let a_minus = 0.5 * ((c.m + p.coupling) / c.m).sqrt();
    let b_minus = 0.5 * f / (c.m * (c.m + p.coupling)).sqrt();
    let u = CMatrix::from_real_rows(&[
        [a_plus, b_plus, b_plus, a_plus],
        [-a_minus, b_minus, -b_minus, a_minus],
        [a_minus, -b_minus, -b_minus, a_minus],
        [-a_plus, -b_plus, b_plus, a_plus],
    ]);
    Ok(EigenSystem { energies: [wp, wm, -wm, -wp], u })
}

/// Index of the largest-magnitude entry; near-ties (within 1e-9 relative) go
/// to the lowest index so the choice is stable under rounding.
fn anchor_index(v: &[C64]) -> usize {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    v.iter().position(|z| z.norm() >= max * (1.0 - 1e-9)).unwrap_or(0)
}

/// Numerical eigensystem for arbitrary detunings, energies descending.
///
/// Each eigenvector's phase is fixed so that its largest component is real
/// and positive.
pub fn diagonalize_general(p: &ModelParams) -> Result<EigenSystem> {
    let h = hamiltonian(p);
    let mut pairs = eig_hermitian(&h)?;
    pairs.reverse();
    for w in pairs.windows(2) {
        if (w[0].value.re - w[1].value.re).abs() <= DEGENERACY_TOL {
            return Err(Error::DegenerateSpectrum { tolerance: DEGENERACY_TOL });
        }
    }
    let mut u = CMatrix::zeros(4, 4);
    let mut energies = [0.0; 4];
    for (i, pair) in pairs.iter().enumerate() {
        energies[i] = pair.value.re;
        let k = anchor_index(&pair.vector);
        let anchor = pair.vector[k];
        let phase = anchor.conj() / anchor.norm();
        for (b, &z) in pair.vector.iter().enumerate() {
            let mut fixed = z * phase;
            if b == k {
                fixed = C64::new(fixed.norm(), 0.0);
            }
            u[(i, b)] = fixed.conj();
        }
    }
    Ok(EigenSystem { energies, u })
}

/// Initial pure state of the charger–battery pair.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    /// `|eg⟩`: charger excited, battery empty.
    ProductEg,
    /// `|ge⟩`.
    ProductGe,
    /// `cos θ|eg⟩ + sin θ·e^{iφ}|ge⟩`.
    Bloch { theta: f64, phi: f64 },
    /// Amplitudes over `|ee⟩, |eg⟩, |ge⟩, |gg⟩`.
    Explicit([C64; 4]),
}

impl StateSpec {
    pub const NORM_TOL: f64 = 1e-12;

    /// `(|eg⟩ + e^{iφ}|ge⟩)/√2`.
    pub fn entangled(phi: f64) -> Self {
        StateSpec::Bloch { theta: std::f64::consts::FRAC_PI_4, phi }
    }

    /// Explicit state rescaled to unit norm.
    pub fn normalized(amps: [C64; 4]) -> Result<Self> {
        let n = vec_norm(&amps);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter("state amplitudes must be finite and nonzero".into()));
        }
        Ok(StateSpec::Explicit(amps.map(|z| z / n)))
    }

    pub fn amplitudes(&self) -> Result<[C64; 4]> {
        let amps = match *self {
            StateSpec::ProductEg => [ZERO, ONE, ZERO, ZERO],
            StateSpec::ProductGe => [ZERO, ZERO, ONE, ZERO],
            StateSpec::Bloch { theta, phi } => [ZERO, C64::new(theta.cos(), 0.0), (I * phi).exp() * theta.sin(), ZERO],
            StateSpec::Explicit(a) => a,
        };
        let n = vec_norm(&amps);
        if (n - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::InvalidParameter(format!("state norm is {n}, expected 1")));
        }
        Ok(amps)
    }

    /// `|ψ⟩⟨ψ|` in the bare basis.
    pub fn density_matrix(&self) -> Result<CMatrix> {
        let a = self.amplitudes()?;
        Ok(CMatrix::outer(&a, &a))
    }
}

/// Amplitudes `a_i = Σ_b u[i,b]·c_b = ⟨E_i|ψ⟩` of a bare-basis state.
pub fn to_eigen_basis(state: &StateSpec, es: &EigenSystem) -> Result<[C64; 4]> {
    let c = state.amplitudes()?;
    let a = es.u.mul_vec(&c);
    Ok([a[0], a[1], a[2], a[3]])
}

/// Inverse of [`to_eigen_basis`]: `c = u†·a`.
pub fn to_bare_amplitudes(amps: &[C64; 4], es: &EigenSystem) -> [C64; 4] {
    let c = es.u.adjoint().mul_vec(amps);
    [c[0], c[1], c[2], c[3]]
}

/// `U1(τ) = exp[i(σz⊗I + I⊗σz)τ] = diag(e^{2iτ}, 1, 1, e^{−2iτ})`.
pub fn frame_phase(tau: f64) -> CMatrix {
    CMatrix::from_diag(&[(I * (2.0 * tau)).exp(), ONE, ONE, (I * (-2.0 * tau)).exp()])
}

/// Conjugates a bare-basis density matrix by `U1(τ)`.
pub fn apply_frame_phase(rho_bare: &CMatrix, tau: f64) -> CMatrix {
    let u1 = frame_phase(tau);
    u1.matmul(rho_bare).matmul(&u1.adjoint())
}

/// `ρ̃ = U1(τ)·u†·ρ·u·U1†(τ)`: an eigenbasis density matrix returned to the
/// bare basis and Schrödinger picture.
pub fn to_bare_frame(rho_eigen: &CMatrix, es: &EigenSystem, tau: f64) -> CMatrix {
    apply_frame_phase(&es.to_bare_operator(rho_eigen), tau)
}

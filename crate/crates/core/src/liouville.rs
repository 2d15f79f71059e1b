//! Liouvillian superoperators acting on column-stacked density matrices.
//!
//! `vec(ρ)[i + 4j] = ρ[i, j]`, so `vec(AρB) = (Bᵀ⊗A)·vec(ρ)`.

use crate::error::{Error, Result};
use crate::matcore::{kron, CMatrix, C64, ONE, ZERO};
use crate::model::{self, diagonalize_general, diagonalize_resonant, hamiltonian, local, pauli, EigenSystem, ModelParams, Site};
use crate::reservoir::BathPair;

pub const DIM: usize = 4;
pub const SUPER_DIM: usize = DIM * DIM;

pub fn vectorize(rho: &CMatrix) -> Result<Vec<C64>> {
    if rho.rows() != DIM || rho.cols() != DIM {
        return Err(Error::Shape(format!("expected 4×4 density matrix, got {}×{}", rho.rows(), rho.cols())));
    }
    let mut v = Vec::with_capacity(SUPER_DIM);
    for j in 0..DIM {
        for i in 0..DIM {
            v.push(rho[(i, j)]);
        }
    }
    Ok(v)
}

pub fn devectorize(v: &[C64]) -> Result<CMatrix> {
    if v.len() != SUPER_DIM {
        return Err(Error::Shape(format!("expected length-16 vector, got {}", v.len())));
    }
    let mut rho = CMatrix::zeros(DIM, DIM);
    for j in 0..DIM {
        for i in 0..DIM {
            rho[(i, j)] = v[i + DIM * j];
        }
    }
    Ok(rho)
}

/// `ρ ↦ Aρ`.
pub fn spre(a: &CMatrix) -> CMatrix {
    kron(&CMatrix::identity(a.rows()), a)
}

/// `ρ ↦ ρB`.
pub fn spost(b: &CMatrix) -> CMatrix {
    kron(&b.transpose(), &CMatrix::identity(b.rows()))
}

/// `ρ ↦ AρB`.
pub fn sandwich(a: &CMatrix, b: &CMatrix) -> CMatrix {
    kron(&b.transpose(), a)
}

/// `ρ ↦ −i[H, ρ]`.
pub fn commutator_super(h: &CMatrix) -> CMatrix {
    (&spre(h) - &spost(h)).scale(C64::new(0.0, -1.0))
}

/// `ρ ↦ 2AρA† − A†Aρ − ρA†A`.
pub fn dissipator(a: &CMatrix) -> CMatrix {
    let ad = a.adjoint();
    let ada = ad.matmul(a);
    let mut d = sandwich(a, &ad).scale_re(2.0);
    d.add_scaled(C64::new(-1.0, 0.0), &spre(&ada));
    d.add_scaled(C64::new(-1.0, 0.0), &spost(&ada));
    d
}

/// `|i⟩⟨j|` on the four-level space.
pub fn tau(i: usize, j: usize) -> CMatrix {
    CMatrix::unit(DIM, i, j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Bare,
    Eigen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationKind {
    LindbladPheno,
    RedfieldResonant,
    RedfieldGeneral,
}

impl EquationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EquationKind::LindbladPheno => "lindblad",
            EquationKind::RedfieldResonant => "redfield-resonant",
            EquationKind::RedfieldGeneral => "redfield",
        }
    }
}

impl std::str::FromStr for EquationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lindblad" | "lindblad-pheno" => Ok(EquationKind::LindbladPheno),
            "redfield-resonant" => Ok(EquationKind::RedfieldResonant),
            "redfield" | "redfield-general" => Ok(EquationKind::RedfieldGeneral),
            other => Err(Error::InvalidParameter(format!("unknown equation '{other}'"))),
        }
    }
}

/// Which local jump carries which bath weight in the phenomenological equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LindbladJumps {
    /// Raising with `J·N`, lowering with `J·𝒩`: relaxes toward the bath's
    /// thermal state.
    Thermal,
    /// Raising with `J·𝒩`, lowering with `J·N`.
    Exchanged,
}

impl LindbladJumps {
    pub fn as_str(self) -> &'static str {
        match self {
            LindbladJumps::Thermal => "thermal",
            LindbladJumps::Exchanged => "exchanged",
        }
    }
}

impl std::str::FromStr for LindbladJumps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "thermal" => Ok(LindbladJumps::Thermal),
            "exchanged" => Ok(LindbladJumps::Exchanged),
            other => Err(Error::InvalidParameter(format!("unknown jump weighting '{other}'"))),
        }
    }
}

/// A 16×16 generator together with the basis its density matrices live in.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    pub matrix: CMatrix,
    pub basis: Basis,
    pub kind: EquationKind,
    /// Present for eigenbasis generators.
    pub eigensystem: Option<EigenSystem>,
}

impl Superoperator {
    /// Rewrites a bare-basis density matrix in this generator's basis.
    pub fn state_in(&self, rho_bare: &CMatrix) -> CMatrix {
        match &self.eigensystem {
            Some(es) if self.basis == Basis::Eigen => es.to_eigen_operator(rho_bare),
            _ => rho_bare.clone(),
        }
    }

    /// Returns a state in this generator's basis to the bare basis and the
    /// Schrödinger picture at time `tau`.
    pub fn state_out(&self, rho: &CMatrix, tau: f64) -> CMatrix {
        match &self.eigensystem {
            Some(es) if self.basis == Basis::Eigen => model::to_bare_frame(rho, es, tau),
            _ => model::apply_frame_phase(rho, tau),
        }
    }

    /// `vec(I)†·L`, which vanishes for a trace-preserving generator.
    pub fn trace_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for col in 0..SUPER_DIM {
            let s: C64 = (0..DIM).map(|k| self.matrix[(k * (DIM + 1), col)]).sum();
            worst = worst.max(s.norm());
        }
        worst
    }

    /// `L·vec(ρ)` as a matrix.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        devectorize(&self.matrix.mul_vec(&vectorize(rho)?))
    }
}

/// Resonant dissipation rates, all evaluated at `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    /// `(λ²/M²)·J_i(M)·N_i(M)`.
    pub gamma1: f64,
    pub gamma2: f64,
    /// `(λ²/M²)·J_i(M)·𝒩_i(M)`.
    pub big_gamma1: f64,
    pub big_gamma2: f64,
}

impl RateSet {
    pub fn resonant(p: &ModelParams, baths: &BathPair) -> Result<Self> {
        let m = p.drive.hypot(p.coupling);
        let w = (p.coupling / m).powi(2);
        Ok(Self {
            gamma1: w * baths.charger.absorption_rate(m)?,
            gamma2: w * baths.battery.absorption_rate(m)?,
            big_gamma1: w * baths.charger.emission_rate(m)?,
            big_gamma2: w * baths.battery.emission_rate(m)?,
        })
    }
}

/// Local dissipators on each qubit at its bare transition frequency.
pub fn lindblad_pheno(p: &ModelParams, baths: &BathPair, jumps: LindbladJumps) -> Result<Superoperator> {
    p.validate()?;
    let mut l = commutator_super(&hamiltonian(p));
    for site in Site::BOTH {
        let bath = baths.get(site);
        let w = p.lab_frequency(site);
        if !(w > 0.0) {
            return Err(Error::Domain(format!("bare frequency of the {site:?} must be > 0, got {w}")));
        }
        let up = bath.absorption_rate(w)?;
        let down = bath.emission_rate(w)?;
        let (w_plus, w_minus) = match jumps {
            LindbladJumps::Thermal => (up, down),
            LindbladJumps::Exchanged => (down, up),
        };
        l.add_scaled(C64::new(w_plus, 0.0), &dissipator(&local(&pauli::plus(), site)));
        l.add_scaled(C64::new(w_minus, 0.0), &dissipator(&local(&pauli::minus(), site)));
    }
    Ok(Superoperator { matrix: l, basis: Basis::Bare, kind: EquationKind::LindbladPheno, eigensystem: None })
}

/// Closed-form resonant dissipator in the dressed basis, written out term by term.
pub fn redfield_resonant(p: &ModelParams, baths: &BathPair) -> Result<Superoperator> {
    p.validate()?;
    let es = diagonalize_resonant(p)?;
    let r = RateSet::resonant(p, baths)?;
    let t = |i: usize, j: usize| tau(i - 1, j - 1);
    let re = |x: f64| C64::new(x, 0.0);

    let mut l = commutator_super(&CMatrix::from_real_diag(&es.energies));
    let up = r.gamma1 + r.gamma2;
    let down = r.big_gamma1 + r.big_gamma2;

    let mut decay = &sandwich(&t(3, 1), &t(1, 3)) + &sandwich(&t(4, 2), &t(2, 4));
    decay = decay.scale_re(2.0);
    let upper = &t(1, 1) + &t(2, 2);
    decay.add_scaled(re(-1.0), &spre(&upper));
    decay.add_scaled(re(-1.0), &spost(&upper));
    l.add_scaled(re(down), &decay);

    let mut pump = &sandwich(&t(1, 3), &t(3, 1)) + &sandwich(&t(2, 4), &t(4, 2));
    pump = pump.scale_re(2.0);
    let lower = &t(3, 3) + &t(4, 4);
    pump.add_scaled(re(-1.0), &spre(&lower));
    pump.add_scaled(re(-1.0), &spost(&lower));
    l.add_scaled(re(up), &pump);

    let cross_up = &sandwich(&t(1, 3), &t(4, 2)) + &sandwich(&t(2, 4), &t(3, 1));
    l.add_scaled(re(-2.0 * (r.gamma1 - r.gamma2)), &cross_up);
    let cross_down = &sandwich(&t(3, 1), &t(2, 4)) + &sandwich(&t(4, 2), &t(1, 3));
    l.add_scaled(re(-2.0 * (r.big_gamma1 - r.big_gamma2)), &cross_down);

    Ok(Superoperator { matrix: l, basis: Basis::Eigen, kind: EquationKind::RedfieldResonant, eigensystem: Some(es) })
}

/// `χ⁽ᵐ⁾ = u·σx⁽ᵐ⁾·u†`: the matrix elements of each qubit's coupling operator
/// between dressed states.
pub fn chi_coefficients(es: &EigenSystem) -> [CMatrix; 2] {
    Site::BOTH.map(|s| es.to_eigen_operator(&local(&pauli::x(), s)))
}

/// Dressed-basis Redfield generator beyond the secular approximation, for
/// arbitrary detunings.
pub fn redfield_general(p: &ModelParams, baths: &BathPair) -> Result<Superoperator> {
    p.validate()?;
    let es = diagonalize_general(p)?;
    let matrix = redfield_matrix(&es, baths)?;
    Ok(Superoperator { matrix, basis: Basis::Eigen, kind: EquationKind::RedfieldGeneral, eigensystem: Some(es) })
}

/// General Redfield generator over a supplied dressed basis.
pub fn redfield_matrix(es: &EigenSystem, baths: &BathPair) -> Result<CMatrix> {
    let chi = chi_coefficients(es);
    let mut l = commutator_super(&CMatrix::from_real_diag(&es.energies));
    let pairs: Vec<(usize, usize)> = (0..DIM).flat_map(|i| (i + 1..DIM).map(move |j| (i, j))).collect();

    for &(m, n) in &pairs {
        let eps = es.spacing(m, n);
        debug_assert!(eps > 0.0, "energies must be strictly descending");
        let mut emit = [0.0; 2];
        let mut absorb = [0.0; 2];
        for site in Site::BOTH {
            let b = baths.get(site);
            emit[site.index()] = b.emission_rate(eps)?;
            absorb[site.index()] = b.absorption_rate(eps)?;
        }
        let t_mn = tau(m, n);
        let t_nm = tau(n, m);
        for &(i, j) in &pairs {
            let t_ij = tau(i, j);
            let t_ji = tau(j, i);
            // lowering on the left paired with raising on the right, and its conjugate
            let mut c_down = ZERO;
            let mut c_down_h = ZERO;
            let mut c_up = ZERO;
            let mut c_up_h = ZERO;
            for a in 0..2 {
                let x = &chi[a];
                c_down += x[(j, i)] * x[(m, n)] * emit[a];
                c_down_h += x[(i, j)] * x[(n, m)] * emit[a];
                c_up += x[(i, j)] * x[(n, m)] * absorb[a];
                c_up_h += x[(j, i)] * x[(m, n)] * absorb[a];
            }
            if c_down != ZERO {
                l.add_scaled(c_down, &sandwich(&t_ji, &t_mn));
                l.add_scaled(-c_down, &spost(&t_mn.matmul(&t_ji)));
            }
            if c_down_h != ZERO {
                l.add_scaled(c_down_h, &sandwich(&t_nm, &t_ij));
                l.add_scaled(-c_down_h, &spre(&t_ij.matmul(&t_nm)));
            }
            if c_up != ZERO {
                l.add_scaled(c_up, &sandwich(&t_ij, &t_nm));
                l.add_scaled(-c_up, &spost(&t_nm.matmul(&t_ij)));
            }
            if c_up_h != ZERO {
                l.add_scaled(c_up_h, &sandwich(&t_mn, &t_ji));
                l.add_scaled(-c_up_h, &spre(&t_ji.matmul(&t_mn)));
            }
        }
    }
    Ok(l)
}

/// Builds the requested generator.
pub fn build(kind: EquationKind, p: &ModelParams, baths: &BathPair, jumps: LindbladJumps) -> Result<Superoperator> {
    match kind {
        EquationKind::LindbladPheno => lindblad_pheno(p, baths, jumps),
        EquationKind::RedfieldResonant => redfield_resonant(p, baths),
        EquationKind::RedfieldGeneral => redfield_general(p, baths),
    }
}

/// `vec(I₄)`.
pub fn vec_identity() -> Vec<C64> {
    let mut v = vec![ZERO; SUPER_DIM];
    for k in 0..DIM {
        v[k * (DIM + 1)] = ONE;
    }
    v
}

//! Ohmic reservoirs with Bose or Fermi occupation.

use crate::error::{Error, Result};
use crate::model::Site;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Boson,
    Fermion,
}

impl Statistics {
    pub fn as_str(self) -> &'static str {
        match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        }
    }
}

impl std::str::FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "boson" | "bose" => Ok(Statistics::Boson),
            "fermion" | "fermi" => Ok(Statistics::Fermion),
            other => Err(Error::InvalidParameter(format!("unknown statistics '{other}'"))),
        }
    }
}

/// One reservoir: occupation statistics plus an Ohmic spectral density
/// `J(ω) = α·ω·exp(−ω/ω_c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirSpec {
    pub statistics: Statistics,
    pub temperature: f64,
    /// Chemical potential; ignored for bosons.
    pub chemical_potential: f64,
    pub alpha: f64,
    pub cutoff: f64,
    /// Added to every frequency before `J` and `N` are evaluated. Zero
    /// reproduces the rotating-frame evaluation; `ω_d` would evaluate the
    /// bath at lab-frame frequencies instead.
    pub frequency_offset: f64,
}

impl ReservoirSpec {
    pub fn new(statistics: Statistics, temperature: f64, chemical_potential: f64, alpha: f64, cutoff: f64) -> Result<Self> {
        let r = Self { statistics, temperature, chemical_potential, alpha, cutoff, frequency_offset: 0.0 };
        r.validate()?;
        Ok(r)
    }

    pub fn boson(temperature: f64, alpha: f64, cutoff: f64) -> Result<Self> {
        Self::new(Statistics::Boson, temperature, 0.0, alpha, cutoff)
    }

    pub fn fermion(temperature: f64, chemical_potential: f64, alpha: f64, cutoff: f64) -> Result<Self> {
        Self::new(Statistics::Fermion, temperature, chemical_potential, alpha, cutoff)
    }

    pub fn with_frequency_offset(mut self, offset: f64) -> Self {
        self.frequency_offset = offset;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(Error::InvalidParameter(format!("temperature must be > 0, got {}", self.temperature)));
        }
        if !(self.alpha >= 0.0) || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha must be ≥ 0, got {}", self.alpha)));
        }
        if !(self.cutoff > 0.0) || !self.cutoff.is_finite() {
            return Err(Error::InvalidParameter(format!("cutoff must be > 0, got {}", self.cutoff)));
        }
        if !self.chemical_potential.is_finite() || !self.frequency_offset.is_finite() {
            return Err(Error::InvalidParameter("chemical potential and offset must be finite".into()));
        }
        Ok(())
    }

    /// `J(ω) = α·ω·e^{−ω/ω_c}` for ω > 0, zero otherwise.
    pub fn spectral_density(&self, omega: f64) -> f64 {
        let w = omega + self.frequency_offset;
        if w <= 0.0 {
            0.0
        } else {
            self.alpha * w * (-w / self.cutoff).exp()
        }
    }

    /// Mean occupation `N(ω)`: Bose `1/(e^{ω/T} − 1)` or Fermi `1/(e^{(ω−μ)/T} + 1)`.
    pub fn occupation(&self, omega: f64) -> Result<f64> {
        let w = omega + self.frequency_offset;
        match self.statistics {
            Statistics::Boson => {
                if !(w > 0.0) {
                    return Err(Error::Domain(format!("Bose occupation needs ω > 0, got {w}")));
                }
                Ok(1.0 / (w / self.temperature).exp_m1())
            }
            Statistics::Fermion => Ok(fermi((w - self.chemical_potential) / self.temperature)),
        }
    }

    /// Emission weight `𝒩(ω)`: `N + 1` for bosons, `1 − N` for fermions.
    pub fn co_occupation(&self, omega: f64) -> Result<f64> {
        let w = omega + self.frequency_offset;
        match self.statistics {
            Statistics::Boson => self.occupation(omega).map(|n| n + 1.0),
            Statistics::Fermion => Ok(fermi(-(w - self.chemical_potential) / self.temperature)),
        }
    }

    /// `J(ω)·N(ω)`, zero wherever `J` vanishes.
    pub fn absorption_rate(&self, omega: f64) -> Result<f64> {
        let j = self.spectral_density(omega);
        if j == 0.0 {
            return Ok(0.0);
        }
        Ok(j * self.occupation(omega)?)
    }

    /// `J(ω)·𝒩(ω)`, zero wherever `J` vanishes.
    pub fn emission_rate(&self, omega: f64) -> Result<f64> {
        let j = self.spectral_density(omega);
        if j == 0.0 {
            return Ok(0.0);
        }
        Ok(j * self.co_occupation(omega)?)
    }
}

/// `1/(e^x + 1)` without overflow for large |x|.
fn fermi(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (x.exp() + 1.0)
    }
}

/// The charger and battery reservoirs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathPair {
    pub charger: ReservoirSpec,
    pub battery: ReservoirSpec,
}

impl BathPair {
    pub fn new(charger: ReservoirSpec, battery: ReservoirSpec) -> Result<Self> {
        if charger.statistics != battery.statistics {
            return Err(Error::InvalidParameter("charger and battery baths must share statistics".into()));
        }
        charger.validate()?;
        battery.validate()?;
        Ok(Self { charger, battery })
    }

    /// Baths from mean/difference temperatures and chemical potentials with
    /// a shared Ohmic prefactor and cutoff.
    pub fn from_means(statistics: Statistics, t_bar: f64, d_t: f64, mu_bar: f64, d_mu: f64, alpha: f64, cutoff: f64) -> Result<Self> {
        let (mu1, mu2) = match statistics {
            Statistics::Boson => (0.0, 0.0),
            Statistics::Fermion => (mu_bar + 0.5 * d_mu, mu_bar - 0.5 * d_mu),
        };
        Self::new(
            ReservoirSpec::new(statistics, t_bar + 0.5 * d_t, mu1, alpha, cutoff)?,
            ReservoirSpec::new(statistics, t_bar - 0.5 * d_t, mu2, alpha, cutoff)?,
        )
    }

    pub fn statistics(&self) -> Statistics {
        self.charger.statistics
    }

    pub fn get(&self, site: Site) -> &ReservoirSpec {
        match site {
            Site::Charger => &self.charger,
            Site::Battery => &self.battery,
        }
    }

    /// ΔT = T1 − T2.
    pub fn delta_t(&self) -> f64 {
        self.charger.temperature - self.battery.temperature
    }

    pub fn mean_t(&self) -> f64 {
        0.5 * (self.charger.temperature + self.battery.temperature)
    }

    /// Δμ = μ1 − μ2.
    pub fn delta_mu(&self) -> f64 {
        self.charger.chemical_potential - self.battery.chemical_potential
    }

    pub fn mean_mu(&self) -> f64 {
        0.5 * (self.charger.chemical_potential + self.battery.chemical_potential)
    }

    pub fn with_frequency_offset(mut self, offset: f64) -> Self {
        self.charger.frequency_offset = offset;
        self.battery.frequency_offset = offset;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ohmic_density_values() {
        let r = ReservoirSpec::boson(1.0, 0.1, 5.0).unwrap();
        assert!((r.spectral_density(1.0) - 0.1 * (-0.2f64).exp()).abs() < 1e-15);
        assert!((r.spectral_density(1.0) - 0.0818731).abs() < 1e-7);
        assert_eq!(r.spectral_density(0.0), 0.0);
        assert_eq!(r.spectral_density(-2.0), 0.0);
        let peak = r.spectral_density(5.0);
        assert!((peak - 0.5 / std::f64::consts::E).abs() < 1e-15);
        assert!(r.spectral_density(4.9) < peak && r.spectral_density(5.1) < peak);
    }

    #[test]
    fn bose_occupation() {
        let r = ReservoirSpec::boson(1.3, 0.1, 5.0).unwrap();
        let n = r.occupation(1.3).unwrap();
        assert!((n - 1.0 / (std::f64::consts::E - 1.0)).abs() < 1e-14);
        assert!((n - 0.581977).abs() < 1e-6);
        assert_eq!(r.co_occupation(0.7).unwrap() - r.occupation(0.7).unwrap(), 1.0);
        assert!(matches!(r.occupation(0.0), Err(Error::Domain(_))));
        assert!(r.occupation(-1.0).is_err());
    }

    #[test]
    fn fermi_occupation() {
        for t in [0.1, 1.0, 7.0] {
            let r = ReservoirSpec::fermion(t, 2.0, 0.1, 5.0).unwrap();
            assert_eq!(r.occupation(2.0).unwrap(), 0.5);
            assert_eq!(r.co_occupation(2.0).unwrap(), 0.5);
            for w in [-3.0, 0.5, 4.0] {
                let sum = r.occupation(w).unwrap() + r.co_occupation(w).unwrap();
                assert!((sum - 1.0).abs() <= f64::EPSILON);
            }
        }
        let cold = ReservoirSpec::fermion(1e-3, 2.0, 0.1, 5.0).unwrap();
        assert!(cold.occupation(1.0).unwrap() > 1.0 - 1e-12);
        assert!(cold.occupation(3.0).unwrap() < 1e-12);
    }

    #[test]
    fn detailed_balance() {
        let b = ReservoirSpec::boson(0.8, 0.1, 5.0).unwrap();
        let f = ReservoirSpec::fermion(0.8, -1.5, 0.1, 5.0).unwrap();
        for w in [0.05, 0.5, 1.118, 3.0, 9.0] {
            let ratio = b.occupation(w).unwrap() / b.co_occupation(w).unwrap();
            assert!((ratio / (-w / 0.8f64).exp() - 1.0).abs() < 1e-12);
            let ratio = f.occupation(w).unwrap() / f.co_occupation(w).unwrap();
            assert!((ratio / (-(w + 1.5) / 0.8f64).exp() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bath_pair_accessors() {
        let pair = BathPair::from_means(Statistics::Fermion, 1.0, 0.0, 2.0, 1.0, 0.1, 5.0).unwrap();
        assert_eq!(pair.charger.chemical_potential, 2.5);
        assert_eq!(pair.battery.chemical_potential, 1.5);
        assert_eq!(pair.delta_mu(), 1.0);
        assert_eq!(pair.mean_mu(), 2.0);
        let boson = BathPair::from_means(Statistics::Boson, 1.0, 1.0, 0.0, 0.0, 0.1, 5.0).unwrap();
        assert_eq!((boson.charger.temperature, boson.battery.temperature), (1.5, 0.5));
        assert_eq!(boson.delta_t(), 1.0);
        assert_eq!(boson.mean_t(), 1.0);
    }

    #[test]
    fn mixed_statistics_rejected() {
        let b = ReservoirSpec::boson(1.0, 0.1, 5.0).unwrap();
        let f = ReservoirSpec::fermion(1.0, 0.0, 0.1, 5.0).unwrap();
        assert!(BathPair::new(b, f).is_err());
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(ReservoirSpec::boson(0.0, 0.1, 5.0).is_err());
        assert!(ReservoirSpec::boson(1.0, -0.1, 5.0).is_err());
        assert!(ReservoirSpec::boson(1.0, 0.1, 0.0).is_err());
        assert!(BathPair::from_means(Statistics::Boson, 1.0, 2.0, 0.0, 0.0, 0.1, 5.0).is_err());
    }
}

//! Closed-form and semi-numerical one-electron spectra.
//!
//! Units: `ħ = m = e = 1` (atomic units) for nonrelativistic energies, which
//! are tagged [`EnergyUnit::Hartree`]. Relativistic energies are ratios
//! `E/mc²`, tagged [`EnergyUnit::RestMass`]. With `c = 1/α` the two systems
//! are related by `mc² = 1/α²` hartree; the conversion only happens at
//! [`dirac_binding_hartree`].

mod fisheye;
mod gegenbauer;
mod quadrature;
mod scan;

use std::fmt;

use crate::error::{Error, Result};

pub use fisheye::{coulomb_to_fisheye, fisheye_potential, FisheyeParams};
pub use gegenbauer::{gegenbauer, gegenbauer_coefficients, gegenbauer_residual};
pub use quadrature::gauss_legendre;
pub use scan::{sw_discreteness_scan, ScanEntry, ScanReport, MAX_SCAN_DEGREE};

/// Fine-structure constant.
pub const DEFAULT_ALPHA: f64 = 7.2973525693e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyUnit {
    /// Dimensionless `E/mc²`.
    RestMass,
    /// Hartree; binding part only.
    Hartree,
}

impl fmt::Display for EnergyUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergyUnit::RestMass => "mc2",
            EnergyUnit::Hartree => "hartree",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyValue {
    pub value: f64,
    pub unit: EnergyUnit,
}

impl EnergyValue {
    pub fn hartree(value: f64) -> Self {
        EnergyValue {
            value,
            unit: EnergyUnit::Hartree,
        }
    }

    pub fn rest_mass(value: f64) -> Self {
        EnergyValue {
            value,
            unit: EnergyUnit::RestMass,
        }
    }
}

/// A non-negative half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(u32);

impl HalfInteger {
    /// `two_j / 2`; `two_j` must be odd for a genuine half-integer but even
    /// values are accepted as integers.
    pub fn from_twice(two_j: u32) -> Self {
        HalfInteger(two_j)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `(l, j)` encoded by the Dirac quantum number κ.
pub fn kappa_decode(kappa: i32) -> Result<(u32, HalfInteger)> {
    if kappa == 0 {
        return Err(Error::domain("kappa = 0 is excluded"));
    }
    let abs = kappa.unsigned_abs();
    let l = if kappa > 0 { abs } else { abs - 1 };
    Ok((l, HalfInteger::from_twice(2 * abs - 1)))
}

/// Inputs of a relativistic hydrogen-like level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticLevel {
    n_r: u32,
    kappa: i32,
    z: u32,
    alpha: f64,
}

impl RelativisticLevel {
    pub fn new(n_r: u32, kappa: i32, z: u32, alpha: f64) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::domain("kappa = 0 is excluded"));
        }
        if z == 0 {
            return Err(Error::domain("nuclear charge must be >= 1"));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::domain(format!("invalid fine-structure constant {alpha}")));
        }
        let az = alpha * f64::from(z);
        if az >= f64::from(kappa.unsigned_abs()) {
            return Err(Error::domain(format!(
                "supercritical charge: alpha*Z = {az} >= |kappa| = {}",
                kappa.unsigned_abs()
            )));
        }
        Ok(RelativisticLevel {
            n_r,
            kappa,
            z,
            alpha,
        })
    }

    pub fn with_default_alpha(n_r: u32, kappa: i32, z: u32) -> Result<Self> {
        Self::new(n_r, kappa, z, DEFAULT_ALPHA)
    }

    pub fn n_r(&self) -> u32 {
        self.n_r
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `αZ`.
    pub fn coupling(&self) -> f64 {
        self.alpha * f64::from(self.z)
    }

    pub fn l(&self) -> u32 {
        kappa_decode(self.kappa).expect("kappa validated").0
    }

    pub fn j(&self) -> HalfInteger {
        kappa_decode(self.kappa).expect("kappa validated").1
    }

    /// Nonrelativistic principal number `n_r + l + 1`.
    pub fn n_tilde(&self) -> u32 {
        self.n_r + self.l() + 1
    }

    /// `n_r + l(γκ) + 1`, the relativistic replacement of `ñ`.
    pub fn effective_principal(&self) -> f64 {
        f64::from(self.n_r) + l_of_gamma_kappa(gamma_kappa(self)) + 1.0
    }
}

/// Lippmann–Johnson eigenvalue `sign(κ)·√(κ² − (αZ)²)`.
pub fn gamma_kappa(level: &RelativisticLevel) -> f64 {
    let k = f64::from(level.kappa);
    let az = level.coupling();
    // (k - az)(k + az) keeps precision when az is tiny
    let magnitude = ((k.abs() - az) * (k.abs() + az)).sqrt();
    magnitude.copysign(k)
}

/// Checked form of [`gamma_kappa`] from raw inputs.
pub fn gamma_kappa_checked(kappa: i32, z: u32, alpha: f64) -> Result<f64> {
    RelativisticLevel::new(0, kappa, z, alpha).map(|level| gamma_kappa(&level))
}

/// Effective orbital number: `γκ` on the positive branch, `|γκ| − 1` on
/// the negative branch.
pub fn l_of_gamma_kappa(gamma_kappa: f64) -> f64 {
    if gamma_kappa > 0.0 {
        gamma_kappa
    } else {
        gamma_kappa.abs() - 1.0
    }
}

/// Schrödinger spectrum `−Z²/(2ñ²)`, `ñ = n_r + l + 1`.
pub fn hydrogen_energy(z: u32, n_r: u32, l: u32) -> EnergyValue {
    let n_tilde = f64::from(n_r + l + 1);
    let z = f64::from(z);
    EnergyValue::hartree(-z * z / (2.0 * n_tilde * n_tilde))
}

/// Madelung-regular spectrum: binding part `−Z²/(2(ñ + l)²)`.
pub fn madelung_energy(z: u32, n_r: u32, l: u32) -> EnergyValue {
    let shifted = f64::from(n_r + 2 * l + 1);
    let z = f64::from(z);
    EnergyValue::hartree(-z * z / (2.0 * shifted * shifted))
}

/// Dirac-Coulomb energy `E/mc² = [1 + (αZ/Ñ)²]^(−1/2)`, `Ñ = n_r + l(γκ) + 1`.
pub fn dirac_energy(level: &RelativisticLevel) -> EnergyValue {
    let x = level.coupling() / level.effective_principal();
    EnergyValue::rest_mass(1.0 / (1.0 + x * x).sqrt())
}

/// `E/mc² − 1` converted to hartree, evaluated without cancellation.
///
/// At `α = 0` this is exactly [`hydrogen_energy`].
pub fn dirac_binding_hartree(level: &RelativisticLevel) -> EnergyValue {
    let big_n = level.effective_principal();
    let x = level.coupling() / big_n;
    let s = (1.0 + x * x).sqrt();
    let ratio = f64::from(level.z) / big_n;
    EnergyValue::hartree(-ratio * ratio / (s * (1.0 + s)))
}

/// Variables that turn the relativistic radial equation into hydrogenic form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMap {
    /// `√(m² − E²)`.
    pub mu: f64,
    /// `2μr`.
    pub rho: f64,
    /// `4Ze²E/μ`.
    pub omega: f64,
}

impl RadialMap {
    /// `energy` in units of `mc²` (`m = 1`), `e² = α`.
    pub fn new(z: u32, alpha: f64, energy: f64, r: f64) -> Result<Self> {
        let mu_sq = (1.0 - energy) * (1.0 + energy);
        if !(mu_sq > 0.0) {
            return Err(Error::domain(format!(
                "E/mc² = {energy} is not a bound state"
            )));
        }
        let mu = mu_sq.sqrt();
        Ok(RadialMap {
            mu,
            rho: 2.0 * mu * r,
            omega: 4.0 * f64::from(z) * alpha * energy / mu,
        })
    }
}

/// Solves `(ω/4)² = (n_r + l(γκ) + 1)²` for `E ∈ (0, 1)` by bisection.
///
/// Independent numerical route to [`dirac_energy`].
pub fn dirac_energy_by_bisection(level: &RelativisticLevel) -> Result<f64> {
    let target = level.effective_principal();
    if level.coupling() == 0.0 {
        return Ok(1.0);
    }
    // ω/4 grows monotonically from 0 at E=0 to ∞ as E → 1
    let quarter_omega = |e: f64| -> Result<f64> {
        Ok(RadialMap::new(level.z, level.alpha, e, 1.0)?.omega / 4.0)
    };
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if quarter_omega(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Fine-structure expansion through `α⁴`:
/// `1 − (αZ)²/(2ñ²) − (αZ)⁴/(2ñ⁴)·[ñ/(j+½) − ¾]`.
pub fn fine_structure_expansion(
    z: u32,
    n_tilde: u32,
    j: HalfInteger,
    alpha: f64,
) -> Result<EnergyValue> {
    if n_tilde == 0 {
        return Err(Error::domain("principal number must be >= 1"));
    }
    if j.twice() % 2 == 0 || j.twice() > 2 * n_tilde - 1 {
        return Err(Error::domain(format!(
            "j = {j} outside 1/2..={}/2 for n = {n_tilde}",
            2 * n_tilde - 1
        )));
    }
    let n = f64::from(n_tilde);
    let az2 = (alpha * f64::from(z)).powi(2);
    let bracket = n / (j.value() + 0.5) - 0.75;
    let value = 1.0 - az2 / (2.0 * n * n) - az2 * az2 / (2.0 * n.powi(4)) * bracket;
    Ok(EnergyValue::rest_mass(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const CODATA_ALPHA: f64 = 1.0 / 137.035999084;

    #[test]
    fn kappa_decode_examples() {
        assert_eq!(kappa_decode(1).unwrap(), (1, HalfInteger::from_twice(1)));
        assert_eq!(kappa_decode(-1).unwrap(), (0, HalfInteger::from_twice(1)));
        assert_eq!(kappa_decode(-2).unwrap(), (1, HalfInteger::from_twice(3)));
        assert_eq!(kappa_decode(3).unwrap().1.to_string(), "5/2");
        assert!(matches!(kappa_decode(0), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_kappa_examples() {
        // √(1 − α²) evaluated in extended precision (mpmath, 30 digits)
        let level = RelativisticLevel::new(0, -1, 1, CODATA_ALPHA).unwrap();
        assert_relative_eq!(gamma_kappa(&level).abs(), 0.999_973_373_968_267, epsilon = 1e-14);
        for kappa in [-3, -1, 1, 4] {
            let level = RelativisticLevel::new(0, kappa, 5, 0.0).unwrap();
            assert_eq!(gamma_kappa(&level), f64::from(kappa));
        }
        // αZ = 0.6 with Z = 1
        let level = RelativisticLevel::new(0, 1, 1, 0.6).unwrap();
        assert_relative_eq!(gamma_kappa(&level), 0.8, epsilon = 1e-15);
        let level = RelativisticLevel::new(0, -1, 1, 0.6).unwrap();
        assert_relative_eq!(gamma_kappa(&level), -0.8, epsilon = 1e-15);
    }

    #[test]
    fn supercritical_charge_is_rejected() {
        assert!(matches!(
            RelativisticLevel::new(0, -1, 138, DEFAULT_ALPHA),
            Err(Error::Domain(_))
        ));
        assert!(RelativisticLevel::new(0, -1, 137, DEFAULT_ALPHA).is_ok());
        assert!(RelativisticLevel::new(0, -2, 200, DEFAULT_ALPHA).is_ok());
        assert!(gamma_kappa_checked(1, 200, DEFAULT_ALPHA).is_err());
        assert!(RelativisticLevel::new(0, 0, 1, DEFAULT_ALPHA).is_err());
    }

    #[test]
    fn hydrogen_energy_examples() {
        assert_eq!(hydrogen_energy(1, 0, 0).value, -0.5);
        assert_eq!(hydrogen_energy(1, 1, 0).value, -0.125);
        assert_eq!(hydrogen_energy(1, 0, 1).value, -0.125);
        assert_eq!(hydrogen_energy(2, 0, 0).value, -2.0);
        assert_eq!(hydrogen_energy(1, 0, 0).unit, EnergyUnit::Hartree);
    }

    #[test]
    fn madelung_energy_examples() {
        assert_eq!(madelung_energy(1, 0, 0).value, -0.5);
        assert_eq!(madelung_energy(1, 0, 1), madelung_energy(1, 2, 0));
        // 4s-like (ñ + l = 4) binds deeper than 3d-like (ñ + l = 5)
        let four_s = madelung_energy(1, 3, 0).value;
        let three_d = madelung_energy(1, 0, 2).value;
        assert!(four_s < three_d);
    }

    #[test]
    fn dirac_ground_state() {
        let level = RelativisticLevel::new(0, -1, 1, DEFAULT_ALPHA).unwrap();
        let exact = (1.0 - DEFAULT_ALPHA * DEFAULT_ALPHA).sqrt();
        assert_relative_eq!(dirac_energy(&level).value, exact, epsilon = 1e-15);
        assert_relative_eq!(dirac_energy(&level).value, 0.99997337, epsilon = 1e-8);
        let bisected = dirac_energy_by_bisection(&level).unwrap();
        assert_relative_eq!(bisected, exact, epsilon = 1e-14);
    }

    #[test]
    fn dirac_zero_alpha_is_rest_mass() {
        let level = RelativisticLevel::new(2, 3, 10, 0.0).unwrap();
        assert_eq!(dirac_energy(&level).value, 1.0);
        assert_relative_eq!(
            dirac_binding_hartree(&level).value,
            hydrogen_energy(10, 2, 3).value,
            max_relative = 1e-15
        );
    }

    #[test]
    fn dirac_degeneracies() {
        // 2s1/2 and 2p1/2 share n_r + |γκ| and stay degenerate
        let two_s = RelativisticLevel::new(1, -1, 1, DEFAULT_ALPHA).unwrap();
        let two_p_half = RelativisticLevel::new(0, 1, 1, DEFAULT_ALPHA).unwrap();
        assert_relative_eq!(
            dirac_energy(&two_s).value,
            dirac_energy(&two_p_half).value,
            epsilon = 1e-15
        );
        // fine structure splits j = 1/2 from j = 3/2 at equal ñ
        let two_p_three_halves = RelativisticLevel::new(0, -2, 1, DEFAULT_ALPHA).unwrap();
        assert_eq!(two_s.n_tilde(), two_p_three_halves.n_tilde());
        assert!(dirac_energy(&two_s).value < dirac_energy(&two_p_three_halves).value);
    }

    #[test]
    fn radial_map_rejects_unbound_energies() {
        assert!(RadialMap::new(1, DEFAULT_ALPHA, 1.0, 1.0).is_err());
        let map = RadialMap::new(1, 0.5, 0.6, 2.0).unwrap();
        assert_relative_eq!(map.mu, 0.8, epsilon = 1e-15);
        assert_relative_eq!(map.rho, 3.2, epsilon = 1e-15);
        assert_relative_eq!(map.omega, 1.5, epsilon = 1e-15);
    }

    #[test]
    fn fine_structure_examples() {
        let a = DEFAULT_ALPHA;
        let e = fine_structure_expansion(1, 1, HalfInteger::from_twice(1), a).unwrap();
        assert_relative_eq!(e.value, 1.0 - a * a / 2.0 - a.powi(4) / 8.0, epsilon = 1e-16);
        let e = fine_structure_expansion(1, 3, HalfInteger::from_twice(5), 0.0).unwrap();
        assert_eq!(e.value, 1.0);
        assert!(fine_structure_expansion(1, 2, HalfInteger::from_twice(5), a).is_err());
        assert!(fine_structure_expansion(1, 2, HalfInteger::from_twice(2), a).is_err());
    }

    #[test]
    fn fine_structure_tracks_exact_dirac() {
        for z in [1u32, 10, 40] {
            for kappa in [-3i32, -2, -1, 1, 2] {
                let level = RelativisticLevel::new(1, kappa, z, DEFAULT_ALPHA).unwrap();
                let exp =
                    fine_structure_expansion(z, level.n_tilde(), level.j(), DEFAULT_ALPHA).unwrap();
                let bound = 10.0 * level.coupling().powi(6);
                assert!((exp.value - dirac_energy(&level).value).abs() <= bound);
            }
        }
    }
}

use std::f64::consts::PI;

use super::{gauss_legendre, gegenbauer, gamma_kappa, l_of_gamma_kappa, RelativisticLevel};
use crate::error::{Error, Result};

/// Highest S³ harmonic degree the 64×64 quadrature is trusted for.
pub const MAX_SCAN_DEGREE: u32 = 12;

const NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanEntry {
    pub z: u32,
    /// `None` when `αZ ≥ |κ|`.
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    /// Each `Z` whose margin has the opposite sign to that at `Z − 1`.
    pub sign_changes: Vec<u32>,
}

/// Evaluates `2π²·I² − ½∫|ψ|⁴` over `Z = 1..=z_max`, where
/// `I = (n_r + l(γκ) + 1)²` and `ψ` is the normalized S³ harmonic
/// `sin^l χ · C_{n_r+l}^(l+1)(cos χ) · P_l(cos θ)` (m = 0).
pub fn sw_discreteness_scan(
    n_r: u32,
    l: u32,
    kappa: i32,
    z_max: u32,
    alpha: f64,
) -> Result<ScanReport> {
    if kappa == 0 {
        return Err(Error::domain("kappa = 0 is excluded"));
    }
    if z_max == 0 || z_max > 137 {
        return Err(Error::domain(format!("z_max = {z_max} outside 1..=137")));
    }
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::domain(format!("invalid fine-structure constant {alpha}")));
    }
    let degree = n_r + 2 * l;
    if degree > MAX_SCAN_DEGREE {
        return Err(Error::domain(format!(
            "harmonic degree {degree} exceeds the quadrature limit {MAX_SCAN_DEGREE}"
        )));
    }

    let quartic = quartic_integral(n_r, l);
    let entries: Vec<ScanEntry> = (1..=z_max)
        .map(|z| {
            let margin = RelativisticLevel::new(n_r, kappa, z, alpha).ok().map(|level| {
                let big_n = f64::from(n_r) + l_of_gamma_kappa(gamma_kappa(&level)) + 1.0;
                let i = big_n * big_n;
                2.0 * PI * PI * i * i - 0.5 * quartic
            });
            ScanEntry { z, margin }
        })
        .collect();

    let sign_changes = entries
        .windows(2)
        .filter_map(|w| match (w[0].margin, w[1].margin) {
            (Some(a), Some(b)) if (a > 0.0) != (b > 0.0) => Some(w[1].z),
            _ => None,
        })
        .collect();

    Ok(ScanReport {
        entries,
        sign_changes,
    })
}

/// `∫|ψ|⁴ dvol` for the unit-normalized harmonic.
fn quartic_integral(n_r: u32, l: u32) -> f64 {
    let (u, w) = gauss_legendre(NODES);
    let lambda = f64::from(l + 1);
    let mut norm = 0.0;
    let mut quartic = 0.0;
    for (&ua, &wa) in u.iter().zip(&w) {
        let chi = 0.5 * PI * (ua + 1.0);
        let s = chi.sin();
        let radial = s.powi(l as i32) * gegenbauer(n_r + l, lambda, chi.cos());
        let wchi = wa * 0.5 * PI * s * s;
        for (&t, &wt) in u.iter().zip(&w) {
            let psi = radial * gegenbauer(l, 0.5, t);
            let p2 = psi * psi;
            norm += wchi * wt * p2;
            quartic += wchi * wt * p2 * p2;
        }
    }
    let phi = 2.0 * PI;
    let norm = norm * phi;
    quartic * phi / (norm * norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::DEFAULT_ALPHA;
    use approx::assert_relative_eq;

    #[test]
    fn ground_harmonic_is_constant() {
        // ψ = 1/√(2π²) so ∫ψ⁴ = 1/(2π²)
        assert_relative_eq!(quartic_integral(0, 0), 1.0 / (2.0 * PI * PI), max_relative = 1e-13);
    }

    #[test]
    fn degree_one_harmonic() {
        // ψ ∝ cos χ: 4π·(π/16) / (4π·(π/8))² = 1/π²
        assert_relative_eq!(quartic_integral(1, 0), 1.0 / (PI * PI), max_relative = 1e-12);
    }

    #[test]
    fn alpha_zero_is_z_independent() {
        let report = sw_discreteness_scan(1, 1, -2, 137, 0.0).unwrap();
        let margins: Vec<f64> = report.entries.iter().map(|e| e.margin.unwrap()).collect();
        let first = margins[0];
        assert!(margins.iter().all(|&m| (m - first).abs() <= 1e-10));
        assert!(report.sign_changes.is_empty());
    }

    #[test]
    fn supercritical_entries_are_undefined() {
        let report = sw_discreteness_scan(0, 0, -1, 137, DEFAULT_ALPHA).unwrap();
        assert_eq!(report.entries.len(), 137);
        assert!(report.entries.iter().all(|e| e.margin.is_some()));
        // αZ = 1 at Z = 100
        let report = sw_discreteness_scan(0, 0, -1, 137, 0.01).unwrap();
        assert!(report.entries[98].margin.is_some());
        assert!(report.entries[99..].iter().all(|e| e.margin.is_none()));
    }

    #[test]
    fn margin_decreases_with_z() {
        for kappa in [-1, 1, -2, 2, -3] {
            let report = sw_discreteness_scan(2, 1, kappa, 137, DEFAULT_ALPHA).unwrap();
            let defined: Vec<f64> = report.entries.iter().filter_map(|e| e.margin).collect();
            assert!(defined.windows(2).all(|w| w[1] < w[0]), "kappa={kappa}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(sw_discreteness_scan(0, 0, 0, 10, DEFAULT_ALPHA).is_err());
        assert!(sw_discreteness_scan(0, 0, -1, 138, DEFAULT_ALPHA).is_err());
        assert!(sw_discreteness_scan(0, 0, -1, 0, DEFAULT_ALPHA).is_err());
        assert!(sw_discreteness_scan(5, 4, -1, 10, DEFAULT_ALPHA).is_err());
        assert!(sw_discreteness_scan(12, 0, -1, 10, DEFAULT_ALPHA).is_ok());
    }
}

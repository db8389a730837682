use crate::error::{Error, Result};

/// Parameters of the conformally deformed fish-eye potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisheyeParams {
    a: f64,
    n0: f64,
    gamma: f64,
}

impl FisheyeParams {
    /// `a` is the length scale, `n0` the refractive amplitude, `gamma` the
    /// deformation exponent (1 for hydrogen, 1/2 for the multielectron case).
    pub fn new(a: f64, n0: f64, gamma: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::domain(format!("length scale a = {a} must be positive")));
        }
        if !(n0.is_finite() && n0 > 0.0) {
            return Err(Error::domain(format!("amplitude n0 = {n0} must be positive")));
        }
        if !gamma.is_finite() {
            return Err(Error::domain("deformation exponent must be finite"));
        }
        Ok(FisheyeParams { a, n0, gamma })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// `V(r) = −(a/r)²·[n₀ / ((r/a)^(−γ) + (r/a)^γ)]²`.
pub fn fisheye_potential(r: f64, p: &FisheyeParams) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(format!("radius r = {r} must be positive")));
    }
    let x = r / p.a;
    let inv = 1.0 / x;
    let denom = x.powf(-p.gamma) + x.powf(p.gamma);
    Ok(-(inv * inv) * (p.n0 / denom).powi(2))
}

/// Sturmian coupling `β_n = (Ze/E_n)²` with `e = 1`.
pub fn coulomb_to_fisheye(z: u32, e_n: f64) -> Result<f64> {
    if e_n == 0.0 || !e_n.is_finite() {
        return Err(Error::domain(format!("energy E_n = {e_n} must be finite and nonzero")));
    }
    Ok((f64::from(z) / e_n).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_radius_value() {
        let p = FisheyeParams::new(1.0, 2.0, 1.0).unwrap();
        assert_eq!(fisheye_potential(1.0, &p).unwrap(), -1.0);
        let p = FisheyeParams::new(3.0, 2.0, 0.5).unwrap();
        assert_eq!(fisheye_potential(3.0, &p).unwrap(), -1.0);
    }

    #[test]
    fn gamma_one_is_maxwell_fisheye() {
        // (a/r)²·1/((a/r) + (r/a))² = 1/(1 + (r/a)²)²
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = rng.gen_range(0.1..5.0);
            let n0 = rng.gen_range(0.1..3.0);
            let r = rng.gen_range(1e-3..20.0);
            let p = FisheyeParams::new(a, n0, 1.0).unwrap();
            let maxwell = -n0 * n0 / (1.0 + (r / a).powi(2)).powi(2);
            assert_relative_eq!(fisheye_potential(r, &p).unwrap(), maxwell, max_relative = 1e-12);
        }
    }

    #[test]
    fn potential_is_attractive() {
        let p = FisheyeParams::new(1.5, 0.7, 0.5).unwrap();
        for i in 1..200 {
            let r = f64::from(i) * 0.05;
            assert!(fisheye_potential(r, &p).unwrap() < 0.0);
        }
        assert!(fisheye_potential(0.0, &p).is_err());
        assert!(fisheye_potential(-1.0, &p).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(FisheyeParams::new(0.0, 1.0, 1.0).is_err());
        assert!(FisheyeParams::new(1.0, -1.0, 1.0).is_err());
        assert!(FisheyeParams::new(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn sturmian_coupling() {
        assert_eq!(coulomb_to_fisheye(1, -0.5).unwrap(), 4.0);
        for z in 1..10 {
            let beta = coulomb_to_fisheye(z, -0.3).unwrap();
            assert_relative_eq!(beta, f64::from(z * z) * coulomb_to_fisheye(1, -0.3).unwrap());
            assert!(beta > 0.0);
        }
        assert!(coulomb_to_fisheye(1, 0.0).is_err());
    }
}

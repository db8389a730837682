//! Cooper and Richardson pair energies, BCS quasiparticles and the
//! Bogoliubov–de Gennes block.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::PairingModel;

/// Root of `Σ_n Ω_n/(2ε_n − E) = 1/g` below `2·min ε`.
pub fn cooper_pair_energy(model: &PairingModel) -> Result<f64> {
    let g = model.g();
    if g == 0.0 {
        return Err(Error::domain("g = 0 has no bound Cooper pair"));
    }
    let levels = model.levels();
    let two_eps_min = 2.0 * levels.iter().map(|l| l.epsilon).fold(f64::INFINITY, f64::min);
    let omega_min = levels
        .iter()
        .filter(|l| 2.0 * l.epsilon == two_eps_min)
        .map(|l| f64::from(l.omega))
        .sum::<f64>();
    let capacity = f64::from(model.pair_capacity());
    let f = |e: f64| -> f64 {
        levels
            .iter()
            .map(|l| f64::from(l.omega) / (2.0 * l.epsilon - e))
            .sum::<f64>()
            - 1.0 / g
    };

    // f(lo) ≤ 1/(2g) − 1/g < 0 and f(hi) ≥ 1000/g − 1/g > 0
    let mut lo = two_eps_min - 2.0 * g * capacity;
    let mut hi = two_eps_min - 1e-3 * g * omega_min;
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::solver("Cooper equation has no sign change in its bracket", None));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RichardsonSolution {
    pub pair_energies: Vec<Complex64>,
    /// Residual in the original (unrearranged) form of the equations.
    pub residual: f64,
    /// Real part of `Σ E_i`.
    pub total_energy: f64,
    /// Imaginary part of `Σ E_i`; zero up to rounding for a valid solution.
    pub total_energy_imag: f64,
    /// Whether the continuation left the real `g` axis.
    pub complex_detour: bool,
}

/// Max over `i` of `|F(E_i) − 1/g_i|`, where
/// `F(E) = Σ Ω/(2ε − E)` and `1/g_i = (1 + 2g Σ_{j≠i} 1/(E_j − E_i))/g`.
///
/// Returns infinity when a pair energy sits on a pole.
pub fn richardson_residual(model: &PairingModel, energies: &[Complex64]) -> Result<f64> {
    let g = model.g();
    if g == 0.0 {
        return Err(Error::domain("the residual is undefined at g = 0"));
    }
    let mut worst = 0.0_f64;
    for (i, &ei) in energies.iter().enumerate() {
        let f: Complex64 = model
            .levels()
            .iter()
            .map(|l| f64::from(l.omega) / (2.0 * l.epsilon - ei))
            .sum();
        let coupling: Complex64 = energies
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &ej)| 1.0 / (ej - ei))
            .sum();
        let inv_gi = (1.0 + 2.0 * g * coupling) / g;
        let r = (f - inv_gi).norm();
        if !r.is_finite() {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Ground-state occupation at `g = 0`: levels ordered by energy, each taking
/// up to `Ω` pairs. Returns `(level index, pairs)`.
fn ground_occupation(model: &PairingModel, n_pairs: u32) -> Vec<(usize, u32)> {
    let mut order: Vec<usize> = (0..model.levels().len()).collect();
    order.sort_by(|&a, &b| model.levels()[a].epsilon.total_cmp(&model.levels()[b].epsilon));
    let mut left = n_pairs;
    let mut out = Vec::new();
    for i in order {
        if left == 0 {
            break;
        }
        let k = left.min(model.levels()[i].omega);
        out.push((i, k));
        left -= k;
    }
    out
}

/// Roots of the generalized Laguerre polynomial `L_k^(a)`.
fn laguerre_roots(k: u32, a: f64) -> Vec<Complex64> {
    if k == 0 {
        return Vec::new();
    }
    // c_i = (−1)^i/i! · binom(k + a, k − i)
    let binom = |top: f64, r: u32| -> f64 {
        (0..r).fold(1.0, |acc, m| acc * (top - f64::from(m)) / f64::from(m + 1))
    };
    let mut coefs: Vec<f64> = Vec::with_capacity(k as usize + 1);
    let mut factorial = 1.0;
    for i in 0..=k {
        if i > 0 {
            factorial *= f64::from(i);
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        coefs.push(sign / factorial * binom(f64::from(k) + a, k - i));
    }
    let n = k as usize;
    let lead = coefs[n];
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -coefs[i] / lead;
    }
    let mut roots: Vec<Complex64> = companion.complex_eigenvalues().iter().copied().collect();
    // polish on the polynomial itself
    for r in roots.iter_mut() {
        for _ in 0..20 {
            let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for &c in coefs.iter().rev() {
                dp = dp * *r + p;
                p = p * *r + c;
            }
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *r -= step;
            if step.norm() <= 1e-15 * r.norm().max(1.0) {
                break;
            }
        }
    }
    roots
}

/// Residual accepted while tracking the path; the endpoint is polished.
const TRACK_TOL: f64 = 1e-9;

struct System<'a> {
    model: &'a PairingModel,
}

impl System<'_> {
    /// `G_i = gΣΩ/(2ε − E_i) − 2gΣ_{j≠i} 1/(E_j − E_i) − 1`.
    fn residual(&self, e: &[Complex64], g: Complex64) -> DVector<Complex64> {
        DVector::from_iterator(
            e.len(),
            (0..e.len()).map(|i| {
                let f: Complex64 = self
                    .model
                    .levels()
                    .iter()
                    .map(|l| f64::from(l.omega) / (2.0 * l.epsilon - e[i]))
                    .sum();
                let c: Complex64 = (0..e.len())
                    .filter(|&j| j != i)
                    .map(|j| 1.0 / (e[j] - e[i]))
                    .sum();
                g * f - 2.0 * g * c - 1.0
            }),
        )
    }

    fn jacobian(&self, e: &[Complex64], g: Complex64) -> DMatrix<Complex64> {
        let n = e.len();
        let mut jac = DMatrix::zeros(n, n);
        for i in 0..n {
            let mut diag: Complex64 = self
                .model
                .levels()
                .iter()
                .map(|l| {
                    let d = 2.0 * l.epsilon - e[i];
                    f64::from(l.omega) / (d * d)
                })
                .sum::<Complex64>()
                * g;
            for j in 0..n {
                if j != i {
                    let d = e[j] - e[i];
                    let t = 2.0 * g / (d * d);
                    diag -= t;
                    jac[(i, j)] = t;
                }
            }
            jac[(i, i)] = diag;
        }
        jac
    }

    fn max_residual(&self, e: &[Complex64], g: Complex64) -> f64 {
        self.residual(e, g).iter().fold(0.0_f64, |m, v| {
            if v.re.is_finite() && v.im.is_finite() {
                m.max(v.norm())
            } else {
                f64::INFINITY
            }
        })
    }

    fn newton_step(&self, e: &mut [Complex64], g: Complex64) -> Option<()> {
        let r = self.residual(e, g);
        let step = self.jacobian(e, g).lu().solve(&(-r))?;
        for (x, dx) in e.iter_mut().zip(step.iter()) {
            *x += dx;
        }
        Some(())
    }

    /// Newton at fixed `g` until the residual drops to `tol`, without moving
    /// further than `max_move` from `start`.
    fn newton(
        &self,
        start: &[Complex64],
        g: Complex64,
        max_iter: usize,
        max_move: f64,
        tol: f64,
    ) -> Option<Vec<Complex64>> {
        let mut e = start.to_vec();
        for _ in 0..max_iter {
            let res = self.max_residual(&e, g);
            if !res.is_finite() {
                return None;
            }
            if res <= tol {
                return Some(e);
            }
            self.newton_step(&mut e, g)?;
            let moved = e
                .iter()
                .zip(start)
                .fold(0.0_f64, |m, (a, b)| m.max((a - b).norm()));
            if !(moved <= max_move) {
                return None;
            }
        }
        (self.max_residual(&e, g) <= tol).then_some(e)
    }

    /// A few extra Newton iterations, keeping the best iterate.
    fn polish(&self, start: Vec<Complex64>, g: Complex64) -> Vec<Complex64> {
        let mut best_res = self.max_residual(&start, g);
        let mut best = start.clone();
        let mut e = start;
        for _ in 0..6 {
            if self.newton_step(&mut e, g).is_none() {
                break;
            }
            let res = self.max_residual(&e, g);
            if res < best_res {
                best_res = res;
                best = e.clone();
            }
        }
        best
    }

    /// Smallest distance between pair energies, and from each to a pole.
    fn separation(&self, e: &[Complex64]) -> f64 {
        let mut d = f64::INFINITY;
        for (i, &a) in e.iter().enumerate() {
            for l in self.model.levels() {
                d = d.min((a - 2.0 * l.epsilon).norm());
            }
            for &b in &e[i + 1..] {
                d = d.min((a - b).norm());
            }
        }
        d
    }
}

/// Continuation path `t ↦ g(t)` for `t ∈ [t0, 1]`.
struct Path {
    g: f64,
    detour: f64,
}

impl Path {
    fn at(&self, t: f64) -> Complex64 {
        Complex64::new(self.g * t, self.detour * t * (1.0 - t))
    }

    fn derivative(&self, t: f64) -> Complex64 {
        Complex64::new(self.g, self.detour * (1.0 - 2.0 * t))
    }
}

fn seed(model: &PairingModel, n_pairs: u32, g0: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n_pairs as usize);
    for (level, k) in ground_occupation(model, n_pairs) {
        let l = model.levels()[level];
        for x in laguerre_roots(k, -f64::from(l.omega) - 1.0) {
            out.push(2.0 * l.epsilon + g0 * x);
        }
    }
    out
}

fn continuation<F>(
    model: &PairingModel,
    n_pairs: u32,
    path: &Path,
    observer: &mut F,
) -> std::result::Result<Vec<Complex64>, f64>
where
    F: FnMut(Complex64, &[Complex64]),
{
    let system = System { model };
    let g = model.g();
    let mut spacing = f64::INFINITY;
    let levels = model.levels();
    for (i, a) in levels.iter().enumerate() {
        for b in &levels[i + 1..] {
            let d = (a.epsilon - b.epsilon).abs();
            if d > 0.0 {
                spacing = spacing.min(d);
            }
        }
    }
    if !spacing.is_finite() {
        spacing = 1.0;
    }
    let omega_max = levels.iter().map(|l| l.omega).max().unwrap_or(1);
    let g_seed = 1e-2 * spacing.min(g) / f64::from(omega_max + n_pairs);
    let mut t = (g_seed / g).min(1.0);

    let start = seed(model, n_pairs, path.at(t));
    let mut e = system
        .newton(&start, path.at(t), 50, f64::INFINITY, TRACK_TOL)
        .ok_or(0.0)?;
    observer(path.at(t), &e);

    let mut h = (1.0 - t) / 100.0;
    let min_step = 1e-14;
    while t < 1.0 {
        let h_try = h.min(1.0 - t);
        let gt = path.at(t);
        // tangent: J·dE/dt = −∂G/∂g · g'(t), with ∂G/∂g = (G + 1)/g
        let r = system.residual(&e, gt);
        let dg = path.derivative(t);
        let rhs = r.map(|v| -(v + 1.0) / gt * dg);
        let Some(tangent) = system.jacobian(&e, gt).lu().solve(&rhs) else {
            h = h_try / 2.0;
            if h < min_step {
                return Err(gt.re);
            }
            continue;
        };
        let predicted: Vec<Complex64> = e
            .iter()
            .zip(tangent.iter())
            .map(|(x, dx)| x + dx * h_try)
            .collect();
        let t_next = if h_try >= 1.0 - t { 1.0 } else { t + h_try };
        let max_move = 0.2 * system.separation(&e);
        match system.newton(&predicted, path.at(t_next), 8, max_move, TRACK_TOL) {
            Some(next) => {
                e = next;
                t = t_next;
                observer(path.at(t), &e);
                h = h_try * 1.5;
            }
            None => {
                h = h_try / 2.0;
                if h < min_step {
                    return Err(gt.re);
                }
            }
        }
    }
    // final polish at the target coupling
    let target = Complex64::new(g, 0.0);
    Ok(system.polish(e, target))
}

/// Ground-state Richardson pair energies by continuation in `g`.
pub fn richardson_solve(model: &PairingModel, n_pairs: u32) -> Result<RichardsonSolution> {
    richardson_solve_observed(model, n_pairs, |_, _| {})
}

/// [`richardson_solve`] reporting every accepted continuation step as
/// `(g, energies)`.
pub fn richardson_solve_observed<F>(
    model: &PairingModel,
    n_pairs: u32,
    mut observer: F,
) -> Result<RichardsonSolution>
where
    F: FnMut(Complex64, &[Complex64]),
{
    if n_pairs == 0 || n_pairs > model.pair_capacity() {
        return Err(Error::domain(format!(
            "n_pairs = {n_pairs} outside 1..={}",
            model.pair_capacity()
        )));
    }
    let g = model.g();
    let (energies, detour) = if g == 0.0 {
        let e = seed(model, n_pairs, Complex64::new(0.0, 0.0));
        observer(Complex64::new(0.0, 0.0), &e);
        (e, false)
    } else {
        let real = Path { g, detour: 0.0 };
        match continuation(model, n_pairs, &real, &mut observer) {
            Ok(e) => (e, false),
            Err(last_good) => {
                let complex = Path { g, detour: 0.5 * g };
                match continuation(model, n_pairs, &complex, &mut observer) {
                    Ok(e) => (e, true),
                    Err(_) => {
                        return Err(Error::solver(
                            format!("Richardson continuation stalled for g = {g}"),
                            Some(last_good),
                        ))
                    }
                }
            }
        }
    };

    let mut energies = energies;
    energies.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let residual = if g == 0.0 {
        0.0
    } else {
        richardson_residual(model, &energies)?
    };
    let total: Complex64 = energies.iter().sum();
    Ok(RichardsonSolution {
        pair_energies: energies,
        residual,
        total_energy: total.re,
        total_energy_imag: total.im,
        complex_detour: detour,
    })
}

/// `√(ε² + Δ²)`.
pub fn bcs_quasiparticle(epsilon: f64, delta: f64) -> f64 {
    epsilon.hypot(delta)
}

/// The 2×2 matrix `[[ε, −R], [−R, −ε]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BdGBlock {
    pub epsilon: f64,
    pub delta: f64,
}

impl BdGBlock {
    pub fn matrix(&self) -> [[f64; 2]; 2] {
        [[self.epsilon, -self.delta], [-self.delta, -self.epsilon]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BdGEigen {
    pub e_plus: f64,
    pub e_minus: f64,
    /// Eigenvector of `e_plus`, normalized, `u ≥ 0`.
    pub u: f64,
    pub v: f64,
}

pub fn bdg_eigen(block: &BdGBlock) -> BdGEigen {
    let (eps, r) = (block.epsilon, block.delta);
    let e = bcs_quasiparticle(eps, r);
    let (mut u, mut v) = if e == 0.0 {
        (1.0, 0.0)
    } else if eps >= 0.0 {
        (e + eps, -r)
    } else {
        (r, eps - e)
    };
    let norm = u.hypot(v);
    u /= norm;
    v /= norm;
    if u < 0.0 {
        u = -u;
        v = -v;
    }
    BdGEigen {
        e_plus: e,
        e_minus: -e,
        u,
        v,
    }
}

/// Chemical potential halfway between the highest filled and lowest empty
/// sublevel when `n_pairs` pairs fill the spectrum at `g = 0`.
pub fn chemical_potential(model: &PairingModel, n_pairs: u32) -> Result<f64> {
    let mut eps = model.sublevel_energies();
    if n_pairs as usize > eps.len() {
        return Err(Error::domain(format!(
            "{n_pairs} pairs exceed the pair capacity {}",
            eps.len()
        )));
    }
    eps.sort_by(f64::total_cmp);
    let n = n_pairs as usize;
    Ok(match (n.checked_sub(1).map(|i| eps[i]), eps.get(n)) {
        (Some(filled), Some(&empty)) => 0.5 * (filled + empty),
        (Some(filled), None) => filled,
        (None, Some(&empty)) => empty,
        (None, None) => unreachable!("models have at least one level"),
    })
}

/// Gap at half filling (`⌊capacity/2⌋` pairs).
pub fn gap_self_consistent(model: &PairingModel) -> f64 {
    gap_self_consistent_with_pairs(model, model.pair_capacity() / 2)
        .expect("half filling is within capacity")
}

/// Solves `1 = g Σ Ω/(2√((ε − μ)² + Δ²))` for `Δ ≥ 0`; 0 in the normal state.
pub fn gap_self_consistent_with_pairs(model: &PairingModel, n_pairs: u32) -> Result<f64> {
    let mu = chemical_potential(model, n_pairs)?;
    let g = model.g();
    if g == 0.0 {
        return Ok(0.0);
    }
    let sum = |delta: f64| -> f64 {
        g * model
            .levels()
            .iter()
            .map(|l| f64::from(l.omega) / (2.0 * (l.epsilon - mu).hypot(delta)))
            .sum::<f64>()
    };
    if sum(0.0) <= 1.0 {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = 0.5 * g * f64::from(model.pair_capacity());
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sum(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{exact_ground_state, Level};
    use approx::assert_relative_eq;

    fn two_level(g: f64) -> PairingModel {
        PairingModel::nondegenerate(&[0.0, 1.0], g).unwrap()
    }

    #[test]
    fn cooper_two_level() {
        let e = cooper_pair_energy(&two_level(0.5)).unwrap();
        assert_relative_eq!(e, (1.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-12);
        let (exact, _) = exact_ground_state(&two_level(0.5), 1).unwrap();
        assert!((e - exact).abs() <= 1e-10);
        assert!(cooper_pair_energy(&two_level(0.0)).is_err());
    }

    #[test]
    fn cooper_weak_coupling_limit() {
        let mut previous = f64::NEG_INFINITY;
        for g in [1e-1, 1e-2, 1e-3, 1e-5, 1e-8] {
            let e = cooper_pair_energy(&two_level(g)).unwrap();
            assert!(e < 0.0 && e > previous);
            previous = e;
        }
        assert!(previous > -2e-8);
    }

    #[test]
    fn laguerre_seed_roots() {
        assert_relative_eq!(laguerre_roots(1, -2.0)[0].re, -1.0, epsilon = 1e-14);
        // L_2^(−3): x² + 2x + 2 up to scale
        let mut r = laguerre_roots(2, -3.0);
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert_relative_eq!(r[0].re, -1.0, epsilon = 1e-13);
        assert_relative_eq!(r[0].im, -1.0, epsilon = 1e-13);
        assert_relative_eq!(r[1].im, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn richardson_one_pair_is_cooper() {
        for g in [0.05, 0.3, 0.5, 1.2] {
            let model = two_level(g);
            let sol = richardson_solve(&model, 1).unwrap();
            let cooper = cooper_pair_energy(&model).unwrap();
            assert_relative_eq!(sol.total_energy, cooper, max_relative = 1e-12);
            assert!(sol.residual <= 1e-10);
        }
    }

    #[test]
    fn richardson_zero_coupling() {
        let model = PairingModel::nondegenerate(&[0.3, -0.1, 0.8], 0.0).unwrap();
        let sol = richardson_solve(&model, 2).unwrap();
        assert_eq!(sol.pair_energies, vec![Complex64::new(-0.2, 0.0), Complex64::new(0.6, 0.0)]);
        assert!(richardson_solve(&model, 0).is_err());
        assert!(richardson_solve(&model, 4).is_err());
    }

    #[test]
    fn richardson_degenerate_level() {
        // one level, Ω = 2, two pairs: E_total = 4ε − 2g(Ω − 1)... exact oracle decides
        let model = PairingModel::new(vec![Level { epsilon: 0.4, omega: 3 }], 0.2).unwrap();
        for n in 1..=3 {
            let sol = richardson_solve(&model, n).unwrap();
            let (exact, _) = exact_ground_state(&model, n).unwrap();
            assert_relative_eq!(sol.total_energy, exact, max_relative = 1e-10);
            assert!(sol.total_energy_imag.abs() <= 1e-10);
            assert!(sol.residual <= 1e-10, "residual {}", sol.residual);
        }
    }

    #[test]
    fn richardson_matches_oracle() {
        let model = PairingModel::new(
            vec![
                Level { epsilon: 0.0, omega: 1 },
                Level { epsilon: 0.5, omega: 2 },
                Level { epsilon: 1.3, omega: 1 },
                Level { epsilon: 2.0, omega: 1 },
            ],
            0.15,
        )
        .unwrap();
        for n in 1..=3 {
            let sol = richardson_solve(&model, n).unwrap();
            let (exact, _) = exact_ground_state(&model, n).unwrap();
            assert_relative_eq!(sol.total_energy, exact, max_relative = 1e-8);
            assert!(sol.residual <= 1e-10);
        }
    }

    #[test]
    fn richardson_past_critical_coupling() {
        // two pairs on equally spaced levels collide and go complex
        let model = PairingModel::nondegenerate(&[0.0, 1.0, 2.0, 3.0], 1.0).unwrap();
        let sol = richardson_solve(&model, 2).unwrap();
        let (exact, _) = exact_ground_state(&model, 2).unwrap();
        assert_relative_eq!(sol.total_energy, exact, max_relative = 1e-8);
        assert!(sol.pair_energies.iter().any(|e| e.im.abs() > 1e-6));
        assert!(sol.total_energy_imag.abs() <= 1e-10);
    }

    #[test]
    fn conjugation_closure_along_real_path() {
        let model = PairingModel::new(
            vec![Level { epsilon: 0.0, omega: 2 }, Level { epsilon: 1.0, omega: 2 }],
            0.2,
        )
        .unwrap();
        let mut steps = 0;
        let sol = richardson_solve_observed(&model, 3, |g, e| {
            assert_eq!(g.im, 0.0);
            for x in e {
                let partner = e.iter().map(|y| (y - x.conj()).norm()).fold(f64::INFINITY, f64::min);
                assert!(partner <= 1e-9 * x.norm().max(1.0));
            }
            steps += 1;
        })
        .unwrap();
        assert!(!sol.complex_detour);
        assert!(steps > 1);
    }

    #[test]
    fn residual_sensitivity() {
        let model = PairingModel::nondegenerate(&[0.0, 0.7, 1.5], 0.2).unwrap();
        let sol = richardson_solve(&model, 2).unwrap();
        assert!(sol.residual <= 1e-10);
        let mut moved = sol.pair_energies.clone();
        moved[0] += 1e-3;
        assert!(richardson_residual(&model, &moved).unwrap() > 1e-4);
        let on_pole = vec![Complex64::new(0.0, 0.0), sol.pair_energies[1]];
        assert_eq!(richardson_residual(&model, &on_pole).unwrap(), f64::INFINITY);
        // one pair: |F(E) − 1/g|
        let e = Complex64::new(-0.3, 0.0);
        let f = 1.0 / 0.3 + 1.0 / 1.7 + 1.0 / 3.3;
        assert_relative_eq!(
            richardson_residual(&model, &[e]).unwrap(),
            (f - 5.0_f64).abs(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn quasiparticle_and_bdg() {
        assert_eq!(bcs_quasiparticle(3.0, 4.0), 5.0);
        assert_eq!(bcs_quasiparticle(-2.0, 0.0), 2.0);
        let eig = bdg_eigen(&BdGBlock { epsilon: 3.0, delta: 4.0 });
        assert_eq!((eig.e_plus, eig.e_minus), (5.0, -5.0));
        let eig = bdg_eigen(&BdGBlock { epsilon: 0.0, delta: 1.0 });
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(eig.u, h, epsilon = 1e-15);
        assert_relative_eq!(eig.v, -h, epsilon = 1e-15);
        let eig = bdg_eigen(&BdGBlock { epsilon: -2.0, delta: 0.0 });
        assert_eq!((eig.e_plus, eig.u, eig.v), (2.0, 0.0, -1.0));
        let eig = bdg_eigen(&BdGBlock { epsilon: 2.0, delta: 0.0 });
        assert_eq!((eig.u, eig.v), (1.0, 0.0));
    }

    #[test]
    fn gap_examples() {
        let single = PairingModel::nondegenerate(&[0.0], 0.6).unwrap();
        assert_relative_eq!(gap_self_consistent(&single), 0.3, epsilon = 1e-14);
        assert_eq!(gap_self_consistent(&two_level(0.4)), 0.0);
        for g in [0.6, 1.0, 2.5] {
            assert_relative_eq!(
                gap_self_consistent(&two_level(g)),
                (g * g - 0.25_f64).sqrt(),
                epsilon = 1e-12
            );
        }
        assert_eq!(gap_self_consistent(&two_level(0.0)), 0.0);
        assert!(gap_self_consistent_with_pairs(&two_level(1.0), 3).is_err());
        assert_relative_eq!(chemical_potential(&two_level(1.0), 0).unwrap(), 0.0);
        assert_relative_eq!(chemical_potential(&two_level(1.0), 2).unwrap(), 1.0);
    }
}

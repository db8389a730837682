//! Fermionic Fock space on `2L` modes and the reduced-BCS pairing
//! Hamiltonian.
//!
//! Basis states are occupation bitmasks. Mode `(f, σ)` is bit `2f` for
//! `σ = +` and bit `2f + 1` for `σ = −`, so modes are ordered by level and
//! `+` before `−`. Creation on mode `i` carries the Jordan–Wigner sign
//! `(−1)^(number of occupied modes below i)`.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use sprs::{CsMat, TriMat};

use crate::error::{Error, Result};

pub const MAX_LEVELS: u32 = 12;

/// Spaces with at most this many levels use dense storage.
pub const DENSE_LEVEL_LIMIT: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Plus,
    Minus,
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spin::Plus => "+",
            Spin::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    levels: u32,
}

impl FockSpace {
    pub fn new(levels: u32) -> Result<Self> {
        if !(1..=MAX_LEVELS).contains(&levels) {
            return Err(Error::domain(format!(
                "level count {levels} outside 1..={MAX_LEVELS}"
            )));
        }
        Ok(FockSpace { levels })
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn modes(&self) -> usize {
        2 * self.levels as usize
    }

    pub fn dimension(&self) -> usize {
        1 << self.modes()
    }

    pub fn mode_index(&self, f: u32, sigma: Spin) -> Result<usize> {
        if f >= self.levels {
            return Err(Error::domain(format!(
                "level {f} does not exist in a space with {} levels",
                self.levels
            )));
        }
        Ok(2 * f as usize + usize::from(sigma == Spin::Minus))
    }

    fn is_dense(&self) -> bool {
        self.levels <= DENSE_LEVEL_LIMIT
    }

    /// Builds the operator whose action on basis state `s` is
    /// `sign · |target⟩` (or zero).
    fn operator<F>(&self, action: F) -> OperatorMatrix
    where
        F: Fn(usize) -> Option<(usize, f64)>,
    {
        let dim = self.dimension();
        if self.is_dense() {
            let mut m = DMatrix::zeros(dim, dim);
            for s in 0..dim {
                if let Some((t, v)) = action(s) {
                    m[(t, s)] += v;
                }
            }
            OperatorMatrix::Dense(m)
        } else {
            let mut tri = TriMat::new((dim, dim));
            for s in 0..dim {
                if let Some((t, v)) = action(s) {
                    tri.add_triplet(t, s, v);
                }
            }
            OperatorMatrix::Sparse(tri.to_csr())
        }
    }

    pub fn identity(&self) -> OperatorMatrix {
        self.operator(|s| Some((s, 1.0)))
    }

    pub fn zero(&self) -> OperatorMatrix {
        self.operator(|_| None)
    }
}

/// Square operator matrix on a Fock space.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorMatrix {
    Dense(DMatrix<f64>),
    Sparse(CsMat<f64>),
}

impl OperatorMatrix {
    pub fn dimension(&self) -> usize {
        match self {
            OperatorMatrix::Dense(m) => m.nrows(),
            OperatorMatrix::Sparse(m) => m.rows(),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        match self {
            OperatorMatrix::Dense(m) => m[(row, col)],
            OperatorMatrix::Sparse(m) => m.get(row, col).copied().unwrap_or(0.0),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            OperatorMatrix::Dense(m) => m.clone(),
            OperatorMatrix::Sparse(m) => {
                let mut d = DMatrix::zeros(m.rows(), m.cols());
                for (&v, (i, j)) in m.iter() {
                    d[(i, j)] += v;
                }
                d
            }
        }
    }

    fn to_sparse(&self) -> CsMat<f64> {
        match self {
            OperatorMatrix::Sparse(m) => m.clone(),
            OperatorMatrix::Dense(m) => {
                let mut tri = TriMat::new((m.nrows(), m.ncols()));
                for j in 0..m.ncols() {
                    for i in 0..m.nrows() {
                        if m[(i, j)] != 0.0 {
                            tri.add_triplet(i, j, m[(i, j)]);
                        }
                    }
                }
                tri.to_csr()
            }
        }
    }

    /// Largest absolute entry; 0 for the zero matrix.
    pub fn max_abs(&self) -> f64 {
        match self {
            OperatorMatrix::Dense(m) => m.amax(),
            OperatorMatrix::Sparse(m) => m.data().iter().fold(0.0, |a, v| a.max(v.abs())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    /// Conjugate transpose (the matrices are real).
    pub fn adjoint(&self) -> OperatorMatrix {
        match self {
            OperatorMatrix::Dense(m) => OperatorMatrix::Dense(m.transpose()),
            OperatorMatrix::Sparse(m) => OperatorMatrix::Sparse(m.transpose_view().to_csr()),
        }
    }

    pub fn scale(&self, factor: f64) -> OperatorMatrix {
        match self {
            OperatorMatrix::Dense(m) => OperatorMatrix::Dense(m * factor),
            OperatorMatrix::Sparse(m) => OperatorMatrix::Sparse(m.map(|v| v * factor)),
        }
    }

    pub fn mul(&self, other: &OperatorMatrix) -> OperatorMatrix {
        match (self, other) {
            (OperatorMatrix::Dense(a), OperatorMatrix::Dense(b)) => OperatorMatrix::Dense(a * b),
            _ => OperatorMatrix::Sparse(&self.to_sparse() * &other.to_sparse()),
        }
    }

    pub fn add(&self, other: &OperatorMatrix) -> OperatorMatrix {
        match (self, other) {
            (OperatorMatrix::Dense(a), OperatorMatrix::Dense(b)) => OperatorMatrix::Dense(a + b),
            _ => OperatorMatrix::Sparse(&self.to_sparse() + &other.to_sparse()),
        }
    }

    pub fn sub(&self, other: &OperatorMatrix) -> OperatorMatrix {
        match (self, other) {
            (OperatorMatrix::Dense(a), OperatorMatrix::Dense(b)) => OperatorMatrix::Dense(a - b),
            _ => OperatorMatrix::Sparse(&self.to_sparse() - &other.to_sparse()),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.sub(&self.adjoint()).is_zero()
    }

    /// Sorted eigenvalues of a symmetric matrix.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        sorted_eigenvalues(self.to_dense())
    }
}

/// `AB + BA`.
pub fn anticommutator(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    a.mul(b).add(&b.mul(a))
}

/// `AB − BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    a.mul(b).sub(&b.mul(a))
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

fn jordan_wigner_sign(state: usize, mode: usize) -> f64 {
    if (state & ((1 << mode) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn create_bits(state: usize, mode: usize) -> Option<(usize, f64)> {
    let bit = 1 << mode;
    (state & bit == 0).then(|| (state | bit, jordan_wigner_sign(state, mode)))
}

fn annihilate_bits(state: usize, mode: usize) -> Option<(usize, f64)> {
    let bit = 1 << mode;
    (state & bit != 0).then(|| (state & !bit, jordan_wigner_sign(state, mode)))
}

/// `c†_{fσ}`.
pub fn creation(space: &FockSpace, f: u32, sigma: Spin) -> Result<OperatorMatrix> {
    let mode = space.mode_index(f, sigma)?;
    Ok(space.operator(|s| create_bits(s, mode)))
}

/// `c_{fσ}`.
pub fn annihilation(space: &FockSpace, f: u32, sigma: Spin) -> Result<OperatorMatrix> {
    let mode = space.mode_index(f, sigma)?;
    Ok(space.operator(|s| annihilate_bits(s, mode)))
}

/// All annihilators in mode order.
pub fn annihilators(space: &FockSpace) -> Vec<OperatorMatrix> {
    (0..space.modes())
        .map(|mode| space.operator(|s| annihilate_bits(s, mode)))
        .collect()
}

/// `(ê_i, ê_i†) = (a_i − a_i†, a_i + a_i†)` for every mode, in mode order.
pub fn clifford_operators(space: &FockSpace) -> Vec<(OperatorMatrix, OperatorMatrix)> {
    annihilators(space)
        .into_iter()
        .map(|a| {
            let a_dag = a.adjoint();
            (a.sub(&a_dag), a.add(&a_dag))
        })
        .collect()
}

/// `n_{fσ} = c†c`, diagonal.
pub fn occupation(space: &FockSpace, f: u32, sigma: Spin) -> Result<OperatorMatrix> {
    let mode = space.mode_index(f, sigma)?;
    Ok(space.operator(|s| (s & (1 << mode) != 0).then_some((s, 1.0))))
}

/// `N̂_f = ½(n_{f+} + n_{f−})`.
pub fn pair_number(space: &FockSpace, f: u32) -> Result<OperatorMatrix> {
    Ok(occupation(space, f, Spin::Plus)?
        .add(&occupation(space, f, Spin::Minus)?)
        .scale(0.5))
}

/// `Σ_f N̂_f`.
pub fn total_pair_number(space: &FockSpace) -> OperatorMatrix {
    let modes = space.modes();
    space.operator(|s| Some((s, f64::from((s & ((1 << modes) - 1)).count_ones()) / 2.0)))
}

/// `ν̂_f = n_{f+} − n_{f−}`.
pub fn seniority(space: &FockSpace, f: u32) -> Result<OperatorMatrix> {
    Ok(occupation(space, f, Spin::Plus)?.sub(&occupation(space, f, Spin::Minus)?))
}

/// `b̂_f = c_{f−} c_{f+}`.
pub fn pair_annihilation(space: &FockSpace, f: u32) -> Result<OperatorMatrix> {
    Ok(annihilation(space, f, Spin::Minus)?.mul(&annihilation(space, f, Spin::Plus)?))
}

/// One level of a pairing model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub epsilon: f64,
    /// Pair degeneracy `Ω ≥ 1`.
    pub omega: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairingModel {
    levels: Vec<Level>,
    g: f64,
}

impl PairingModel {
    pub fn new(levels: Vec<Level>, g: f64) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::domain("pairing model needs at least one level"));
        }
        for (i, level) in levels.iter().enumerate() {
            if !level.epsilon.is_finite() {
                return Err(Error::domain(format!("level {i}: energy must be finite")));
            }
            if level.omega == 0 {
                return Err(Error::domain(format!("level {i}: degeneracy must be >= 1")));
            }
        }
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::domain(format!("coupling g = {g} must be finite and >= 0")));
        }
        Ok(PairingModel { levels, g })
    }

    /// Levels with `Ω = 1` each.
    pub fn nondegenerate(epsilons: &[f64], g: f64) -> Result<Self> {
        Self::new(
            epsilons.iter().map(|&epsilon| Level { epsilon, omega: 1 }).collect(),
            g,
        )
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn with_g(&self, g: f64) -> Result<Self> {
        Self::new(self.levels.clone(), g)
    }

    /// `Σ Ω_f`, the number of pair sublevels.
    pub fn pair_capacity(&self) -> u32 {
        self.levels.iter().map(|l| l.omega).sum()
    }

    /// Single-particle energy of each sublevel, `Ω` copies per level.
    pub fn sublevel_energies(&self) -> Vec<f64> {
        self.levels
            .iter()
            .flat_map(|l| std::iter::repeat(l.epsilon).take(l.omega as usize))
            .collect()
    }
}

/// `Ĥ = Σ_f 2ε_f N̂_f − g Σ_{f,f'} b̂†_f b̂_{f'}`, built from operator products.
///
/// Degenerate levels occupy `Ω` consecutive sublevels of the space.
pub fn pairing_hamiltonian(space: &FockSpace, model: &PairingModel) -> Result<OperatorMatrix> {
    if model.pair_capacity() != space.levels() {
        return Err(Error::domain(format!(
            "model has {} sublevels but the space has {} levels",
            model.pair_capacity(),
            space.levels()
        )));
    }
    let energies = model.sublevel_energies();
    let mut h = space.zero();
    let mut pairs = Vec::with_capacity(energies.len());
    for (f, &eps) in energies.iter().enumerate() {
        let f = f as u32;
        h = h.add(&pair_number(space, f)?.scale(2.0 * eps));
        pairs.push(pair_annihilation(space, f)?);
    }
    if model.g() != 0.0 {
        let mut scattering = space.zero();
        for b in &pairs {
            let b_dag = b.adjoint();
            for b2 in &pairs {
                scattering = scattering.add(&b_dag.mul(b2));
            }
        }
        h = h.sub(&scattering.scale(model.g()));
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCommutatorReport {
    /// `max |[b_f, N_f'] − δ b_f|`.
    pub number_deviation: f64,
    /// `max |[b_f, b†_f'] − δ(1 − 2N_f')|`.
    pub pair_deviation: f64,
    /// `max |[b_f, b†_f] − 1|`; nonzero means the pairs are not ideal bosons.
    pub bosonic_deviation: f64,
}

pub fn pair_commutators_check(space: &FockSpace) -> PairCommutatorReport {
    let levels = space.levels();
    let identity = space.identity();
    let b: Vec<_> = (0..levels)
        .map(|f| pair_annihilation(space, f).expect("level in range"))
        .collect();
    let n: Vec<_> = (0..levels)
        .map(|f| pair_number(space, f).expect("level in range"))
        .collect();
    let zero = space.zero();
    let mut report = PairCommutatorReport {
        number_deviation: 0.0,
        pair_deviation: 0.0,
        bosonic_deviation: 0.0,
    };
    for f in 0..levels as usize {
        for f2 in 0..levels as usize {
            let same = f == f2;
            let expected = if same { b[f].clone() } else { zero.clone() };
            let dev = commutator(&b[f], &n[f2]).sub(&expected).max_abs();
            report.number_deviation = report.number_deviation.max(dev);

            let expected = if same {
                identity.sub(&n[f2].scale(2.0))
            } else {
                zero.clone()
            };
            let c = commutator(&b[f], &b[f2].adjoint());
            report.pair_deviation = report.pair_deviation.max(c.sub(&expected).max_abs());
            if same {
                let dev = c.sub(&identity).max_abs();
                report.bosonic_deviation = report.bosonic_deviation.max(dev);
            }
        }
    }
    report
}

/// Pair-occupation basis of `n_pairs` pairs on `sublevels` sublevels.
fn pair_basis(sublevels: usize, n_pairs: usize) -> Vec<u32> {
    (0u32..1 << sublevels)
        .filter(|s| s.count_ones() as usize == n_pairs)
        .collect()
}

/// Seniority-zero block of the pairing Hamiltonian on the given sublevels.
///
/// Pair creation operators commute, so hopping a pair between sublevels
/// has amplitude `−g` with no sign.
fn seniority_zero_block(energies: &[f64], g: f64, n_pairs: usize) -> DMatrix<f64> {
    let basis = pair_basis(energies.len(), n_pairs);
    let index: std::collections::HashMap<u32, usize> =
        basis.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut h = DMatrix::zeros(basis.len(), basis.len());
    for (col, &s) in basis.iter().enumerate() {
        let mut diag = -g * n_pairs as f64;
        for (k, &eps) in energies.iter().enumerate() {
            if s & (1 << k) != 0 {
                diag += 2.0 * eps;
            }
        }
        h[(col, col)] = diag;
        for from in 0..energies.len() {
            if s & (1 << from) == 0 {
                continue;
            }
            for to in 0..energies.len() {
                if s & (1 << to) != 0 {
                    continue;
                }
                let target = (s & !(1 << from)) | (1 << to);
                h[(index[&target], col)] -= g;
            }
        }
    }
    h
}

/// Spectrum of the seniority-zero sector with `n_pairs` pairs.
pub fn sector_spectrum(model: &PairingModel, n_pairs: u32) -> Result<Vec<f64>> {
    let energies = model.sublevel_energies();
    if n_pairs > model.pair_capacity() {
        return Err(Error::domain(format!(
            "{n_pairs} pairs exceed the pair capacity {}",
            model.pair_capacity()
        )));
    }
    if energies.len() > 2 * MAX_LEVELS as usize {
        return Err(Error::domain("too many sublevels for exact diagonalization"));
    }
    let h = seniority_zero_block(&energies, model.g(), n_pairs as usize);
    Ok(sorted_eigenvalues(h))
}

/// Lowest energy and dimension of the seniority-zero sector with `n_pairs`
/// pairs.
pub fn exact_ground_state(model: &PairingModel, n_pairs: u32) -> Result<(f64, usize)> {
    let spectrum = sector_spectrum(model, n_pairs)?;
    Ok((spectrum[0], spectrum.len()))
}

/// Full spectrum assembled sector by sector: every subset `B` of blocked
/// (singly occupied) sublevels contributes `Σ_B ε` plus the pair spectra of
/// the remaining sublevels, with multiplicity `2^|B|`.
pub fn spectrum_by_sectors(model: &PairingModel) -> Result<Vec<f64>> {
    let energies = model.sublevel_energies();
    let p = energies.len();
    if p > 8 {
        return Err(Error::domain("sector enumeration limited to 8 sublevels"));
    }
    let mut all = Vec::with_capacity(1 << (2 * p));
    for blocked in 0u32..1 << p {
        let blocked_energy: f64 = (0..p)
            .filter(|k| blocked & (1 << k) != 0)
            .map(|k| energies[k])
            .sum();
        let free: Vec<f64> = (0..p)
            .filter(|k| blocked & (1 << k) == 0)
            .map(|k| energies[k])
            .collect();
        let multiplicity = 1usize << blocked.count_ones();
        for n in 0..=free.len() {
            for e in sorted_eigenvalues(seniority_zero_block(&free, model.g(), n)) {
                all.extend(std::iter::repeat(e + blocked_energy).take(multiplicity));
            }
        }
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BogoliubovReport {
    /// `max |{γ_i†, γ_j} − δ_ij|`.
    pub mixed_deviation: f64,
    /// `max |{γ_i, γ_j}|`.
    pub same_deviation: f64,
}

/// Quasiparticles `γ_+ = u c_+ − v c_−†`, `γ_− = u c_− + v c_+†` on one level.
pub fn bogoliubov_operators(u: f64, v: f64) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if !(u.is_finite() && v.is_finite()) || (u * u + v * v - 1.0).abs() > 1e-12 {
        return Err(Error::domain(format!(
            "u² + v² = {} must equal 1 within 1e-12",
            u * u + v * v
        )));
    }
    let space = FockSpace::new(1)?;
    let c_plus = annihilation(&space, 0, Spin::Plus)?;
    let c_minus = annihilation(&space, 0, Spin::Minus)?;
    let gamma_plus = c_plus.scale(u).sub(&c_minus.adjoint().scale(v));
    let gamma_minus = c_minus.scale(u).add(&c_plus.adjoint().scale(v));
    Ok((gamma_plus, gamma_minus))
}

pub fn bogoliubov_check(u: f64, v: f64) -> Result<BogoliubovReport> {
    let (gp, gm) = bogoliubov_operators(u, v)?;
    let identity = FockSpace::new(1)?.identity();
    let gammas = [gp, gm];
    let mut report = BogoliubovReport {
        mixed_deviation: 0.0,
        same_deviation: 0.0,
    };
    for (i, a) in gammas.iter().enumerate() {
        for (j, b) in gammas.iter().enumerate() {
            let mixed = anticommutator(&a.adjoint(), b);
            let mixed = if i == j { mixed.sub(&identity) } else { mixed };
            report.mixed_deviation = report.mixed_deviation.max(mixed.max_abs());
            report.same_deviation = report.same_deviation.max(anticommutator(a, b).max_abs());
        }
    }
    Ok(report)
}

//! Two non-interacting identical particles.
//!
//! Without interaction the pair evolves as `U⊗U`, so a pair state is stored
//! as two single-particle orbitals `A`, `B` and (anti)symmetrized only when
//! amplitudes are read out:
//!
//! ```text
//! ⟨i,j|ψ⟩ = (A_i B_j ± A_j B_i) / N,   N² = 2 (1 ± |⟨A|B⟩|²)
//! ```
//!
//! `+` for bosons, `−` for fermions. For orthonormal orbitals `N = √2`.
//! [`tensor_oracle_p_perp`] redoes the confinement probability in the full
//! `n²`-dimensional space as an independent check.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::dynamics::{check_site, evolve, ModalState, WaveFunction};
use crate::error::{Error, Result};
use crate::expm::{expm, ComplexMatrix};
use crate::graph::SiteId;
use crate::hamiltonian::HamiltonianMatrix;
use crate::metrics::{ProbabilitySeries, TimeGrid};
use crate::spectral::SpectralDecomposition;

/// Largest graph the tensor-space oracle accepts.
pub const TENSOR_ORACLE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statistics {
    Fermion,
    Boson,
}

impl Statistics {
    pub const ALL: [Statistics; 2] = [Statistics::Fermion, Statistics::Boson];

    /// Exchange sign: `+1` for bosons, `−1` for fermions.
    pub fn sign(self) -> f64 {
        match self {
            Statistics::Boson => 1.0,
            Statistics::Fermion => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fermion" | "fermions" | "f" => Ok(Statistics::Fermion),
            "boson" | "bosons" | "b" => Ok(Statistics::Boson),
            other => Err(format!("unknown statistics `{other}`")),
        }
    }
}

/// Dimension of the two-particle space on `n_sites` sites:
/// `n(n+1)/2` for bosons, `n(n−1)/2` for fermions.
pub fn pair_dimension(n_sites: usize, stats: Statistics) -> usize {
    match stats {
        Statistics::Boson => n_sites * (n_sites + 1) / 2,
        Statistics::Fermion => n_sites * n_sites.saturating_sub(1) / 2,
    }
}

/// A set of sites, stored as a membership mask over an `n`-site graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteSubset {
    mask: Vec<bool>,
}

impl SiteSubset {
    pub fn new(members: impl IntoIterator<Item = usize>, n_sites: usize) -> Result<Self> {
        let mut mask = vec![false; n_sites];
        for site in members {
            check_site(SiteId(site), n_sites)?;
            mask[site] = true;
        }
        Ok(SiteSubset { mask })
    }

    pub fn all(n_sites: usize) -> Self {
        SiteSubset {
            mask: vec![true; n_sites],
        }
    }

    pub fn empty(n_sites: usize) -> Self {
        SiteSubset {
            mask: vec![false; n_sites],
        }
    }

    pub fn n_sites(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.mask.get(site).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }
}

/// Two identical particles in orbitals `a` and `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairState {
    a: WaveFunction,
    b: WaveFunction,
    statistics: Statistics,
    // N² and 1/N, fixed at construction; unitary evolution preserves ⟨A|B⟩
    norm_sqr: f64,
    inv_norm: f64,
}

impl PairState {
    /// Builds the normalized (anti)symmetrization of `a ⊗ b`. Both orbitals
    /// must be normalized.
    pub fn new(a: WaveFunction, b: WaveFunction, statistics: Statistics) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                actual: b.dim(),
            });
        }
        let overlap = a.inner(&b).norm_sqr();
        let norm_sqr = 2.0 * (1.0 + statistics.sign() * overlap);
        if norm_sqr < 1e-12 {
            let site = a
                .amplitudes()
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))
                .map_or(0, |(i, _)| i);
            return Err(Error::PauliViolation(site));
        }
        Ok(PairState {
            a,
            b,
            statistics,
            norm_sqr,
            inv_norm: norm_sqr.sqrt().recip(),
        })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn orbitals(&self) -> (&WaveFunction, &WaveFunction) {
        (&self.a, &self.b)
    }

    fn with_orbitals(&self, a: WaveFunction, b: WaveFunction) -> Self {
        PairState {
            a,
            b,
            statistics: self.statistics,
            norm_sqr: self.norm_sqr,
            inv_norm: self.inv_norm,
        }
    }
}

/// Both particles localized: `(|i⟩|j⟩ ± |j⟩|i⟩)/√2`.
pub fn initial_pair(n_sites: usize, i: SiteId, j: SiteId, stats: Statistics) -> Result<PairState> {
    if i == j && stats == Statistics::Fermion {
        return Err(Error::PauliViolation(i.0));
    }
    PairState::new(
        WaveFunction::localized(n_sites, i)?,
        WaveFunction::localized(n_sites, j)?,
        stats,
    )
}

/// Tensor-basis amplitude `⟨i,j|ψ⟩`. Vanishes identically for fermions on
/// the diagonal.
pub fn pair_amplitude(state: &PairState, i: SiteId, j: SiteId) -> Complex64 {
    if i == j && state.statistics == Statistics::Fermion {
        return Complex64::new(0.0, 0.0);
    }
    let a = state.a.amplitudes();
    let b = state.b.amplitudes();
    (a[i.0] * b[j.0] + a[j.0] * b[i.0] * state.statistics.sign()) * state.inv_norm
}

/// Evolves both orbitals with the single-particle propagator.
pub fn evolve_pair(dec: &SpectralDecomposition, pair0: &PairState, t: f64) -> Result<PairState> {
    Ok(pair0.with_orbitals(evolve(dec, &pair0.a, t)?, evolve(dec, &pair0.b, t)?))
}

/// Probability that both particles are found inside `subset`:
/// `Σ_{i,j∈S} |⟨i,j|ψ⟩|²` over ordered pairs.
///
/// Expanding the square gives `(2/N²)(‖A_S‖²‖B_S‖² ± |⟨A_S|B_S⟩|²)`, where
/// `A_S` is `A` restricted to the subset, which is what is evaluated here.
pub fn p_perp(state: &PairState, subset: &SiteSubset) -> Result<f64> {
    if subset.n_sites() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            actual: subset.n_sites(),
        });
    }
    let a = state.a.amplitudes();
    let b = state.b.amplitudes();
    let mut na = 0.0;
    let mut nb = 0.0;
    let mut ab = Complex64::new(0.0, 0.0);
    for i in subset.members() {
        na += a[i].norm_sqr();
        nb += b[i].norm_sqr();
        ab += a[i].conj() * b[i];
    }
    let p = 2.0 * (na * nb + state.statistics.sign() * ab.norm_sqr()) / state.norm_sqr;
    Ok(p.clamp(0.0, 1.0))
}

/// [`p_perp`] of the evolved pair on every grid time.
pub fn p_perp_series(
    dec: &SpectralDecomposition,
    pair0: &PairState,
    subset: &SiteSubset,
    grid: TimeGrid,
) -> Result<ProbabilitySeries> {
    let modes_a = ModalState::new(dec, &pair0.a)?;
    let modes_b = ModalState::new(dec, &pair0.b)?;
    let values = grid
        .times()
        .map(|t| {
            let state = if t == 0.0 {
                pair0.clone()
            } else {
                pair0.with_orbitals(modes_a.at(t), modes_b.at(t))
            };
            p_perp(&state, subset)
        })
        .collect::<Result<Vec<_>>>()?;
    ProbabilitySeries::new(grid, values)
}

/// Confinement probability computed by brute force in the `n²`-dimensional
/// product space: `exp(−i(H⊗I + I⊗H)t)` applied to the explicitly
/// (anti)symmetrized initial vector, then projected onto the subset.
pub fn tensor_oracle_p_perp(
    h: &HamiltonianMatrix,
    pair0: &PairState,
    subset: &SiteSubset,
    t: f64,
) -> Result<f64> {
    let n = h.dim();
    if n > TENSOR_ORACLE_LIMIT {
        return Err(Error::DimensionLimit {
            n,
            limit: TENSOR_ORACLE_LIMIT,
        });
    }
    for actual in [pair0.dim(), subset.n_sites()] {
        if actual != n {
            return Err(Error::DimensionMismatch { expected: n, actual });
        }
    }

    let n2 = n * n;
    let mut gen = ComplexMatrix::zeros(n2);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                // H acting on the first particle, then on the second
                let first = gen.get(row, k * n + j) + Complex64::new(0.0, -t * h.get(i, k));
                gen.set(row, k * n + j, first);
                let second = gen.get(row, i * n + k) + Complex64::new(0.0, -t * h.get(j, k));
                gen.set(row, i * n + k, second);
            }
        }
    }
    let u = expm(&gen);

    let (a, b) = pair0.orbitals();
    let (a, b) = (a.amplitudes(), b.amplitudes());
    let sign = pair0.statistics().sign();
    let mut psi0: Vec<Complex64> = (0..n2)
        .map(|row| {
            let (i, j) = (row / n, row % n);
            a[i] * b[j] + b[i] * a[j] * sign
        })
        .collect();
    let norm = psi0.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    psi0.iter_mut().for_each(|x| *x /= norm);

    let psi = u.apply(&psi0);
    Ok(subset
        .members()
        .flat_map(|i| subset.members().map(move |j| (i, j)))
        .map(|(i, j)| psi[i * n + j].norm_sqr())
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::decompose;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn dimensions() {
        assert_eq!(pair_dimension(8, Statistics::Boson), 36);
        assert_eq!(pair_dimension(8, Statistics::Fermion), 28);
        assert_eq!(pair_dimension(1, Statistics::Fermion), 0);
        assert_eq!(pair_dimension(1, Statistics::Boson), 1);
        assert_eq!(pair_dimension(10, Statistics::Fermion), 45);
        assert_eq!(pair_dimension(10, Statistics::Boson), 55);
    }

    #[test]
    fn dimensions_match_enumeration() {
        for n in 1..=64usize {
            let unordered_distinct = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).count();
            assert_eq!(pair_dimension(n, Statistics::Fermion), unordered_distinct);
            assert_eq!(pair_dimension(n, Statistics::Boson), unordered_distinct + n);
        }
    }

    #[test]
    fn initial_amplitudes() {
        let f = initial_pair(10, SiteId(0), SiteId(1), Statistics::Fermion).unwrap();
        assert!((pair_amplitude(&f, SiteId(0), SiteId(1)).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((pair_amplitude(&f, SiteId(1), SiteId(0)).re + FRAC_1_SQRT_2).abs() < 1e-15);
        let b = initial_pair(10, SiteId(0), SiteId(1), Statistics::Boson).unwrap();
        assert!((pair_amplitude(&b, SiteId(1), SiteId(0)).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(
            pair_amplitude(&b, SiteId(0), SiteId(1)),
            pair_amplitude(&b, SiteId(1), SiteId(0))
        );
        assert!(matches!(
            initial_pair(10, SiteId(3), SiteId(3), Statistics::Fermion),
            Err(Error::PauliViolation(3))
        ));
    }

    #[test]
    fn doubly_occupied_boson_is_normalized() {
        let b = initial_pair(4, SiteId(2), SiteId(2), Statistics::Boson).unwrap();
        assert!((pair_amplitude(&b, SiteId(2), SiteId(2)).re - 1.0).abs() < 1e-15);
        assert!((p_perp(&b, &SiteSubset::all(4)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parallel_fermion_orbitals_rejected() {
        let a = WaveFunction::localized(3, SiteId(1)).unwrap();
        assert!(matches!(
            PairState::new(a.clone(), a, Statistics::Fermion),
            Err(Error::PauliViolation(1))
        ));
    }

    #[test]
    fn p_perp_basic_subsets() {
        let n = 10;
        let f = initial_pair(n, SiteId(0), SiteId(1), Statistics::Fermion).unwrap();
        let inside = SiteSubset::new(0..8, n).unwrap();
        assert_eq!(p_perp(&f, &inside).unwrap(), 1.0);
        assert_eq!(p_perp(&f, &SiteSubset::empty(n)).unwrap(), 0.0);
        let only_first = SiteSubset::new([0], n).unwrap();
        assert_eq!(p_perp(&f, &only_first).unwrap(), 0.0);
        assert!(matches!(
            p_perp(&f, &SiteSubset::all(4)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn stationary_under_zero_hamiltonian() {
        let dec = decompose(&HamiltonianMatrix::zeros(10)).unwrap();
        let f = initial_pair(10, SiteId(0), SiteId(1), Statistics::Fermion).unwrap();
        let grid = TimeGrid::until(50.0, 1.0).unwrap();
        let s = p_perp_series(&dec, &f, &SiteSubset::new(0..8, 10).unwrap(), grid).unwrap();
        assert!(s.values().iter().all(|&p| p == 1.0));
        let out = p_perp_series(&dec, &f, &SiteSubset::new([8, 9], 10).unwrap(), grid).unwrap();
        assert_eq!(out.values()[0], 0.0);
    }

    #[test]
    fn oracle_limits() {
        let h = HamiltonianMatrix::zeros(17);
        let p = initial_pair(17, SiteId(0), SiteId(1), Statistics::Boson).unwrap();
        assert!(matches!(
            tensor_oracle_p_perp(&h, &p, &SiteSubset::all(17), 1.0),
            Err(Error::DimensionLimit { n: 17, limit: 16 })
        ));
    }

    #[test]
    fn statistics_parse() {
        assert_eq!("Fermion".parse::<Statistics>().unwrap(), Statistics::Fermion);
        assert_eq!("boson".parse::<Statistics>().unwrap(), Statistics::Boson);
        assert!("anyon".parse::<Statistics>().is_err());
    }
}

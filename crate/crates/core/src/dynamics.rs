//! Single-particle Schrödinger evolution `ψ(t) = Σ_k e^{−iλ_k t} v_k ⟨v_k|ψ(0)⟩`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::SiteId;
use crate::metrics::{ProbabilitySeries, TimeGrid};
use crate::spectral::SpectralDecomposition;

/// Complex amplitudes over the graph sites.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunction(Vec<Complex64>);

impl WaveFunction {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        WaveFunction(amplitudes)
    }

    /// Particle localized on `site`.
    pub fn localized(n: usize, site: SiteId) -> Result<Self> {
        check_site(site, n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); n];
        amps[site.0] = Complex64::new(1.0, 0.0);
        Ok(WaveFunction(amps))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        self.0.iter_mut().for_each(|a| *a /= norm);
        self
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &WaveFunction) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }
}

pub(crate) fn check_site(site: SiteId, n: usize) -> Result<()> {
    if site.0 >= n {
        Err(Error::SiteOutOfRange { site: site.0, n })
    } else {
        Ok(())
    }
}

fn check_dim(dec: &SpectralDecomposition, n: usize) -> Result<()> {
    if dec.dim() != n {
        Err(Error::DimensionMismatch {
            expected: dec.dim(),
            actual: n,
        })
    } else {
        Ok(())
    }
}

/// A state expanded in the eigenbasis, ready to be evaluated at any time.
#[derive(Clone, Debug)]
pub struct ModalState<'a> {
    dec: &'a SpectralDecomposition,
    coefficients: Vec<Complex64>,
}

impl<'a> ModalState<'a> {
    pub fn new(dec: &'a SpectralDecomposition, psi0: &WaveFunction) -> Result<Self> {
        check_dim(dec, psi0.dim())?;
        let coefficients = dec
            .eigenvectors()
            .iter()
            .map(|v| {
                v.iter()
                    .zip(psi0.amplitudes())
                    .map(|(&vi, &p)| p * vi)
                    .sum()
            })
            .collect();
        Ok(ModalState { dec, coefficients })
    }

    pub fn at(&self, t: f64) -> WaveFunction {
        let n = self.dec.dim();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for ((&lambda, v), &c) in self
            .dec
            .eigenvalues()
            .iter()
            .zip(self.dec.eigenvectors())
            .zip(&self.coefficients)
        {
            let phased = c * Complex64::from_polar(1.0, -lambda * t);
            for (o, &vi) in out.iter_mut().zip(v) {
                *o += phased * vi;
            }
        }
        WaveFunction(out)
    }
}

/// `e^{−iHt} ψ0`. `t = 0` returns `psi0` unchanged.
pub fn evolve(dec: &SpectralDecomposition, psi0: &WaveFunction, t: f64) -> Result<WaveFunction> {
    check_dim(dec, psi0.dim())?;
    if t == 0.0 {
        return Ok(psi0.clone());
    }
    Ok(ModalState::new(dec, psi0)?.at(t))
}

/// Per-mode weights `v_k[to]·v_k[from]` of the propagator element.
fn propagator_weights(dec: &SpectralDecomposition, from: SiteId, to: SiteId) -> Result<Vec<f64>> {
    check_site(from, dec.dim())?;
    check_site(to, dec.dim())?;
    Ok(dec
        .eigenvectors()
        .iter()
        .map(|v| v[to.0] * v[from.0])
        .collect())
}

fn weighted_probability(dec: &SpectralDecomposition, weights: &[f64], t: f64) -> f64 {
    let amp: Complex64 = dec
        .eigenvalues()
        .iter()
        .zip(weights)
        .map(|(&lambda, &w)| Complex64::from_polar(w, -lambda * t))
        .sum();
    amp.norm_sqr().clamp(0.0, 1.0)
}

/// `|⟨to| e^{−iHt} |from⟩|²`, exactly `δ(from, to)` at `t = 0`.
pub fn transition_probability(
    dec: &SpectralDecomposition,
    from: SiteId,
    to: SiteId,
    t: f64,
) -> Result<f64> {
    let weights = propagator_weights(dec, from, to)?;
    Ok(weighted_probability_at(dec, &weights, from, to, t))
}

fn weighted_probability_at(
    dec: &SpectralDecomposition,
    weights: &[f64],
    from: SiteId,
    to: SiteId,
    t: f64,
) -> f64 {
    if t == 0.0 {
        if from == to {
            1.0
        } else {
            0.0
        }
    } else {
        weighted_probability(dec, weights, t)
    }
}

/// [`transition_probability`] sampled on `grid`.
pub fn probability_series(
    dec: &SpectralDecomposition,
    from: SiteId,
    to: SiteId,
    grid: TimeGrid,
) -> Result<ProbabilitySeries> {
    let weights = propagator_weights(dec, from, to)?;
    ProbabilitySeries::from_fn(grid, |t| weighted_probability_at(dec, &weights, from, to, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builtin_braess4;
    use crate::hamiltonian::HamiltonianMatrix;
    use crate::spectral::decompose;
    use std::collections::BTreeMap;

    fn ring(j: f64) -> SpectralDecomposition {
        decompose(
            &builtin_braess4(j, j, 0.0, 0.0)
                .hamiltonian(&BTreeMap::new())
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_at_time_zero() {
        let dec = ring(0.01);
        let psi = WaveFunction::new(vec![
            Complex64::new(0.5, 0.1),
            Complex64::new(0.0, -0.5),
            Complex64::new(0.3, 0.0),
            Complex64::new(-0.2, 0.2),
        ])
        .normalized();
        assert_eq!(evolve(&dec, &psi, 0.0).unwrap(), psi);
    }

    #[test]
    fn zero_hamiltonian_is_stationary() {
        let dec = decompose(&HamiltonianMatrix::zeros(3)).unwrap();
        let e0 = WaveFunction::localized(3, SiteId(0)).unwrap();
        for t in [1.0, 1e3, -50.0] {
            let psi = evolve(&dec, &e0, t).unwrap();
            assert!((psi.amplitudes()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn ring_perfect_transfer() {
        // ⟨2|e^{-iHt}|0⟩ = −sin²(Jt) on the uniform four-ring
        let j = 0.01;
        let dec = ring(j);
        let t = std::f64::consts::PI / (2.0 * j);
        let psi = evolve(&dec, &WaveFunction::localized(4, SiteId(0)).unwrap(), t).unwrap();
        assert!((psi.amplitudes()[2].norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ring_transition_closed_form() {
        let j = 0.01;
        let dec = ring(j);
        for t in [25.0, 78.54, 157.08] {
            let p = transition_probability(&dec, SiteId(0), SiteId(2), t).unwrap();
            assert!((p - (j * t).sin().powi(4)).abs() < 1e-9, "t = {t}");
        }
        assert_eq!(transition_probability(&dec, SiteId(1), SiteId(1), 0.0).unwrap(), 1.0);
        assert!(transition_probability(&dec, SiteId(1), SiteId(3), 0.0).unwrap() < 1e-30);
    }

    #[test]
    fn unitarity_on_braess4() {
        let dec = decompose(
            &builtin_braess4(0.01, 0.01, 0.1, 0.0)
                .hamiltonian(&BTreeMap::new())
                .unwrap(),
        )
        .unwrap();
        let total: f64 = (0..4)
            .map(|j| transition_probability(&dec, SiteId(0), SiteId(j), 500.0).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn series_matches_pointwise() {
        let dec = ring(0.01);
        let grid = TimeGrid::until(400.0, 0.5).unwrap();
        let s = probability_series(&dec, SiteId(0), SiteId(2), grid).unwrap();
        for (t, p) in s.iter() {
            assert!((p - (0.01 * t).sin().powi(4)).abs() < 1e-9);
            assert_eq!(p, transition_probability(&dec, SiteId(0), SiteId(2), t).unwrap());
        }
        let same = probability_series(&dec, SiteId(3), SiteId(3), grid).unwrap();
        assert_eq!(same.values()[0], 1.0);
    }

    #[test]
    fn braess4_peak_times() {
        // Frozen from an independent dense eigh + phase-sum evaluation
        // (dt = 0.1). At c = 0.01 the beat between the two bright modes keeps
        // the first maximum (t ≈ 152.4) at 0.862.
        let grid = TimeGrid::until(5000.0, 0.1).unwrap();
        let expected = [(0.01, 609.6), (0.05, 392.5), (0.1, 700.1)];
        for (c, t_peak) in expected {
            let dec = decompose(
                &builtin_braess4(0.01, 0.01, c, 0.0)
                    .hamiltonian(&BTreeMap::new())
                    .unwrap(),
            )
            .unwrap();
            let s = probability_series(&dec, SiteId(0), SiteId(2), grid).unwrap();
            let got = crate::metrics::first_peak_time(&s, 0.9).unwrap();
            assert!((got - t_peak).abs() < 0.05, "c = {c}: {got}");
            assert!(s.max() > 0.99, "c = {c}: max {}", s.max());
        }
    }

    #[test]
    fn errors() {
        let dec = ring(0.01);
        assert!(matches!(
            evolve(&dec, &WaveFunction::localized(3, SiteId(0)).unwrap(), 1.0),
            Err(Error::DimensionMismatch { expected: 4, actual: 3 })
        ));
        assert!(matches!(
            transition_probability(&dec, SiteId(4), SiteId(0), 1.0),
            Err(Error::SiteOutOfRange { site: 4, n: 4 })
        ));
    }
}

//! Dense symmetric eigensolver (cyclic Jacobi rotations).

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianMatrix;

const MAX_SWEEPS: usize = 64;
const RESIDUAL_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order with an orthonormal set of eigenvectors.
///
/// Each eigenvector has its first non-negligible component positive, so the
/// output is reproducible for identical input.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    values: Vec<f64>,
    // vectors[k] is the unit eigenvector of values[k]
    vectors: Vec<Vec<f64>>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Difference between the two lowest eigenvalues, `None` for a 1×1 matrix.
    pub fn spectral_gap(&self) -> Option<f64> {
        (self.values.len() >= 2).then(|| self.values[1] - self.values[0])
    }

    /// Largest `‖H v_k − λ_k v_k‖₂` over all eigenpairs.
    pub fn max_residual(&self, h: &HamiltonianMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&lambda, v)| {
                (0..h.dim())
                    .map(|i| {
                        let hv: f64 = h.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
                        (hv - lambda * v[i]).powi(2)
                    })
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Diagonalizes a real symmetric matrix.
///
/// Fails with [`Error::ConvergenceFailure`] when the residual contract
/// `‖H v − λ v‖ ≤ 1e-10 · max(1, ‖H‖_F)` is not met within the sweep budget.
pub fn decompose(h: &HamiltonianMatrix) -> Result<SpectralDecomposition> {
    let n = h.dim();
    let mut a = h.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = h.frobenius_norm();

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| 2.0 * a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale * 1e-2 || off == 0.0 {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- A J
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                // A <- Jᵀ A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                // V <- V J
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| {
            let mut col: Vec<f64> = (0..n).map(|i| v[i * n + k]).collect();
            if let Some(&lead) = col.iter().find(|x| x.abs() > 1e-12) {
                if lead < 0.0 {
                    col.iter_mut().for_each(|x| *x = -*x);
                }
            }
            col
        })
        .collect();

    let dec = SpectralDecomposition { values, vectors };
    let residual = dec.max_residual(h);
    if residual.is_nan() || residual > RESIDUAL_TOL * scale.max(1.0) {
        return Err(Error::ConvergenceFailure { residual, sweeps });
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builtin_braess4;
    use std::collections::BTreeMap;

    fn assert_orthonormal(dec: &SpectralDecomposition) {
        for j in 0..dec.dim() {
            for k in 0..dec.dim() {
                let dot: f64 = dec
                    .eigenvector(j)
                    .iter()
                    .zip(dec.eigenvector(k))
                    .map(|(a, b)| a * b)
                    .sum();
                let expected = if j == k { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() <= 1e-10, "<v{j},v{k}> = {dot}");
            }
        }
    }

    #[test]
    fn ring_of_four_spectrum() {
        // adjacency of C4 times J has eigenvalues 2J cos(πk/2) = {2J, 0, -2J, 0}
        let j = 0.01;
        let h = builtin_braess4(j, j, 0.0, 0.0)
            .hamiltonian(&BTreeMap::new())
            .unwrap();
        let dec = decompose(&h).unwrap();
        let expected = [-0.02, 0.0, 0.0, 0.02];
        for (got, want) in dec.eigenvalues().iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
        assert!(dec.max_residual(&h) <= 1e-10);
        assert_orthonormal(&dec);
    }

    #[test]
    fn zero_matrix() {
        let dec = decompose(&HamiltonianMatrix::zeros(4)).unwrap();
        assert_eq!(dec.eigenvalues(), &[0.0; 4]);
        assert_orthonormal(&dec);
    }

    #[test]
    fn scaled_identity() {
        let h = HamiltonianMatrix::from_upper(10, |i, j| if i == j { 0.5 } else { 0.0 });
        let dec = decompose(&h).unwrap();
        assert!(dec.eigenvalues().iter().all(|&x| x == 0.5));
        assert_eq!(dec.spectral_gap(), Some(0.0));
    }

    #[test]
    fn two_by_two_closed_form() {
        let h = HamiltonianMatrix::from_upper(2, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (1, 1) => -1.0,
            _ => 2.0,
        });
        let dec = decompose(&h).unwrap();
        let r = 5f64.sqrt();
        assert!((dec.eigenvalues()[0] + r).abs() < 1e-14);
        assert!((dec.eigenvalues()[1] - r).abs() < 1e-14);
        assert!(dec.eigenvectors().iter().all(|v| v[0] > 0.0));
    }

    #[test]
    fn deterministic() {
        let h = HamiltonianMatrix::from_upper(7, |i, j| ((i * 7 + j) as f64 * 0.37).sin());
        assert_eq!(decompose(&h).unwrap(), decompose(&h).unwrap());
    }

    #[test]
    fn one_by_one() {
        let h = HamiltonianMatrix::from_upper(1, |_, _| 3.0);
        let dec = decompose(&h).unwrap();
        assert_eq!(dec.eigenvalues(), &[3.0]);
        assert_eq!(dec.spectral_gap(), None);
    }
}

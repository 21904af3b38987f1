use num_complex::Complex64;

/// Dense real symmetric tight-binding Hamiltonian (ħ = 1).
///
/// Entries can only be written pairwise, so `H[i][j] == H[j][i]` holds
/// bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl HamiltonianMatrix {
    pub fn zeros(n: usize) -> Self {
        HamiltonianMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    /// Builds a matrix from its upper triangle `f(i, j)`, `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut h = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                h.set_symmetric(i, j, f(i, j));
            }
        }
        h
    }

    pub(crate) fn set_symmetric(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn scaled(&self, factor: f64) -> Self {
        HamiltonianMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    /// `H ψ`.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(psi.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(psi)
                    .map(|(&h, &p)| p * h)
                    .sum()
            })
            .collect()
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, psi: &[Complex64]) -> f64 {
        self.apply(psi)
            .iter()
            .zip(psi)
            .map(|(hp, p)| (p.conj() * hp).re)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

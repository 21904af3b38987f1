//! Dense complex matrix exponential by scaling and squaring of a truncated
//! Taylor series.
//!
//! This deliberately shares nothing with the spectral propagator in
//! [`crate::dynamics`]; it exists to cross-check it.

use num_complex::Complex64;

use crate::hamiltonian::HamiltonianMatrix;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.n + j] = value;
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn scale(&mut self, factor: Complex64) {
        self.data.iter_mut().for_each(|x| *x *= factor);
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, b) in row.iter_mut().zip(&other.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// `exp(m)`.
pub fn expm(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let norm = m.norm_one();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let mut scaled = m.clone();
    scaled.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));

    // With ‖scaled‖ ≤ 1/2 the Taylor remainder after 30 terms is far below
    // machine precision; stop early once terms stop contributing.
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = term.matmul(&scaled);
        term.scale(Complex64::new(1.0 / k as f64, 0.0));
        for (r, t) in result.data.iter_mut().zip(&term.data) {
            *r += t;
        }
        if term.norm_one() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// `exp(−iHt)` computed with [`expm`].
pub fn taylor_propagator(h: &HamiltonianMatrix, t: f64) -> ComplexMatrix {
    let n = h.dim();
    let mut gen = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            gen.set(i, j, Complex64::new(0.0, -t * h.get(i, j)));
        }
    }
    expm(&gen)
}

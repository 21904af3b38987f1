#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;
use qgw_core::*;
use rand::Rng;

pub fn no_overrides() -> BTreeMap<String, f64> {
    BTreeMap::new()
}

/// Dense random symmetric matrix with entries in [-1, 1].
pub fn symmetric_matrix(max_n: usize) -> impl Strategy<Value = HamiltonianMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-1.0f64..1.0, n * n)
            .prop_map(move |e| HamiltonianMatrix::from_upper(n, |i, j| e[i * n + j]))
    })
}

pub fn normalized(amps: Vec<(f64, f64)>) -> WaveFunction {
    WaveFunction::new(amps.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
        .normalized()
}

/// Random matrix together with a random normalized state of matching size.
pub fn matrix_and_state(max_n: usize) -> impl Strategy<Value = (HamiltonianMatrix, WaveFunction)> {
    symmetric_matrix(max_n).prop_flat_map(|h| {
        let n = h.dim();
        (
            Just(h),
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
                .prop_filter("non-zero state", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
                .prop_map(normalized),
        )
    })
}

/// Random graph on `n` sites, edges kept with probability 0.4.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> GraphSpec {
    let sites = (0..n)
        .map(|i| Site {
            id: SiteId(i),
            potential: rng.gen_range(-0.5..0.5),
        })
        .collect();
    let mut edges = Vec::new();
    let mut parameters = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.4) {
                if rng.gen_bool(0.5) {
                    edges.push(Edge::new(a, b, rng.gen_range(-0.5..0.5)));
                } else {
                    let name = format!("p{a}_{b}");
                    parameters.insert(name.clone(), rng.gen_range(-0.5..0.5));
                    edges.push(Edge::new(a, b, name.as_str()));
                }
            }
        }
    }
    GraphSpec::new(sites, edges, parameters).unwrap()
}

pub fn random_braess10<R: Rng>(rng: &mut R) -> GraphSpec {
    let mut u = |lo: f64, hi: f64| rng.gen_range(lo..hi);
    builtin_braess10(Braess10Params {
        l: u(0.01, 0.5),
        h: u(0.01, 0.5),
        s: u(0.01, 0.5),
        c: u(0.01, 0.5),
        v1: u(0.0, 1.0),
        v2: u(0.0, 1.0),
        eu: u(0.0, 1.0),
        ed: u(0.0, 1.0),
        vu: u(0.0, 1.0),
        vd: u(0.0, 1.0),
    })
}

pub fn random_braess4<R: Rng>(rng: &mut R) -> GraphSpec {
    builtin_braess4(
        rng.gen_range(0.001..0.5),
        rng.gen_range(0.001..0.5),
        rng.gen_range(0.001..0.5),
        rng.gen_range(-1.0..1.0),
    )
}

/// Random normalized single-particle state.
pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> WaveFunction {
    normalized(
        (0..n)
            .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
}

pub fn distinct_sites<R: Rng>(rng: &mut R, n: usize) -> (SiteId, SiteId) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (SiteId(i), SiteId(j))
}

pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> SiteSubset {
    SiteSubset::new((0..n).filter(|_| rng.gen_bool(0.6)), n).unwrap()
}

/// `Σ_{i,j} |⟨i,j|ψ⟩|²` over the full ordered tensor basis.
pub fn tensor_norm_sqr(state: &PairState) -> f64 {
    let n = state.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| pair_amplitude(state, SiteId(i), SiteId(j)).norm_sqr())
        .sum()
}

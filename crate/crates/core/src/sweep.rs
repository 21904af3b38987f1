//! Half-passage time as a function of one graph parameter.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{GraphSpec, SiteId};
use crate::metrics::{log_rate, LogRate, TimeGrid};
use crate::pair::{initial_pair, p_perp_series, SiteSubset, Statistics};
use crate::spectral::decompose;

#[derive(Clone, Debug)]
pub struct SweepSpec {
    /// Name of the swept parameter (must exist in `base`).
    pub parameter: String,
    pub values: Vec<f64>,
    pub base: GraphSpec,
    /// Fixed overrides applied to every point before the swept value.
    pub base_overrides: BTreeMap<String, f64>,
    pub statistics: Vec<Statistics>,
    pub subset: SiteSubset,
    pub grid: TimeGrid,
    /// Sites of the two particles at `t = 0`.
    pub initial: (SiteId, SiteId),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub statistics: Statistics,
    pub lambda: f64,
    /// `ln 2 / |λ|`, infinite when `λ = 0`.
    pub tau: f64,
    /// Samples that fell below the log floor.
    pub floored: usize,
}

/// `λ` of `P⊥(t)` for one configuration.
pub fn pair_log_rate(
    graph: &GraphSpec,
    overrides: &BTreeMap<String, f64>,
    statistics: Statistics,
    initial: (SiteId, SiteId),
    subset: &SiteSubset,
    grid: TimeGrid,
) -> Result<LogRate> {
    let h = graph.hamiltonian(overrides)?;
    let dec = decompose(&h)?;
    let pair0 = initial_pair(graph.n_sites(), initial.0, initial.1, statistics)?;
    let series = p_perp_series(&dec, &pair0, subset, grid)?;
    log_rate(&series)
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::InvalidSweep("no parameter values".into()));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidSweep(format!("non-finite value {v}")));
        }
        if !self.base.parameters().contains_key(&self.parameter) {
            return Err(Error::UnknownParameter(self.parameter.clone()));
        }
        for name in self.base_overrides.keys() {
            if !self.base.parameters().contains_key(name) {
                return Err(Error::UnknownParameter(name.clone()));
            }
        }
        if self.subset.n_sites() != self.base.n_sites() {
            return Err(Error::DimensionMismatch {
                expected: self.base.n_sites(),
                actual: self.subset.n_sites(),
            });
        }
        Ok(())
    }

    fn run_point(&self, value: f64, statistics: Statistics) -> Result<SweepRow> {
        let mut overrides = self.base_overrides.clone();
        overrides.insert(self.parameter.clone(), value);
        let rate = pair_log_rate(
            &self.base,
            &overrides,
            statistics,
            self.initial,
            &self.subset,
            self.grid,
        )
        .map_err(|e| Error::SweepPoint {
            parameter: self.parameter.clone(),
            value,
            source: Box::new(e),
        })?;
        Ok(SweepRow {
            value,
            statistics,
            lambda: rate.lambda,
            tau: rate.half_passage_time(),
            floored: rate.floored,
        })
    }

    /// Points in output order: values ascending, then statistics in the
    /// order given.
    fn points(&self) -> Vec<(f64, Statistics)> {
        let mut values = self.values.clone();
        values.sort_by(f64::total_cmp);
        values
            .into_iter()
            .flat_map(|v| self.statistics.iter().map(move |&s| (v, s)))
            .collect()
    }
}

/// Runs every (value, statistics) point. Points are evaluated in parallel on
/// the global rayon pool; the row order is deterministic.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.points()
        .into_par_iter()
        .map(|(v, s)| spec.run_point(v, s))
        .collect()
}

/// [`sweep`] on a dedicated pool of at most `threads` workers.
pub fn sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<Vec<SweepRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidSweep(format!("cannot start worker pool: {e}")))?;
    pool.install(|| sweep(spec))
}

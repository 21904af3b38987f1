//! Time grids, sampled probability series, and the characteristic-time
//! functionals computed from them.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};

/// Floor applied before taking `ln P` so that accidental zeros stay finite.
pub const LN_FLOOR: f64 = 1e-15;

const PROBABILITY_SLACK: f64 = 1e-12;

/// Uniform grid `t_k = t_start + k·dt`, `k = 0..steps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    dt: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, dt: f64, steps: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidGrid(format!("dt must be positive, got {dt}")));
        }
        if !t_start.is_finite() {
            return Err(Error::InvalidGrid("t_start must be finite".into()));
        }
        if steps < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 samples, got {steps}")));
        }
        Ok(TimeGrid { t_start, dt, steps })
    }

    /// Grid on `[0, t_end]` with spacing `dt`; `t_end` is rounded to the
    /// nearest multiple of `dt`.
    pub fn until(t_end: f64, dt: f64) -> Result<Self> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(Error::InvalidGrid(format!("T must be positive, got {t_end}")));
        }
        if !(dt > 0.0 && dt < t_end) {
            return Err(Error::InvalidGrid(format!("need 0 < dt < T, got dt = {dt}")));
        }
        Self::new(0.0, dt, (t_end / dt).round() as usize + 1)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.steps - 1)
    }

    /// `T − t_start`.
    pub fn duration(&self) -> f64 {
        (self.steps - 1) as f64 * self.dt
    }

    pub fn times(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.steps).map(|k| self.time(k))
    }
}

/// Probabilities sampled on a [`TimeGrid`], clamped to `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilitySeries {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl ProbabilitySeries {
    /// Values may overshoot `[0, 1]` by at most 1e-12 (round-off); they are
    /// clamped. Anything further out is rejected.
    pub fn new(grid: TimeGrid, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.steps() {
            return Err(Error::DimensionMismatch {
                expected: grid.steps(),
                actual: values.len(),
            });
        }
        for (index, v) in values.iter_mut().enumerate() {
            if !(*v >= -PROBABILITY_SLACK && *v <= 1.0 + PROBABILITY_SLACK) {
                return Err(Error::ProbabilityOutOfRange { index, value: *v });
            }
            *v = v.clamp(0.0, 1.0);
        }
        Ok(ProbabilitySeries { grid, values })
    }

    /// Samples `f` on every grid point.
    pub fn from_fn(grid: TimeGrid, f: impl FnMut(f64) -> f64) -> Result<Self> {
        let values = grid.times().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid.times().zip(self.values.iter().copied())
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Time-averaged log-probability and the number of samples that hit
/// [`LN_FLOOR`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogRate {
    pub lambda: f64,
    pub floored: usize,
}

impl LogRate {
    /// `ln 2 / |λ|`, infinite when `λ == 0`.
    pub fn half_passage_time(&self) -> f64 {
        if self.lambda == 0.0 {
            f64::INFINITY
        } else {
            LN_2 / self.lambda.abs()
        }
    }
}

/// Trapezoidal `(1/T) ∫ ln max(P, ε) dt` with the floor count.
pub fn log_rate(series: &ProbabilitySeries) -> Result<LogRate> {
    if series.len() < 2 {
        return Err(Error::EmptySeries);
    }
    let last = series.len() - 1;
    let mut floored = 0;
    let mut sum = 0.0;
    for (k, &p) in series.values().iter().enumerate() {
        if p < LN_FLOOR {
            floored += 1;
        }
        let w = if k == 0 || k == last { 0.5 } else { 1.0 };
        sum += w * p.max(LN_FLOOR).ln();
    }
    Ok(LogRate {
        lambda: sum / last as f64,
        floored,
    })
}

/// `λ = (1/T) ∫₀ᵀ ln P(t) dt` by the trapezoidal rule.
pub fn log_mean_rate(series: &ProbabilitySeries) -> Result<f64> {
    log_rate(series).map(|r| r.lambda)
}

/// `τ = ln 2 / |λ|`. Reported as a positive time; `+∞` when `λ = 0`.
pub fn half_passage_time(series: &ProbabilitySeries) -> Result<f64> {
    log_rate(series).map(|r| r.half_passage_time())
}

/// Time of the first local maximum whose height is at least `min_height`.
///
/// A local maximum rises strictly from its left neighbour and then falls
/// strictly (possibly after a flat run). For a flat top the earliest sample
/// is reported. Grid endpoints never count.
pub fn first_peak_time(series: &ProbabilitySeries, min_height: f64) -> Option<f64> {
    let v = series.values();
    let mut k = 1;
    while k + 1 < v.len() {
        if v[k] > v[k - 1] {
            let mut end = k;
            while end + 1 < v.len() && v[end + 1] == v[k] {
                end += 1;
            }
            if end + 1 < v.len() && v[end + 1] < v[k] && v[k] >= min_height {
                return Some(series.grid().time(k));
            }
            k = end + 1;
        } else {
            k += 1;
        }
    }
    None
}

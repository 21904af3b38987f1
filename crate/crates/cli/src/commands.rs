//! One function per subcommand. Each returns the text to emit.

use std::fmt::Write as _;

use qgw_core::{
    decompose, initial_pair, p_perp_series, pair_dimension, probability_series, sweep,
    sweep_with_threads, SiteId, SiteSubset, Statistics, SweepSpec, TimeGrid,
};

use crate::config::{Failure, Resolved};
use crate::csv::{fmt_num, Csv};

pub fn validate(g: &Resolved) -> Result<String, Failure> {
    let h = g.spec.hamiltonian(&g.overrides)?;
    let dec = decompose(&h)?;
    let mut out = String::new();
    let _ = writeln!(out, "graph: {}", g.label);
    let _ = writeln!(out, "{} sites, {} edges", g.spec.n_sites(), g.spec.edges().len());
    let params = g.parameters();
    if params.is_empty() {
        let _ = writeln!(out, "parameters: none");
    } else {
        let list: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", fmt_num(*v))).collect();
        let _ = writeln!(out, "parameters: {}", list.join(", "));
    }
    let potentials: Vec<String> = g.spec.sites().iter().map(|s| fmt_num(s.potential)).collect();
    let _ = writeln!(out, "potentials: {}", potentials.join(", "));
    let _ = writeln!(out, "hamiltonian dimension: {}", h.dim());
    match dec.spectral_gap() {
        Some(gap) => {
            let _ = writeln!(out, "spectral gap: {}", fmt_num(gap));
        }
        None => {
            let _ = writeln!(out, "spectral gap: none (single site)");
        }
    }
    let evs = dec.eigenvalues();
    let _ = writeln!(
        out,
        "spectrum: [{}, {}]",
        fmt_num(evs[0]),
        fmt_num(evs[evs.len() - 1])
    );
    Ok(out)
}

/// Columns `t,P`.
pub fn single(g: &Resolved, from: SiteId, to: SiteId, grid: TimeGrid) -> Result<String, Failure> {
    let dec = decompose(&g.spec.hamiltonian(&g.overrides)?)?;
    let series = probability_series(&dec, from, to, grid)?;
    let mut csv = Csv::new(&["t", "P"]);
    for (t, p) in series.iter() {
        csv.row([fmt_num(t), fmt_num(p)]);
    }
    Ok(csv.finish())
}

/// Columns `t` then `P_perp_fermion` and/or `P_perp_boson`.
pub fn pair(
    g: &Resolved,
    statistics: &[Statistics],
    subset: &SiteSubset,
    initial: (SiteId, SiteId),
    grid: TimeGrid,
) -> Result<String, Failure> {
    let dec = decompose(&g.spec.hamiltonian(&g.overrides)?)?;
    let mut stats = statistics.to_vec();
    stats.sort();
    stats.dedup();
    let columns = stats
        .iter()
        .map(|&s| {
            let pair0 = initial_pair(g.spec.n_sites(), initial.0, initial.1, s)?;
            Ok(p_perp_series(&dec, &pair0, subset, grid)?)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut header = vec!["t"];
    header.extend(stats.iter().map(|s| match s {
        Statistics::Fermion => "P_perp_fermion",
        Statistics::Boson => "P_perp_boson",
    }));
    let mut csv = Csv::new(&header);
    for (k, t) in grid.times().enumerate() {
        let mut row = vec![fmt_num(t)];
        row.extend(columns.iter().map(|c| fmt_num(c.values()[k])));
        csv.row(row);
    }
    Ok(csv.finish())
}

pub struct SweepRequest<'a> {
    pub parameter: String,
    pub values: Vec<f64>,
    pub baseline: bool,
    pub statistics: &'a [Statistics],
    pub subset: SiteSubset,
    pub initial: (SiteId, SiteId),
    pub grid: TimeGrid,
    /// Worker cap; `None` uses every core.
    pub threads: Option<usize>,
}

/// Columns `param,statistics,lambda,tau,T,dt`.
pub fn sweep_csv(g: &Resolved, req: SweepRequest<'_>) -> Result<String, Failure> {
    let mut values = req.values;
    if req.baseline && !values.contains(&0.0) {
        values.push(0.0);
    }
    let mut base_overrides = g.overrides.clone();
    base_overrides.remove(&req.parameter);
    let spec = SweepSpec {
        parameter: req.parameter,
        values,
        base: g.spec.clone(),
        base_overrides,
        statistics: req.statistics.to_vec(),
        subset: req.subset,
        grid: req.grid,
        initial: req.initial,
    };
    let rows = match req.threads {
        Some(n) => sweep_with_threads(&spec, n)?,
        None => sweep(&spec)?,
    };
    let mut csv = Csv::new(&["param", "statistics", "lambda", "tau", "T", "dt"]);
    for r in &rows {
        if r.floored > 0 {
            eprintln!(
                "warning: {}={} {}: {} samples below the log floor",
                spec.parameter,
                fmt_num(r.value),
                r.statistics,
                r.floored
            );
        }
        csv.row([
            fmt_num(r.value),
            r.statistics.name().to_owned(),
            fmt_num(r.lambda),
            fmt_num(r.tau),
            fmt_num(spec.grid.t_end()),
            fmt_num(spec.grid.dt()),
        ]);
    }
    Ok(csv.finish())
}

pub fn dims(n_sites: usize, subset: Option<&SiteSubset>) -> String {
    let line = |n: usize| {
        format!(
            "boson: {}, fermion: {}",
            pair_dimension(n, Statistics::Boson),
            pair_dimension(n, Statistics::Fermion)
        )
    };
    let mut out = String::new();
    if let Some(s) = subset {
        let _ = writeln!(out, "subset ({} sites): {}", s.len(), line(s.len()));
    }
    let _ = writeln!(out, "full graph ({n_sites} sites): {}", line(n_sites));
    out
}

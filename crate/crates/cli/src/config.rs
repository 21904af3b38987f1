//! Turning command-line values into graphs, subsets and sweep ranges.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use qgw_core::{
    builtin_braess10, builtin_braess4, parse_graph_spec, Braess10Params, GraphSpec, SiteId,
    SiteSubset, Statistics,
};

use crate::csv::round12;

/// What went wrong, sorted by exit code.
#[derive(Debug)]
pub enum Failure {
    Io(String),
    Validation(String),
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(m) => write!(f, "i/o error: {m}"),
            Failure::Validation(m) => write!(f, "invalid input: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<qgw_core::Error> for Failure {
    fn from(e: qgw_core::Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Braess4,
    Braess10,
}

#[derive(Clone, Debug)]
pub enum Source {
    File(PathBuf),
    Builtin(Builtin),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatsChoice {
    Fermion,
    Boson,
    Both,
}

impl StatsChoice {
    pub fn list(self) -> Vec<Statistics> {
        match self {
            StatsChoice::Fermion => vec![Statistics::Fermion],
            StatsChoice::Boson => vec![Statistics::Boson],
            StatsChoice::Both => Statistics::ALL.to_vec(),
        }
    }
}

/// A graph ready to run: the spec plus the overrides to apply to it.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub label: String,
    pub spec: GraphSpec,
    pub overrides: BTreeMap<String, f64>,
}

impl Resolved {
    /// Parameter values after overrides.
    pub fn parameters(&self) -> BTreeMap<String, f64> {
        let mut p = self.spec.parameters().clone();
        p.extend(self.overrides.iter().map(|(k, v)| (k.clone(), *v)));
        p
    }
}

const BRAESS4_NAMES: &str = "b, s, c, V0";
const BRAESS10_NAMES: &str = "l, h, s, c, V1, V2, Eu, Ed, Vu, Vd, V";

/// Builds the graph. For builtins `sets` feed the constructor; for files they
/// become parameter overrides. `keep` names a coupling that must stay in the
/// graph even when it is set to zero (the swept parameter).
pub fn resolve(source: &Source, sets: &[(String, f64)], keep: Option<&str>) -> Result<Resolved, Failure> {
    match source {
        Source::File(path) => {
            let spec = parse_graph_spec(&read(path)?)?;
            let overrides: BTreeMap<_, _> = sets.iter().cloned().collect();
            if let Some(name) = overrides.keys().find(|k| !spec.parameters().contains_key(*k)) {
                return Err(Failure::Validation(format!(
                    "--set {name}: not a parameter of {}",
                    path.display()
                )));
            }
            Ok(Resolved {
                label: path.display().to_string(),
                spec,
                overrides,
            })
        }
        Source::Builtin(Builtin::Braess4) => {
            let (mut b, mut s, mut c, mut v0) = (0.01, 0.01, 0.1, 0.0);
            for (name, v) in sets {
                match name.as_str() {
                    "b" => b = *v,
                    "s" => s = *v,
                    "c" => c = *v,
                    "V0" => v0 = *v,
                    _ => return Err(unknown_builtin_param(name, "braess4", BRAESS4_NAMES)),
                }
            }
            let mut overrides = BTreeMap::new();
            if keep == Some("c") && c == 0.0 {
                c = 1.0;
                overrides.insert("c".to_owned(), 0.0);
            }
            Ok(Resolved {
                label: "braess4".into(),
                spec: builtin_braess4(b, s, c, v0),
                overrides,
            })
        }
        Source::Builtin(Builtin::Braess10) => {
            let mut p = Braess10Params::standard(0.3);
            for (name, v) in sets {
                let v = *v;
                match name.as_str() {
                    "l" => p.l = v,
                    "h" => p.h = v,
                    "s" => p.s = v,
                    "c" => p.c = v,
                    "V1" => p.v1 = v,
                    "V2" => p.v2 = v,
                    "Eu" => p.eu = v,
                    "Ed" => p.ed = v,
                    "Vu" => p.vu = v,
                    "Vd" => p.vd = v,
                    "V" => {
                        p = Braess10Params::uniform(p.l, p.h, p.s, p.c, v);
                    }
                    _ => return Err(unknown_builtin_param(name, "braess10", BRAESS10_NAMES)),
                }
            }
            let mut overrides = BTreeMap::new();
            if keep == Some("c") && p.c == 0.0 {
                p.c = 1.0;
                overrides.insert("c".to_owned(), 0.0);
            }
            Ok(Resolved {
                label: "braess10".into(),
                spec: builtin_braess10(p),
                overrides,
            })
        }
    }
}

fn unknown_builtin_param(name: &str, builtin: &str, accepted: &str) -> Failure {
    Failure::Validation(format!(
        "--set {name}: {builtin} takes {accepted}"
    ))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// `name=value`.
pub fn parse_set(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("missing parameter name in `{s}`"));
    }
    Ok((name.to_owned(), parse_finite(value)?))
}

fn parse_finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{}` is not a finite number", s.trim())),
    }
}

/// `i,j`.
pub fn parse_init(s: &str) -> Result<(SiteId, SiteId), String> {
    let (i, j) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two sites `i,j`, got `{s}`"))?;
    let site = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map(SiteId)
            .map_err(|_| format!("`{}` is not a site index", x.trim()))
    };
    Ok((site(i)?, site(j)?))
}

/// Subset syntax: `all`, `none`, or a comma list of sites and inclusive
/// ranges, e.g. `0-7` or `0,1,4-6`.
pub fn parse_subset(s: &str, n_sites: usize) -> Result<SiteSubset, Failure> {
    let s = s.trim();
    match s {
        "all" => return Ok(SiteSubset::all(n_sites)),
        "none" | "" => return Ok(SiteSubset::empty(n_sites)),
        _ => {}
    }
    let bad = || Failure::Validation(format!("--subset `{s}`: expected e.g. 0-7 or 0,2,5"));
    let mut members = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (part, part),
        };
        let lo: usize = lo.parse().map_err(|_| bad())?;
        let hi: usize = hi.parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        members.extend(lo..=hi);
    }
    SiteSubset::new(members, n_sites)
        .map_err(|e| Failure::Validation(format!("--subset {s}: {e}")))
}

/// Default restriction: the first eight sites.
pub const DEFAULT_SUBSET: &str = "0-7";

const MAX_SWEEP_POINTS: usize = 1_000_000;

/// `name=start:step:end` (end inclusive), `name=value`, or `name=v1,v2,...`.
/// Values are rounded to 12 significant digits so that `0.01:0.01:0.3`
/// yields exactly `0.3` at the end.
pub fn parse_sweep(s: &str) -> Result<(String, Vec<f64>), String> {
    let (name, range) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=START:STEP:END, got `{s}`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("missing parameter name in `{s}`"));
    }
    let fields: Vec<&str> = range.split(':').collect();
    let values = match fields.as_slice() {
        [start, step, end] => {
            let (start, step, end) = (parse_finite(start)?, parse_finite(step)?, parse_finite(end)?);
            if step <= 0.0 || end < start {
                return Err(format!("`{range}`: need step > 0 and end ≥ start"));
            }
            let span = (end - start) / step;
            let count = (span + 1e-9).floor() as usize + 1;
            if count > MAX_SWEEP_POINTS {
                return Err(format!("`{range}` has more than {MAX_SWEEP_POINTS} points"));
            }
            (0..count).map(|k| round12(start + k as f64 * step)).collect()
        }
        [list] => list
            .split(',')
            .map(parse_finite)
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(format!("`{range}`: expected START:STEP:END")),
    };
    Ok((name.to_owned(), values))
}

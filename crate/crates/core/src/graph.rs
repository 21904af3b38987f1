//! Quantum-dot graphs: sites with on-site potentials, tunnelling edges, and
//! named coupling parameters.
//!
//! A [`GraphSpec`] is validated on construction and immutable afterwards. The
//! JSON layout is
//!
//! ```json
//! {
//!   "sites": [{"id": 0, "potential": 0.0}, {"id": 1, "potential": 0.0}],
//!   "edges": [{"a": 0, "b": 1, "coupling": "b"}],
//!   "parameters": {"b": 0.01}
//! }
//! ```
//!
//! Couplings are either literal numbers or names looked up in `parameters`.
//! Unknown keys are rejected.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationKind};
use crate::hamiltonian::HamiltonianMatrix;

/// 0-based site index, dense in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SiteId(pub usize);

impl SiteId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for SiteId {
    fn from(i: usize) -> Self {
        SiteId(i)
    }
}

impl std::fmt::Display for SiteId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Site {
    pub id: SiteId,
    pub potential: f64,
}

/// Tunnelling amplitude of an edge: a literal value or a parameter name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coupling {
    Value(f64),
    Param(String),
}

impl From<f64> for Coupling {
    fn from(v: f64) -> Self {
        Coupling::Value(v)
    }
}

impl From<&str> for Coupling {
    fn from(name: &str) -> Self {
        Coupling::Param(name.to_owned())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub a: SiteId,
    pub b: SiteId,
    pub coupling: Coupling,
}

impl Edge {
    pub fn new(a: usize, b: usize, coupling: impl Into<Coupling>) -> Self {
        Edge {
            a: SiteId(a),
            b: SiteId(b),
            coupling: coupling.into(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    sites: Vec<Site>,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    parameters: BTreeMap<String, f64>,
}

/// A validated quantum-dot graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphSpec {
    sites: Vec<Site>,
    edges: Vec<Edge>,
    parameters: BTreeMap<String, f64>,
}

impl GraphSpec {
    /// Validates and builds a graph. Sites may be given in any order; they are
    /// stored sorted by id.
    pub fn new(
        mut sites: Vec<Site>,
        edges: Vec<Edge>,
        parameters: BTreeMap<String, f64>,
    ) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::validation("sites", ValidationKind::NoSites));
        }
        sites.sort_by_key(|s| s.id);
        for pair in sites.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::validation(
                    format!("site {}", pair[1].id),
                    ValidationKind::DuplicateSite(pair[1].id.0),
                ));
            }
        }
        let n = sites.len();
        if let Some(missing) = sites
            .iter()
            .enumerate()
            .find(|(i, s)| s.id.0 != *i)
            .map(|(i, _)| i)
        {
            return Err(Error::validation(
                "sites",
                ValidationKind::NonDenseIds { missing },
            ));
        }
        for site in &sites {
            if !site.potential.is_finite() {
                return Err(Error::validation(
                    format!("site {}", site.id),
                    ValidationKind::NonFinite,
                ));
            }
        }
        for (name, value) in &parameters {
            if !value.is_finite() {
                return Err(Error::validation(
                    format!("parameter `{name}`"),
                    ValidationKind::NonFinite,
                ));
            }
        }

        let mut seen = BTreeSet::new();
        for (k, edge) in edges.iter().enumerate() {
            let locus = || format!("edge #{k} {{{},{}}}", edge.a, edge.b);
            for end in [edge.a, edge.b] {
                if end.0 >= n {
                    return Err(Error::validation(
                        locus(),
                        ValidationKind::SiteOutOfRange(end.0),
                    ));
                }
            }
            if edge.a == edge.b {
                return Err(Error::validation(locus(), ValidationKind::SelfLoop(edge.a.0)));
            }
            let key = (edge.a.min(edge.b).0, edge.a.max(edge.b).0);
            if !seen.insert(key) {
                return Err(Error::validation(
                    locus(),
                    ValidationKind::DuplicateEdge(key.0, key.1),
                ));
            }
            match &edge.coupling {
                Coupling::Param(name) if !parameters.contains_key(name) => {
                    return Err(Error::validation(
                        locus(),
                        ValidationKind::UnknownParameter(name.clone()),
                    ));
                }
                Coupling::Value(v) if !v.is_finite() => {
                    return Err(Error::validation(locus(), ValidationKind::NonFinite));
                }
                _ => {}
            }
        }

        Ok(GraphSpec {
            sites,
            edges,
            parameters,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn parameters(&self) -> &BTreeMap<String, f64> {
        &self.parameters
    }

    /// Serializes to the JSON graph-spec format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph spec is always serializable")
    }

    /// Assembles the Hamiltonian, with `overrides` taking precedence over the
    /// declared parameter values.
    pub fn hamiltonian(&self, overrides: &BTreeMap<String, f64>) -> Result<HamiltonianMatrix> {
        for name in overrides.keys() {
            if !self.parameters.contains_key(name) {
                return Err(Error::UnknownParameter(name.clone()));
            }
        }
        let resolve = |c: &Coupling| -> f64 {
            match c {
                Coupling::Value(v) => *v,
                Coupling::Param(name) => overrides
                    .get(name)
                    .or_else(|| self.parameters.get(name))
                    .copied()
                    .expect("edge parameters are checked at construction"),
            }
        };

        let mut h = HamiltonianMatrix::zeros(self.n_sites());
        for site in &self.sites {
            h.set_symmetric(site.id.0, site.id.0, site.potential);
        }
        for edge in &self.edges {
            h.set_symmetric(edge.a.0, edge.b.0, resolve(&edge.coupling));
        }
        Ok(h)
    }
}

/// Parses and validates a JSON graph-spec document.
pub fn parse_graph_spec(text: &str) -> Result<GraphSpec> {
    let raw: RawGraph = serde_json::from_str(text)?;
    GraphSpec::new(raw.sites, raw.edges, raw.parameters)
}

/// Free-function form of [`GraphSpec::hamiltonian`].
pub fn build_hamiltonian(
    spec: &GraphSpec,
    overrides: &BTreeMap<String, f64>,
) -> Result<HamiltonianMatrix> {
    spec.hamiltonian(overrides)
}

fn uniform_sites(potentials: &[f64]) -> Vec<Site> {
    potentials
        .iter()
        .enumerate()
        .map(|(i, &potential)| Site {
            id: SiteId(i),
            potential,
        })
        .collect()
}

/// Four dots on a parallelogram with the extra `c` edge between sites 1 and 3.
///
/// Row pattern of the resulting Hamiltonian:
///
/// ```text
/// V0  b   0   s
/// b   V0  s   c
/// 0   s   V0  b
/// s   c   b   V0
/// ```
///
/// The `c` edge and parameter are left out entirely when `c == 0`, which
/// gives the plain four-dot ring.
pub fn builtin_braess4(b: f64, s: f64, c: f64, v0: f64) -> GraphSpec {
    let mut edges = vec![
        Edge::new(0, 1, "b"),
        Edge::new(1, 2, "s"),
        Edge::new(2, 3, "b"),
        Edge::new(0, 3, "s"),
    ];
    let mut parameters = BTreeMap::from([("b".to_owned(), b), ("s".to_owned(), s)]);
    if c != 0.0 {
        edges.push(Edge::new(1, 3, "c"));
        parameters.insert("c".to_owned(), c);
    }
    GraphSpec::new(uniform_sites(&[v0; 4]), edges, parameters)
        .expect("builtin braess4 graph is valid")
}

/// Coupling and potential values for [`builtin_braess10`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Braess10Params {
    /// Lower-path coupling.
    pub l: f64,
    /// Upper-path coupling.
    pub h: f64,
    /// Intra-double-dot coupling.
    pub s: f64,
    /// Cross coupling between the two single dots.
    pub c: f64,
    /// Initial double dot {0,1}.
    pub v1: f64,
    /// Final double dot {8,9}.
    pub v2: f64,
    /// Upper-branch double dot {2,3}.
    pub eu: f64,
    /// Lower-branch double dot {5,6}.
    pub ed: f64,
    /// Upper single dot {4}.
    pub vu: f64,
    /// Lower single dot {7}.
    pub vd: f64,
}

impl Braess10Params {
    /// All six potentials set to `v`.
    pub fn uniform(l: f64, h: f64, s: f64, c: f64, v: f64) -> Self {
        Braess10Params {
            l,
            h,
            s,
            c,
            v1: v,
            v2: v,
            eu: v,
            ed: v,
            vu: v,
            vd: v,
        }
    }

    /// First parameter set: l=0.1, h=0.2, s=0.25, all potentials 0.5.
    pub fn standard(c: f64) -> Self {
        Self::uniform(0.1, 0.2, 0.25, c, 0.5)
    }

    /// Second parameter set: l=0.04, h=0.05, s=0.25, all potentials 0.
    pub fn weak_paths(c: f64) -> Self {
        Self::uniform(0.04, 0.05, 0.25, c, 0.0)
    }
}

/// Ten-dot graph: an initial double dot {0,1}, an upper branch (double dot
/// {2,3} then single dot {4}), a lower branch (double dot {5,6} then single
/// dot {7}), and a final double dot {8,9}. The single dots are joined by the
/// `c` edge, which is omitted together with its parameter when `c == 0`.
pub fn builtin_braess10(p: Braess10Params) -> GraphSpec {
    let potentials = [
        p.v1, p.v1, p.eu, p.eu, p.vu, p.ed, p.ed, p.vd, p.v2, p.v2,
    ];
    let mut edges = vec![
        Edge::new(0, 1, "s"),
        Edge::new(2, 3, "s"),
        Edge::new(5, 6, "s"),
        Edge::new(8, 9, "s"),
        Edge::new(1, 2, "h"),
        Edge::new(3, 4, "h"),
        Edge::new(4, 8, "h"),
        Edge::new(1, 5, "l"),
        Edge::new(6, 7, "l"),
        Edge::new(7, 8, "l"),
    ];
    let mut parameters = BTreeMap::from([
        ("l".to_owned(), p.l),
        ("h".to_owned(), p.h),
        ("s".to_owned(), p.s),
    ]);
    if p.c != 0.0 {
        edges.push(Edge::new(4, 7, "c"));
        parameters.insert("c".to_owned(), p.c);
    }
    GraphSpec::new(uniform_sites(&potentials), edges, parameters)
        .expect("builtin braess10 graph is valid")
}

//! Replacing a dangling subgraph by a single vertex that reflects with the
//! subgraph's frequency response `r(z)`.
//!
//! The subgraph hangs off the rest of the graph by one edge `{A, C}`. After
//! pruning, `C` is a leaf and `U'(z)|A,C> = r(z)|C,A>`; every other entry of
//! `U0` is untouched, so scattering is evaluated pointwise in `z`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_operator, CoinSpec, EdgeState, GraphSpec, TimeStepOperator};
use crate::linalg::{self, CMatrix, Lu};
use crate::poly::{self, ComplexPoly};
use crate::scatter::{self, ScatterFunction, POLE_EPS};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Radial offset used to step around a removable point.
pub const REMOVABLE_STEP: f64 = 1e-8;
/// Agreement required between the two sides of a removable point.
pub const REMOVABLE_TOL: f64 = 1e-6;

/// Leaf vertex with reflection `z^delay * numerator(z) / denominator(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVertex {
    pub id: String,
    pub numerator: ComplexPoly,
    pub denominator: ComplexPoly,
    pub delay: i32,
    /// Roots of the denominator not cancelled by the delay: points where `r`
    /// itself blows up.
    pub poles: Vec<Complex64>,
}

impl FrequencyVertex {
    pub fn new(id: &str, numerator: ComplexPoly, denominator: ComplexPoly, delay: i32) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "frequency vertex `{id}` has a zero denominator"
            )));
        }
        let poles = if denominator.degree() == Some(0) {
            Vec::new()
        } else {
            let mut roots = poly::poly_roots(&denominator)?;
            roots.zero_multiplicity = roots.zero_multiplicity.saturating_sub(delay.max(0) as usize);
            roots.all()
        };
        Ok(Self {
            id: id.to_string(),
            numerator,
            denominator,
            delay,
            poles,
        })
    }

    /// Constant reflection `r`.
    pub fn constant(id: &str, r: Complex64) -> Self {
        Self {
            id: id.to_string(),
            numerator: ComplexPoly::constant(r),
            denominator: ComplexPoly::constant(ONE),
            delay: 0,
            poles: Vec::new(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let den = self.denominator.eval(z);
        if self.poles.iter().any(|p| (z - p).norm() < POLE_EPS) {
            return Err(Error::Pole(z));
        }
        if den.norm() == 0.0 {
            // a zero of the denominator cancelled by the delay: only z = 0
            let k = self.denominator.trailing_zeros();
            let m = self.delay.max(0) as usize;
            let num = self.numerator.shift_up(m - k.min(m));
            return Ok(num.eval(z) / self.denominator.shift_down(k.min(m)).eval(z));
        }
        Ok(z.powi(self.delay) * self.numerator.eval(z) / den)
    }
}

/// A graph in which some leaves carry frequency-dependent reflections.
#[derive(Debug, Clone)]
pub struct PrunedGraph {
    pub base: GraphSpec,
    pub frequency_vertices: Vec<FrequencyVertex>,
    operator: TimeStepOperator,
    /// `(row, column)` of each frequency vertex's entry in `U0`.
    slots: Vec<(usize, usize)>,
}

impl PrunedGraph {
    pub fn new(base: GraphSpec, frequency_vertices: Vec<FrequencyVertex>) -> Result<Self> {
        let operator = build_operator(&base)?;
        let basis = operator.basis().expect("assembled operators carry their basis");
        let adj = base.adjacency();
        let mut seen = BTreeSet::new();
        let mut slots = Vec::with_capacity(frequency_vertices.len());
        for fv in &frequency_vertices {
            if !seen.insert(fv.id.as_str()) {
                return Err(Error::InvalidGraph(format!(
                    "frequency vertex `{}` listed twice",
                    fv.id
                )));
            }
            let nbrs = adj
                .get(fv.id.as_str())
                .ok_or_else(|| Error::InvalidGraph(format!("frequency vertex `{}` is not a vertex", fv.id)))?;
            if nbrs.len() != 1 || nbrs[0] == fv.id {
                return Err(Error::InvalidGraph(format!(
                    "frequency vertex `{}` must be a leaf (degree 1, no loop)",
                    fv.id
                )));
            }
            let a = nbrs[0];
            let col = basis.index(a, &fv.id).expect("edge present");
            let row = basis.index(&fv.id, a).expect("edge present");
            slots.push((row, col));
        }
        Ok(Self {
            base,
            frequency_vertices,
            operator,
            slots,
        })
    }

    pub fn operator(&self) -> &TimeStepOperator {
        &self.operator
    }

    /// `U'(z)`: `U0` with each frequency vertex entry set to `r(z)`.
    pub fn effective_matrix(&self, z: Complex64) -> Result<CMatrix> {
        let mut m = self.operator.matrix().clone();
        for (fv, (row, col)) in self.frequency_vertices.iter().zip(&self.slots) {
            m[(*row, *col)] = fv.eval(z)?;
        }
        Ok(m)
    }

    /// Prunes a further subgraph of the base graph; nested pruning (a
    /// subgraph that already contains a frequency vertex) is unsupported.
    pub fn prune(&self, cut: (&str, &str)) -> Result<PrunedGraph> {
        let (sub, inner) = split_at_cut(&self.base, cut)?;
        if self.frequency_vertices.iter().any(|fv| inner.contains(fv.id.as_str())) {
            return Err(Error::Unsupported(
                "pruning a subgraph that contains a frequency vertex".into(),
            ));
        }
        let fv = reflection_of(&sub, cut.1)?;
        let base = replace_with_leaf(&self.base, cut, &inner);
        let mut fvs = self.frequency_vertices.clone();
        fvs.push(fv);
        PrunedGraph::new(base, fvs)
    }

    pub fn to_file(&self) -> PrunedGraphFile {
        PrunedGraphFile {
            graph: self.base.clone(),
            frequency_vertices: self
                .frequency_vertices
                .iter()
                .map(|fv| FrequencyVertexFile {
                    id: fv.id.clone(),
                    numerator: fv.numerator.coeffs().to_vec(),
                    denominator: fv.denominator.coeffs().to_vec(),
                    delay: fv.delay,
                })
                .collect(),
        }
    }

    pub fn from_file(file: PrunedGraphFile) -> Result<Self> {
        file.graph.validate()?;
        let fvs = file
            .frequency_vertices
            .into_iter()
            .map(|f| {
                FrequencyVertex::new(
                    &f.id,
                    ComplexPoly::new(f.numerator),
                    ComplexPoly::new(f.denominator),
                    f.delay,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        PrunedGraph::new(file.graph, fvs)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("pruned graphs always serialise")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: PrunedGraphFile = serde_json::from_str(text).map_err(|source| Error::Json {
            context: "pruned graph".into(),
            source,
        })?;
        Self::from_file(file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let file: PrunedGraphFile = serde_json::from_str(&text).map_err(|source| Error::Json {
            context: path.display().to_string(),
            source,
        })?;
        Self::from_file(file)
    }
}

/// On-disk form: a graph plus `frequency_vertices`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrunedGraphFile {
    #[serde(flatten)]
    pub graph: GraphSpec,
    #[serde(default)]
    pub frequency_vertices: Vec<FrequencyVertexFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyVertexFile {
    pub id: String,
    pub numerator: Vec<Complex64>,
    pub denominator: Vec<Complex64>,
    pub delay: i32,
}

/// Vertices reachable from `cut.1` without crossing the edge `cut`, and a
/// standalone graph made of them plus `cut.0` as a port.
fn split_at_cut(spec: &GraphSpec, cut: (&str, &str)) -> Result<(GraphSpec, BTreeSet<String>)> {
    let (outer, inner_root) = cut;
    spec.validate()?;
    let has_edge = spec
        .edges
        .iter()
        .any(|(a, b)| (a == outer && b == inner_root) || (a == inner_root && b == outer));
    if !has_edge || outer == inner_root {
        return Err(Error::InvalidArgument(format!(
            "{{{outer},{inner_root}}} is not an edge"
        )));
    }
    let adj = spec.adjacency();
    let mut inner = BTreeSet::new();
    let mut stack = vec![inner_root.to_string()];
    while let Some(v) = stack.pop() {
        if !inner.insert(v.clone()) {
            continue;
        }
        for w in &adj[v.as_str()] {
            if v == inner_root && *w == outer {
                continue;
            }
            if *w == outer {
                return Err(Error::InvalidArgument(format!(
                    "cutting {{{outer},{inner_root}}} does not disconnect the graph"
                )));
            }
            if !inner.contains(*w) {
                stack.push(w.to_string());
            }
        }
    }
    if spec.ports.iter().any(|p| {
        [&p.input, &p.output]
            .iter()
            .any(|s| inner.contains(&s.tail) && inner.contains(&s.head))
    }) {
        return Err(Error::InvalidArgument("the pruned subgraph contains a port".into()));
    }
    let mut sub = GraphSpec::new().vertex(outer, CoinSpec::reflect(ONE));
    sub.vertices
        .extend(spec.vertices.iter().filter(|v| inner.contains(&v.id)).cloned());
    sub.edges = spec
        .edges
        .iter()
        .filter(|(a, b)| inner.contains(a) && inner.contains(b))
        .cloned()
        .collect();
    sub.edges.push((outer.to_string(), inner_root.to_string()));
    sub.ports.push(crate::graph::Port {
        name: "cut".into(),
        input: EdgeState::new(outer, inner_root),
        output: EdgeState::new(inner_root, outer),
    });
    Ok((sub, inner))
}

fn reflection_of(sub: &GraphSpec, id: &str) -> Result<FrequencyVertex> {
    let dec = ScatterFunction::from_operator(&build_operator(sub)?, 0, 0)?.decomposition;
    FrequencyVertex::new(id, -&dec.g_red, dec.f_red, 2)
}

fn replace_with_leaf(spec: &GraphSpec, cut: (&str, &str), inner: &BTreeSet<String>) -> GraphSpec {
    let mut out = spec.clone();
    out.vertices.retain(|v| !inner.contains(&v.id) || v.id == cut.1);
    for v in out.vertices.iter_mut().filter(|v| v.id == cut.1) {
        v.coin = CoinSpec::reflect(ONE);
    }
    out.edges.retain(|(a, b)| {
        !(inner.contains(a) || inner.contains(b)) || (a == cut.0 && b == cut.1) || (a == cut.1 && b == cut.0)
    });
    out
}

/// Reflection of the subgraph hanging below the directed edge
/// `cut = (outer, inner)`, with the two-step delay of the cut edge removed.
pub fn extract_subgraph_reflection(spec: &GraphSpec, cut: (&str, &str)) -> Result<FrequencyVertex> {
    let (sub, _) = split_at_cut(spec, cut)?;
    reflection_of(&sub, cut.1)
}

/// Collapses the subgraph below `cut` into a frequency vertex.
pub fn prune(spec: &GraphSpec, cut: (&str, &str)) -> Result<PrunedGraph> {
    PrunedGraph::new(spec.clone(), Vec::new())?.prune(cut)
}

/// `-<out_k|(U'(z) - zI)^-1|in_j>`.
pub fn pruned_scatter_eval(pg: &PrunedGraph, j: usize, k: usize, z: Complex64) -> Result<Complex64> {
    let ports = pg.operator.ports();
    if j >= ports.len() || k >= ports.len() {
        return Err(Error::InvalidArgument(format!("port indices ({j}, {k}) out of range")));
    }
    let m = pg.effective_matrix(z)?;
    let lu = Lu::new(linalg::shifted(&m, z));
    let mut e = CMatrix::zeros(m.nrows(), 1);
    e[(ports[j].input, 0)] = ONE;
    let x = lu.solve(&e).ok_or(Error::Singular(z))?;
    Ok(-x[(ports[k].output, 0)])
}

/// Like [`pruned_scatter_eval`], but at a pole of some `r(z)` or a singular
/// point it evaluates at `z (1 +- 1e-8)` and returns the mean when the two
/// sides agree within `1e-6`.
pub fn pruned_scatter_eval_removable(pg: &PrunedGraph, j: usize, k: usize, z: Complex64) -> Result<Complex64> {
    match pruned_scatter_eval(pg, j, k, z) {
        Err(Error::Pole(_)) | Err(Error::Singular(_)) => {
            let lo = pruned_scatter_eval(pg, j, k, z * (1.0 - REMOVABLE_STEP))?;
            let hi = pruned_scatter_eval(pg, j, k, z * (1.0 + REMOVABLE_STEP))?;
            let gap = (lo - hi).norm();
            if gap > REMOVABLE_TOL {
                return Err(Error::NotRemovable(gap));
            }
            Ok(0.5 * (lo + hi))
        }
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PruneReport {
    /// `(in-port name, out-port name, max |S_full - S_pruned|)`.
    pub pairs: Vec<(String, String, f64)>,
    pub max_error: f64,
    pub passed: bool,
}

/// Compares every port pair on `k` circle points offset by half a step.
pub fn verify_prune_equivalence(full: &GraphSpec, pg: &PrunedGraph, k: usize, tol: f64) -> Result<PruneReport> {
    let u_full = build_operator(full)?;
    let names: Vec<String> = u_full.ports().iter().map(|p| p.name.clone()).collect();
    let index: BTreeMap<&str, usize> = pg
        .operator
        .ports()
        .iter()
        .enumerate()
        .map(|(i, p)| (p.name.as_str(), i))
        .collect();
    let mapped: Vec<usize> = names
        .iter()
        .map(|n| {
            index
                .get(n.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownPort(n.clone()))
        })
        .collect::<Result<_>>()?;
    if mapped.len() != pg.operator.ports().len() {
        return Err(Error::InvalidArgument("port sets differ".into()));
    }
    let zs = scatter::circle_points(k, 0.5 * 2.0 * std::f64::consts::PI);
    let per_point: Vec<Vec<f64>> = zs
        .par_iter()
        .map(|z| {
            let s_full = scatter::resolvent_scatter(&u_full, *z)?;
            let n = names.len();
            let mut errs = vec![0.0; n * n];
            for j in 0..n {
                for kk in 0..n {
                    let p = pruned_scatter_eval_removable(pg, mapped[j], mapped[kk], *z)?;
                    errs[j * n + kk] = (s_full[(kk, j)] - p).norm();
                }
            }
            Ok(errs)
        })
        .collect::<Result<_>>()?;
    let n = names.len();
    let mut pairs = Vec::with_capacity(n * n);
    for j in 0..n {
        for kk in 0..n {
            let e = per_point.iter().map(|v| v[j * n + kk]).fold(0.0, f64::max);
            pairs.push((names[j].clone(), names[kk].clone(), e));
        }
    }
    let max_error = pairs.iter().map(|p| p.2).fold(0.0, f64::max);
    Ok(PruneReport {
        pairs,
        max_error,
        passed: max_error < tol,
    })
}

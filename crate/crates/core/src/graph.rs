//! Graph descriptions, the directed edge-state basis, and assembly of the
//! finite time-step operator `U0`.
//!
//! An edge state `|u,v>` is a walker on the edge `{u,v}` travelling from `u`
//! to `v`. Each vertex `v` carries a coin that maps the incoming states
//! `|u,v>` onto the outgoing states `|v,w>`. Ports mark one incoming state
//! (no pre-image) and one outgoing state (no image) where a runway splices
//! onto the graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Tolerance for coin unitarity and operator isometry checks.
pub const UNITARY_EPS: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn unit_phase() -> Complex64 {
    ONE
}

/// Local scattering rule at a vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoinSpec {
    /// Diffusion coin: `-1 + 2/n` back along the incoming edge, `2/n` onto
    /// every other edge.
    Grover,
    /// Degree-one vertex that sends the walker back with `phase`.
    Reflect {
        #[serde(default = "unit_phase")]
        phase: Complex64,
    },
    /// Explicit unitary; rows are outgoing and columns incoming neighbours,
    /// both in lexicographic id order.
    Custom { matrix: Vec<Vec<Complex64>> },
}

impl CoinSpec {
    pub fn reflect(phase: Complex64) -> Self {
        CoinSpec::Reflect { phase }
    }

    /// Square coin matrix for a vertex whose sorted neighbour list is
    /// `neighbors`, indexed `[outgoing][incoming]`.
    pub fn matrix(&self, vertex: &str, neighbors: &[&str]) -> Result<Vec<Vec<Complex64>>> {
        let n = neighbors.len();
        let bad = |reason: String| Error::InvalidCoin {
            vertex: vertex.to_string(),
            reason,
        };
        match self {
            CoinSpec::Grover => {
                if n == 0 {
                    return Err(bad("grover coin on an isolated vertex".into()));
                }
                let t = 2.0 / n as f64;
                Ok((0..n)
                    .map(|w| {
                        (0..n)
                            .map(|u| Complex64::new(if u == w { t - 1.0 } else { t }, 0.0))
                            .collect()
                    })
                    .collect())
            }
            CoinSpec::Reflect { phase } => {
                if n != 1 {
                    return Err(bad(format!("reflect coin needs degree 1, vertex has degree {n}")));
                }
                if (phase.norm() - 1.0).abs() > UNITARY_EPS {
                    return Err(bad(format!("reflect phase {phase} is not of unit modulus")));
                }
                Ok(vec![vec![*phase]])
            }
            CoinSpec::Custom { matrix } => {
                if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                    return Err(bad(format!("custom coin must be {n}x{n}")));
                }
                let dev = unitarity_deviation(matrix);
                if dev > UNITARY_EPS {
                    return Err(bad(format!("custom coin deviates from unitary by {dev:e}")));
                }
                Ok(matrix.clone())
            }
        }
    }
}

fn unitarity_deviation(m: &[Vec<Complex64>]) -> f64 {
    let n = m.len();
    let mut worst = 0.0_f64;
    for a in 0..n {
        for b in 0..n {
            let dot: Complex64 = (0..n).map(|r| m[r][a].conj() * m[r][b]).sum();
            let want = if a == b { ONE } else { ZERO };
            worst = worst.max((dot - want).norm());
        }
    }
    worst
}

/// Directed edge state `|tail, head>`. Serialised as `[tail, head]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(String, String)", into = "(String, String)")]
pub struct EdgeState {
    pub tail: String,
    pub head: String,
}

impl EdgeState {
    pub fn new(tail: impl Into<String>, head: impl Into<String>) -> Self {
        Self {
            tail: tail.into(),
            head: head.into(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.head.clone(), self.tail.clone())
    }
}

impl From<(String, String)> for EdgeState {
    fn from((tail, head): (String, String)) -> Self {
        Self { tail, head }
    }
}

impl From<EdgeState> for (String, String) {
    fn from(e: EdgeState) -> Self {
        (e.tail, e.head)
    }
}

impl fmt::Display for EdgeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}>", self.tail, self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub coin: CoinSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Port {
    pub name: String,
    #[serde(rename = "in")]
    pub input: EdgeState,
    #[serde(rename = "out")]
    pub output: EdgeState,
}

/// A finite graph with coins and named ports.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
    #[serde(default)]
    pub ports: Vec<Port>,
}

impl GraphSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, id: &str, coin: CoinSpec) -> Self {
        self.vertices.push(Vertex {
            id: id.to_string(),
            coin,
        });
        self
    }

    pub fn edge(mut self, a: &str, b: &str) -> Self {
        self.edges.push((a.to_string(), b.to_string()));
        self
    }

    /// Port whose incoming state is `|outside, inside>` and outgoing state is
    /// the reverse.
    pub fn port(mut self, name: &str, outside: &str, inside: &str) -> Self {
        self.ports.push(Port {
            name: name.to_string(),
            input: EdgeState::new(outside, inside),
            output: EdgeState::new(inside, outside),
        });
        self
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: GraphSpec = serde_json::from_str(text).map_err(|source| Error::Json {
            context: "graph".into(),
            source,
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let spec: GraphSpec = serde_json::from_str(&text).map_err(|source| Error::Json {
            context: path.display().to_string(),
            source,
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph specs always serialise")
    }

    pub fn coin_of(&self, id: &str) -> Option<&CoinSpec> {
        self.vertices.iter().find(|v| v.id == id).map(|v| &v.coin)
    }

    pub fn port_named(&self, name: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.name == name)
    }

    /// Sorted, de-duplicated neighbour lists; a self-loop lists the vertex
    /// itself once.
    pub fn adjacency(&self) -> BTreeMap<&str, Vec<&str>> {
        let mut adj: BTreeMap<&str, BTreeSet<&str>> =
            self.vertices.iter().map(|v| (v.id.as_str(), BTreeSet::new())).collect();
        for (a, b) in &self.edges {
            if let Some(s) = adj.get_mut(a.as_str()) {
                s.insert(b.as_str());
            }
            if let Some(s) = adj.get_mut(b.as_str()) {
                s.insert(a.as_str());
            }
        }
        adj.into_iter().map(|(k, v)| (k, v.into_iter().collect())).collect()
    }

    /// Checks ids, edge endpoints, and port states.
    pub fn validate(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id.as_str()) {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for (i, (a, b)) in self.edges.iter().enumerate() {
            for id in [a, b] {
                if !ids.contains(id.as_str()) {
                    return Err(Error::UnknownVertex {
                        index: i,
                        id: id.clone(),
                    });
                }
            }
            let key = if a <= b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!("edges[{i}] duplicates edge {{{a},{b}}}")));
            }
        }
        let mut claimed: BTreeMap<&EdgeState, &str> = BTreeMap::new();
        let mut names = BTreeSet::new();
        for p in &self.ports {
            if !names.insert(p.name.as_str()) {
                return Err(Error::InvalidPort {
                    port: p.name.clone(),
                    reason: "duplicate port name".into(),
                });
            }
            for state in [&p.input, &p.output] {
                let (a, b) = (&state.tail, &state.head);
                let key = if a <= b { (a, b) } else { (b, a) };
                if !seen.contains(&key) {
                    return Err(Error::InvalidPort {
                        port: p.name.clone(),
                        reason: format!("{state} is not a state of a declared edge"),
                    });
                }
                if let Some(other) = claimed.insert(state, &p.name) {
                    return Err(Error::InvalidPort {
                        port: p.name.clone(),
                        reason: format!("{state} is already claimed by port `{other}`"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Ordered directed edge states, sorted by `(tail, head)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBasis {
    states: Vec<EdgeState>,
    index: HashMap<EdgeState, usize>,
}

impl EdgeBasis {
    pub fn states(&self) -> &[EdgeState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, state: &EdgeState) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn index(&self, tail: &str, head: &str) -> Option<usize> {
        self.index_of(&EdgeState::new(tail, head))
    }
}

pub fn build_edge_basis(spec: &GraphSpec) -> Result<EdgeBasis> {
    spec.validate()?;
    let mut set = BTreeSet::new();
    for (a, b) in &spec.edges {
        set.insert(EdgeState::new(a.clone(), b.clone()));
        set.insert(EdgeState::new(b.clone(), a.clone()));
    }
    let states: Vec<EdgeState> = set.into_iter().collect();
    let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(EdgeBasis { states, index })
}

/// Positions of one port's states in the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortIndex {
    pub name: String,
    pub input: usize,
    pub output: usize,
}

/// Dense `U0` over an [`EdgeBasis`], with port rows and columns zeroed.
#[derive(Debug, Clone)]
pub struct TimeStepOperator {
    matrix: CMatrix,
    basis: Option<EdgeBasis>,
    ports: Vec<PortIndex>,
}

impl TimeStepOperator {
    /// Wraps a raw matrix without checking any invariant; see
    /// [`validate_partial_isometry`].
    pub fn from_parts(matrix: CMatrix, ports: Vec<PortIndex>) -> Self {
        Self {
            matrix,
            basis: None,
            ports,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn basis(&self) -> Option<&EdgeBasis> {
        self.basis.as_ref()
    }

    pub fn ports(&self) -> &[PortIndex] {
        &self.ports
    }

    pub fn in_indices(&self) -> Vec<usize> {
        self.ports.iter().map(|p| p.input).collect()
    }

    pub fn out_indices(&self) -> Vec<usize> {
        self.ports.iter().map(|p| p.output).collect()
    }

    pub fn is_single_runway(&self) -> bool {
        self.ports.len() == 1
    }

    /// Position of a port by name, or by 1-based number when no port has
    /// that name.
    pub fn port_position(&self, key: &str) -> Result<usize> {
        if let Some(i) = self.ports.iter().position(|p| p.name == key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(n) if n >= 1 && n <= self.ports.len() => Ok(n - 1),
            _ => Err(Error::UnknownPort(key.to_string())),
        }
    }

    /// `U0 + alpha |in_j><out_k|`.
    pub fn with_feedback(&self, j: usize, k: usize, alpha: Complex64) -> CMatrix {
        let mut m = self.matrix.clone();
        m[(self.ports[j].input, self.ports[k].output)] += alpha;
        m
    }
}

/// Builds `U0` for a validated spec. Entry `<v,w|U0|u,v>` is the coin
/// amplitude at `v` from `u` to `w`.
pub fn assemble_u0(spec: &GraphSpec, basis: &EdgeBasis) -> Result<TimeStepOperator> {
    spec.validate()?;
    let adj = spec.adjacency();
    let dim = basis.len();
    let mut m = CMatrix::zeros(dim, dim);
    for v in &spec.vertices {
        let nbrs = &adj[v.id.as_str()];
        if nbrs.is_empty() {
            continue;
        }
        let coin = v.coin.matrix(&v.id, nbrs)?;
        for (ui, u) in nbrs.iter().enumerate() {
            let col = basis.index(u, &v.id).expect("basis covers every edge");
            for (wi, w) in nbrs.iter().enumerate() {
                let row = basis.index(&v.id, w).expect("basis covers every edge");
                m[(row, col)] = coin[wi][ui];
            }
        }
    }
    let mut ports = Vec::with_capacity(spec.ports.len());
    for p in &spec.ports {
        let lookup = |s: &EdgeState| {
            basis.index_of(s).ok_or_else(|| Error::InvalidPort {
                port: p.name.clone(),
                reason: format!("{s} is not in the edge basis"),
            })
        };
        let input = lookup(&p.input)?;
        let output = lookup(&p.output)?;
        ports.push(PortIndex {
            name: p.name.clone(),
            input,
            output,
        });
    }
    for p in &ports {
        m.column_mut(p.output).fill(ZERO);
        m.row_mut(p.input).fill(ZERO);
    }
    Ok(TimeStepOperator {
        matrix: m,
        basis: Some(basis.clone()),
        ports,
    })
}

/// Convenience: basis then operator.
pub fn build_operator(spec: &GraphSpec) -> Result<TimeStepOperator> {
    let basis = build_edge_basis(spec)?;
    assemble_u0(spec, &basis)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport {
    /// `max |U0^H U0 - (I - sum |out><out|)|`.
    pub right_deviation: f64,
    /// `max |U0 U0^H - (I - sum |in><in|)|`.
    pub left_deviation: f64,
    pub passed: bool,
}

impl IsometryReport {
    pub fn max_deviation(&self) -> f64 {
        self.right_deviation.max(self.left_deviation)
    }
}

pub fn validate_partial_isometry(u0: &TimeStepOperator) -> IsometryReport {
    let m = u0.matrix();
    let n = m.nrows();
    let outs: BTreeSet<usize> = u0.out_indices().into_iter().collect();
    let ins: BTreeSet<usize> = u0.in_indices().into_iter().collect();
    let right = m.adjoint() * m;
    let left = m * m.adjoint();
    let dev = |prod: &CMatrix, removed: &BTreeSet<usize>| {
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let want = if i == j && !removed.contains(&i) { ONE } else { ZERO };
                worst = worst.max((prod[(i, j)] - want).norm());
            }
        }
        worst
    };
    let right_deviation = dev(&right, &outs);
    let left_deviation = dev(&left, &ins);
    IsometryReport {
        right_deviation,
        left_deviation,
        passed: right_deviation <= UNITARY_EPS && left_deviation <= UNITARY_EPS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn bolo_basis_has_loop_once() {
        let b = build_edge_basis(&catalog::bolo()).unwrap();
        let names: Vec<String> = b.states().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["|0,B>", "|A,B>", "|B,0>", "|B,A>", "|B,B>"]);
    }

    #[test]
    fn single_edge_basis() {
        let spec = GraphSpec::new()
            .vertex("u", CoinSpec::reflect(ONE))
            .vertex("v", CoinSpec::reflect(ONE))
            .edge("u", "v");
        let b = build_edge_basis(&spec).unwrap();
        assert_eq!(b.states(), &[EdgeState::new("u", "v"), EdgeState::new("v", "u")]);
    }

    #[test]
    fn square_junction_has_sixteen_states() {
        let spec = catalog::square_junction();
        let b = build_edge_basis(&spec).unwrap();
        assert_eq!(b.len(), 16);
        for (t, h) in [
            ("a", "A"),
            ("A", "B"),
            ("B", "C"),
            ("C", "D"),
            ("D", "A"),
            ("D", "d"),
            ("A", "a"),
        ] {
            assert!(b.index(t, h).is_some(), "{t},{h}");
        }
    }

    #[test]
    fn basis_errors() {
        let dup = GraphSpec::new()
            .vertex("x", CoinSpec::Grover)
            .vertex("x", CoinSpec::Grover);
        assert!(matches!(build_edge_basis(&dup), Err(Error::DuplicateVertex(_))));
        let unknown = GraphSpec::new().vertex("x", CoinSpec::Grover).edge("x", "y");
        assert!(matches!(
            build_edge_basis(&unknown),
            Err(Error::UnknownVertex { index: 0, .. })
        ));
    }

    #[test]
    fn port_states_must_be_unique_and_declared() {
        let mut spec = catalog::valve(ONE);
        spec.ports[1].input = spec.ports[0].input.clone();
        assert!(matches!(spec.validate(), Err(Error::InvalidPort { .. })));
        let mut spec = catalog::bolo();
        spec.ports[0].input = EdgeState::new("0", "A");
        assert!(matches!(spec.validate(), Err(Error::InvalidPort { .. })));
    }

    #[test]
    fn bolo_matrix_entries() {
        let u = build_operator(&catalog::bolo()).unwrap();
        let b = u.basis().unwrap();
        let at =
            |t1: &str, h1: &str, t0: &str, h0: &str| u.matrix()[(b.index(t1, h1).unwrap(), b.index(t0, h0).unwrap())];
        let third = 1.0 / 3.0;
        // reference matrix in its own state order
        let ref_order = [("0", "B"), ("A", "B"), ("B", "B"), ("B", "A"), ("B", "0")];
        let reference = [
            [0.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0, 0.0],
            [2.0 * third, 2.0 * third, -third, 0.0, 0.0],
            [2.0 * third, -third, 2.0 * third, 0.0, 0.0],
            [-third, 2.0 * third, 2.0 * third, 0.0, 0.0],
        ];
        for (r, (t1, h1)) in ref_order.iter().enumerate() {
            for (col, (t0, h0)) in ref_order.iter().enumerate() {
                assert!(
                    (at(t1, h1, t0, h0) - c(reference[r][col])).norm() < 1e-15,
                    "row {r} col {col}"
                );
            }
        }
    }

    #[test]
    fn valve_matrix_entries() {
        let cc = Complex64::from_polar(1.0, 0.7);
        let u = build_operator(&catalog::valve(cc)).unwrap();
        let b = u.basis().unwrap();
        let order = [("A", "D"), ("B", "D"), ("C", "D"), ("D", "C"), ("D", "B"), ("D", "A")];
        let t = 2.0 / 3.0;
        let r = -1.0 / 3.0;
        let z = Complex64::new(0.0, 0.0);
        let reference = [
            [z, z, z, z, z, z],
            [z, z, z, z, z, z],
            [z, z, z, cc, z, z],
            [c(t), c(t), c(r), z, z, z],
            [c(t), c(r), c(t), z, z, z],
            [c(r), c(t), c(t), z, z, z],
        ];
        for (i, (t1, h1)) in order.iter().enumerate() {
            for (j, (t0, h0)) in order.iter().enumerate() {
                let got = u.matrix()[(b.index(t1, h1).unwrap(), b.index(t0, h0).unwrap())];
                assert!((got - reference[i][j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn constant_reflector_operator() {
        let r = Complex64::from_polar(1.0, 0.3);
        let u = build_operator(&catalog::reflector(r)).unwrap();
        assert_eq!(u.dim(), 2);
        let p = &u.ports()[0];
        assert_eq!(u.matrix()[(p.output, p.input)], r);
        assert_eq!(u.matrix()[(p.input, p.output)], ZERO);
    }

    #[test]
    fn coin_errors() {
        let spec = GraphSpec::new()
            .vertex("a", CoinSpec::reflect(ONE))
            .vertex("b", CoinSpec::reflect(ONE))
            .vertex("c", CoinSpec::reflect(ONE))
            .edge("a", "b")
            .edge("b", "c");
        assert!(matches!(build_operator(&spec), Err(Error::InvalidCoin { .. })));

        let spec = GraphSpec::new()
            .vertex(
                "a",
                CoinSpec::Custom {
                    matrix: vec![vec![c(1.0), c(1.0)], vec![c(0.0), c(1.0)]],
                },
            )
            .vertex("b", CoinSpec::reflect(ONE))
            .vertex("c", CoinSpec::reflect(ONE))
            .edge("a", "b")
            .edge("a", "c");
        assert!(matches!(build_operator(&spec), Err(Error::InvalidCoin { .. })));

        let spec = GraphSpec::new()
            .vertex("a", CoinSpec::reflect(c(0.5)))
            .vertex("b", CoinSpec::reflect(ONE))
            .edge("a", "b");
        assert!(matches!(build_operator(&spec), Err(Error::InvalidCoin { .. })));
    }

    #[test]
    fn grover_coins_are_unitary() {
        for n in 1..12 {
            let nbrs: Vec<String> = (0..n).map(|i| format!("v{i:02}")).collect();
            let refs: Vec<&str> = nbrs.iter().map(|s| s.as_str()).collect();
            let m = CoinSpec::Grover.matrix("x", &refs).unwrap();
            assert!(unitarity_deviation(&m) < 1e-14);
        }
    }

    #[test]
    fn isometry_holds_for_catalog_and_flags_violations() {
        for spec in [catalog::bolo(), catalog::square_junction(), catalog::pruned_tree()] {
            let u = build_operator(&spec).unwrap();
            let rep = validate_partial_isometry(&u);
            assert!(rep.passed && rep.max_deviation() < 1e-12, "{rep:?}");
        }
        let u = build_operator(&catalog::bolo()).unwrap();
        let mut m = u.matrix().clone();
        let out = u.ports()[0].output;
        let inp = u.ports()[0].input;
        m[(inp, out)] = ONE;
        m[(out, out)] = c(0.5);
        let broken = TimeStepOperator::from_parts(m, u.ports().to_vec());
        assert!(!validate_partial_isometry(&broken).passed);
    }

    #[test]
    fn state_count_formula() {
        for spec in [
            catalog::bolo(),
            catalog::star(3, 1),
            catalog::complete_reduced(10),
            catalog::square_junction(),
            catalog::pruned_tree(),
        ] {
            let loops = spec.edges.iter().filter(|(a, b)| a == b).count();
            let b = build_edge_basis(&spec).unwrap();
            assert_eq!(b.len(), 2 * (spec.edges.len() - loops) + loops);
        }
    }

    #[test]
    fn json_round_trip_preserves_basis() {
        let spec = catalog::valve(Complex64::from_polar(1.0, 1.0));
        let text = spec.to_json_pretty();
        let back = GraphSpec::from_json_str(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(build_edge_basis(&back).unwrap(), build_edge_basis(&spec).unwrap());
    }

    #[test]
    fn json_errors_carry_line_numbers() {
        let text =
            "{\n  \"vertices\": [\n    {\"id\": \"a\", \"coin\": {\"kind\": \"spinny\"}}\n  ],\n  \"edges\": []\n}";
        let err = GraphSpec::from_json_str(text).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }
}

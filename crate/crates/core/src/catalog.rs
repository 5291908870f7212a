//! Ready-made graphs used by the examples, the tests, and the shipped JSON
//! files under `graphs/`.

use num_complex::Complex64;

use crate::graph::{CoinSpec, GraphSpec};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn reflect(x: f64) -> CoinSpec {
    CoinSpec::reflect(re(x))
}

fn custom(rows: [[f64; 2]; 2]) -> CoinSpec {
    CoinSpec::Custom {
        matrix: rows.iter().map(|r| r.iter().map(|&x| re(x)).collect()).collect(),
    }
}

/// One edge `{0, v}` where `v` reflects with `r`. `S(z) = r / z^2`.
pub fn reflector(r: Complex64) -> GraphSpec {
    GraphSpec::new()
        .vertex("0", CoinSpec::reflect(ONE))
        .vertex("v", CoinSpec::reflect(r))
        .edge("0", "v")
        .port("p", "0", "v")
}

/// Vertex `B` with a self-loop and a dangling edge to `A`, fed from `0`.
pub fn bolo() -> GraphSpec {
    GraphSpec::new()
        .vertex("0", reflect(1.0))
        .vertex("A", reflect(-1.0))
        .vertex("B", CoinSpec::Grover)
        .edge("0", "B")
        .edge("A", "B")
        .edge("B", "B")
        .port("p", "0", "B")
}

/// Star with centre `c`, `m` leaves reflecting `-1` and `n - m` leaves
/// reflecting `+1`, fed through one extra edge from `0`.
pub fn star(n: usize, m: usize) -> GraphSpec {
    assert!(m <= n, "star needs m <= n");
    let mut g = GraphSpec::new().vertex("0", reflect(1.0)).vertex("c", CoinSpec::Grover);
    for j in 0..n {
        let (id, phase) = if j < m {
            (format!("a{j:03}"), -1.0)
        } else {
            (format!("b{:03}", j - m), 1.0)
        };
        g = g.vertex(&id, reflect(phase)).edge("c", &id);
    }
    g.edge("0", "c").port("p", "0", "c")
}

/// Star restricted to the symmetric subspace: the `m` marked leaves merge
/// into `a`, the rest into `b`, and `c` carries the induced 3x3 coin.
pub fn star_reduced(n: usize, m: usize) -> GraphSpec {
    assert!(m <= n && n >= 1, "star needs 1 <= n and m <= n");
    let nf = n as f64;
    let mf = m as f64;
    let k = nf + 1.0;
    let (sm, sr) = (mf.sqrt(), (nf - mf).sqrt());
    let rows = [
        [-1.0 + 2.0 / k, 2.0 * sm / k, 2.0 * sr / k],
        [2.0 * sm / k, -1.0 + 2.0 * mf / k, 2.0 * sm * sr / k],
        [2.0 * sr / k, 2.0 * sm * sr / k, -1.0 + 2.0 * (nf - mf) / k],
    ];
    let coin = CoinSpec::Custom {
        matrix: rows.iter().map(|r| r.iter().map(|&x| re(x)).collect()).collect(),
    };
    GraphSpec::new()
        .vertex("0", reflect(1.0))
        .vertex("a", reflect(-1.0))
        .vertex("b", reflect(1.0))
        .vertex("c", coin)
        .edge("0", "c")
        .edge("c", "a")
        .edge("c", "b")
        .port("p", "0", "c")
}

/// Complete graph on `n + 1` vertices, all Grover, with the runway attached
/// at `A00`.
pub fn complete(n: usize) -> GraphSpec {
    let ids: Vec<String> = (0..=n).map(|j| format!("A{j:02}")).collect();
    let mut g = GraphSpec::new().vertex("0", reflect(1.0));
    for id in &ids {
        g = g.vertex(id, CoinSpec::Grover);
    }
    g = g.edge("0", &ids[0]);
    for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            g = g.edge(&ids[a], &ids[b]);
        }
    }
    g.port("p", "0", &ids[0])
}

/// Complete graph restricted to states symmetric under permutations of the
/// `n` vertices other than the runway vertex. `X` stands for those vertices;
/// its self-loop carries the traffic between them.
pub fn complete_reduced(n: usize) -> GraphSpec {
    assert!(n >= 2, "complete graph needs n >= 2");
    let nf = n as f64;
    let k = nf + 1.0;
    let hub = [
        [-1.0 + 2.0 / k, 2.0 * nf.sqrt() / k],
        [2.0 * nf.sqrt() / k, 1.0 - 2.0 / k],
    ];
    let rim = [
        [-1.0 + 2.0 / nf, 2.0 * (nf - 1.0).sqrt() / nf],
        [2.0 * (nf - 1.0).sqrt() / nf, 1.0 - 2.0 / nf],
    ];
    GraphSpec::new()
        .vertex("0", reflect(1.0))
        .vertex("A0", custom(hub))
        .vertex("X", custom(rim))
        .edge("0", "A0")
        .edge("A0", "X")
        .edge("X", "X")
        .port("p", "0", "A0")
}

/// Grover vertex `D` joining ports `1` (from `A`) and `2` (from `B`) and a
/// dead end `C` that reflects with `c`.
pub fn valve(c: Complex64) -> GraphSpec {
    GraphSpec::new()
        .vertex("A", reflect(1.0))
        .vertex("B", reflect(1.0))
        .vertex("C", CoinSpec::reflect(c))
        .vertex("D", CoinSpec::Grover)
        .edge("A", "D")
        .edge("B", "D")
        .edge("C", "D")
        .port("1", "A", "D")
        .port("2", "B", "D")
}

/// Four Grover vertices on a cycle `A-B-C-D`, each with one port.
pub fn square_junction() -> GraphSpec {
    let mut g = GraphSpec::new();
    for id in ["a", "b", "c", "d"] {
        g = g.vertex(id, reflect(1.0));
    }
    for id in ["A", "B", "C", "D"] {
        g = g.vertex(id, CoinSpec::Grover);
    }
    for (x, y) in [("a", "A"), ("b", "B"), ("c", "C"), ("d", "D")] {
        g = g.edge(x, y);
    }
    for (x, y) in [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")] {
        g = g.edge(x, y);
    }
    g.port("1", "a", "A")
        .port("2", "b", "B")
        .port("3", "c", "C")
        .port("4", "d", "D")
}

/// Small tree: `0-A`, `A-B`, `A-C`, `C-D`, `C-E`, with `B`, `D` reflecting
/// `+1` and `E` reflecting `-1`. The branch below `A-C` is what
/// [`crate::prune`] replaces.
pub fn pruned_tree() -> GraphSpec {
    GraphSpec::new()
        .vertex("0", reflect(1.0))
        .vertex("A", CoinSpec::Grover)
        .vertex("B", reflect(1.0))
        .vertex("C", CoinSpec::Grover)
        .vertex("D", reflect(1.0))
        .vertex("E", reflect(-1.0))
        .edge("0", "A")
        .edge("A", "B")
        .edge("A", "C")
        .edge("C", "D")
        .edge("C", "E")
        .port("p", "0", "A")
}

/// Path `0 - H - L - M - R` with a bolo hung off `L` (loop at `P`, dead end
/// `Q`) and another off `R` (loop at `S`, dead end `T`). Each bolo is a
/// separate pruning target.
pub fn double_bolo() -> GraphSpec {
    GraphSpec::new()
        .vertex("0", reflect(1.0))
        .vertex("H", CoinSpec::Grover)
        .vertex("K", reflect(1.0))
        .vertex("L", CoinSpec::Grover)
        .vertex("P", CoinSpec::Grover)
        .vertex("Q", reflect(-1.0))
        .vertex("S", CoinSpec::Grover)
        .vertex("T", reflect(-1.0))
        .edge("0", "H")
        .edge("H", "K")
        .edge("H", "L")
        .edge("L", "P")
        .edge("P", "P")
        .edge("P", "Q")
        .edge("L", "S")
        .edge("S", "S")
        .edge("S", "T")
        .port("p", "0", "H")
}

/// Every shipped graph by file stem.
pub fn corpus() -> Vec<(&'static str, GraphSpec)> {
    vec![
        ("bolo", bolo()),
        ("star_3_1", star(3, 1)),
        ("star_100_40", star_reduced(100, 40)),
        ("complete_10", complete_reduced(10)),
        ("valve", valve(ONE)),
        ("square", square_junction()),
        ("pruned_tree", pruned_tree()),
        ("reflector", reflector(ONE)),
        ("double_bolo", double_bolo()),
    ]
}

//! Randomized checks of the invariants on small random graphs with one or
//! two runways.

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use qgs::catalog;
use qgs::graph::{build_edge_basis, build_operator, CoinSpec, GraphSpec};
use qgs::prune;
use qgs::response;
use qgs::scatter::{self, ScatterFunction};
use qgs::sounding;
use qgs::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone)]
struct Shape {
    parents: Vec<usize>,
    extra: Vec<(usize, usize)>,
    kinds: Vec<u8>,
    phases: Vec<f64>,
    two_ports: bool,
}

fn shape(max_vertices: usize) -> impl Strategy<Value = Shape> {
    (2..=max_vertices)
        .prop_flat_map(|n| {
            (
                (1..n).map(|i| 0..i).collect::<Vec<_>>(),
                prop::collection::vec((0..n, 0..n), 0..n),
                prop::collection::vec(0u8..3, n),
                prop::collection::vec(0.0..std::f64::consts::TAU, 16),
                any::<bool>(),
            )
        })
        .prop_map(|(parents, extra, kinds, phases, two_ports)| Shape {
            parents,
            extra,
            kinds,
            phases,
            two_ports,
        })
}

fn grover(d: usize) -> Vec<Vec<Complex64>> {
    let t = 2.0 / d as f64;
    (0..d)
        .map(|w| (0..d).map(|u| c(if u == w { t - 1.0 } else { t }, 0.0)).collect())
        .collect()
}

fn name(i: usize) -> String {
    format!("v{i}")
}

/// Undirected edges (`a <= b`) of the random part, plus the runway edges.
fn edges_of(s: &Shape) -> BTreeSet<(String, String)> {
    let mut e = BTreeSet::new();
    for (i, p) in s.parents.iter().enumerate() {
        e.insert((name(*p), name(i + 1)));
    }
    for (a, b) in &s.extra {
        let (a, b) = (a.min(b), a.max(b));
        e.insert((name(*a), name(*b)));
    }
    e
}

fn build(s: &Shape) -> GraphSpec {
    let n = s.kinds.len();
    let mut edges: Vec<(String, String)> = edges_of(s).into_iter().collect();
    edges.push(("0".into(), name(0)));
    if s.two_ports {
        edges.push(("1".into(), name(n - 1)));
    }
    let mut spec = GraphSpec::new().vertex("0", CoinSpec::reflect(c(1.0, 0.0)));
    if s.two_ports {
        spec = spec.vertex("1", CoinSpec::reflect(c(1.0, 0.0)));
    }
    let mut phase = s.phases.iter().cycle();
    for i in 0..n {
        let id = name(i);
        let degree = edges.iter().filter(|(a, b)| *a == id || *b == id).count();
        let coin = match s.kinds[i] {
            2 if degree == 1 => CoinSpec::reflect(Complex64::from_polar(1.0, *phase.next().unwrap())),
            1 | 2 => {
                let g = grover(degree);
                let matrix = g
                    .into_iter()
                    .map(|row| {
                        let p = Complex64::from_polar(1.0, *phase.next().unwrap());
                        row.into_iter().map(|x| p * x).collect()
                    })
                    .collect();
                CoinSpec::Custom { matrix }
            }
            _ => CoinSpec::Grover,
        };
        spec = spec.vertex(&id, coin);
    }
    for (a, b) in &edges {
        spec = spec.edge(a, b);
    }
    spec = spec.port("p", "0", &name(0));
    if s.two_ports {
        spec = spec.port("q", "1", &name(n - 1));
    }
    spec
}

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn eta_max(sf: &ScatterFunction) -> f64 {
    sf.decomposition.etas.max_modulus()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn state_count(s in shape(7)) {
        let spec = build(&s);
        let loops = spec.edges.iter().filter(|(a, b)| a == b).count();
        let basis = build_edge_basis(&spec).unwrap();
        prop_assert_eq!(basis.len(), 2 * (spec.edges.len() - loops) + loops);
    }

    #[test]
    fn basis_is_a_function_of_the_spec(s in shape(7)) {
        let spec = build(&s);
        let again = GraphSpec::from_json_str(&spec.to_json_pretty()).unwrap();
        let (x, y) = (build_edge_basis(&spec).unwrap(), build_edge_basis(&again).unwrap());
        prop_assert_eq!(x.states(), y.states());
        let a = build_operator(&spec).unwrap();
        let b = build_operator(&again).unwrap();
        prop_assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn grover_coins_are_unitary(d in 1usize..40) {
        let g = CoinSpec::Grover.matrix("v", &vec!["w"; d]).unwrap();
        for i in 0..d {
            for j in 0..d {
                let dot: Complex64 = (0..d).map(|k| g[i][k] * g[j][k].conj()).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn single_runway_unit_modulus_and_interior_roots(s in shape(6)) {
        let s = Shape { two_ports: false, ..s };
        let u0 = build_operator(&build(&s)).unwrap();
        let sf = ScatterFunction::from_operator(&u0, 0, 0).unwrap();
        for eta in &sf.decomposition.etas.nonzero {
            prop_assert!(eta.norm() < 1.0 - 1e-9, "eta {}", eta);
        }
        let err = scatter::unit_modulus_error(&sf, &scatter::circle_points(64, 0.37)).unwrap();
        prop_assert!(err < 1e-8, "||S|-1| = {:e}", err);
    }

    #[test]
    fn multi_runway_row_normalization(s in shape(6)) {
        let s = Shape { two_ports: true, ..s };
        let u0 = build_operator(&build(&s)).unwrap();
        let err = scatter::row_normalization_error(&u0, &scatter::circle_points(32, 0.37)).unwrap();
        prop_assert!(err < 1e-8, "{:e}", err);
    }

    #[test]
    fn resolvent_matches_polynomial_ratio(
        s in shape(5),
        pts in prop::collection::vec((0.3f64..1.6, 0.0..std::f64::consts::TAU), 100),
    ) {
        let u0 = build_operator(&build(&s)).unwrap();
        let n = u0.ports().len();
        let eig = qgs::linalg::eigenvalues(u0.matrix()).unwrap();
        let pairs: Vec<_> = (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).collect();
        let fns: Vec<_> = pairs
            .iter()
            .map(|(j, k)| ScatterFunction::from_operator(&u0, *j, *k).unwrap())
            .collect();
        for (r, t) in pts {
            let z = Complex64::from_polar(r, t);
            if eig.iter().any(|e| (e - z).norm() < 1e-3) {
                continue;
            }
            let m = scatter::resolvent_scatter(&u0, z).unwrap();
            for ((j, k), sf) in pairs.iter().zip(&fns) {
                let a = m[(*k, *j)];
                let b = sf.eval(z).unwrap();
                prop_assert!((a - b).norm() < 1e-9 * (1.0 + a.norm()), "z {} pair ({},{}): {} vs {}", z, j, k, a, b);
            }
        }
    }

    #[test]
    fn leak_relation_holds(s in shape(6)) {
        let u0 = build_operator(&build(&s)).unwrap();
        let rep = scatter::leak_relation(&u0).unwrap();
        prop_assert_eq!(rep.unresolved, 0);
        prop_assert!(rep.max_deviation < 1e-8, "{:e}", rep.max_deviation);
    }

    #[test]
    fn oracle_conserves_norm(s in shape(6)) {
        let spec = build(&s);
        let run = response::simulate_oracle(&spec, "p", 100, 102).unwrap();
        prop_assert!(run.max_norm_drift(1.0) < 1e-12);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn impulse_methods_agree(s in shape(5)) {
        let s = Shape { two_ports: false, ..s };
        let spec = build(&s);
        let sf = ScatterFunction::from_operator(&build_operator(&spec).unwrap(), 0, 0).unwrap();
        let k = 8192;
        prop_assume!(eta_max(&sf).powi(k as i32) < 1e-10);
        let n = 20;
        let dft = response::impulse_dft(&sf, k, n).unwrap();
        let oracle = response::simulate_oracle(&spec, "p", n + 1, n + 3).unwrap();
        let mut seqs = vec![dft.sequence, oracle.output.samples];
        if scatter::check_reciprocal(&sf.decomposition, 1e-8).passed {
            seqs.push(response::impulse_closed_form(&sf, n).unwrap().sequence);
        }
        for a in &seqs {
            for b in &seqs {
                for i in 0..=n {
                    prop_assert!((a[i] - b[i]).norm() < 1e-8, "n={} {} vs {}", i, a[i], b[i]);
                }
            }
        }
    }

    #[test]
    fn impulse_sums_to_scattering(s in shape(5)) {
        let s = Shape { two_ports: false, ..s };
        let spec = build(&s);
        let sf = ScatterFunction::from_operator(&build_operator(&spec).unwrap(), 0, 0).unwrap();
        let big_n = 600;
        prop_assume!(eta_max(&sf).powi(big_n as i32) < 1e-12);
        let h = response::impulse(&sf, big_n, 8192).unwrap();
        for z in scatter::circle_points(16, 0.5) {
            let partial: Complex64 = h.sequence.iter().enumerate().map(|(k, v)| v * z.powi(-(k as i32))).sum();
            prop_assert!((partial - sf.eval(z).unwrap()).norm() < 1e-8);
        }
    }

    #[test]
    fn winding_matches_root_count(s in shape(6)) {
        let s = Shape { two_ports: false, ..s };
        let sf = ScatterFunction::from_operator(&build_operator(&build(&s)).unwrap(), 0, 0).unwrap();
        // a mode at distance delta from the circle is only visible on a grid finer than delta
        let delta = 1.0 - eta_max(&sf);
        prop_assume!(delta > 1e-5);
        let k0 = ((64.0 * std::f64::consts::TAU / delta) as usize).next_power_of_two().max(1024);
        let sweep = sounding::phase_sweep_auto(&sf, k0, 8 * k0).unwrap();
        prop_assert_eq!(sweep.winding, sounding::root_count_winding(&sf).unwrap());
    }

    /// A random pendant subgraph hung off a random host by one edge prunes
    /// to an equivalent frequency vertex.
    #[test]
    fn random_pendant_prunes_equivalently(host in shape(4), pendant in shape(4), at in 0usize..4) {
        let host = Shape { two_ports: false, ..host };
        let base = build(&host);
        let n = host.kinds.len();
        let anchor = name(at % n);
        // rename the pendant's vertices and drop its runways
        let sub = build(&Shape { two_ports: false, ..pendant });
        let rename = |v: &str| format!("h{v}");
        let mut spec = GraphSpec::new();
        let mut extended = Vec::new();
        for v in &base.vertices {
            extended.push(v.clone());
        }
        for v in &sub.vertices {
            if v.id == "0" {
                continue;
            }
            extended.push(qgs::graph::Vertex { id: rename(&v.id), coin: v.coin.clone() });
        }
        // the anchor gains one neighbour: give it a Grover coin of the new degree
        for v in &mut extended {
            if v.id == anchor {
                v.coin = CoinSpec::Grover;
            }
        }
        for v in extended {
            spec = spec.vertex(&v.id, v.coin);
        }
        for (a, b) in &base.edges {
            spec = spec.edge(a, b);
        }
        for (a, b) in &sub.edges {
            if a == "0" || b == "0" {
                continue;
            }
            spec = spec.edge(&rename(a), &rename(b));
        }
        // the anchor replaces the pendant's runway, so its root keeps its degree
        let root = rename(&name(0));
        spec = spec.edge(&anchor, &root);
        spec = spec.port("p", "0", &name(0));
        let pg = prune::prune(&spec, (&anchor, &root)).unwrap();
        let rep = prune::verify_prune_equivalence(&spec, &pg, 64, 1e-8).unwrap();
        prop_assert!(rep.passed, "max error {:e}", rep.max_error);
    }
}

#[test]
fn pruning_order_does_not_matter() {
    let chain = catalog::double_bolo();
    let a = prune::prune(&chain, ("L", "P")).unwrap().prune(("L", "S")).unwrap();
    let b = prune::prune(&chain, ("L", "S")).unwrap().prune(("L", "P")).unwrap();
    let mut worst = 0.0_f64;
    for z in scatter::circle_points(128, 0.5) {
        let sa = prune::pruned_scatter_eval_removable(&a, 0, 0, z).unwrap();
        let sb = prune::pruned_scatter_eval_removable(&b, 0, 0, z).unwrap();
        worst = worst.max((sa - sb).norm());
        assert!((sa.norm() - 1.0).abs() < 1e-7);
    }
    assert!(worst < 1e-10, "{worst:e}");
}

#[test]
fn full_tree_denominator() {
    // reduced denominator of the whole tree, up to normalization:
    // z^2 (9 z^8 + 2 z^6 + 4 z^4 - 2 z^2 + 3)
    let sf = ScatterFunction::from_operator(&build_operator(&catalog::pruned_tree()).unwrap(), 0, 0).unwrap();
    let f = &sf.decomposition.f_red;
    let want = [0.0, 0.0, 3.0, 0.0, -2.0, 0.0, 4.0, 0.0, 2.0, 0.0, 9.0];
    assert_eq!(f.degree(), Some(10));
    let scale = f.coeff(10) / 9.0;
    for (k, w) in want.iter().enumerate() {
        assert!((f.coeff(k) - scale * *w).norm() < 1e-10, "z^{k}: {}", f.coeff(k));
    }
}

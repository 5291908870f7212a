//! Reading a graph file, checking it, and listing its edge-state basis.
//!
//! ```text
//! cargo run --example load_graph -- graphs/valve.json
//! ```

use std::path::PathBuf;

use qgs::graph::{build_operator, validate_partial_isometry, GraphSpec};

fn main() {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("graphs/bolo.json"));
    let spec = match GraphSpec::load(&path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let u0 = build_operator(&spec).expect("a validated graph assembles");
    let basis = u0.basis().expect("assembled from a spec");
    println!(
        "{} vertices, {} edges, {} edge states",
        spec.vertices.len(),
        spec.edges.len(),
        basis.len()
    );
    for (i, st) in basis.states().iter().enumerate() {
        println!("  {i:>3}  {st}");
    }
    for p in u0.ports() {
        println!(
            "port {}: in {} out {}",
            p.name,
            basis.states()[p.input],
            basis.states()[p.output]
        );
    }
    let rep = validate_partial_isometry(&u0);
    println!(
        "partial isometry: passed = {}, deviation = {:.2e}",
        rep.passed,
        rep.max_deviation()
    );
}

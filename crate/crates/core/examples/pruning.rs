//! Replacing a subgraph by a single frequency-dependent reflecting vertex.

use qgs::catalog;
use qgs::prune;
use qgs::Complex64;

fn main() -> qgs::Result<()> {
    let tree = catalog::pruned_tree();
    let r = prune::extract_subgraph_reflection(&tree, ("A", "C"))?;
    println!("r(z) numerator   = {}", r.numerator);
    println!("r(z) denominator = {}", r.denominator);
    println!("r(z) delay       = {}", r.delay);
    for p in &r.poles {
        println!("pole of r        = {p:.6}");
    }

    let pg = prune::prune(&tree, ("A", "C"))?;
    let rep = prune::verify_prune_equivalence(&tree, &pg, 256, 1e-8)?;
    println!(
        "pruned tree vs full tree: max error {:.2e}, passed = {}",
        rep.max_error, rep.passed
    );

    // a pole of r is a removable point of S
    let pole = r.poles[0];
    let s = prune::pruned_scatter_eval_removable(&pg, 0, 0, pole)?;
    println!("S at the pole {pole:.6}: {s:.10}");

    // two subgraphs, one after the other
    let chain = catalog::double_bolo();
    let pg = prune::prune(&chain, ("L", "P"))?.prune(("L", "S"))?;
    let rep = prune::verify_prune_equivalence(&chain, &pg, 256, 1e-8)?;
    println!("double bolo: max error {:.2e}, passed = {}", rep.max_error, rep.passed);
    let z = Complex64::from_polar(1.0, 0.3);
    println!("S at z = {z:.4}: {:.10}", prune::pruned_scatter_eval(&pg, 0, 0, z)?);
    Ok(())
}

//! Eigenvalues of `U0 + alpha |in><out|` as `alpha` loops the unit circle.

use qgs::catalog;
use qgs::graph::build_operator;
use qgs::scatter::{self, ScatterFunction};

fn main() -> qgs::Result<()> {
    let u0 = build_operator(&catalog::bolo())?;
    let flow = scatter::spectral_flow(&u0, 0, 0, 512)?;
    println!("start eigenvalues:");
    for e in &flow.start {
        println!("  {e:.6}  arg = {:.4}", e.arg());
    }
    println!("permutation = {:?}", flow.permutation);
    println!("shift       = {:?}", flow.shift);
    println!("min gap     = {:.3e}", flow.min_gap);
    println!("evaluations = {}", flow.evaluations);

    let dec = ScatterFunction::from_operator(&u0, 0, 0)?.decomposition;
    let advance = scatter::alpha_phase_advance(&dec, 4096);
    println!(
        "alpha phase advance over one eigenvalue loop = {:.6} (2 pi d = {:.6})",
        advance.abs(),
        2.0 * std::f64::consts::PI * dec.d as f64
    );
    Ok(())
}

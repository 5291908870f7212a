//! Learning about a hidden graph from the phase of its reflection.
//!
//! The sweep's winding bounds the dimension; sharp phase jumps mark
//! resonances that encode the marked fraction of a star and the size of a
//! complete graph.

use qgs::catalog;
use qgs::graph::build_operator;
use qgs::scatter::ScatterFunction;
use qgs::sounding;

fn main() -> qgs::Result<()> {
    let bolo = ScatterFunction::from_operator(&build_operator(&catalog::bolo())?, 0, 0)?;
    let sweep = sounding::phase_sweep(&bolo, 1024)?;
    println!(
        "bolo: winding = {}, dimension >= {}",
        sweep.winding,
        sounding::dimension_lower_bound(&sweep)
    );

    let star = ScatterFunction::from_operator(&build_operator(&catalog::star_reduced(100, 40))?, 0, 0)?;
    let sweep = sounding::phase_sweep(&star, 1 << 16)?;
    let res = sounding::find_resonances(&sweep, None);
    for r in res.iter().take(4) {
        println!("star resonance at theta = {:.5}, width = {:.2e}", r.center, r.width);
    }
    if let Some(l) = sounding::star_marked_fraction(&res) {
        println!("star: estimated M/N = {l:.4} (true 0.4)");
    }

    // R(z) = z^2 S(z) strips the runway delay
    let complete =
        ScatterFunction::from_operator(&build_operator(&catalog::complete_reduced(10))?, 0, 0)?.with_delay(2);
    let sweep = sounding::phase_sweep(&complete, 1 << 14)?;
    if let Some(n) = sounding::complete_graph_size(&sweep) {
        println!("complete graph: estimated N = {n:.2} (true 10)");
    }
    Ok(())
}

//! Characteristic decomposition and scattering function of the bolo graph.

use qgs::catalog;
use qgs::graph::build_operator;
use qgs::scatter::{self, ScatterFunction};
use qgs::Complex64;

fn main() -> qgs::Result<()> {
    let u0 = build_operator(&catalog::bolo())?;
    let sf = ScatterFunction::from_operator(&u0, 0, 0)?;
    let dec = &sf.decomposition;

    println!("f_full = {}", dec.f_full);
    println!("g_full = {}", dec.g_full);
    println!("b      = {}", dec.b);
    println!("f_red  = {}", dec.f_red);
    println!("g_red  = {}", dec.g_red);
    println!("s = {}, d = {}, g0 = {:.6}", dec.s, dec.d, dec.g0);
    for eta in &dec.etas.nonzero {
        println!("eta = {eta:.6}  |eta| = {:.6}", eta.norm());
    }

    let i = Complex64::i();
    println!("S(i) = {:.12}", sf.eval(i)?);
    let zs = scatter::circle_points(200, 0.5);
    println!(
        "max ||S|-1| on the circle = {:.2e}",
        scatter::unit_modulus_error(&sf, &zs)?
    );
    println!(
        "reciprocal deviation = {:.2e}",
        scatter::check_reciprocal(dec, 1e-8).max_deviation
    );
    Ok(())
}

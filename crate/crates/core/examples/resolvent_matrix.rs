//! Full scattering matrix of multi-port graphs from the resolvent.

use qgs::catalog;
use qgs::graph::build_operator;
use qgs::scatter;
use qgs::Complex64;

fn show(name: &str, spec: &qgs::graph::GraphSpec, z: Complex64) -> qgs::Result<()> {
    let u0 = build_operator(spec)?;
    let s = scatter::resolvent_scatter(&u0, z)?;
    println!("{name} at z = {z}  (rows: out-port, columns: in-port)");
    for k in 0..s.nrows() {
        let row: Vec<String> = (0..s.ncols()).map(|j| format!("{:>24.6}", s[(k, j)])).collect();
        println!("  {}", row.join(" "));
    }
    let on_circle = scatter::circle_points(64, 0.25);
    println!(
        "  row normalization error = {:.2e}",
        scatter::row_normalization_error(&u0, &on_circle)?
    );
    Ok(())
}

fn main() -> qgs::Result<()> {
    let c = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    show("valve(c = e^{i pi/3})", &catalog::valve(c), Complex64::new(0.3, 0.4))?;

    // at z = sqrt(c) the valve is transparent
    let z = c.sqrt();
    let s = scatter::resolvent_scatter(&build_operator(&catalog::valve(c))?, z)?;
    println!("valve at sqrt(c): r = {:.3e}, t = {:.12}", s[(0, 0)].norm(), s[(1, 0)]);

    show(
        "square junction",
        &catalog::square_junction(),
        Complex64::from_polar(1.0, 0.7),
    )?;
    Ok(())
}

//! Impulse response three ways: closed form, inverse DFT, and direct
//! simulation with runways attached.

use qgs::catalog;
use qgs::graph::build_operator;
use qgs::response;
use qgs::scatter::ScatterFunction;

fn main() -> qgs::Result<()> {
    let spec = catalog::bolo();
    let sf = ScatterFunction::from_operator(&build_operator(&spec)?, 0, 0)?;
    let n = 12;

    let closed = response::impulse_closed_form(&sf, n)?;
    println!("s = {}, Omega0 = {:.9}", closed.s, closed.omega0);
    for m in &closed.modes {
        println!("Omega = {:.9}  eta = {:.9}", m.omega, m.eta);
    }

    let dft = response::impulse_dft(&sf, 512, n)?;
    let oracle = response::simulate_oracle(&spec, "p", n + 1, 32)?;

    println!("{:>3} {:>14} {:>14} {:>14}", "n", "closed", "dft", "oracle");
    for k in 0..=n {
        println!(
            "{k:>3} {:>14.10} {:>14.10} {:>14.10}",
            closed.sequence[k].re, dft.sequence[k].re, oracle.output.samples[k].re
        );
    }
    Ok(())
}

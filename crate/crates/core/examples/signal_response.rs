//! Convolving an input signal with the impulse response.
//!
//! A monochromatic drive `x[n] = lambda^n` settles to `y[n] = S(lambda) x[n]`.

use qgs::catalog;
use qgs::graph::build_operator;
use qgs::response::{self, Signal};
use qgs::scatter::ScatterFunction;
use qgs::Complex64;

fn main() -> qgs::Result<()> {
    let spec = catalog::bolo();
    let sf = ScatterFunction::from_operator(&build_operator(&spec)?, 0, 0)?;
    let lambda = Complex64::i();
    let len = 48;

    let x = Signal::monochromatic(lambda, len);
    let h = response::impulse(&sf, len - 1, 4096)?;
    let y = response::convolve(&x, &h.sequence);
    for n in [4, 8, 16, 32, 47] {
        println!("n = {n:>2}  y/x = {:.10}", y.samples[n] / x.samples[n]);
    }
    println!("S(lambda) = {:.10}", sf.eval(lambda)?);

    // the same drive through the simulator
    let run = response::simulate_signal(&spec, "p", "p", &x, len, len + 2)?;
    let last = len - 1;
    println!(
        "simulated y/x at n = {last}: {:.10}",
        run.output.samples[last] / x.samples[last]
    );
    Ok(())
}

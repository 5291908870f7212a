//! Stepping the walk with finite absorbing runways and watching the norm.

use qgs::catalog;
use qgs::response::{self, Signal};

fn main() -> qgs::Result<()> {
    let spec = catalog::valve(qgs::Complex64::new(1.0, 0.0));
    let x = Signal::pulse(4, 8);
    let steps = 40;
    let run = response::simulate_signal(&spec, "1", "2", &x, steps, steps + 2)?;
    let initial: f64 = x.samples.iter().map(|v| v.norm_sqr()).sum();
    for (n, y) in run.output.samples.iter().enumerate().take(16) {
        println!("n = {n:>2}  y = {y:.8}");
    }
    println!("max norm drift = {:.2e}", run.max_norm_drift(initial));
    Ok(())
}

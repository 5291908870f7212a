//! Writes every catalog graph as JSON.
//!
//! ```text
//! cargo run --example export_graphs -- [DIR]
//! ```

use std::path::PathBuf;

use qgs::catalog;

fn main() -> qgs::Result<()> {
    let dir = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("graphs"));
    std::fs::create_dir_all(&dir).map_err(|source| qgs::Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    for (name, spec) in catalog::corpus() {
        let path = dir.join(format!("{name}.json"));
        qgs::io::write_text(&path, &(spec.to_json_pretty() + "\n"))?;
        println!("{}", path.display());
    }
    Ok(())
}

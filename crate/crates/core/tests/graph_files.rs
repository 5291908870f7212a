use std::path::PathBuf;

use qgs::catalog;
use qgs::graph::GraphSpec;

#[test]
fn shipped_graphs_match_the_catalog() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("graphs");
    let corpus = catalog::corpus();
    let shipped = std::fs::read_dir(&dir)
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json"));
    assert_eq!(shipped.count(), corpus.len());
    for (name, spec) in corpus {
        let loaded = GraphSpec::load(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(loaded, spec, "{name}.json is stale; rerun the export_graphs example");
    }
}

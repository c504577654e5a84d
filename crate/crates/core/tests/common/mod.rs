#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use moy::PlaneGraph;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn graph(name: &str) -> PlaneGraph {
    PlaneGraph::from_json(&fixture_text(name)).unwrap()
}

/// One `# key: value ; tag` header line.
#[derive(Debug, Clone)]
pub struct Expect {
    pub value: String,
    pub tag: String,
}

/// Parses the header of a fixture. Every expectation line must carry a `paper:` or `derived:` tag.
pub fn header(name: &str) -> BTreeMap<String, Expect> {
    let mut out = BTreeMap::new();
    for line in fixture_text(name).lines().take_while(|l| l.starts_with('#')) {
        let body = line.trim_start_matches('#').trim();
        let Some((key, rest)) = body.split_once(':') else { continue };
        if key == "fixture" || key == "graph" || key.contains(' ') {
            continue;
        }
        let (value, tag) = rest.rsplit_once(" ; ").unwrap_or_else(|| panic!("{name}: `{key}` has no tag"));
        let tag = tag.trim().to_string();
        assert!(tag.starts_with("paper:") || tag.starts_with("derived:"), "{name}: bad tag {tag}");
        out.insert(key.trim().to_string(), Expect { value: value.trim().to_string(), tag });
    }
    out
}

pub fn graph_fixtures() -> Vec<&'static str> {
    vec!["digon.graph", "fig13.graph", "fig13-v2.graph", "fig13-Gprime.graph", "fig13-Gprime-v2.graph"]
}

pub fn pd_fixtures() -> Vec<&'static str> {
    vec!["trefoil.pd", "fig8.pd", "unknot-kink.pd"]
}

/// Seeds and sizes of the generated corpus.
pub fn corpus() -> impl Iterator<Item = (u64, usize)> {
    (1..=500u64).map(|s| (s, 1 + (s % 12) as usize))
}

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use realnum_core::graph::{parse_edge_list, parse_graph6_lines};
use realnum_core::{fixtures, EdgeOrder, EdgeSet, LabelledGraph};

use crate::args::{GraphArgs, InputFormat};

/// Bad invocation, as opposed to a failed computation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn is_graph6_path(path: &Path) -> bool {
    matches!(path.extension().and_then(|e| e.to_str()), Some("g6" | "graph6"))
}

pub fn fixture(name: &str) -> Result<LabelledGraph> {
    fixtures::by_name(name).ok_or_else(|| {
        usage(format!(
            "unknown fixture {name:?} (known: {})",
            fixtures::NAMES.join(", ")
        ))
    })
}

/// Loads one graph from a fixture name or a file.
pub fn load_one(
    fixture_name: Option<&str>,
    input: Option<&Path>,
    format: InputFormat,
) -> Result<(String, LabelledGraph)> {
    if let Some(name) = fixture_name {
        return Ok((name.to_string(), fixture(name)?));
    }
    let Some(path) = input else {
        return Err(usage("a graph is required: pass --fixture or --input"));
    };
    let id = path.display().to_string();
    let text = read_text(path)?;
    let graph6 = match format {
        InputFormat::Graph6 => true,
        InputFormat::EdgeList => false,
        InputFormat::Auto => is_graph6_path(path),
    };
    let g = if graph6 {
        let mut graphs = parse_graph6_lines(&text);
        if graphs.len() != 1 {
            bail!("{id}: expected one graph6 line, found {}", graphs.len());
        }
        let (line, g) = graphs.remove(0);
        g.with_context(|| format!("{id}, line {line}"))?
    } else {
        parse_edge_list(&text).with_context(|| id.clone())?
    };
    Ok((id, g))
}

pub fn load_graph(args: &GraphArgs) -> Result<(String, LabelledGraph)> {
    load_one(args.fixture.as_deref(), args.input.as_deref(), args.format)
}

fn edge_index(g: &LabelledGraph, label: &str) -> Result<usize> {
    g.edge_by_label(label)
        .ok_or_else(|| usage(format!("no edge labelled {label:?}")))
}

/// `paper`, `random:SEED` or a comma-separated label list, largest first.
pub fn parse_order(spec: &str, g: &LabelledGraph) -> Result<EdgeOrder> {
    let m = g.edge_count();
    if spec == "paper" {
        return Ok(EdgeOrder::label_order(m));
    }
    if let Some(seed) = spec.strip_prefix("random:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| usage(format!("invalid seed in order {spec:?}")))?;
        return Ok(EdgeOrder::random(m, seed));
    }
    let seq = spec
        .split(',')
        .map(|l| edge_index(g, l.trim()))
        .collect::<Result<Vec<_>>>()?;
    if seq.len() != m {
        return Err(usage(format!("order lists {} edges, graph has {m}", seq.len())));
    }
    EdgeOrder::from_descending(&seq).map_err(|e| usage(e.to_string()))
}

pub fn parse_labels(spec: &str, g: &LabelledGraph) -> Result<Vec<usize>> {
    spec.split(',').map(|l| edge_index(g, l.trim())).collect()
}

pub fn epsilon_index(label: &str, g: &LabelledGraph) -> Result<usize> {
    edge_index(g, label)
}

/// `6` or `3-6`.
pub fn parse_range(spec: &str) -> Result<(usize, usize)> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| usage(format!("invalid vertex count {spec:?}")))
    };
    match spec.split_once('-') {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => {
            let n = parse(spec)?;
            Ok((n, n))
        }
    }
}

/// Labels of a set in edge order, written compactly when every label is a
/// single character.
pub fn format_set(g: &LabelledGraph, set: EdgeSet) -> String {
    let labels: Vec<String> = set.iter().map(|e| g.edge_name(e)).collect();
    if labels.iter().all(|l| l.chars().count() == 1) {
        labels.concat()
    } else {
        format!("{{{}}}", labels.join(","))
    }
}

pub fn set_labels(g: &LabelledGraph, set: EdgeSet) -> Vec<String> {
    set.iter().map(|e| g.edge_name(e)).collect()
}

/// Sorts sets lexicographically by their element lists.
pub fn sort_sets(sets: &mut [EdgeSet]) {
    sets.sort_by_key(|s| s.to_vec());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let g = fixtures::k3();
        assert_eq!(parse_order("paper", &g).unwrap(), EdgeOrder::label_order(3));
        assert_eq!(parse_order("3,2,1", &g).unwrap(), EdgeOrder::identity(3));
        assert_eq!(parse_order("random:4", &g).unwrap(), EdgeOrder::random(3, 4));
        assert!(parse_order("1,2", &g).is_err());
        assert!(parse_order("1,1,2", &g).is_err());
        assert!(parse_order("random:x", &g).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("6").unwrap(), (6, 6));
        assert_eq!(parse_range("3-5").unwrap(), (3, 5));
        assert!(parse_range("a").is_err());
    }

    #[test]
    fn set_formatting() {
        let g = fixtures::prism3();
        assert_eq!(format_set(&g, EdgeSet::from_elements([0, 2, 3, 5, 8])), "13469");
    }
}

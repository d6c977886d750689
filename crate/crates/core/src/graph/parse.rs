use super::LabelledGraph;
use crate::error::{Error, Result};

/// Parses a line-oriented edge list: `u v [label]` per line with 1-based
/// vertex ids. Blank lines and `#` comments are skipped. Edges are indexed in
/// file order and the vertex count is the largest id seen.
pub fn parse_edge_list(text: &str) -> Result<LabelledGraph> {
    let mut edges = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let mut fields = line.split_whitespace();
        let mut vertex = |what: &str| -> Result<usize> {
            let tok = fields.next().ok_or_else(|| err(format!("missing {what} vertex")))?;
            let id: usize = tok.parse().map_err(|_| err(format!("invalid vertex id {tok:?}")))?;
            if id < 1 {
                return Err(err("vertex ids are 1-based".into()));
            }
            Ok(id)
        };
        let u = vertex("first")?;
        let v = vertex("second")?;
        let label = fields.next().map(str::to_owned);
        if let Some(extra) = fields.next() {
            return Err(err(format!("unexpected trailing field {extra:?}")));
        }
        n = n.max(u).max(v);
        edges.push((u - 1, v - 1));
        labels.push(label);
    }
    if edges.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no edges".into(),
        });
    }
    let labels = if labels.iter().all(Option::is_some) {
        Some(labels.into_iter().map(Option::unwrap).collect())
    } else if labels.iter().all(Option::is_none) {
        None
    } else {
        // Mixed: fall back to 1-based positions for unlabelled edges.
        Some(
            labels
                .into_iter()
                .enumerate()
                .map(|(i, l)| l.unwrap_or_else(|| (i + 1).to_string()))
                .collect(),
        )
    };
    LabelledGraph::with_labels(n, edges, labels)
}

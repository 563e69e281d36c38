//! SNAP-style edge-list text files.
//!
//! Lines starting with `#` are comments. Every other non-blank line holds two
//! whitespace-separated nonnegative integer node ids; extra tokens are ignored.
//! External ids are remapped to dense indices in ascending id order and kept
//! as node labels.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, Sanitized};

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub dropped: Sanitized,
}

pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut raw = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "expected two node ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("malformed node id {tok:?}"),
            })
        };
        let u = next()?;
        let v = next()?;
        raw.push((u, v));
    }
    if raw.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut index: BTreeMap<u64, usize> = raw.iter().flat_map(|&(u, v)| [(u, 0), (v, 0)]).collect();
    for (k, slot) in index.values_mut().enumerate() {
        *slot = k;
    }
    let labels: Vec<u64> = index.keys().copied().collect();
    let (graph, dropped) =
        Graph::from_edges_counted(labels.len(), raw.iter().map(|(u, v)| (index[u], index[v])))?;
    Ok(LoadedGraph {
        graph: graph.with_labels(labels),
        dropped,
    })
}

pub fn load_edge_list_file(path: impl AsRef<std::path::Path>) -> Result<LoadedGraph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::new(file))
}

/// Writes `g` as an edge list using node labels, preceded by `# ` header lines
/// and a `# nodes: N edges: M` line.
pub fn write_edge_list<W: Write>(g: &Graph, header: &[String], mut out: W) -> Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "# nodes: {} edges: {}", g.node_count(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v))?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<LoadedGraph> {
        load_edge_list(text.as_bytes())
    }

    #[test]
    fn triangle_with_comment() {
        let loaded = load("# c\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(loaded.graph.node_count(), 3);
        assert_eq!(loaded.graph.edge_count(), 3);
    }

    #[test]
    fn drops_self_loop_and_duplicate() {
        let loaded = load("0 0\n0 1\n0 1\n").unwrap();
        assert_eq!(loaded.graph.node_count(), 2);
        assert_eq!(loaded.graph.edge_count(), 1);
        assert_eq!(loaded.dropped, Sanitized { self_loops: 1, duplicates: 1 });
    }

    #[test]
    fn both_directions_collapse() {
        let loaded = load("5 9\n9 5\n9\t12\n").unwrap();
        assert_eq!(loaded.graph.edge_count(), 2);
        assert_eq!(loaded.graph.labels().unwrap(), &[5, 9, 12]);
        assert_eq!(loaded.dropped.duplicates, 1);
    }

    #[test]
    fn malformed_token_reports_line() {
        match load("# header\n0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("-1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(load("# only comments\n\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn write_then_read() {
        let g = load("3 7\n7 11\n11 3\n11 20\n").unwrap().graph;
        let mut buf = Vec::new();
        write_edge_list(&g, &["model: test".to_string()], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# model: test\n# nodes: 4 edges: 4\n"));
        let back = load(&text).unwrap().graph;
        assert_eq!(back, g);
    }
}

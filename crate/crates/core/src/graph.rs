//! Immutable undirected simple graphs and node-presence vectors.

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency lists.
///
/// Node ids are dense `0..node_count`. Graphs read from files keep the
/// original identifiers as labels so results can be reported in the
/// caller's id space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Option<Vec<u64>>,
}

/// Counts of input edges discarded while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sanitized {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl Graph {
    /// Builds a graph from an edge iterator, dropping self-loops and
    /// repeated pairs (in either orientation).
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_counted(node_count, edges).map(|(g, _)| g)
    }

    pub(crate) fn from_edges_counted<I>(node_count: usize, edges: I) -> Result<(Self, Sanitized)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); node_count];
        let mut dropped = Sanitized::default();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                dropped.self_loops += 1;
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut directed = 0;
        for list in &mut adj {
            let before = list.len();
            list.sort_unstable();
            list.dedup();
            dropped.duplicates += before - list.len();
            directed += list.len();
        }
        // each dropped duplicate was counted once per endpoint
        dropped.duplicates /= 2;
        Ok((
            Graph {
                adj,
                edge_count: directed / 2,
                labels: None,
            },
            dropped,
        ))
    }

    pub(crate) fn with_labels(mut self, labels: Vec<u64>) -> Self {
        debug_assert_eq!(labels.len(), self.adj.len());
        self.labels = Some(labels);
        self
    }

    pub fn empty(node_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); node_count],
            edge_count: 0,
            labels: None,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    #[inline]
    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// External identifier of a node (the node index itself for generated graphs).
    pub fn label(&self, node: usize) -> u64 {
        match &self.labels {
            Some(labels) => labels[node],
            None => node as u64,
        }
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_mask(&self, present: &[bool]) -> Result<()> {
        if present.len() != self.node_count() {
            return Err(Error::LengthMismatch {
                expected: self.node_count(),
                found: present.len(),
            });
        }
        Ok(())
    }

    /// Degrees counted over present neighbors only; absent nodes get 0.
    pub fn degrees_within(&self, present: &[bool]) -> Vec<usize> {
        self.adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                if present[u] {
                    list.iter().filter(|&&v| present[v]).count()
                } else {
                    0
                }
            })
            .collect()
    }
}

/// Subgraph induced by the nodes with `present[i] == true`.
///
/// Returns the new graph together with the map from new ids to ids of `g`.
/// Labels of `g` carry over.
pub fn induced_subgraph(g: &Graph, present: &[bool]) -> Result<(Graph, Vec<usize>)> {
    g.check_mask(present)?;
    let kept: Vec<usize> = g.nodes().filter(|&i| present[i]).collect();
    let mut new_id = vec![usize::MAX; g.node_count()];
    for (k, &old) in kept.iter().enumerate() {
        new_id[old] = k;
    }
    let edges = g
        .edges()
        .filter(|&(u, v)| present[u] && present[v])
        .map(|(u, v)| (new_id[u], new_id[v]));
    let sub = Graph::from_edges(kept.len(), edges)?;
    let labels = kept.iter().map(|&old| g.label(old)).collect();
    Ok((sub.with_labels(labels), kept))
}

/// Presence vector `n_j` after `step` deletions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeArraySnapshot {
    pub step: usize,
    pub present: Vec<bool>,
}

impl NodeArraySnapshot {
    pub fn present_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn sanitizes_loops_and_duplicates() {
        let (g, dropped) = Graph::from_edges_counted(2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(dropped, Sanitized { self_loops: 1, duplicates: 1 });
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::NodeOutOfRange { node: 2, .. })
        ));
    }

    #[test]
    fn induced_identity_and_edge() {
        let g = triangle();
        let (same, map) = induced_subgraph(&g, &[true; 3]).unwrap();
        assert_eq!(same.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(map, vec![0, 1, 2]);

        let (edge, map) = induced_subgraph(&g, &[true, true, false]).unwrap();
        assert_eq!(edge.node_count(), 2);
        assert_eq!(edge.edge_count(), 1);
        assert_eq!(map, vec![0, 1]);
    }

    #[test]
    fn induced_length_mismatch() {
        assert!(matches!(
            induced_subgraph(&triangle(), &[true]),
            Err(Error::LengthMismatch { expected: 3, found: 1 })
        ));
    }

    #[test]
    fn induced_keeps_labels() {
        let g = triangle().with_labels(vec![10, 20, 30]);
        let (sub, _) = induced_subgraph(&g, &[false, true, true]).unwrap();
        assert_eq!(sub.label(0), 20);
        assert_eq!(sub.label(1), 30);
    }
}

//! Vertex-cover leaf removal.
//!
//! A leaf is a degree-one node together with its unique neighbor; removing it
//! deletes both nodes and every incident edge. Peeling repeats until no
//! degree-one node is left. Non-isolated survivors form the leaf-removal core.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelResult {
    /// `core[i]` is true iff node `i` survives peeling with residual degree >= 1.
    pub core: Vec<bool>,
    /// `(leaf, neighbor)` pairs in removal order.
    pub pairs: Vec<(usize, usize)>,
    /// Present nodes that survive with residual degree 0.
    pub isolated: Vec<usize>,
}

impl PeelResult {
    pub fn core_size(&self) -> usize {
        self.core.iter().filter(|&&c| c).count()
    }

    pub fn is_core_free(&self) -> bool {
        !self.core.iter().any(|&c| c)
    }
}

/// Exhaustive leaf removal on the subgraph induced by `present`.
///
/// Leaves are processed FIFO, the queue seeded with degree-one nodes in
/// ascending id order. The core does not depend on this order; the pairs do.
pub fn peel(g: &Graph, present: &[bool]) -> Result<PeelResult> {
    g.check_mask(present)?;
    Ok(peel_unchecked(g, present))
}

pub(crate) fn peel_unchecked(g: &Graph, present: &[bool]) -> PeelResult {
    let n = g.node_count();
    let mut alive = present.to_vec();
    let mut degree = g.degrees_within(present);
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| alive[i] && degree[i] == 1).collect();
    let mut pairs = Vec::new();

    while let Some(leaf) = queue.pop_front() {
        if !alive[leaf] || degree[leaf] != 1 {
            continue;
        }
        let partner = *g
            .neighbors(leaf)
            .iter()
            .find(|&&v| alive[v])
            .expect("degree-one node has a live neighbor");
        alive[leaf] = false;
        alive[partner] = false;
        degree[leaf] = 0;
        degree[partner] = 0;
        pairs.push((leaf, partner));
        for &x in g.neighbors(partner) {
            if alive[x] {
                degree[x] -= 1;
                if degree[x] == 1 {
                    queue.push_back(x);
                }
            }
        }
    }

    let core: Vec<bool> = (0..n).map(|i| alive[i] && degree[i] > 0).collect();
    let isolated = (0..n).filter(|&i| alive[i] && degree[i] == 0).collect();
    PeelResult { core, pairs, isolated }
}

pub fn is_core_free(g: &Graph, present: &[bool]) -> Result<bool> {
    Ok(peel(g, present)?.is_core_free())
}

/// Matching formed by the peel pairs of a core-free graph.
///
/// On a core-free graph this is a maximum matching, and the partner of each
/// pair forms a minimum vertex cover of the same size.
pub fn leaf_pairing_matching(g: &Graph, present: &[bool]) -> Result<Vec<(usize, usize)>> {
    let result = peel(g, present)?;
    if !result.is_core_free() {
        return Err(Error::NotCoreFree);
    }
    Ok(result.pairs)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn all(g: &Graph) -> Vec<bool> {
        vec![true; g.node_count()]
    }

    #[test]
    fn nine_node_core_is_triangle() {
        let g = nine_node_example();
        let res = peel(&g, &all(&g)).unwrap();
        let core: Vec<usize> = (0..9).filter(|&i| res.core[i]).collect();
        assert_eq!(core, vec![6, 7, 8]);
        assert_eq!(res.pairs, vec![(0, 1), (2, 3), (4, 5)]);
        assert!(!is_core_free(&g, &all(&g)).unwrap());
    }

    #[test]
    fn tree_is_core_free() {
        let star = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        let res = peel(&star, &all(&star)).unwrap();
        assert!(res.is_core_free());
        assert_eq!(res.pairs, vec![(1, 0)]);
        assert_eq!(res.isolated, vec![2, 3, 4, 5]);
    }

    #[test]
    fn cycle_is_all_core() {
        let g = cycle(5);
        let res = peel(&g, &all(&g)).unwrap();
        assert!(res.core.iter().all(|&c| c));
        assert!(res.pairs.is_empty());
    }

    #[test]
    fn small_core_free_checks() {
        assert!(is_core_free(&path(4), &[true; 4]).unwrap());
        assert!(!is_core_free(&cycle(3), &[true; 3]).unwrap());
    }

    #[test]
    fn matching_on_path_and_edge() {
        assert_eq!(leaf_pairing_matching(&path(4), &[true; 4]).unwrap().len(), 2);
        assert_eq!(leaf_pairing_matching(&path(2), &[true; 2]).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn matching_rejects_core() {
        assert!(matches!(
            leaf_pairing_matching(&cycle(4), &[true; 4]),
            Err(Error::NotCoreFree)
        ));
    }

    #[test]
    fn respects_presence() {
        // removing one node of a cycle leaves a path
        let g = cycle(6);
        let mut present = vec![true; 6];
        present[0] = false;
        let res = peel(&g, &present).unwrap();
        assert!(res.is_core_free());
        assert_eq!(res.pairs.len(), 2);
        assert!(res.isolated.contains(&3) || res.pairs.iter().any(|&(u, w)| u == 3 || w == 3));
    }

    #[test]
    fn isolated_nodes_never_core() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let res = peel(&g, &[true; 4]).unwrap();
        assert!(!res.core[3]);
        assert_eq!(res.isolated, vec![3]);
    }
}

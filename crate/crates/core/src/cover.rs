//! Vertex covers: composition of a breaking set with the residual matching,
//! an exact branch-and-bound solver, and checks of the decomposition
//! identities.

use std::time::{Duration, Instant};

use crate::breaker::DeletionTrace;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::leaf_removal::leaf_pairing_matching;
use crate::matching::{greedy_matching_size, maximum_matching_size};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    /// Nodes deleted up to the transition point.
    pub deleted: Vec<usize>,
    /// Leaf-pairing matching of the residual, as `(leaf, partner)`.
    pub matching: Vec<(usize, usize)>,
    /// Sorted cover: the deleted nodes plus every matching partner.
    pub cover: Vec<usize>,
}

impl CoverResult {
    pub fn size(&self) -> usize {
        self.cover.len()
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        is_vertex_cover(g, &self.cover)
    }
}

pub fn is_vertex_cover(g: &Graph, cover: &[usize]) -> bool {
    let mut inside = vec![false; g.node_count()];
    for &v in cover {
        inside[v] = true;
    }
    g.edges().all(|(u, v)| inside[u] || inside[v])
}

/// Cover made of the breaking set of `trace` and, for every leaf pair of the
/// core-free residual, the leaf's partner.
pub fn cover_from_trace(g: &Graph, trace: &DeletionTrace) -> Result<CoverResult> {
    if trace.node_count != g.node_count() {
        return Err(Error::LengthMismatch { expected: g.node_count(), found: trace.node_count });
    }
    let snapshot = trace.snapshot(trace.transition);
    let matching = leaf_pairing_matching(g, &snapshot.present)?;
    let deleted = trace.breaking_set().to_vec();

    let mut inside = vec![false; g.node_count()];
    for &v in deleted.iter().chain(matching.iter().map(|(_, w)| w)) {
        inside[v] = true;
    }
    let cover: Vec<usize> = g.nodes().filter(|&i| inside[i]).collect();
    if cover.len() != deleted.len() + matching.len() {
        return Err(Error::InvalidCover(format!(
            "{} nodes, expected {} deleted + {} matched",
            cover.len(),
            deleted.len(),
            matching.len()
        )));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| !inside[u] && !inside[v]) {
        return Err(Error::InvalidCover(format!("edge ({u}, {v}) uncovered")));
    }
    Ok(CoverResult { deleted, matching, cover })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCover {
    pub size: usize,
    /// One optimal cover, sorted.
    pub cover: Vec<usize>,
    pub nodes_searched: u64,
    pub elapsed: Duration,
}

/// Minimum vertex cover by branch and bound.
///
/// Degree-0 nodes are dropped, the neighbor of a degree-1 node is forced into
/// the cover, and a degree-2 node whose neighbors are adjacent forces both
/// neighbors. The search branches on a maximum-degree node `v` (either `v` or
/// all of `N(v)` joins the cover) and prunes with the larger of a greedy
/// matching bound and `ceil(m / max_degree)`. Exceeding `budget` yields
/// [`Error::Timeout`], never a suboptimal answer.
pub fn exact_mvc(g: &Graph, budget: Duration) -> Result<ExactCover> {
    let mut search = Search::new(g, budget);
    search.solve();
    if search.timed_out {
        return Err(Error::Timeout { elapsed: search.started.elapsed() });
    }
    let mut cover = search.best;
    cover.sort_unstable();
    debug_assert!(is_vertex_cover(g, &cover));
    Ok(ExactCover {
        size: cover.len(),
        cover,
        nodes_searched: search.visited,
        elapsed: search.started.elapsed(),
    })
}

struct Search<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    chosen: Vec<usize>,
    log: Vec<(usize, bool)>,
    best: Vec<usize>,
    started: Instant,
    budget: Duration,
    visited: u64,
    timed_out: bool,
    pending: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, budget: Duration) -> Self {
        Search {
            g,
            alive: vec![true; g.node_count()],
            degree: g.nodes().map(|i| g.degree(i)).collect(),
            chosen: Vec::new(),
            log: Vec::new(),
            // every non-isolated node is a valid, if poor, starting bound
            best: g.nodes().filter(|&i| g.degree(i) > 0).collect(),
            started: Instant::now(),
            budget,
            visited: 0,
            timed_out: false,
            pending: Vec::new(),
        }
    }

    fn remove(&mut self, v: usize, into_cover: bool) {
        self.alive[v] = false;
        for &u in self.g.neighbors(v) {
            if self.alive[u] {
                self.degree[u] -= 1;
                if self.degree[u] <= 2 {
                    self.pending.push(u);
                }
            }
        }
        self.log.push((v, into_cover));
        if into_cover {
            self.chosen.push(v);
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (v, in_cover) = self.log.pop().unwrap();
            self.alive[v] = true;
            for &u in self.g.neighbors(v) {
                if self.alive[u] {
                    self.degree[u] += 1;
                }
            }
            if in_cover {
                self.chosen.pop();
            }
        }
    }

    fn alive_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v).iter().copied().filter(|&u| self.alive[u])
    }

    fn reduce(&mut self) {
        while let Some(v) = self.pending.pop() {
            if !self.alive[v] {
                continue;
            }
            match self.degree[v] {
                0 => self.remove(v, false),
                1 => {
                    let u = self.alive_neighbors(v).next().unwrap();
                    self.remove(u, true);
                    self.pending.push(v);
                }
                2 => {
                    let (a, b) = {
                        let mut it = self.alive_neighbors(v);
                        (it.next().unwrap(), it.next().unwrap())
                    };
                    if self.g.has_edge(a, b) {
                        self.remove(a, true);
                        self.remove(b, true);
                        self.pending.push(v);
                    }
                }
                _ => {}
            }
        }
    }

    fn lower_bound(&self) -> usize {
        let matching = greedy_matching_size(self.g, &self.alive);
        let (mut twice_m, mut max_deg) = (0, 0);
        for v in self.g.nodes().filter(|&v| self.alive[v]) {
            twice_m += self.degree[v];
            max_deg = max_deg.max(self.degree[v]);
        }
        let by_degree = if max_deg == 0 { 0 } else { (twice_m / 2).div_ceil(max_deg) };
        matching.max(by_degree)
    }

    fn solve(&mut self) {
        self.pending.extend(self.g.nodes().filter(|&v| self.alive[v]));
        self.branch();
    }

    fn branch(&mut self) {
        if self.timed_out {
            return;
        }
        self.visited += 1;
        if self.visited.is_multiple_of(1024) && self.started.elapsed() > self.budget {
            self.timed_out = true;
            return;
        }
        let mark = self.log.len();
        self.reduce();

        let pivot = self
            .g
            .nodes()
            .filter(|&v| self.alive[v] && self.degree[v] > 0)
            .max_by(|&a, &b| self.degree[a].cmp(&self.degree[b]).then(b.cmp(&a)));
        match pivot {
            None => {
                if self.chosen.len() < self.best.len() {
                    self.best = self.chosen.clone();
                }
            }
            Some(_) if self.chosen.len() + self.lower_bound() >= self.best.len() => {}
            Some(v) if self.degree[v] <= 2 => {
                // only cycles remain; any node of a cycle is in some optimum
                self.remove(v, true);
                self.branch();
            }
            Some(v) => {
                let inner = self.log.len();
                self.remove(v, true);
                self.branch();
                self.undo_to(inner);

                let neighbors: Vec<usize> = self.alive_neighbors(v).collect();
                if self.chosen.len() + neighbors.len() < self.best.len() {
                    for u in neighbors {
                        self.remove(u, true);
                    }
                    self.pending.push(v);
                    self.branch();
                }
            }
        }
        self.undo_to(mark);
        self.pending.clear();
    }
}

/// `i + M(G(n_i))` for `i` from the transition point through
/// `transition + extra_steps` (capped by the trace length), `M` being the
/// maximum matching size of the residual.
pub fn proposition_chain(g: &Graph, trace: &DeletionTrace, extra_steps: usize) -> Vec<usize> {
    let last = (trace.transition + extra_steps).min(trace.deleted.len());
    (trace.transition..=last)
        .map(|i| i + maximum_matching_size(g, &trace.snapshot(i).present))
        .collect()
}

/// True iff the cover-size chain past the transition point never decreases.
pub fn verify_proposition(g: &Graph, trace: &DeletionTrace, extra_steps: usize) -> bool {
    proposition_chain(g, trace, extra_steps).windows(2).all(|w| w[0] <= w[1])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    /// Minimum cover size `s`.
    pub optimum: usize,
    /// First step at which deleting the optimal cover in ascending id order
    /// leaves a core-free residual.
    pub transition: usize,
    pub residual_matching: usize,
    pub node_count: usize,
}

impl TheoremCheck {
    /// `s == t + M(G(n_t))`.
    pub fn decomposition_holds(&self) -> bool {
        self.optimum == self.transition + self.residual_matching
    }

    /// `t >= max(0, 2s - N)`.
    pub fn bound_holds(&self) -> bool {
        self.transition as i64 >= (2 * self.optimum as i64 - self.node_count as i64).max(0)
    }

    pub fn holds(&self) -> bool {
        self.decomposition_holds() && self.bound_holds()
    }
}

/// Deletes the nodes of an exact minimum cover one by one and checks the
/// decomposition identity at the first core-free step.
pub fn verify_theorem_decomposition(g: &Graph, budget: Duration) -> Result<TheoremCheck> {
    let exact = exact_mvc(g, budget)?;
    let mut present = vec![true; g.node_count()];
    let mut deleted = exact.cover.iter();
    let mut t = 0;
    loop {
        match leaf_pairing_matching(g, &present) {
            Ok(matching) => {
                return Ok(TheoremCheck {
                    optimum: exact.size,
                    transition: t,
                    residual_matching: matching.len(),
                    node_count: g.node_count(),
                });
            }
            Err(Error::NotCoreFree) => {
                // deleting the whole cover leaves isolated nodes, so this ends
                let v = *deleted.next().expect("residual without cover nodes is edgeless");
                present[v] = false;
                t += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::breaker::{break_core, break_core_extended, MethodKind, MethodSpec};
    use crate::generate::generate_er;
    use crate::leaf_removal::fixtures::*;

    const BUDGET: Duration = Duration::from_secs(30);

    /// Minimum vertex cover by enumerating all 2^N subsets.
    fn brute_force_mvc(g: &Graph) -> usize {
        let n = g.node_count();
        let edges: Vec<_> = g.edges().collect();
        (0u32..1 << n)
            .filter(|mask| edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn exact_small_families() {
        assert_eq!(exact_mvc(&cycle(5), BUDGET).unwrap().size, 3);
        for n in 2..9 {
            assert_eq!(exact_mvc(&complete(n), BUDGET).unwrap().size, n - 1);
        }
        assert_eq!(exact_mvc(&Graph::empty(4), BUDGET).unwrap().size, 0);
        assert_eq!(exact_mvc(&path(7), BUDGET).unwrap().size, 3);
    }

    #[test]
    fn exact_matches_enumeration() {
        for seed in 0..40 {
            let g = generate_er(12, 3.0, seed).unwrap();
            assert_eq!(g.edge_count(), 18);
            let exact = exact_mvc(&g, BUDGET).unwrap();
            assert!(is_vertex_cover(&g, &exact.cover));
            assert_eq!(exact.size, brute_force_mvc(&g), "seed {seed}");
        }
    }

    #[test]
    fn exact_timeout_is_explicit() {
        let g = generate_er(150, 10.0, 1).unwrap();
        assert!(matches!(exact_mvc(&g, Duration::ZERO), Err(Error::Timeout { .. })));
    }

    #[test]
    fn edgeless_cover_is_empty() {
        let g = Graph::empty(5);
        let trace = break_core(&g, &MethodSpec::new(MethodKind::Hl)).unwrap();
        let cover = cover_from_trace(&g, &trace).unwrap();
        assert_eq!(cover.size(), 0);
    }

    #[test]
    fn tree_cover_is_matching() {
        let g = path(6);
        let trace = break_core(&g, &MethodSpec::new(MethodKind::Dc)).unwrap();
        let cover = cover_from_trace(&g, &trace).unwrap();
        assert_eq!(cover.size(), 3);
        assert!(cover.is_valid(&g));
    }

    #[test]
    fn covers_are_valid_and_not_below_optimum() {
        for seed in 0..20 {
            let g = generate_er(40, 4.0, seed).unwrap();
            let exact = exact_mvc(&g, BUDGET).unwrap().size;
            for k in [MethodKind::Hl, MethodKind::HlApprox, MethodKind::Dc, MethodKind::Ci] {
                let trace = break_core(&g, &MethodSpec::new(k)).unwrap();
                let cover = cover_from_trace(&g, &trace).unwrap();
                assert!(cover.is_valid(&g));
                assert_eq!(cover.size(), trace.transition + cover.matching.len());
                assert!(cover.size() >= exact);
            }
        }
    }

    #[test]
    fn complete_graph_chain() {
        let g = complete(4);
        let trace = DeletionTrace {
            method: MethodSpec::new(MethodKind::Dc),
            node_count: 4,
            deleted: vec![0, 1, 2, 3],
            transition: 2,
            elapsed: Duration::ZERO,
        };
        assert_eq!(proposition_chain(&g, &trace, 10), vec![3, 3, 4]);
        assert!(verify_proposition(&g, &trace, 10));
    }

    #[test]
    fn tree_chain_starts_at_matching() {
        let g = path(8);
        let trace = break_core_extended(&g, &MethodSpec::new(MethodKind::Hl), 3).unwrap();
        let chain = proposition_chain(&g, &trace, 3);
        assert_eq!(chain[0], 4);
        assert_eq!(chain.len(), 4);
        assert!(verify_proposition(&g, &trace, 3));
    }

    #[test]
    fn theorem_on_cycle_and_tree() {
        let check = verify_theorem_decomposition(&cycle(5), BUDGET).unwrap();
        assert_eq!(check.optimum, 3);
        assert!(check.holds());
        let check = verify_theorem_decomposition(&path(5), BUDGET).unwrap();
        assert_eq!(check.transition, 0);
        assert_eq!(check.residual_matching, 2);
        assert!(check.holds());
    }
}

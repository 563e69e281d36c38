//! Baseline node rankings used as alternative deletion orders.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::state::NodeState;

/// Iteration cap for eigenvector centrality.
pub const EC_MAX_ITERATIONS: usize = 100_000;

/// Node ids ordered by descending score, lowest id first among equal scores.
pub fn rank_by_score(scores: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order
}

pub fn degree_centrality(g: &Graph) -> Vec<f64> {
    g.nodes().map(|i| g.degree(i) as f64).collect()
}

/// k-core index of every node (bucket peeling by degree).
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut degree: Vec<usize> = g.nodes().map(|i| g.degree(i)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut bins = vec![0usize; max_deg + 2];
    for &d in &degree {
        bins[d + 1] += 1;
    }
    for d in 1..bins.len() {
        bins[d] += bins[d - 1];
    }
    // bins[d] = first position of degree-d nodes in `order`
    let mut pos = vec![0; n];
    let mut order = vec![0; n];
    let mut next = bins.clone();
    for v in 0..n {
        pos[v] = next[degree[v]];
        order[pos[v]] = v;
        next[degree[v]] += 1;
    }
    for i in 0..n {
        let v = order[i];
        for &u in g.neighbors(v) {
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bins[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bins[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

/// Brandes betweenness on an unweighted graph (pair counts, unnormalized).
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut bc = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0; n];
    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        stack.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in g.neighbors(w) {
                if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                    delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                }
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    bc.iter_mut().for_each(|x| *x /= 2.0);
    bc
}

fn bfs_distances(g: &Graph, source: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Closeness `(N-1) / Σ d(i, j)` on connected graphs; harmonic closeness
/// `Σ 1 / d(i, j)` when the graph is disconnected.
pub fn closeness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut harmonic = vec![0.0; n];
    let mut classic = vec![0.0; n];
    let mut connected = true;
    for s in 0..n {
        bfs_distances(g, s, &mut dist, &mut queue);
        let mut total = 0usize;
        for (j, &d) in dist.iter().enumerate() {
            if j == s {
                continue;
            }
            if d == usize::MAX {
                connected = false;
            } else {
                total += d;
                harmonic[s] += 1.0 / d as f64;
            }
        }
        if total > 0 {
            classic[s] = (n - 1) as f64 / total as f64;
        }
    }
    if connected {
        classic
    } else {
        harmonic
    }
}

/// PageRank with uniform teleport; dangling mass is spread uniformly.
/// Iterates until the L1 change drops below `tolerance`.
pub fn pagerank(g: &Graph, damping: f64, tolerance: f64) -> Vec<f64> {
    let n = g.node_count();
    if n == 0 {
        return Vec::new();
    }
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    // the iteration is a contraction with factor `damping`
    for _ in 0..EC_MAX_ITERATIONS {
        let dangling: f64 = g.nodes().filter(|&i| g.degree(i) == 0).map(|i| rank[i]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        next.fill(base);
        for u in g.nodes() {
            let d = g.degree(u);
            if d > 0 {
                let share = damping * rank[u] / d as f64;
                for &v in g.neighbors(u) {
                    next[v] += share;
                }
            }
        }
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change < tolerance {
            break;
        }
    }
    rank
}

/// Dominant eigenvector of the adjacency matrix by power iteration on `A + I`
/// (same eigenvectors, no oscillation on bipartite graphs), L2-normalized.
pub fn eigenvector(g: &Graph, tolerance: f64) -> Result<Vec<f64>> {
    let n = g.node_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..EC_MAX_ITERATIONS {
        for u in g.nodes() {
            next[u] = x[u] + g.neighbors(u).iter().map(|&v| x[v]).sum::<f64>();
        }
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(vec![0.0; n]);
        }
        next.iter_mut().for_each(|v| *v /= norm);
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < n as f64 * tolerance {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        iterations: EC_MAX_ITERATIONS,
        nodes: n,
        edges: g.edge_count(),
    })
}

/// Present node of maximum current degree, lowest id on ties.
pub fn hda_choice(state: &NodeState) -> Option<usize> {
    let mut best: Option<usize> = None;
    for i in 0..state.len() {
        if state.is_present(i) && best.is_none_or(|b| state.degree(i) > state.degree(b)) {
            best = Some(i);
        }
    }
    best
}

/// Collective Influence `(d_i - 1) * Σ_{j at distance radius} (d_j - 1)` on
/// the present subgraph; 0 for absent nodes.
pub fn collective_influence(g: &Graph, state: &NodeState, node: usize, radius: usize) -> f64 {
    if !state.is_present(node) {
        return 0.0;
    }
    let own = state.q(node);
    if own == 0.0 {
        return 0.0;
    }
    let boundary: f64 = ball(g, state.present(), node, radius)
        .into_iter()
        .filter(|&(_, d)| d == radius)
        .map(|(j, _)| state.q(j))
        .sum();
    own * boundary
}

/// Present nodes within `radius` hops of `center`, with their distances.
pub(crate) fn ball(g: &Graph, present: &[bool], center: usize, radius: usize) -> Vec<(usize, usize)> {
    let mut seen = vec![(center, 0)];
    let mut frontier = vec![center];
    let mut visited = std::collections::HashSet::from([center]);
    for d in 1..=radius {
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u) {
                if present[v] && visited.insert(v) {
                    next.push(v);
                    seen.push((v, d));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

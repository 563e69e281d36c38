#![allow(dead_code)]

use corebreak::Graph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nine-node example; node `k` is `v(k+1)`. Core is {v7, v8, v9}.
pub fn nine_node_example() -> Graph {
    let one_based = [(1, 2), (2, 5), (2, 9), (3, 4), (4, 5), (5, 6), (6, 7), (6, 8), (7, 8), (8, 9), (7, 9)];
    Graph::from_edges(9, one_based.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}

/// Each node `i > 0` attaches to a uniform earlier node with probability `p`.
pub fn random_forest(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 1..n {
        if rng.random_bool(p) {
            edges.push((rng.random_range(0..i), i));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// G(n, p) with `p` chosen for mean degree `k`.
pub fn random_gnp(n: usize, k: f64, rng: &mut ChaCha8Rng) -> Graph {
    let p = if n > 1 { (k / (n - 1) as f64).min(1.0) } else { 0.0 };
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Maximum matching size by exhaustive branching.
pub fn brute_max_matching(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
        let Some(u) = (from..g.node_count()).find(|&u| !used[u] && g.neighbors(u).iter().any(|&v| !used[v]))
        else {
            return 0;
        };
        used[u] = true;
        let mut best = go(g, used, u + 1);
        for &v in g.neighbors(u) {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + go(g, used, u + 1));
                used[v] = false;
            }
        }
        used[u] = false;
        best
    }
    go(g, &mut vec![false; g.node_count()], 0)
}

/// Minimum vertex cover size by enumerating every subset.
pub fn brute_min_cover(g: &Graph) -> usize {
    let n = g.node_count();
    assert!(n <= 20);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u32..1 << n)
        .filter(|mask| edges.iter().all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Core flags by peeling leaves in a random order.
pub fn random_order_core(g: &Graph, present: &[bool], rng: &mut ChaCha8Rng) -> Vec<bool> {
    let mut alive = present.to_vec();
    loop {
        let deg = |alive: &[bool], v: usize| g.neighbors(v).iter().filter(|&&u| alive[u]).count();
        let leaves: Vec<usize> = (0..g.node_count()).filter(|&v| alive[v] && deg(&alive, v) == 1).collect();
        if leaves.is_empty() {
            break;
        }
        let leaf = leaves[rng.random_range(0..leaves.len())];
        let partner = g.neighbors(leaf).iter().copied().find(|&u| alive[u]).unwrap();
        alive[leaf] = false;
        alive[partner] = false;
    }
    (0..g.node_count())
        .map(|v| alive[v] && g.neighbors(v).iter().any(|&u| alive[u]))
        .collect()
}

//! Seeded random-graph generators.
//!
//! All generators draw from `ChaCha8Rng::seed_from_u64(seed)`, a portable
//! stream cipher RNG, so a `(parameters, seed)` pair yields the same graph
//! on every platform.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform G(N, M) graph with `M = round(n * avg_degree / 2)` distinct edges.
pub fn generate_er(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("ER graph needs n >= 2, got {n}")));
    }
    if !(avg_degree.is_finite() && avg_degree > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "average degree must be positive, got {avg_degree}"
        )));
    }
    let capacity = n * (n - 1) / 2;
    let m = (n as f64 * avg_degree / 2.0).round() as usize;
    if m > capacity {
        return Err(Error::InvalidParameter(format!(
            "{m} edges requested but K_{n} has only {capacity}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut picks = index::sample(&mut rng, capacity, m).into_vec();
    picks.sort_unstable();
    Graph::from_edges(n, picks.into_iter().map(|k| pair_from_index(n, k)))
}

/// Maps `k in 0..n(n-1)/2` to the k-th pair `(i, j)`, `i < j`, in row-major
/// order of the strict upper triangle.
fn pair_from_index(n: usize, k: usize) -> (usize, usize) {
    let row_start = |i: usize| i * (2 * n - i - 1) / 2;
    let (mut lo, mut hi) = (0, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if row_start(mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, lo + 1 + (k - row_start(lo)))
}

/// Preferential-attachment graph (tail exponent 3).
///
/// Growth starts from a clique on `ceil(avg_degree / 2) + 1` nodes. Each new
/// node attaches to `floor(avg_degree / 2)` or `ceil(avg_degree / 2)` distinct
/// existing nodes, the larger count drawn with probability equal to the
/// fractional part of `avg_degree / 2`, chosen with probability proportional
/// to their degree.
pub fn generate_sf(n: usize, avg_degree: f64, seed: u64) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("SF graph needs n >= 4, got {n}")));
    }
    if !(avg_degree.is_finite() && avg_degree >= 2.0) {
        return Err(Error::InvalidParameter(format!(
            "SF average degree must be >= 2, got {avg_degree}"
        )));
    }
    let half = avg_degree / 2.0;
    let m_lo = half.floor() as usize;
    let frac = half - m_lo as f64;
    let m_hi = half.ceil() as usize;
    let seed_size = m_hi + 1;
    if seed_size > n {
        return Err(Error::InvalidParameter(format!(
            "average degree {avg_degree} too large for {n} nodes"
        )));
    }

    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(n * m_hi);
    // every edge endpoint once; uniform picks are degree-proportional
    let mut endpoints = Vec::with_capacity(2 * n * m_hi);
    for u in 0..seed_size {
        for v in u + 1..seed_size {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(m_hi);
    for new in seed_size..n {
        let m = if frac > 0.0 && rng.random_bool(frac) { m_hi } else { m_lo };
        targets.clear();
        while targets.len() < m {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn handshake(g: &Graph) -> bool {
        g.nodes().map(|i| g.degree(i)).sum::<usize>() == 2 * g.edge_count()
    }

    #[test]
    fn pair_decoding_enumerates_triangle() {
        let n = 6;
        let all: Vec<_> = (0..n * (n - 1) / 2).map(|k| pair_from_index(n, k)).collect();
        let mut expect = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                expect.push((i, j));
            }
        }
        assert_eq!(all, expect);
    }

    #[test]
    fn er_exact_edge_count() {
        let g = generate_er(1000, 4.0, 7).unwrap();
        assert_eq!(g.edge_count(), 2000);
        assert!(handshake(&g));
        for seed in 0..30 {
            let g = generate_er(1000, 3.0, seed).unwrap();
            assert_eq!(g.edge_count(), 1500);
        }
    }

    #[test]
    fn er_complete_when_saturated() {
        let g = generate_er(4, 3.0, 1).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(generate_er(4, 3.5, 1).is_err());
        assert!(generate_er(10, 0.0, 1).is_err());
        assert!(generate_er(1, 1.0, 1).is_err());
    }

    #[test]
    fn er_is_deterministic() {
        assert_eq!(generate_er(200, 5.0, 42).unwrap(), generate_er(200, 5.0, 42).unwrap());
        assert_ne!(generate_er(200, 5.0, 42).unwrap(), generate_er(200, 5.0, 43).unwrap());
    }

    #[test]
    fn sf_edge_count_even_degree() {
        // clique of 3 nodes, then 997 nodes with exactly two links each
        let g = generate_sf(1000, 4.0, 3).unwrap();
        assert_eq!(g.edge_count(), 3 + 2 * 997);
        assert!(handshake(&g));
    }

    #[test]
    fn sf_mean_degree_odd() {
        for seed in 0..30 {
            let g = generate_sf(1000, 3.0, seed).unwrap();
            let mean = 2.0 * g.edge_count() as f64 / 1000.0;
            assert!((2.8..=3.2).contains(&mean), "seed {seed}: mean degree {mean}");
        }
    }

    #[test]
    fn sf_tree_growth() {
        let g = generate_sf(10, 2.0, 5).unwrap();
        assert_eq!(g.edge_count(), 9);
        // connected: BFS from 0 reaches everything
        let mut seen = [false; 10];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert!(generate_sf(10, 1.5, 5).is_err());
    }

    #[test]
    fn sf_has_heavy_tail() {
        let g = generate_sf(5000, 6.0, 11).unwrap();
        let max_deg = g.nodes().map(|i| g.degree(i)).max().unwrap();
        // ER at the same density would have max degree around 16
        assert!(max_deg > 60, "max degree {max_deg}");
    }
}

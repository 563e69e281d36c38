//! The modified non-backtracking operator and the Core Influence score.
//!
//! `R` acts on directed edges of the present subgraph:
//! `R[w->x, y->z] = s_y` when `x == y` and `w != z`, else 0. Its largest
//! eigenvalue is estimated through `1^T R^k 1`, which is a weighted count of
//! non-backtracking walks, and the per-node Core Influence is the share of
//! that count owned by walks starting at the node.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::state::NodeState;

/// Largest operator dimension `build_r_matrix` will materialize.
pub const DENSE_LIMIT: usize = 20_000;

/// Dense indexing of the directed edges `u -> v` between present nodes.
///
/// Edges leaving `u` occupy `start[u]..start[u + 1]` in ascending head order.
#[derive(Debug, Clone)]
pub struct DirectedEdgeIndex {
    start: Vec<usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    reverse: Vec<usize>,
}

impl DirectedEdgeIndex {
    pub fn new(g: &Graph, present: &[bool]) -> Self {
        let n = g.node_count();
        let mut start = Vec::with_capacity(n + 1);
        let mut tail = Vec::new();
        let mut head = Vec::new();
        start.push(0);
        for u in 0..n {
            if present[u] {
                for &v in g.neighbors(u) {
                    if present[v] {
                        tail.push(u);
                        head.push(v);
                    }
                }
            }
            start.push(head.len());
        }
        let reverse = (0..head.len())
            .map(|e| {
                let (u, v) = (tail[e], head[e]);
                let out = &head[start[v]..start[v + 1]];
                start[v] + out.binary_search(&u).expect("symmetric adjacency")
            })
            .collect();
        DirectedEdgeIndex { start, tail, head, reverse }
    }

    /// Number of directed edges, `2M`.
    pub fn len(&self) -> usize {
        self.head.len()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tail[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    pub fn reverse(&self, e: usize) -> usize {
        self.reverse[e]
    }

    pub fn out_edges(&self, u: usize) -> std::ops::Range<usize> {
        self.start[u]..self.start[u + 1]
    }

    pub fn index_of(&self, u: usize, v: usize) -> Option<usize> {
        let out = self.out_edges(u);
        self.head[out.clone()].binary_search(&v).ok().map(|k| out.start + k)
    }

    /// `y = R x` without materializing `R`.
    fn apply(&self, state: &NodeState, x: &[f64], y: &mut [f64]) {
        for (e, out) in y.iter_mut().enumerate() {
            let (w, mid) = (self.tail[e], self.head[e]);
            *out = if state.s(mid) {
                self.out_edges(mid)
                    .filter(|&f| self.head[f] != w)
                    .map(|f| x[f])
                    .sum()
            } else {
                0.0
            };
        }
    }

    /// `[1, R 1, R^2 1, ..., R^k 1]`.
    fn right_vectors(&self, state: &NodeState, k: usize) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(vec![1.0; self.len()]);
        for step in 0..k {
            let mut next = vec![0.0; self.len()];
            self.apply(state, &out[step], &mut next);
            out.push(next);
        }
        out
    }

    /// `1^T R^a R^b 1`, using `1^T R^a = (J R^a 1)^T` where `J` reverses edges.
    fn bilinear(&self, left: &[f64], right: &[f64]) -> f64 {
        (0..self.len()).map(|e| left[self.reverse[e]] * right[e]).sum()
    }
}

/// Which walk-length family a λ estimate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathFamily {
    /// `λ_l`, weighted walks of length `2l - 1`.
    Odd,
    /// `λ'_l`, weighted walks of length `2l`.
    Even,
}

impl PathFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            PathFamily::Odd => "odd",
            PathFamily::Even => "even",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub order: usize,
    pub family: PathFamily,
    pub value: f64,
}

fn normalized_root(walk_sum: f64, directed: usize, exponent: usize) -> f64 {
    if directed == 0 || walk_sum <= 0.0 {
        return 0.0;
    }
    (walk_sum / directed as f64).powf(1.0 / exponent as f64)
}

/// Explicit `2M x 2M` matrix of `R` together with its edge index.
pub fn build_r_matrix(g: &Graph, state: &NodeState) -> Result<(DMatrix<f64>, DirectedEdgeIndex)> {
    g.check_mask(state.present())?;
    let idx = DirectedEdgeIndex::new(g, state.present());
    let dim = idx.len();
    if dim > DENSE_LIMIT {
        return Err(Error::SizeGuard { dim, limit: DENSE_LIMIT });
    }
    let mut r = DMatrix::zeros(dim, dim);
    for e in 0..dim {
        let (w, x) = (idx.tail(e), idx.head(e));
        if !state.s(x) {
            continue;
        }
        for f in idx.out_edges(x) {
            if idx.head(f) != w {
                r[(e, f)] = 1.0;
            }
        }
    }
    Ok((r, idx))
}

/// Sweep cap and deflation threshold for the dense Schur decomposition.
pub const SCHUR_MAX_ITERATIONS: usize = 1_000_000;
pub const SCHUR_EPSILON: f64 = 1e-12;

/// Modulus of the largest eigenvalue of a dense square matrix.
///
/// Indices whose row or column vanishes on the remaining indices are pruned
/// first; each such index only contributes an eigenvalue 0.
pub fn dense_spectral_radius(m: &DMatrix<f64>) -> Result<f64> {
    let n = m.nrows();
    let mut keep = vec![true; n];
    loop {
        let mut changed = false;
        for i in 0..n {
            if keep[i] {
                let row = (0..n).any(|j| keep[j] && m[(i, j)] != 0.0);
                let col = (0..n).any(|j| keep[j] && m[(j, i)] != 0.0);
                if !(row && col) {
                    keep[i] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let idx: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    if idx.is_empty() {
        return Ok(0.0);
    }
    let reduced = DMatrix::from_fn(idx.len(), idx.len(), |a, b| m[(idx[a], idx[b])]);
    let schur = nalgebra::linalg::Schur::try_new(reduced, SCHUR_EPSILON, SCHUR_MAX_ITERATIONS)
        .ok_or(Error::EigenFailure { dim: idx.len() })?;
    Ok(schur.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// `λ_1`, `λ_2`, `λ_3` by direct enumeration of non-backtracking walks on
/// `2l` nodes, all with `s = 1`, weighted by the excess degrees of the two
/// end nodes.
pub fn lambda_closed_form(g: &Graph, state: &NodeState, order: usize) -> Result<SpectralEstimate> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidParameter(format!(
            "closed forms exist for orders 1..=3, got {order}"
        )));
    }
    g.check_mask(state.present())?;
    let directed: usize = state.degrees().iter().sum();
    let nodes = 2 * order;
    let mut walk = Vec::with_capacity(nodes);
    let mut total = 0.0;
    for start in g.nodes().filter(|&i| state.s(i)) {
        walk.push(start);
        total += state.q(start) * walk_tail_sum(g, state, &mut walk, nodes);
        walk.pop();
    }
    Ok(SpectralEstimate {
        order,
        family: PathFamily::Odd,
        value: normalized_root(total, directed, nodes),
    })
}

fn walk_tail_sum(g: &Graph, state: &NodeState, walk: &mut Vec<usize>, nodes: usize) -> f64 {
    let last = *walk.last().unwrap();
    if walk.len() == nodes {
        return state.q(last);
    }
    let back = walk.len().checked_sub(2).map(|k| walk[k]);
    let mut sum = 0.0;
    for &next in g.neighbors(last) {
        if Some(next) == back || !state.s(next) {
            continue;
        }
        walk.push(next);
        sum += walk_tail_sum(g, state, walk, nodes);
        walk.pop();
    }
    sum
}

/// Power-method estimate by repeated sparse application of `R` to the
/// all-ones directed-edge vector.
///
/// Odd family: `λ_l = (1^T R^{2l} 1 / 2M)^{1/(2l)}`.
/// Even family: `λ'_l = (1^T R^{2l+1} 1 / 2M)^{1/(2l+1)}`.
/// The bilinear form `1^T R^a R^b 1` pairs the left vector `1^T R^a` with the
/// right vector `R^b 1`, and for `l = 1` reproduces the closed form exactly.
pub fn lambda_power(
    g: &Graph,
    state: &NodeState,
    order: usize,
    family: PathFamily,
) -> Result<SpectralEstimate> {
    Ok(lambda_power_series(g, state, order, family)?.pop().expect("order >= 1"))
}

/// All estimates of one family for orders `1..=max_order`, sharing one
/// power chain.
pub fn lambda_power_series(
    g: &Graph,
    state: &NodeState,
    max_order: usize,
    family: PathFamily,
) -> Result<Vec<SpectralEstimate>> {
    if max_order == 0 {
        return Err(Error::InvalidParameter("order must be >= 1".into()));
    }
    g.check_mask(state.present())?;
    let idx = DirectedEdgeIndex::new(g, state.present());
    let extra = usize::from(family == PathFamily::Even);
    let rv = idx.right_vectors(state, max_order + extra);
    Ok((1..=max_order)
        .map(|l| {
            let sum = idx.bilinear(&rv[l], &rv[l + extra]);
            SpectralEstimate {
                order: l,
                family,
                value: normalized_root(sum, idx.len(), 2 * l + extra),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreInfluenceScore {
    pub order: usize,
    pub scores: Vec<f64>,
}

impl CoreInfluenceScore {
    /// Highest-scored present node, lowest id on ties.
    pub fn argmax(&self, present: &[bool]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, &h) in self.scores.iter().enumerate() {
            if present[i] && best.is_none_or(|b| h > self.scores[b]) {
                best = Some(i);
            }
        }
        best
    }
}

/// `H(v_i) = q_i * Σ over non-backtracking walks of `order` edges from `i`
/// of (product of `s` over the walk nodes) * `q_end`.
///
/// Computed for all nodes at once: the walk sums leaving `i` through edge
/// `i -> x` are `(R^order 1)[i -> x]`.
pub fn core_influence(g: &Graph, state: &NodeState, order: usize) -> Result<CoreInfluenceScore> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be >= 1".into()));
    }
    g.check_mask(state.present())?;
    let mut scores = vec![0.0; g.node_count()];
    if order == 1 {
        // (R 1)[i -> x] = s_x q_x
        for (i, h) in scores.iter_mut().enumerate() {
            if state.s(i) {
                let tail: f64 = g
                    .neighbors(i)
                    .iter()
                    .filter(|&&x| state.s(x))
                    .map(|&x| state.q(x))
                    .sum();
                *h = state.q(i) * tail;
            }
        }
    } else {
        let idx = DirectedEdgeIndex::new(g, state.present());
        let rv = idx.right_vectors(state, order);
        let last = &rv[order];
        for (i, h) in scores.iter_mut().enumerate() {
            if state.s(i) {
                *h = state.q(i) * idx.out_edges(i).map(|e| last[e]).sum::<f64>();
            }
        }
    }
    Ok(CoreInfluenceScore { order, scores })
}

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::leaf_removal::peel_unchecked;

/// Per-node deletion flag `n`, core flag `c`, and current degree.
///
/// `s_i = c_i * n_i` and the excess degree `q_i = d_i - 1` are derived.
/// Degrees count present neighbors only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeState {
    present: Vec<bool>,
    core: Vec<bool>,
    degree: Vec<usize>,
}

impl NodeState {
    /// Core flags from a full peel of the induced graph.
    pub fn exact(g: &Graph, present: &[bool]) -> Result<Self> {
        g.check_mask(present)?;
        let core = peel_unchecked(g, present).core;
        Ok(Self::build(g, present.to_vec(), core))
    }

    /// Every node present with the core flags from a full peel.
    pub fn initial(g: &Graph) -> Self {
        let present = vec![true; g.node_count()];
        let core = peel_unchecked(g, &present).core;
        Self::build(g, present, core)
    }

    /// Caller-supplied core flags; absent nodes get `c = 0`.
    pub fn from_flags(g: &Graph, present: &[bool], core: &[bool]) -> Result<Self> {
        g.check_mask(present)?;
        g.check_mask(core)?;
        let core = core.iter().zip(present).map(|(&c, &p)| c && p).collect();
        Ok(Self::build(g, present.to_vec(), core))
    }

    /// All present nodes flagged as core (`s = n`).
    pub fn all_core(g: &Graph, present: &[bool]) -> Result<Self> {
        Self::from_flags(g, present, present)
    }

    fn build(g: &Graph, present: Vec<bool>, core: Vec<bool>) -> Self {
        let degree = g.degrees_within(&present);
        NodeState { present, core, degree }
    }

    pub fn len(&self) -> usize {
        self.present.len()
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_empty()
    }

    pub fn present(&self) -> &[bool] {
        &self.present
    }

    pub fn core(&self) -> &[bool] {
        &self.core
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    #[inline]
    pub fn is_present(&self, i: usize) -> bool {
        self.present[i]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }

    #[inline]
    pub fn s(&self, i: usize) -> bool {
        self.present[i] && self.core[i]
    }

    /// `d_i - 1`; -1 for isolated present nodes.
    #[inline]
    pub fn excess(&self, i: usize) -> i64 {
        self.degree[i] as i64 - 1
    }

    /// Excess degree clamped at zero, as used in scores.
    #[inline]
    pub fn q(&self, i: usize) -> f64 {
        self.excess(i).max(0) as f64
    }

    pub fn present_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn set_core(&mut self, i: usize, value: bool) {
        self.core[i] = value && self.present[i];
    }

    /// Marks `v` deleted and updates neighbor degrees. Core flags of other
    /// nodes are left alone.
    pub fn delete(&mut self, g: &Graph, v: usize) -> Result<()> {
        if v >= self.len() {
            return Err(Error::NodeOutOfRange { node: v, node_count: self.len() });
        }
        if !self.present[v] {
            return Err(Error::AlreadyDeleted(v));
        }
        self.present[v] = false;
        self.core[v] = false;
        self.degree[v] = 0;
        for &u in g.neighbors(v) {
            if self.present[u] {
                self.degree[u] -= 1;
            }
        }
        Ok(())
    }

    /// Replaces the core flags with those of a full peel.
    pub fn refresh_core(&mut self, g: &Graph) {
        self.core = peel_unchecked(g, &self.present).core;
    }
}

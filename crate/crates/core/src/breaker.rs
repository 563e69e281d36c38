//! Greedy deletion loops that drive a graph to the core-free state.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::centrality::{self, rank_by_score};
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, Graph, NodeArraySnapshot};
use crate::leaf_removal::peel_unchecked;
use crate::spectral::core_influence;
use crate::state::NodeState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MethodKind {
    /// Core Influence with core flags recomputed by a full peel every step.
    Hl,
    /// Core Influence with the local neighbor-patch state update.
    HlApprox,
    Dc,
    Kc,
    Bc,
    Cc,
    Ci,
    Hda,
    Pr,
    Ec,
}

impl MethodKind {
    pub const ALL: [MethodKind; 10] = [
        MethodKind::Hl,
        MethodKind::HlApprox,
        MethodKind::Dc,
        MethodKind::Kc,
        MethodKind::Bc,
        MethodKind::Cc,
        MethodKind::Ci,
        MethodKind::Hda,
        MethodKind::Pr,
        MethodKind::Ec,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodKind::Hl => "hl",
            MethodKind::HlApprox => "hl-approx",
            MethodKind::Dc => "dc",
            MethodKind::Kc => "kc",
            MethodKind::Bc => "bc",
            MethodKind::Cc => "cc",
            MethodKind::Ci => "ci",
            MethodKind::Hda => "hda",
            MethodKind::Pr => "pr",
            MethodKind::Ec => "ec",
        }
    }

    /// Methods whose score is recomputed after every deletion by construction.
    pub fn is_inherently_adaptive(self) -> bool {
        matches!(self, MethodKind::Hl | MethodKind::HlApprox | MethodKind::Ci | MethodKind::Hda)
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MethodKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

/// How the approximate update treats the far neighbor of a new leaf.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ApproxRule {
    /// New leaf and its other neighbor both leave the core.
    #[default]
    ZeroBoth,
    /// New leaf leaves the core; its other neighbor (and the victim) are set
    /// to core.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RankingMode {
    Static,
    Adaptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodSpec {
    pub kind: MethodKind,
    /// Walk length for Core Influence.
    pub order: usize,
    /// Ball radius for Collective Influence.
    pub ci_radius: usize,
    pub damping: f64,
    pub tolerance: f64,
    /// Recompute DC/KC/BC/CC/PR/EC on the residual graph after each deletion.
    pub recompute: bool,
    pub approx_rule: ApproxRule,
}

impl MethodSpec {
    pub fn new(kind: MethodKind) -> Self {
        MethodSpec {
            kind,
            order: 1,
            ci_radius: 2,
            damping: 0.85,
            tolerance: 1e-10,
            recompute: false,
            approx_rule: ApproxRule::ZeroBoth,
        }
    }

    pub fn ranking_mode(&self) -> RankingMode {
        if self.kind.is_inherently_adaptive() || self.recompute {
            RankingMode::Adaptive
        } else {
            RankingMode::Static
        }
    }

    /// Short label for records: `"exact"`, `"approx"`, `"static"` or `"adaptive"`.
    pub fn update_label(&self) -> &'static str {
        match self.kind {
            MethodKind::Hl => "exact",
            MethodKind::HlApprox => match self.approx_rule {
                ApproxRule::ZeroBoth => "approx",
                ApproxRule::Literal => "approx-literal",
            },
            _ => match self.ranking_mode() {
                RankingMode::Static => "static",
                RankingMode::Adaptive => "adaptive",
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeletionTrace {
    pub method: MethodSpec,
    pub node_count: usize,
    /// Deleted node ids in deletion order. May run past `transition` when a
    /// continuation was requested.
    pub deleted: Vec<usize>,
    /// Number of deletions after which the residual first became core-free.
    pub transition: usize,
    pub elapsed: Duration,
}

impl DeletionTrace {
    pub fn present_count(&self, step: usize) -> usize {
        self.node_count - step
    }

    /// Deleted nodes up to the transition point.
    pub fn breaking_set(&self) -> &[usize] {
        &self.deleted[..self.transition]
    }

    pub fn snapshot(&self, step: usize) -> NodeArraySnapshot {
        let mut present = vec![true; self.node_count];
        for &v in &self.deleted[..step] {
            present[v] = false;
        }
        NodeArraySnapshot { step, present }
    }
}

/// Local core-flag update run before `victim` is deleted, followed by the
/// deletion itself.
///
/// Every present neighbor `j` of `victim` with current degree 2 is about to
/// become a leaf; `j` leaves the core and so does (under
/// [`ApproxRule::ZeroBoth`]) its other neighbor `k`. No peel is run, so
/// leaves created further away are missed.
pub fn approx_state_update(
    g: &Graph,
    state: &mut NodeState,
    victim: usize,
    rule: ApproxRule,
) -> Result<()> {
    if victim >= state.len() {
        return Err(Error::NodeOutOfRange { node: victim, node_count: state.len() });
    }
    if !state.is_present(victim) {
        return Err(Error::AlreadyDeleted(victim));
    }
    for &j in g.neighbors(victim) {
        if !state.is_present(j) || state.degree(j) != 2 {
            continue;
        }
        let k = g
            .neighbors(j)
            .iter()
            .copied()
            .find(|&k| k != victim && state.is_present(k))
            .expect("degree-two node has a second neighbor");
        state.set_core(j, false);
        match rule {
            ApproxRule::ZeroBoth => state.set_core(k, false),
            ApproxRule::Literal => {
                state.set_core(victim, true);
                state.set_core(k, true);
            }
        }
    }
    state.delete(g, victim)
}

/// Deletes nodes until the residual graph is core-free.
pub fn break_core(g: &Graph, method: &MethodSpec) -> Result<DeletionTrace> {
    break_core_extended(g, method, 0)
}

/// As [`break_core`], then keeps deleting `extra_steps` more nodes with the
/// same method (fewer if the graph runs out).
pub fn break_core_extended(g: &Graph, method: &MethodSpec, extra_steps: usize) -> Result<DeletionTrace> {
    let started = Instant::now();
    let n = g.node_count();
    let mut state = NodeState::initial(g);
    let mut chooser = Chooser::new(g, method)?;
    let mut deleted = Vec::new();
    let mut transition = None;

    loop {
        let peel = peel_unchecked(g, state.present());
        if transition.is_none() && peel.is_core_free() {
            transition = Some(deleted.len());
        }
        if let Some(t) = transition {
            if deleted.len() >= t + extra_steps {
                break;
            }
        }
        if deleted.len() == n {
            break;
        }
        let victim = chooser.choose(g, &mut state, &peel.core)?;
        match method.kind {
            MethodKind::HlApprox => approx_state_update(g, &mut state, victim, method.approx_rule)?,
            _ => state.delete(g, victim)?,
        }
        chooser.after_delete(g, &state, victim);
        deleted.push(victim);
    }

    Ok(DeletionTrace {
        method: *method,
        node_count: n,
        deleted,
        transition: transition.expect("empty graph is core-free"),
        elapsed: started.elapsed(),
    })
}

enum Chooser {
    CoreInfluence { order: usize, exact: bool },
    Hda,
    Ci { radius: usize, scores: Vec<f64>, touched: Vec<usize> },
    Static { order: Vec<usize>, cursor: usize },
    Recompute { spec: MethodSpec },
}

impl Chooser {
    fn new(g: &Graph, spec: &MethodSpec) -> Result<Self> {
        Ok(match spec.kind {
            MethodKind::Hl => Chooser::CoreInfluence { order: spec.order, exact: true },
            MethodKind::HlApprox => Chooser::CoreInfluence { order: spec.order, exact: false },
            MethodKind::Hda => Chooser::Hda,
            MethodKind::Ci => {
                let st = NodeState::initial(g);
                let scores = g
                    .nodes()
                    .map(|i| centrality::collective_influence(g, &st, i, spec.ci_radius))
                    .collect();
                Chooser::Ci { radius: spec.ci_radius, scores, touched: Vec::new() }
            }
            _ if spec.recompute => Chooser::Recompute { spec: *spec },
            _ => Chooser::Static { order: rank_static(g, spec)?, cursor: 0 },
        })
    }

    fn choose(&mut self, g: &Graph, state: &mut NodeState, exact_core: &[bool]) -> Result<usize> {
        let present = state.present();
        let first_present = || (0..present.len()).find(|&i| present[i]).expect("a node is present");
        Ok(match self {
            Chooser::CoreInfluence { order, exact } => {
                if *exact {
                    *state = NodeState::from_flags(g, state.present(), exact_core)?;
                }
                let h = core_influence(g, state, *order)?;
                let best = h.argmax(state.present()).expect("a node is present");
                if h.scores[best] > 0.0 || *exact || !exact_core.iter().any(|&c| c) {
                    best
                } else {
                    // stale approximate flags lost the core entirely: resync
                    *state = NodeState::from_flags(g, state.present(), exact_core)?;
                    let h = core_influence(g, state, *order)?;
                    h.argmax(state.present()).expect("a node is present")
                }
            }
            Chooser::Hda => centrality::hda_choice(state).expect("a node is present"),
            Chooser::Ci { scores, .. } => {
                let mut best = first_present();
                for i in best + 1..scores.len() {
                    if present[i] && scores[i] > scores[best] {
                        best = i;
                    }
                }
                best
            }
            Chooser::Static { order, cursor } => {
                while !present[order[*cursor]] {
                    *cursor += 1;
                }
                order[*cursor]
            }
            Chooser::Recompute { spec } => {
                let (sub, map) = induced_subgraph(g, present)?;
                map[rank_static(&sub, spec)?[0]]
            }
        })
    }

    fn after_delete(&mut self, g: &Graph, state: &NodeState, victim: usize) {
        if let Chooser::Ci { radius, scores, touched } = self {
            // scores change only within radius + 1 of the victim
            let mut with_victim = state.present().to_vec();
            with_victim[victim] = true;
            touched.clear();
            touched.extend(
                centrality::ball(g, &with_victim, victim, *radius + 1)
                    .into_iter()
                    .map(|(j, _)| j),
            );
            for &j in touched.iter() {
                scores[j] = centrality::collective_influence(g, state, j, *radius);
            }
        }
    }
}

/// One-shot ranking for DC, KC, BC, CC, PR or EC, best first.
pub fn rank_static(g: &Graph, spec: &MethodSpec) -> Result<Vec<usize>> {
    let scores = match spec.kind {
        MethodKind::Dc => centrality::degree_centrality(g),
        MethodKind::Kc => centrality::core_numbers(g).into_iter().map(|c| c as f64).collect(),
        MethodKind::Bc => centrality::betweenness(g),
        MethodKind::Cc => centrality::closeness(g),
        MethodKind::Pr => centrality::pagerank(g, spec.damping, spec.tolerance),
        MethodKind::Ec => centrality::eigenvector(g, spec.tolerance)?,
        other => {
            return Err(Error::InvalidParameter(format!("{other} has no static ranking")));
        }
    };
    Ok(rank_by_score(&scores))
}

/// Next victim for HDA or CI on the current state.
pub fn rank_adaptive_step(g: &Graph, state: &NodeState, spec: &MethodSpec) -> Result<Option<usize>> {
    match spec.kind {
        MethodKind::Hda => Ok(centrality::hda_choice(state)),
        MethodKind::Ci => {
            let scores: Vec<f64> = g
                .nodes()
                .map(|i| centrality::collective_influence(g, state, i, spec.ci_radius))
                .collect();
            let mut best: Option<usize> = None;
            for i in g.nodes().filter(|&i| state.is_present(i)) {
                if best.is_none_or(|b| scores[i] > scores[b]) {
                    best = Some(i);
                }
            }
            Ok(best)
        }
        other => Err(Error::InvalidParameter(format!("{other} is not an adaptive step method"))),
    }
}

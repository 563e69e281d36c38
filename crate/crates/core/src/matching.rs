//! Maximum-cardinality matching on general graphs (Edmonds' blossom
//! algorithm), restricted to the present nodes.

use std::collections::VecDeque;

use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Mate of every node in a maximum matching of the subgraph induced by
/// `present` (`None` for unmatched or absent nodes).
pub fn maximum_matching(g: &Graph, present: &[bool]) -> Vec<Option<usize>> {
    let mut solver = Blossom::new(g, present);
    solver.run();
    solver.mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

pub fn maximum_matching_size(g: &Graph, present: &[bool]) -> usize {
    maximum_matching(g, present).iter().filter(|m| m.is_some()).count() / 2
}

/// Greedy maximal matching in ascending id order; a lower bound on any
/// vertex cover.
pub fn greedy_matching_size(g: &Graph, present: &[bool]) -> usize {
    let mut matched = vec![false; g.node_count()];
    let mut size = 0;
    for u in g.nodes() {
        if !present[u] || matched[u] {
            continue;
        }
        if let Some(&v) = g.neighbors(u).iter().find(|&&v| present[v] && !matched[v]) {
            matched[u] = true;
            matched[v] = true;
            size += 1;
        }
    }
    size
}

struct Blossom<'a> {
    g: &'a Graph,
    present: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, present: &'a [bool]) -> Self {
        let n = g.node_count();
        Blossom {
            g,
            present,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn run(&mut self) {
        let n = self.g.node_count();
        for u in 0..n {
            if !self.present[u] || self.mate[u] != NONE {
                continue;
            }
            if let Some(&v) = self.g.neighbors(u).iter().find(|&&v| self.present[v] && self.mate[v] == NONE) {
                self.mate[u] = v;
                self.mate[v] = u;
            }
        }
        for root in 0..n {
            if self.present[root] && self.mate[root] == NONE {
                if let Some(end) = self.find_augmenting_path(root) {
                    self.augment(end);
                }
            }
        }
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn lowest_common_base(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.node_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.node_count();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for k in 0..self.g.degree(v) {
                let to = self.g.neighbors(v)[k];
                if !self.present[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lowest_common_base(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

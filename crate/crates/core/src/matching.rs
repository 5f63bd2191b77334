//! Maximum matchings: Edmonds' blossom algorithm for general graphs and
//! Hopcroft–Karp for bipartite instances, plus the saturation and
//! uniqueness tests built on them.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::{Graph, VertexSet};

const NONE: usize = usize::MAX;

/// A set of vertex-disjoint edges, stored as a mate table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![NONE; n],
        }
    }

    /// Builds a matching from explicit edges. Fails when two edges share a
    /// vertex or an endpoint is out of range; edge membership in a graph is
    /// checked separately by [`Matching::validate`].
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut m = Matching::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidMatching(format!("bad edge ({u}, {v})")));
            }
            if m.mate[u] != NONE || m.mate[v] != NONE {
                return Err(Error::InvalidMatching(format!(
                    "edge ({u}, {v}) shares a vertex with another edge"
                )));
            }
            m.mate[u] = v;
            m.mate[v] = u;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        match self.mate[v] {
            NONE => None,
            u => Some(u),
        }
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.mate[v] != NONE
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Edges as `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.mate.len())
            .filter(|&u| self.mate[u] != NONE && u < self.mate[u])
            .map(|u| (u, self.mate[u]))
            .collect()
    }

    pub fn saturated(&self) -> VertexSet {
        VertexSet::from_iter_n(self.n(), (0..self.n()).filter(|&v| self.mate[v] != NONE))
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|&m| m != NONE)
    }

    /// Checks the matching invariants against `g`: the mate table is an
    /// involution and every edge belongs to `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::InvalidMatching(format!(
                "matching over {} vertices used with a graph on {}",
                self.n(),
                g.n()
            )));
        }
        for (v, &m) in self.mate.iter().enumerate() {
            if m == NONE {
                continue;
            }
            if m >= self.n() || self.mate[m] != v {
                return Err(Error::InvalidMatching(format!("mate table broken at {v}")));
            }
            if !g.has_edge(v, m) {
                return Err(Error::InvalidMatching(format!(
                    "({v}, {m}) is not an edge of the graph"
                )));
            }
        }
        Ok(())
    }

    /// Keeps only the edges with at least one endpoint in `s`.
    pub fn restrict_touching(&self, s: &VertexSet) -> Matching {
        let mut out = Matching::empty(self.n());
        for (u, v) in self.edges() {
            if s.contains(u) || s.contains(v) {
                out.mate[u] = v;
                out.mate[v] = u;
            }
        }
        out
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.edges().into_iter().map(|(u, v)| [u, v]))
    }
}

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.adjacency(v).to_vec()).collect()
}

/// A maximum matching of `g` (Edmonds' blossom algorithm).
pub fn max_matching(g: &Graph) -> Matching {
    Blossom::new(adjacency_lists(g)).solve()
}

/// `μ(G)`.
pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).len()
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: vec![0; n],
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn solve(mut self) -> Matching {
        let n = self.adj.len();
        // greedy warm start in index order
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u] == NONE) {
                self.mate[v] = u;
                self.mate[u] = v;
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            if let Some(end) = self.find_path(root) {
                self.augment(end);
            }
        }
        Matching { mate: self.mate }
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
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

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.adj[v].len() {
                let to = self.adj[v][i];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for u in 0..n {
                        if self.in_blossom[self.base[u]] {
                            self.base[u] = cur;
                            if !self.used[u] {
                                self.used[u] = true;
                                self.queue.push_back(u);
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

/// A maximum matching between `left` and `right` using only edges of `g`
/// that cross between them (Hopcroft–Karp). Edges inside either side are
/// ignored. `left` and `right` must be disjoint.
pub fn max_bipartite_matching(g: &Graph, left: &VertexSet, right: &VertexSet) -> Matching {
    debug_assert!(left.is_disjoint(right));
    HopcroftKarp::new(g, left, right).solve()
}

struct HopcroftKarp {
    lefts: Vec<usize>,
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    dist: Vec<usize>,
    next_edge: Vec<usize>,
}

impl HopcroftKarp {
    fn new(g: &Graph, left: &VertexSet, right: &VertexSet) -> Self {
        let n = g.n();
        let lefts = left.to_vec();
        let mut adj = vec![Vec::new(); n];
        for &u in &lefts {
            adj[u] = g.adjacency(u).intersection(right).to_vec();
        }
        HopcroftKarp {
            lefts,
            adj,
            mate: vec![NONE; n],
            dist: vec![NONE; n],
            next_edge: vec![0; n],
        }
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for &u in &self.lefts {
            if self.mate[u] == NONE {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                let w = self.mate[v];
                if w == NONE {
                    found = true;
                } else if self.dist[w] == NONE {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        while self.next_edge[u] < self.adj[u].len() {
            let v = self.adj[u][self.next_edge[u]];
            self.next_edge[u] += 1;
            let w = self.mate[v];
            let ok = w == NONE || (self.dist[w] == self.dist[u] + 1 && self.dfs(w));
            if ok {
                self.mate[u] = v;
                self.mate[v] = u;
                return true;
            }
        }
        self.dist[u] = NONE;
        false
    }

    fn solve(mut self) -> Matching {
        while self.bfs() {
            for i in 0..self.lefts.len() {
                let u = self.lefts[i];
                self.next_edge[u] = 0;
            }
            for i in 0..self.lefts.len() {
                let u = self.lefts[i];
                if self.mate[u] == NONE {
                    self.dfs(u);
                }
            }
        }
        Matching { mate: self.mate }
    }
}

/// Vertices reachable from the unmatched `left` vertices along alternating
/// paths (non-matching edge left→right, matching edge right→left).
pub fn alternating_reach(
    g: &Graph,
    left: &VertexSet,
    right: &VertexSet,
    m: &Matching,
) -> VertexSet {
    let mut reach = VertexSet::from_iter_n(g.n(), left.iter().filter(|&u| !m.is_saturated(u)));
    let mut stack: Vec<usize> = reach.to_vec();
    while let Some(u) = stack.pop() {
        for v in g.adjacency(u).intersection(right).iter() {
            if reach.contains(v) || m.mate(u) == Some(v) {
                continue;
            }
            reach.insert(v);
            if let Some(w) = m.mate(v) {
                if !reach.contains(w) {
                    reach.insert(w);
                    stack.push(w);
                }
            }
        }
    }
    reach
}

/// A minimum vertex cover of the bipartite instance `(left, right)` from a
/// maximum matching `m` (König's construction).
pub fn konig_cover(g: &Graph, left: &VertexSet, right: &VertexSet, m: &Matching) -> VertexSet {
    let z = alternating_reach(g, left, right, m);
    left.difference(&z).union(&right.intersection(&z))
}

/// A matching from `N(S)` into `S` saturating `N(S)`, if one exists.
pub fn saturating_matching_into(g: &Graph, s: &VertexSet) -> Result<Option<Matching>> {
    g.check_ground(s)?;
    if !g.is_independent(s) {
        return Err(Error::NotIndependent(s.clone()));
    }
    let ns = g.open_neighborhood(s);
    let m = max_bipartite_matching(g, &ns, s);
    Ok((m.len() == ns.len()).then_some(m))
}

/// Whether some perfect matching of `g` differs from `m`; returns one.
/// `m` must be a perfect matching of `g`.
fn other_perfect_matching(g: &Graph, m: &Matching) -> Option<Matching> {
    let adj = adjacency_lists(g);
    let target = g.n() / 2;
    for (u, v) in m.edges() {
        let mut cut = adj.clone();
        cut[u].retain(|&w| w != v);
        cut[v].retain(|&w| w != u);
        let alt = Blossom::new(cut).solve();
        if alt.len() == target {
            return Some(alt);
        }
    }
    None
}

/// Whether `m` is the unique perfect matching of `G[V(M)]`.
///
/// Any other perfect matching of `G[V(M)]` must avoid some edge of `m`, so
/// `m` is uniquely restricted iff no `G[V(M)] - e`, `e ∈ m`, still has a
/// perfect matching.
pub fn is_uniquely_restricted(g: &Graph, m: &Matching) -> Result<bool> {
    m.validate(g)?;
    let sat = m.saturated();
    let h = g.induced(&sat);
    let local = Matching::from_edges(
        h.graph.n(),
        &m.edges()
            .into_iter()
            .map(|(u, v)| (h.index_of(u).unwrap(), h.index_of(v).unwrap()))
            .collect::<Vec<_>>(),
    )?;
    Ok(other_perfect_matching(&h.graph, &local).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum PerfectMatchingStatus {
    None,
    Unique { matching: Matching },
    Multiple { first: Matching, second: Matching },
}

impl PerfectMatchingStatus {
    pub fn exists(&self) -> bool {
        !matches!(self, PerfectMatchingStatus::None)
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, PerfectMatchingStatus::Unique { .. })
    }
}

pub fn perfect_matching_status(g: &Graph) -> PerfectMatchingStatus {
    let m = max_matching(g);
    if 2 * m.len() < g.n() {
        return PerfectMatchingStatus::None;
    }
    match other_perfect_matching(g, &m) {
        None => PerfectMatchingStatus::Unique { matching: m },
        Some(second) => PerfectMatchingStatus::Multiple { first: m, second },
    }
}

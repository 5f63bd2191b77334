//! Critical difference, critical independent sets and `ker(G)`.
//!
//! The polynomial routines go through the bipartite double cover `B(G)`:
//! for every `X ⊆ V` the set `X_L ∪ (V - N(X))_R` is independent in `B(G)`
//! and has `n + d(X)` vertices, and every independent set of `B(G)` is
//! dominated by one of that shape, so `α(B(G)) = n + d(G)`. König's theorem
//! turns this into one bipartite matching: `d(G) = n - μ(B(G))`.

use crate::error::Result;
use crate::independence::{check_limit, full_mask, independent_masks, masks};
use crate::matching::{konig_cover, max_bipartite_matching};
use crate::set_systems::SetFamily;
use crate::{Graph, Limits, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `B(G)`: vertex `v` of `G` becomes `v` (left copy) and `n + v` (right
/// copy); `u_L v_R` is an edge iff `uv ∈ E(G)`.
#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub graph: Graph,
    n: usize,
}

impl DoubleCover {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut b = Graph::empty(2 * n);
        for (u, v) in g.edges() {
            b.add_edge(u, n + v);
            b.add_edge(v, n + u);
        }
        DoubleCover { graph: b, n }
    }

    pub fn left(&self) -> VertexSet {
        VertexSet::from_iter_n(2 * self.n, 0..self.n)
    }

    pub fn right(&self) -> VertexSet {
        VertexSet::from_iter_n(2 * self.n, self.n..2 * self.n)
    }

    /// The original vertex and side of a cover vertex.
    pub fn origin(&self, v: usize) -> (usize, Side) {
        if v < self.n {
            (v, Side::Left)
        } else {
            (v - self.n, Side::Right)
        }
    }

    /// A maximum independent set of the cover (complement of a König
    /// minimum vertex cover).
    pub fn max_independent_set(&self) -> VertexSet {
        let (l, r) = (self.left(), self.right());
        let m = max_bipartite_matching(&self.graph, &l, &r);
        konig_cover(&self.graph, &l, &r, &m).complement()
    }

    pub fn matching_number(&self) -> usize {
        max_bipartite_matching(&self.graph, &self.left(), &self.right()).len()
    }
}

/// `d(G) = max { d(X) : X ⊆ V(G) }`, computed as `n - μ(B(G))`.
pub fn critical_difference(g: &Graph) -> i64 {
    let cover = DoubleCover::new(g);
    g.n() as i64 - cover.matching_number() as i64
}

/// A critical independent set read off a maximum independent set `I` of
/// the double cover: with `A = I_L`, `I_R = V - N(A)` and `d(A) = d(G)`, so
/// `A - N(A) = {v : v_L, v_R ∈ I}` is independent with `d ≥ d(A)`.
pub fn critical_independent_set(g: &Graph) -> VertexSet {
    let n = g.n();
    let cover = DoubleCover::new(g);
    let i = cover.max_independent_set();
    g.set((0..n).filter(|&v| i.contains(v) && i.contains(n + v)))
}

/// `max { d(I) : I independent, F ⊆ I }` for an independent `F`.
///
/// Writing `I = F ∪ Y` with `Y ⊆ V - N[F]` gives
/// `d(I) = d(F) + d_{G - N[F]}(Y)`, and the best independent `Y` attains
/// `d(G - N[F])`.
pub fn best_difference_containing(g: &Graph, forced: &VertexSet) -> i64 {
    debug_assert!(g.is_independent(forced));
    let rest = g.remove(&g.closed_neighborhood(forced));
    g.difference(forced) + critical_difference(&rest.graph)
}

/// A maximum critical independent set.
///
/// Starts from the double-cover set and adds every vertex `v` for which
/// some critical independent set still contains the current set plus `v`.
/// A rejected vertex stays rejected as the set grows, so one pass yields an
/// inclusion-maximal critical independent set, which is maximum.
pub fn max_critical_independent_set(g: &Graph) -> VertexSet {
    let d = critical_difference(g);
    let mut s = critical_independent_set(g);
    if g.difference(&s) != d || !g.is_independent(&s) {
        s = g.empty_set();
    }
    for v in 0..g.n() {
        if g.closed_neighborhood(&s).contains(v) {
            continue;
        }
        let mut candidate = s.clone();
        candidate.insert(v);
        if best_difference_containing(g, &candidate) == d {
            s = candidate;
        }
    }
    debug_assert_eq!(g.difference(&s), d);
    s
}

pub fn is_critical_independent(g: &Graph, s: &VertexSet) -> bool {
    g.is_independent(s) && g.difference(s) == critical_difference(g)
}

/// Masks of all critical independent sets of `G` (`n <= 64`).
pub(crate) fn crit_indep_masks(adj: &[u64], ind: &[u64], d: i64) -> Vec<u64> {
    ind.iter()
        .copied()
        .filter(|&s| mask_difference(adj, s) == d)
        .collect()
}

pub(crate) fn neighborhood_mask(adj: &[u64], s: u64) -> u64 {
    let mut out = 0;
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= adj[v];
    }
    out
}

pub(crate) fn mask_difference(adj: &[u64], s: u64) -> i64 {
    s.count_ones() as i64 - neighborhood_mask(adj, s).count_ones() as i64
}

/// `CritIndep(G)`, lexicographically ordered.
pub fn enumerate_crit_indep(g: &Graph, limits: &Limits) -> Result<SetFamily> {
    check_limit("enumerate_crit_indep", g.n(), limits.family)?;
    let adj = masks(g);
    let ind = independent_masks(&adj, full_mask(g.n()));
    let crit = crit_indep_masks(&adj, &ind, critical_difference(g));
    Ok(SetFamily::new(
        g.n(),
        crit.into_iter().map(|m| VertexSet::from_mask(g.n(), m)),
    ))
}

/// `ker(G)`: the intersection of all critical independent sets.
pub fn ker(g: &Graph, limits: &Limits) -> Result<VertexSet> {
    Ok(enumerate_crit_indep(g, limits)?.intersection())
}

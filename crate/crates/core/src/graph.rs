//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::VertexSet;

/// A finite simple graph. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::empty(n); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("edge ({u}, {v}) has an endpoint >= n = {n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("loop at vertex {u}"),
                });
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n(), "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// External name of `v`: its label if any, otherwise the index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, it: I) -> VertexSet {
        VertexSet::from_iter_n(self.n(), it)
    }

    /// Open neighborhood of a single vertex.
    pub fn adjacency(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn isolated(&self) -> VertexSet {
        self.set((0..self.n()).filter(|&v| self.adj[v].is_empty()))
    }

    pub fn check_ground(&self, s: &VertexSet) -> Result<()> {
        if s.ground_size() != self.n() {
            return Err(Error::GroundMismatch {
                expected: self.n(),
                got: s.ground_size(),
            });
        }
        Ok(())
    }

    /// `N(S)` when `closed` is false, `N[S] = N(S) ∪ S` otherwise. The open
    /// neighborhood may meet `S` when `S` is not independent.
    pub fn neighborhood(&self, s: &VertexSet, closed: bool) -> VertexSet {
        let mut out = if closed { s.clone() } else { self.empty_set() };
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out
    }

    pub fn open_neighborhood(&self, s: &VertexSet) -> VertexSet {
        self.neighborhood(s, false)
    }

    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        self.neighborhood(s, true)
    }

    /// `d(X) = |X| - |N(X)|`, defined for every subset.
    pub fn difference(&self, x: &VertexSet) -> i64 {
        x.len() as i64 - self.open_neighborhood(x).len() as i64
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// The subgraph induced by `x`, renumbered in increasing vertex order.
    pub fn induced(&self, x: &VertexSet) -> Induced {
        let map: Vec<usize> = x.to_vec();
        let mut inverse = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let mut g = Graph::empty(map.len());
        for (new_u, &old_u) in map.iter().enumerate() {
            for old_v in self.adj[old_u].intersection(x).iter() {
                let new_v = inverse[old_v];
                if new_u < new_v {
                    g.add_edge(new_u, new_v);
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(map.iter().map(|&v| l[v].clone()).collect());
        }
        Induced {
            graph: g,
            map,
            inverse,
        }
    }

    /// `G - W`, the subgraph induced by the complement of `w`.
    pub fn remove(&self, w: &VertexSet) -> Induced {
        self.induced(&w.complement())
    }

    /// A proper 2-colouring as the set of colour-0 vertices, if one exists.
    /// Each component's lowest vertex gets colour 0.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let n = self.n();
        let mut colour = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for v in &self.adj[u] {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(self.set((0..n).filter(|&v| colour[v] == 0)))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .all(|(u, v)| self.adj[u].is_disjoint(&self.adj[v]))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = self.set([0]);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let next = self.open_neighborhood(&frontier).difference(&seen);
            seen.union_with(&next);
            frontier = next;
        }
        seen.len() == n
    }

    pub fn is_forest(&self) -> bool {
        let mut components = 0;
        let mut seen = self.empty_set();
        for s in 0..self.n() {
            if seen.contains(s) {
                continue;
            }
            components += 1;
            let mut frontier = self.set([s]);
            seen.insert(s);
            while !frontier.is_empty() {
                let next = self.open_neighborhood(&frontier).difference(&seen);
                seen.union_with(&next);
                frontier = next;
            }
        }
        self.m() + components == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.is_connected() && self.m() + 1 == self.n()
    }

    /// Vertices in the listed order, edges relabelled accordingly:
    /// vertex `order[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.n());
        let mut pos = vec![0; self.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(pos[u], pos[v]);
        }
        g
    }
}

/// An induced subgraph together with its vertex correspondence.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// New index -> old index.
    pub map: Vec<usize>,
    /// Old index -> new index, `usize::MAX` for dropped vertices.
    inverse: Vec<usize>,
}

impl Induced {
    /// Maps a set of the subgraph back into the parent graph.
    pub fn lift(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_n(self.inverse.len(), s.iter().map(|v| self.map[v]))
    }

    /// Position of parent vertex `old` in the subgraph.
    pub fn index_of(&self, old: usize) -> Option<usize> {
        match self.inverse[old] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    /// Restricts a parent set to the subgraph, dropping removed vertices.
    pub fn project(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_iter_n(
            self.map.len(),
            s.iter()
                .map(|v| self.inverse[v])
                .filter(|&v| v != usize::MAX),
        )
    }
}

/// Named graph families with a documented vertex numbering.
#[derive(Clone, Debug)]
pub enum GraphKind {
    /// `P_n`: edges `i -- i+1`.
    Path(usize),
    /// `C_n` (`n >= 3`): edges `i -- (i+1) mod n`.
    Cycle(usize),
    /// `K_n`.
    Complete(usize),
    /// `K_{m,n}`: side A is `0..m`, side B is `m..m+n`.
    CompleteBipartite(usize, usize),
    /// `K_{n,1}`: leaves `0..n`, centre `n`.
    Star(usize),
    /// `G ∘ H`: the base vertices `0..|G|` first, then one copy of `H` per
    /// base vertex in base order; copy `i` occupies
    /// `|G| + i*|H| .. |G| + (i+1)*|H|`.
    Corona(Box<Graph>, Box<Graph>),
}

impl GraphKind {
    pub fn generate(&self) -> Result<Graph> {
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(Error::InvalidParameter(format!("{name} must be >= 1")))
            } else {
                Ok(())
            }
        };
        match self {
            GraphKind::Path(n) => {
                positive("path order", *n)?;
                let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(*n, &edges)
            }
            GraphKind::Cycle(n) => {
                if *n < 3 {
                    return Err(Error::InvalidParameter(format!(
                        "cycle order must be >= 3, got {n}"
                    )));
                }
                let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(*n, &edges)
            }
            GraphKind::Complete(n) => {
                positive("complete graph order", *n)?;
                let mut g = Graph::empty(*n);
                for u in 0..*n {
                    for v in u + 1..*n {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            GraphKind::CompleteBipartite(a, b) => {
                positive("side a", *a)?;
                positive("side b", *b)?;
                let mut g = Graph::empty(a + b);
                for u in 0..*a {
                    for v in *a..a + b {
                        g.add_edge(u, v);
                    }
                }
                Ok(g)
            }
            GraphKind::Star(n) => {
                positive("star leaves", *n)?;
                GraphKind::CompleteBipartite(*n, 1).generate()
            }
            GraphKind::Corona(base, hair) => {
                positive("corona base order", base.n())?;
                positive("corona copy order", hair.n())?;
                let (nb, nh) = (base.n(), hair.n());
                let mut g = Graph::empty(nb * (1 + nh));
                for (u, v) in base.edges() {
                    g.add_edge(u, v);
                }
                for i in 0..nb {
                    let off = nb + i * nh;
                    for (u, v) in hair.edges() {
                        g.add_edge(off + u, off + v);
                    }
                    for h in 0..nh {
                        g.add_edge(i, off + h);
                    }
                }
                Ok(g)
            }
        }
    }
}

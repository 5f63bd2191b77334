//! Graph corpora: exhaustive generation of all graphs of small order up to
//! isomorphism, and seeded random graphs.
//!
//! Generation is by vertex augmentation. A graph on `n` vertices arises from
//! the graph left after deleting one of its minimum-degree vertices, so each
//! level only extends the previous one by a new vertex of minimum degree.
//! Isomorphs are rejected through a canonical key: colour refinement,
//! individualization of the first non-trivial cell, and the largest
//! upper-triangle adjacency word over all leaves of the search tree.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Graph;

/// Orders above this do not fit the 64-bit canonical key.
pub const MAX_CANONICAL_ORDER: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    All,
    Connected,
    TriangleFree,
    Bipartite,
    ConnectedBipartite,
    Forest,
    Tree,
}

impl GraphClass {
    /// The hereditary class generated level by level.
    fn hereditary(self) -> Hereditary {
        match self {
            GraphClass::All | GraphClass::Connected => Hereditary::All,
            GraphClass::TriangleFree => Hereditary::TriangleFree,
            GraphClass::Bipartite | GraphClass::ConnectedBipartite => Hereditary::Bipartite,
            GraphClass::Forest | GraphClass::Tree => Hereditary::Forest,
        }
    }

    fn needs_connected(self) -> bool {
        matches!(
            self,
            GraphClass::Connected | GraphClass::ConnectedBipartite | GraphClass::Tree
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Hereditary {
    All,
    TriangleFree,
    Bipartite,
    Forest,
}

type Adj = [u16; MAX_CANONICAL_ORDER];

fn pair_index(i: usize, j: usize) -> u32 {
    debug_assert!(i < j);
    (j * (j - 1) / 2 + i) as u32
}

fn adj_of_key(n: usize, key: u64) -> Adj {
    let mut adj = [0u16; MAX_CANONICAL_ORDER];
    for j in 1..n {
        for i in 0..j {
            if key >> pair_index(i, j) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

fn key_of_order(adj: &Adj, order: &[u8]) -> u64 {
    let mut key = 0u64;
    for j in 1..order.len() {
        let row = adj[order[j] as usize];
        for i in 0..j {
            if row >> order[i] & 1 == 1 {
                key |= 1u64 << pair_index(i, j);
            }
        }
    }
    key
}

/// An ordered partition of `0..n`: `order` lists the vertices cell by
/// cell and bit `i` of `starts` marks position `i` as the first of a cell.
#[derive(Clone, Copy)]
struct Partition {
    order: [u8; MAX_CANONICAL_ORDER],
    starts: u16,
    n: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut order = [0u8; MAX_CANONICAL_ORDER];
        for (i, o) in order.iter_mut().enumerate().take(n) {
            *o = i as u8;
        }
        Partition { order, starts: 1, n }
    }

    fn cell_end(&self, start: usize) -> usize {
        let later = self.starts >> (start + 1);
        if later == 0 {
            self.n
        } else {
            start + 1 + later.trailing_zeros() as usize
        }
    }

    fn is_discrete(&self) -> bool {
        self.starts.count_ones() as usize == self.n
    }

    /// Splits cells until every vertex of a cell has the same number of
    /// neighbours in every cell.
    fn refine(&mut self, adj: &Adj) {
        loop {
            let mut masks = [0u16; MAX_CANONICAL_ORDER];
            let mut cells = 0;
            for i in 0..self.n {
                if self.starts >> i & 1 == 1 && i > 0 {
                    cells += 1;
                }
                masks[cells] |= 1 << self.order[i];
            }
            let cells = cells + 1;
            let mut sig = [0u64; MAX_CANONICAL_ORDER];
            for v in 0..self.n {
                let mut s = 0u64;
                for m in &masks[..cells] {
                    s = s << 4 | (adj[v] & m).count_ones() as u64;
                }
                sig[v] = s;
            }
            let mut changed = false;
            let mut start = 0;
            while start < self.n {
                let end = self.cell_end(start);
                if end - start > 1 {
                    let cell = &mut self.order[start..end];
                    cell.sort_unstable_by_key(|&v| sig[v as usize]);
                    for i in start + 1..end {
                        if sig[self.order[i] as usize] != sig[self.order[i - 1] as usize] {
                            self.starts |= 1 << i;
                            changed = true;
                        }
                    }
                }
                start = end;
            }
            if !changed {
                return;
            }
        }
    }
}

fn search(adj: &Adj, part: Partition, best: &mut u64) {
    if part.is_discrete() {
        *best = (*best).max(key_of_order(adj, &part.order[..part.n]));
        return;
    }
    let mut start = 0;
    while part.cell_end(start) - start == 1 {
        start += 1;
    }
    let end = part.cell_end(start);
    let mut tried = 0u16;
    for i in start..end {
        let v = part.order[i];
        // swapping twins inside one cell is an automorphism fixing the
        // partition, so their subtrees give the same leaves
        let vm = adj[v as usize];
        let mut t = tried;
        let mut twin = false;
        while t != 0 {
            let u = t.trailing_zeros() as u8;
            t &= t - 1;
            if adj[u as usize] & !(1u16 << v) == vm & !(1u16 << u) {
                twin = true;
                break;
            }
        }
        if twin {
            continue;
        }
        tried |= 1 << v;
        let mut next = part;
        next.order.swap(start, i);
        next.starts |= 1 << (start + 1);
        next.refine(adj);
        search(adj, next, best);
    }
}

fn canonical_key_of(adj: &Adj, n: usize) -> u64 {
    if n <= 1 {
        return 0;
    }
    let mut part = Partition::unit(n);
    part.refine(adj);
    let mut best = 0;
    search(adj, part, &mut best);
    best
}

fn adj_of_graph(g: &Graph) -> Result<Adj> {
    if g.n() > MAX_CANONICAL_ORDER {
        return Err(Error::SizeLimit {
            operation: "canonical_key",
            n: g.n(),
            limit: MAX_CANONICAL_ORDER,
        });
    }
    let mut adj = [0u16; MAX_CANONICAL_ORDER];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    Ok(adj)
}

/// An isomorphism invariant that determines the graph up to isomorphism
/// (together with `n`).
pub fn canonical_key(g: &Graph) -> Result<u64> {
    Ok(canonical_key_of(&adj_of_graph(g)?, g.n()))
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    Ok(graph_of_key(g.n(), canonical_key(g)?))
}

/// Decodes an upper-triangle adjacency word.
pub fn graph_of_key(n: usize, key: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if key >> pair_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("decoded edges are valid")
}

fn in_class(adj: &Adj, n: usize, class: Hereditary) -> bool {
    match class {
        Hereditary::All => true,
        Hereditary::TriangleFree => (0..n).all(|v| {
            let nv = adj[v];
            (0..n).all(|u| nv >> u & 1 == 0 || adj[u] & nv == 0)
        }),
        Hereditary::Bipartite => two_colourable(adj, n),
        Hereditary::Forest => {
            let edges: u32 = (0..n).map(|v| adj[v].count_ones()).sum::<u32>() / 2;
            edges as usize + components(adj, n) == n
        }
    }
}

fn components(adj: &Adj, n: usize) -> usize {
    let mut seen = 0u16;
    let mut count = 0;
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        count += 1;
        let mut frontier = 1u16 << s;
        seen |= frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
    }
    count
}

fn two_colourable(adj: &Adj, n: usize) -> bool {
    let mut colour = [u8::MAX; MAX_CANONICAL_ORDER];
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let mut nb = adj[v];
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if colour[u] == u8::MAX {
                    colour[u] = 1 - colour[v];
                    stack.push(u);
                } else if colour[u] == colour[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Canonical keys of every graph of order `n + 1` in `class` obtained by
/// adding a minimum-degree vertex to a member of `prev` (order `n`).
fn next_level(n: usize, prev: &[u64], class: Hereditary) -> Vec<u64> {
    let mut seen = HashSet::new();
    for &key in prev {
        let base = adj_of_key(n, key);
        let min_deg = (0..n).map(|v| base[v].count_ones()).min().unwrap_or(0);
        for s in 0u16..1 << n {
            let k = s.count_ones();
            // the new vertex must have minimum degree afterwards
            if k > min_deg + 1 {
                continue;
            }
            if (0..n).any(|v| base[v].count_ones() + u32::from(s >> v & 1) < k) {
                continue;
            }
            let mut adj = base;
            for v in 0..n {
                if s >> v & 1 == 1 {
                    adj[v] |= 1 << n;
                }
            }
            adj[n] = s;
            if !in_class(&adj, n + 1, class) {
                continue;
            }
            seen.insert(canonical_key_of(&adj, n + 1));
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn check_order(max_n: usize) -> Result<()> {
    if max_n > MAX_CANONICAL_ORDER {
        return Err(Error::SizeLimit {
            operation: "exhaustive generation",
            n: max_n,
            limit: MAX_CANONICAL_ORDER,
        });
    }
    Ok(())
}

/// All graphs of orders `1..=max_n` in `class`, one per isomorphism class,
/// ordered by order and then canonical key.
pub fn exhaustive(max_n: usize, class: GraphClass) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for_each_exhaustive(max_n, class, |g| out.push(g))?;
    Ok(out)
}

/// Streams the graphs of [`exhaustive`] level by level.
pub fn for_each_exhaustive(max_n: usize, class: GraphClass, mut visit: impl FnMut(Graph)) -> Result<()> {
    check_order(max_n)?;
    let here = class.hereditary();
    let mut level: Vec<u64> = vec![0];
    for n in 1..=max_n {
        if n > 1 {
            level = next_level(n - 1, &level, here);
        }
        for &key in &level {
            let adj = adj_of_key(n, key);
            if class.needs_connected() && components(&adj, n) != 1 {
                continue;
            }
            visit(graph_of_key(n, key));
        }
    }
    Ok(())
}

/// Number of graphs of each order `1..=max_n` in `class`.
pub fn counts(max_n: usize, class: GraphClass) -> Result<Vec<usize>> {
    let mut out = vec![0; max_n];
    for_each_exhaustive(max_n, class, |g| out[g.n() - 1] += 1)?;
    Ok(out)
}

/// `G(n, p)` with every edge drawn independently.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid random edges")
}

/// A random bipartite graph on parts `0..a` and `a..a+b`.
pub fn random_bipartite<R: Rng>(rng: &mut R, a: usize, b: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in a..a + b {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(a + b, &edges).expect("valid random edges")
}

/// A reproducible random corpus: each graph has order uniform in
/// `min_n..=max_n` and edge probability uniform in `[0.1, 0.9]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomCorpus {
    pub count: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub seed: u64,
}

impl RandomCorpus {
    pub fn generate(&self) -> Result<Vec<Graph>> {
        if self.min_n > self.max_n {
            return Err(Error::InvalidParameter(format!(
                "min_n {} exceeds max_n {}",
                self.min_n, self.max_n
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        Ok((0..self.count)
            .map(|_| {
                let n = rng.gen_range(self.min_n..=self.max_n);
                let p = rng.gen_range(0.1..=0.9);
                random_graph(&mut rng, n, p)
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GraphKind;

    #[test]
    fn all_graph_counts() {
        assert_eq!(counts(8, GraphClass::All).unwrap(), vec![1, 2, 4, 11, 34, 156, 1044, 12346]);
    }

    #[test]
    fn connected_counts() {
        assert_eq!(counts(8, GraphClass::Connected).unwrap(), vec![1, 1, 2, 6, 21, 112, 853, 11117]);
    }

    #[test]
    fn class_counts() {
        assert_eq!(counts(10, GraphClass::Tree).unwrap(), vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert_eq!(counts(9, GraphClass::Forest).unwrap(), vec![1, 2, 3, 6, 10, 20, 37, 76, 153]);
        assert_eq!(
            counts(9, GraphClass::ConnectedBipartite).unwrap(),
            vec![1, 1, 1, 3, 5, 17, 44, 182, 730]
        );
        assert_eq!(counts(8, GraphClass::Bipartite).unwrap(), vec![1, 2, 3, 7, 13, 35, 88, 303]);
        assert_eq!(
            counts(9, GraphClass::TriangleFree).unwrap(),
            vec![1, 2, 3, 7, 14, 38, 107, 410, 1897]
        );
    }

    #[test]
    fn canonical_key_is_invariant() {
        let petersen = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [
            petersen,
            GraphKind::Cycle(9).generate().unwrap(),
            GraphKind::CompleteBipartite(3, 4).generate().unwrap(),
            random_graph(&mut rng, 10, 0.5),
            random_graph(&mut rng, 11, 0.3),
        ] {
            let key = canonical_key(&g).unwrap();
            let canon = canonical_form(&g).unwrap();
            assert_eq!(canonical_key(&canon).unwrap(), key);
            assert_eq!(canon.m(), g.m());
            for _ in 0..20 {
                let mut order: Vec<usize> = (0..g.n()).collect();
                for i in (1..order.len()).rev() {
                    order.swap(i, rng.gen_range(0..=i));
                }
                assert_eq!(canonical_key(&g.permuted(&order)).unwrap(), key);
            }
        }
    }

    #[test]
    fn canonical_key_separates() {
        let p4 = GraphKind::Path(4).generate().unwrap();
        let star = GraphKind::Star(3).generate().unwrap();
        assert_ne!(canonical_key(&p4).unwrap(), canonical_key(&star).unwrap());
        assert!(canonical_key(&Graph::empty(12)).is_err());
    }

    #[test]
    fn generated_graphs_are_in_class() {
        for g in exhaustive(7, GraphClass::Tree).unwrap() {
            assert!(g.is_tree());
        }
        for g in exhaustive(7, GraphClass::ConnectedBipartite).unwrap() {
            assert!(g.is_bipartite() && g.is_connected());
        }
        for g in exhaustive(7, GraphClass::TriangleFree).unwrap() {
            assert!(g.is_triangle_free());
        }
    }

    #[test]
    fn random_corpus_is_reproducible() {
        let c = RandomCorpus {
            count: 30,
            min_n: 1,
            max_n: 12,
            seed: 42,
        };
        let a = c.generate().unwrap();
        let b = c.generate().unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|g| (1..=12).contains(&g.n())));
        let other = RandomCorpus { seed: 43, ..c }.generate().unwrap();
        assert_ne!(a, other);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_bipartite(&mut rng, 4, 5, 0.5);
        assert!(g.edges().all(|(u, v)| u < 4 && v >= 4));
    }
}

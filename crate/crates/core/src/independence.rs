//! Exact independence computations at desk scale: `α(G)`, `Ω(G)`,
//! `core(G)`, `Ind(G)` and the König–Egerváry and well-covered predicates.
//!
//! Everything here works on 64-bit adjacency masks, so every limit is
//! additionally capped at 64 vertices.

use crate::error::{Error, Result};
use crate::matching::matching_number;
use crate::set_systems::SetFamily;
use crate::{Graph, Limits, VertexSet};

pub(crate) const MASK_BITS: usize = 64;

pub(crate) fn check_limit(operation: &'static str, n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(MASK_BITS);
    if n > limit {
        return Err(Error::SizeLimit {
            operation,
            n,
            limit,
        });
    }
    Ok(())
}

/// Adjacency rows as bit masks; `g.n() <= 64`.
pub(crate) fn masks(g: &Graph) -> Vec<u64> {
    debug_assert!(g.n() <= MASK_BITS);
    (0..g.n()).map(|v| g.adjacency(v).to_mask()).collect()
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == MASK_BITS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Number of cliques in a greedy clique cover of `G[p]`, an upper bound on
/// `α(G[p])`.
fn clique_cover_bound(adj: &[u64], mut p: u64) -> usize {
    let mut count = 0;
    while p != 0 {
        let v = p.trailing_zeros() as usize;
        let mut clique = 1u64 << v;
        let mut cand = p & adj[v];
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            clique |= 1u64 << u;
            cand &= adj[u];
        }
        p &= !clique;
        count += 1;
    }
    count
}

struct MaxIndependent<'a> {
    adj: &'a [u64],
    best: u64,
    best_len: usize,
}

impl MaxIndependent<'_> {
    fn search(&mut self, p: u64, cur: u64) {
        let size = cur.count_ones() as usize;
        if p == 0 {
            if size > self.best_len {
                self.best_len = size;
                self.best = cur;
            }
            return;
        }
        if size + clique_cover_bound(self.adj, p) <= self.best_len {
            return;
        }
        let mut min_v = 0;
        let mut min_d = usize::MAX;
        let mut max_v = 0;
        let mut max_d = 0;
        let mut rest = p;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & p).count_ones() as usize;
            if d < min_d {
                min_d = d;
                min_v = v;
            }
            if d > max_d {
                max_d = d;
                max_v = v;
            }
        }
        if min_d <= 1 {
            // some maximum independent set of G[p] contains a vertex of degree <= 1
            let closed = self.adj[min_v] | (1u64 << min_v);
            self.search(p & !closed, cur | (1u64 << min_v));
            return;
        }
        let closed = self.adj[max_v] | (1u64 << max_v);
        self.search(p & !closed, cur | (1u64 << max_v));
        self.search(p & !(1u64 << max_v), cur);
    }
}

fn greedy_independent(adj: &[u64], mut p: u64) -> u64 {
    let mut out = 0;
    while p != 0 {
        let mut best = p.trailing_zeros() as usize;
        let mut best_d = u32::MAX;
        let mut rest = p;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (adj[v] & p).count_ones();
            if d < best_d {
                best_d = d;
                best = v;
            }
        }
        out |= 1u64 << best;
        p &= !(adj[best] | (1u64 << best));
    }
    out
}

pub(crate) fn max_independent_mask(adj: &[u64], p: u64) -> u64 {
    let start = greedy_independent(adj, p);
    let mut bb = MaxIndependent {
        adj,
        best: start,
        best_len: start.count_ones() as usize,
    };
    bb.search(p, 0);
    bb.best
}

/// A maximum independent set (branch and bound with a greedy lower bound
/// and a clique-cover upper bound).
pub fn max_independent_set(g: &Graph, limits: &Limits) -> Result<VertexSet> {
    check_limit("alpha", g.n(), limits.exact)?;
    let adj = masks(g);
    let best = max_independent_mask(&adj, full_mask(g.n()));
    Ok(VertexSet::from_mask(g.n(), best))
}

/// `α(G)`.
pub fn alpha(g: &Graph, limits: &Limits) -> Result<usize> {
    Ok(max_independent_set(g, limits)?.len())
}

/// `α(G[p])` for a mask `p`; no limit checks.
pub(crate) fn alpha_of_mask(adj: &[u64], p: u64) -> usize {
    max_independent_mask(adj, p).count_ones() as usize
}

/// `α(G)` by trying all `2^n` subsets. Reference engine, `n <= 16`.
pub fn alpha_naive(g: &Graph) -> Result<usize> {
    check_limit("alpha_naive", g.n(), 16)?;
    let adj = masks(g);
    let best = (0u64..1 << g.n())
        .filter(|&s| is_independent_mask(&adj, s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(best)
}

pub(crate) fn is_independent_mask(adj: &[u64], s: u64) -> bool {
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if adj[v] & s != 0 {
            return false;
        }
    }
    true
}

/// All independent sets of `G[p]` as masks, in no particular order.
pub(crate) fn independent_masks(adj: &[u64], p: u64) -> Vec<u64> {
    fn rec(adj: &[u64], p: u64, cur: u64, out: &mut Vec<u64>) {
        if p == 0 {
            out.push(cur);
            return;
        }
        let v = p.trailing_zeros() as usize;
        rec(adj, p & !(adj[v] | (1u64 << v)), cur | (1u64 << v), out);
        rec(adj, p & !(1u64 << v), cur, out);
    }
    let mut out = Vec::new();
    rec(adj, p, 0, &mut out);
    out
}

/// `Ind(G)`, lexicographically ordered.
pub fn independent_sets(g: &Graph, limits: &Limits) -> Result<SetFamily> {
    check_limit("independent set enumeration", g.n(), limits.family)?;
    let adj = masks(g);
    let sets = independent_masks(&adj, full_mask(g.n()))
        .into_iter()
        .map(|m| VertexSet::from_mask(g.n(), m));
    Ok(SetFamily::new(g.n(), sets))
}

/// `Ω(G)`: all maximum independent sets, lexicographically ordered.
pub fn omega_sets(g: &Graph, limits: &Limits) -> Result<SetFamily> {
    check_limit("omega_sets", g.n(), limits.enumeration)?;
    let adj = masks(g);
    let all = full_mask(g.n());
    let target = alpha_of_mask(&adj, all);
    let mut out = Vec::new();
    omega_rec(&adj, target, all, 0, &mut out);
    Ok(SetFamily::new(
        g.n(),
        out.into_iter().map(|m| VertexSet::from_mask(g.n(), m)),
    ))
}

fn omega_rec(adj: &[u64], target: usize, p: u64, cur: u64, out: &mut Vec<u64>) {
    let size = cur.count_ones() as usize;
    if size == target {
        out.push(cur);
        return;
    }
    if p == 0 || size + clique_cover_bound(adj, p) < target {
        return;
    }
    let v = p.trailing_zeros() as usize;
    omega_rec(adj, target, p & !(adj[v] | (1u64 << v)), cur | (1u64 << v), out);
    omega_rec(adj, target, p & !(1u64 << v), cur, out);
}

/// `core(G)`: the intersection of all maximum independent sets.
pub fn core(g: &Graph, limits: &Limits) -> Result<VertexSet> {
    let omega = omega_sets(g, limits)?;
    Ok(omega.intersection())
}

/// `α(G) + μ(G) = |V(G)|`.
pub fn is_konig_egervary(g: &Graph, limits: &Limits) -> Result<bool> {
    Ok(alpha(g, limits)? + matching_number(g) == g.n())
}

/// Visits maximal independent sets (Bron–Kerbosch with pivoting on the
/// complement) until `visit` returns false.
fn for_each_maximal_independent(adj: &[u64], n: usize, mut visit: impl FnMut(u64) -> bool) {
    let all = full_mask(n);
    let non_adj: Vec<u64> = (0..n)
        .map(|v| !adj[v] & all & !(1u64 << v))
        .collect();
    fn bk(non_adj: &[u64], r: u64, mut p: u64, mut x: u64, visit: &mut dyn FnMut(u64) -> bool) -> bool {
        if p == 0 && x == 0 {
            return visit(r);
        }
        let px = p | x;
        let mut pivot = px.trailing_zeros() as usize;
        let mut best = 0;
        let mut rest = px;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = (p & non_adj[u]).count_ones();
            if c > best {
                best = c;
                pivot = u;
            }
        }
        let mut cand = p & !non_adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let bit = 1u64 << v;
            if !bk(non_adj, r | bit, p & non_adj[v], x & non_adj[v], visit) {
                return false;
            }
            p &= !bit;
            x |= bit;
        }
        true
    }
    bk(&non_adj, 0, all, 0, &mut visit);
}

/// Every maximal independent set has size `α(G)`.
pub fn is_well_covered(g: &Graph, limits: &Limits) -> Result<bool> {
    check_limit("is_well_covered", g.n(), limits.enumeration)?;
    let adj = masks(g);
    let target = alpha_of_mask(&adj, full_mask(g.n()));
    let mut ok = true;
    for_each_maximal_independent(&adj, g.n(), |s| {
        ok = s.count_ones() as usize == target;
        ok
    });
    Ok(ok)
}

/// Well-covered, no isolated vertices and `|V| = 2α(G)`.
pub fn is_very_well_covered(g: &Graph, limits: &Limits) -> Result<bool> {
    if !is_well_covered(g, limits)? {
        return Ok(false);
    }
    Ok(g.isolated().is_empty() && g.n() == 2 * alpha(g, limits)?)
}

/// All maximal independent sets, lexicographically ordered.
pub fn maximal_independent_sets(g: &Graph, limits: &Limits) -> Result<SetFamily> {
    check_limit("maximal_independent_sets", g.n(), limits.enumeration)?;
    let adj = masks(g);
    let mut out = Vec::new();
    for_each_maximal_independent(&adj, g.n(), |s| {
        out.push(VertexSet::from_mask(g.n(), s));
        true
    });
    Ok(SetFamily::new(g.n(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GraphKind;

    fn gen(k: GraphKind) -> Graph {
        k.generate().unwrap()
    }

    fn corona_k3_k1() -> Graph {
        GraphKind::Corona(
            Box::new(gen(GraphKind::Complete(3))),
            Box::new(Graph::empty(1)),
        )
        .generate()
        .unwrap()
    }

    #[test]
    fn alpha_examples() {
        let l = Limits::default();
        assert_eq!(alpha(&gen(GraphKind::Cycle(5)), &l).unwrap(), 2);
        assert_eq!(alpha(&corona_k3_k1(), &l).unwrap(), 3);
        for n in 1..7 {
            assert_eq!(alpha(&gen(GraphKind::Star(n)), &l).unwrap(), n);
        }
        assert_eq!(alpha(&Graph::empty(0), &l).unwrap(), 0);
        assert_eq!(alpha_naive(&corona_k3_k1()).unwrap(), 3);
    }

    #[test]
    fn limits_are_enforced() {
        let l = Limits {
            exact: 5,
            ..Limits::default()
        };
        assert!(matches!(
            alpha(&gen(GraphKind::Path(6)), &l),
            Err(Error::SizeLimit { n: 6, limit: 5, .. })
        ));
        assert!(alpha_naive(&Graph::empty(17)).is_err());
        let big = Limits {
            exact: 1000,
            ..Limits::default()
        };
        assert!(matches!(
            alpha(&Graph::empty(65), &big),
            Err(Error::SizeLimit { limit: 64, .. })
        ));
    }

    #[test]
    fn omega_examples() {
        let l = Limits::default();
        let c5 = omega_sets(&gen(GraphKind::Cycle(5)), &l).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|s| s.len() == 2));

        let p3 = gen(GraphKind::Path(3));
        let o = omega_sets(&p3, &l).unwrap();
        assert_eq!(o.members(), &[p3.set([0, 2])]);
    }

    #[test]
    fn core_examples() {
        let l = Limits::default();
        let p3 = gen(GraphKind::Path(3));
        assert_eq!(core(&p3, &l).unwrap(), p3.set([0, 2]));
        assert!(core(&gen(GraphKind::Cycle(5)), &l).unwrap().is_empty());
    }

    #[test]
    fn konig_egervary_examples() {
        let l = Limits::default();
        assert!(!is_konig_egervary(&gen(GraphKind::Cycle(5)), &l).unwrap());
        assert!(is_konig_egervary(&corona_k3_k1(), &l).unwrap());
        for k in [
            GraphKind::Path(5),
            GraphKind::Cycle(8),
            GraphKind::CompleteBipartite(2, 5),
        ] {
            assert!(is_konig_egervary(&gen(k), &l).unwrap());
        }
    }

    #[test]
    fn well_covered_examples() {
        let l = Limits::default();
        let c5 = gen(GraphKind::Cycle(5));
        assert!(is_well_covered(&c5, &l).unwrap());
        assert!(!is_very_well_covered(&c5, &l).unwrap());

        let p3 = gen(GraphKind::Path(3));
        assert!(!is_well_covered(&p3, &l).unwrap());

        assert!(is_very_well_covered(&corona_k3_k1(), &l).unwrap());
        let mis = maximal_independent_sets(&corona_k3_k1(), &l).unwrap();
        assert!(mis.iter().all(|s| s.len() == 3));

        // K1 is well-covered but has an isolated vertex
        assert!(is_well_covered(&Graph::empty(1), &l).unwrap());
        assert!(!is_very_well_covered(&Graph::empty(1), &l).unwrap());
    }

    #[test]
    fn coronas_with_k1_are_very_well_covered() {
        let l = Limits::default();
        for base in [
            gen(GraphKind::Path(1)),
            gen(GraphKind::Path(4)),
            gen(GraphKind::Cycle(5)),
            gen(GraphKind::Complete(4)),
            gen(GraphKind::CompleteBipartite(2, 3)),
            Graph::empty(3),
        ] {
            let g = GraphKind::Corona(Box::new(base), Box::new(Graph::empty(1)))
                .generate()
                .unwrap();
            assert!(is_very_well_covered(&g, &l).unwrap());
            assert_eq!(g.n(), 2 * alpha(&g, &l).unwrap());
        }
    }

    #[test]
    fn independent_sets_of_p3() {
        let p3 = gen(GraphKind::Path(3));
        let f = independent_sets(&p3, &Limits::default()).unwrap();
        let lists: Vec<Vec<usize>> = f.iter().map(|s| s.to_vec()).collect();
        assert_eq!(lists, vec![vec![], vec![0], vec![0, 2], vec![1], vec![2]]);
    }
}

//! Exponential reference implementations used to cross-check the fast
//! algorithms. Each one follows its definition literally.

use crate::error::Result;
use crate::independence::{check_limit, full_mask, independent_masks, masks};
use crate::{Graph, VertexSet};

/// Orders accepted by the subset-scanning oracles.
pub const ORACLE_LIMIT: usize = 20;

/// `μ(G)` by exhaustive search over matchings: the lowest free vertex is
/// either left unmatched or matched to each later neighbour. The search
/// stops early once half the non-isolated free vertices are matched.
pub fn matching_number(g: &Graph) -> Result<usize> {
    check_limit("oracle::matching_number", g.n(), ORACLE_LIMIT)?;
    let adj = masks(g);
    fn rec(adj: &[u64], free: u64) -> usize {
        let mut live = 0u64;
        let mut rest = free;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & free != 0 {
                live |= 1u64 << v;
            }
        }
        if live == 0 {
            return 0;
        }
        let bound = live.count_ones() as usize / 2;
        let v = live.trailing_zeros() as usize;
        let others = live & !(1u64 << v);
        let mut best = 0;
        let mut cand = adj[v] & others;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            best = best.max(1 + rec(adj, others & !(1u64 << u)));
            if best == bound {
                return best;
            }
        }
        best.max(rec(adj, others))
    }
    Ok(rec(&adj, full_mask(g.n())))
}

/// Number of perfect matchings.
pub fn perfect_matching_count(g: &Graph) -> Result<u64> {
    check_limit("oracle::perfect_matching_count", g.n(), ORACLE_LIMIT)?;
    let adj = masks(g);
    fn rec(adj: &[u64], free: u64) -> u64 {
        if free == 0 {
            return 1;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1u64 << v);
        let mut cand = adj[v] & rest;
        let mut total = 0;
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            total += rec(adj, rest & !(1u64 << u));
        }
        total
    }
    Ok(rec(&adj, full_mask(g.n())))
}

/// `max { d(X) : X ⊆ V }`.
pub fn critical_difference_over_subsets(g: &Graph) -> Result<i64> {
    check_limit("oracle::critical_difference_over_subsets", g.n(), ORACLE_LIMIT)?;
    let adj = masks(g);
    Ok((0..=full_mask(g.n()))
        .map(|x| difference(&adj, x))
        .max()
        .unwrap_or(0))
}

/// `max { d(I) : I ∈ Ind(G) }`.
pub fn critical_difference_over_independent(g: &Graph) -> Result<i64> {
    check_limit("oracle::critical_difference_over_independent", g.n(), ORACLE_LIMIT)?;
    let adj = masks(g);
    Ok(independent_masks(&adj, full_mask(g.n()))
        .into_iter()
        .map(|x| difference(&adj, x))
        .max()
        .unwrap_or(0))
}

fn difference(adj: &[u64], x: u64) -> i64 {
    let mut nb = 0u64;
    let mut rest = x;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        nb |= adj[v];
    }
    x.count_ones() as i64 - nb.count_ones() as i64
}

/// Size of a maximum matching between `left` and `right` by König–Hall
/// deficiency: `|L| - max { |X| - |N(X) ∩ R| : X ⊆ L }`.
pub fn bipartite_matching_number(g: &Graph, left: &VertexSet, right: &VertexSet) -> Result<usize> {
    check_limit("oracle::bipartite_matching_number", left.len(), ORACLE_LIMIT)?;
    let ls = left.to_vec();
    let mut worst = 0i64;
    for mask in 0u64..1 << ls.len() {
        let x = VertexSet::from_iter_n(g.n(), ls.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        let nx = g.open_neighborhood(&x).intersection(right);
        worst = worst.max(x.len() as i64 - nx.len() as i64);
    }
    Ok((ls.len() as i64 - worst) as usize)
}

/// `τ(G) = n - α(G)` with `α` by plain subset scanning.
pub fn vertex_cover_number(g: &Graph) -> Result<usize> {
    Ok(g.n() - crate::independence::alpha_naive(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GraphKind;

    #[test]
    fn known_values() {
        let k4 = GraphKind::Complete(4).generate().unwrap();
        assert_eq!(matching_number(&k4).unwrap(), 2);
        assert_eq!(perfect_matching_count(&k4).unwrap(), 3);
        let c6 = GraphKind::Cycle(6).generate().unwrap();
        assert_eq!(perfect_matching_count(&c6).unwrap(), 2);
        let p4 = GraphKind::Path(4).generate().unwrap();
        assert_eq!(perfect_matching_count(&p4).unwrap(), 1);
        assert_eq!(perfect_matching_count(&Graph::empty(0)).unwrap(), 1);
        let star = GraphKind::Star(4).generate().unwrap();
        assert_eq!(critical_difference_over_subsets(&star).unwrap(), 3);
        assert_eq!(critical_difference_over_independent(&star).unwrap(), 3);
        assert_eq!(vertex_cover_number(&star).unwrap(), 1);
        let kab = GraphKind::CompleteBipartite(2, 5).generate().unwrap();
        let (l, r) = (kab.set(0..2), kab.set(2..7));
        assert_eq!(bipartite_matching_number(&kab, &l, &r).unwrap(), 2);
    }

    #[test]
    fn limits() {
        assert!(matching_number(&Graph::empty(21)).is_err());
    }
}

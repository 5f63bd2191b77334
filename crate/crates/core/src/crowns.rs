//! Crowns: certificates, enumeration, the augmentation step that makes
//! `Crown(G)` an augmentoid, and crown-reduction kernelization for Vertex
//! Cover.

use serde::Serialize;

use crate::critical::{max_critical_independent_set, neighborhood_mask};
use crate::error::{Error, Result};
use crate::independence::{check_limit, full_mask, independent_masks, masks};
use crate::matching::{alternating_reach, max_bipartite_matching, Matching};
use crate::set_systems::SetFamily;
use crate::{Graph, Limits, VertexSet};

/// Proof that `set` is a crown: `matching` saturates `N(set)` into `set`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrownCertificate {
    pub set: VertexSet,
    pub neighborhood: VertexSet,
    pub matching: Matching,
    /// `|S| + |N(S)|`.
    pub order: usize,
    /// `|S| = |N(S)|`.
    pub straight: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrownCheck {
    Crown(CrownCertificate),
    NotIndependent,
    /// `deficient ⊆ N(S)` has fewer neighbours in `S` than members.
    HallViolation { deficient: VertexSet },
}

impl CrownCheck {
    pub fn is_crown(&self) -> bool {
        matches!(self, CrownCheck::Crown(_))
    }

    pub fn certificate(&self) -> Option<&CrownCertificate> {
        match self {
            CrownCheck::Crown(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_certificate(self) -> Option<CrownCertificate> {
        match self {
            CrownCheck::Crown(c) => Some(c),
            _ => None,
        }
    }
}

/// Crown test. `∅` and isolated singletons come out as crowns with an empty
/// matching.
pub fn is_crown(g: &Graph, s: &VertexSet) -> Result<CrownCheck> {
    g.check_ground(s)?;
    if !g.is_independent(s) {
        return Ok(CrownCheck::NotIndependent);
    }
    let ns = g.open_neighborhood(s);
    let m = max_bipartite_matching(g, &ns, s);
    if m.len() == ns.len() {
        return Ok(CrownCheck::Crown(CrownCertificate {
            order: s.len() + ns.len(),
            straight: s.len() == ns.len(),
            set: s.clone(),
            neighborhood: ns,
            matching: m,
        }));
    }
    let reach = alternating_reach(g, &ns, s, &m);
    Ok(CrownCheck::HallViolation {
        deficient: reach.intersection(&ns),
    })
}

fn require_crown(g: &Graph, s: &VertexSet, which: &'static str) -> Result<CrownCertificate> {
    is_crown(g, s)?
        .into_certificate()
        .ok_or_else(|| Error::NotCrown {
            which,
            set: s.clone(),
        })
}

/// Whether every vertex of `from` can be matched to a distinct neighbour in
/// `into` (augmenting paths over masks).
pub(crate) fn saturates_mask(adj: &[u64], from: u64, into: u64) -> bool {
    if from.count_ones() > into.count_ones() {
        return false;
    }
    const FREE: u8 = u8::MAX;
    let mut owner = [FREE; 64];
    fn augment(adj: &[u64], u: usize, into: u64, seen: &mut u64, owner: &mut [u8; 64]) -> bool {
        let mut cand = adj[u] & into & !*seen;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            *seen |= 1u64 << v;
            if owner[v] == FREE || augment(adj, owner[v] as usize, into, seen, owner) {
                owner[v] = u as u8;
                return true;
            }
        }
        false
    }
    let mut rest = from;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut seen = 0;
        if !augment(adj, u, into, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

pub(crate) fn crown_masks(adj: &[u64], ind: &[u64]) -> Vec<u64> {
    ind.iter()
        .copied()
        .filter(|&s| saturates_mask(adj, neighborhood_mask(adj, s), s))
        .collect()
}

/// `Crown(G)`, including `∅`, lexicographically ordered.
pub fn enumerate_crowns(g: &Graph, limits: &Limits) -> Result<SetFamily> {
    check_limit("enumerate_crowns", g.n(), limits.family)?;
    let adj = masks(g);
    let ind = independent_masks(&adj, full_mask(g.n()));
    Ok(SetFamily::new(
        g.n(),
        crown_masks(&adj, &ind)
            .into_iter()
            .map(|m| VertexSet::from_mask(g.n(), m)),
    ))
}

/// `(A ∪ (B - N[A]), B ∪ (A - N[B]))`: both are crowns of equal size.
pub fn crown_augment(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<(VertexSet, VertexSet)> {
    require_crown(g, a, "A")?;
    require_crown(g, b, "B")?;
    let a1 = a.union(&b.difference(&g.closed_neighborhood(a)));
    let b1 = b.union(&a.difference(&g.closed_neighborhood(b)));
    Ok((a1, b1))
}

/// A perfect matching between `A ∩ N(B)` and `B ∩ N(A)`.
///
/// The saturating matching of `A` sends each vertex of `B ∩ N(A)` to a
/// vertex of `A ∩ N(B)`; both sides have equal size, so that restriction is
/// already perfect.
pub fn boundary_matching(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<Matching> {
    let cert_a = require_crown(g, a, "A")?;
    require_crown(g, b, "B")?;
    let b_side = b.intersection(&cert_a.neighborhood);
    Ok(cert_a.matching.restrict_touching(&b_side))
}

/// A maximum crown; coincides with a maximum critical independent set.
pub fn max_crown(g: &Graph) -> CrownCertificate {
    let s = max_critical_independent_set(g);
    is_crown(g, &s)
        .expect("same ground set")
        .into_certificate()
        .expect("critical independent sets are crowns")
}

/// A maximum crown containing `a`.
pub fn extend_to_max_crown(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    require_crown(g, a, "A")?;
    let top = max_crown(g);
    Ok(crown_augment(g, a, &top.set)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelStep {
    /// The removed crown, in original vertex ids.
    pub crown: VertexSet,
    /// `N(crown)`, in original vertex ids.
    pub neighborhood: VertexSet,
    /// Vertices of the graph left after this step, in original ids.
    pub remaining: VertexSet,
    /// Budget spent, `|N(crown)|`.
    pub delta: usize,
    pub remaining_n: usize,
    pub remaining_k: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelStatus {
    /// No non-empty crown remains.
    Reduced,
    /// The budget went negative: no vertex cover of size `k` exists.
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct Kernelization {
    pub kernel: Graph,
    /// Kernel vertex -> original vertex.
    pub vertex_map: Vec<usize>,
    pub budget: i64,
    pub steps: Vec<KernelStep>,
    pub status: KernelStatus,
}

impl Kernelization {
    pub fn removed_cover_size(&self) -> usize {
        self.steps.iter().map(|s| s.delta).sum()
    }
}

/// Crown-reduction kernelization for Vertex Cover with budget `k`: while a
/// non-empty maximum crown `S` exists, delete `N[S]` and pay `|N(S)|`.
pub fn crown_reduce_vertex_cover(g: &Graph, k: i64) -> Result<Kernelization> {
    if k < 0 {
        return Err(Error::NegativeBudget(k));
    }
    let n = g.n();
    let mut cur = g.clone();
    let mut map: Vec<usize> = (0..n).collect();
    let mut budget = k;
    let mut steps = Vec::new();
    let mut status = KernelStatus::Reduced;
    loop {
        let crown = max_crown(&cur);
        if crown.set.is_empty() {
            break;
        }
        let closed = crown.set.union(&crown.neighborhood);
        let next = cur.remove(&closed);
        let new_map: Vec<usize> = next.map.iter().map(|&v| map[v]).collect();
        let lift = |s: &VertexSet| VertexSet::from_iter_n(n, s.iter().map(|v| map[v]));
        budget -= crown.neighborhood.len() as i64;
        steps.push(KernelStep {
            crown: lift(&crown.set),
            neighborhood: lift(&crown.neighborhood),
            remaining: VertexSet::from_iter_n(n, new_map.iter().copied()),
            delta: crown.neighborhood.len(),
            remaining_n: next.graph.n(),
            remaining_k: budget,
        });
        cur = next.graph;
        map = new_map;
        if budget < 0 {
            status = KernelStatus::Infeasible;
            break;
        }
    }
    Ok(Kernelization {
        kernel: cur,
        vertex_map: map,
        budget,
        steps,
        status,
    })
}

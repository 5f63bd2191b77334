//! Local maximum independent sets `Ψ(G)`, the augmentation toward larger
//! local maxima, and the report comparing `CritIndep(G)`, `Crown(G)` and
//! `Ψ(G)`.

use serde::Serialize;

use crate::critical::{crit_indep_masks, critical_difference, neighborhood_mask};
use crate::crowns::crown_masks;
use crate::error::{Error, Result};
use crate::independence::{alpha, alpha_of_mask, check_limit, full_mask, independent_masks, masks};
use crate::matching::{matching_number, perfect_matching_status};
use crate::set_systems::{AxiomVerdict, MaskFamily, SetFamily};
use crate::{Graph, Limits, VertexSet};

/// `S` is independent and maximum in `G[N[S]]`.
pub fn is_lmis(g: &Graph, s: &VertexSet, limits: &Limits) -> Result<bool> {
    g.check_ground(s)?;
    if !g.is_independent(s) {
        return Ok(false);
    }
    let closed = g.closed_neighborhood(s);
    check_limit("is_lmis", closed.len(), limits.exact)?;
    let h = g.induced(&closed);
    Ok(alpha(&h.graph, limits)? == s.len())
}

fn closed_mask(adj: &[u64], s: u64) -> u64 {
    neighborhood_mask(adj, s) | s
}

pub(crate) fn psi_masks(adj: &[u64], ind: &[u64], known: &MaskFamily) -> Vec<u64> {
    ind.iter()
        .copied()
        .filter(|&s| known.contains(s) || alpha_of_mask(adj, closed_mask(adj, s)) == s.count_ones() as usize)
        .collect()
}

/// `Ψ(G)`, lexicographically ordered.
pub fn enumerate_psi(g: &Graph, limits: &Limits) -> Result<SetFamily> {
    check_limit("enumerate_psi", g.n(), limits.enumeration)?;
    let adj = masks(g);
    let ind = independent_masks(&adj, full_mask(g.n()));
    let psi = ind
        .into_iter()
        .filter(|&s| alpha_of_mask(&adj, closed_mask(&adj, s)) == s.count_ones() as usize)
        .map(|s| VertexSet::from_mask(g.n(), s));
    Ok(SetFamily::new(g.n(), psi))
}

fn require_lmis(g: &Graph, s: &VertexSet, which: &'static str, limits: &Limits) -> Result<()> {
    if is_lmis(g, s, limits)? {
        Ok(())
    } else {
        Err(Error::NotLocalMaximum {
            which,
            set: s.clone(),
        })
    }
}

/// `S1 ∪ (S2 - N[S1])` for `S1, S2 ∈ Ψ(G)` with `N[S1] ⊆ N[S2]`: a local
/// maximum independent set of size `|S2|`.
pub fn lmis_augment(g: &Graph, s1: &VertexSet, s2: &VertexSet, limits: &Limits) -> Result<VertexSet> {
    require_lmis(g, s1, "S1", limits)?;
    require_lmis(g, s2, "S2", limits)?;
    let n1 = g.closed_neighborhood(s1);
    if !n1.is_subset(&g.closed_neighborhood(s2)) {
        return Err(Error::NeighborhoodNotNested {
            first: s1.clone(),
            second: s2.clone(),
        });
    }
    Ok(s1.union(&s2.difference(&n1)))
}

/// The lexicographically first maximum independent set: take each vertex
/// in order whenever the current choice still extends to size `α(G)`.
fn first_maximum_independent(g: &Graph, limits: &Limits) -> Result<VertexSet> {
    check_limit("first_maximum_independent", g.n(), limits.exact)?;
    let adj = masks(g);
    let target = alpha_of_mask(&adj, full_mask(g.n()));
    let mut chosen = 0u64;
    let mut free = full_mask(g.n());
    for v in 0..g.n() {
        let bit = 1u64 << v;
        if free & bit == 0 {
            continue;
        }
        let rest = free & !(adj[v] | bit);
        if (chosen | bit).count_ones() as usize + alpha_of_mask(&adj, rest) == target {
            chosen |= bit;
            free = rest;
        } else {
            free &= !bit;
        }
    }
    Ok(VertexSet::from_mask(g.n(), chosen))
}

/// A maximum independent set containing `S1 ∈ Ψ(G)`, built from the
/// lexicographically first member `S2` of `Ω(G)` as `S1 ∪ (S2 - N[S1])`.
pub fn extend_to_maximum_independent(g: &Graph, s1: &VertexSet, limits: &Limits) -> Result<VertexSet> {
    require_lmis(g, s1, "S1", limits)?;
    let s2 = first_maximum_independent(g, limits)?;
    let out = s1.union(&s2.difference(&g.closed_neighborhood(s1)));
    debug_assert!(g.is_independent(&out) && out.len() == s2.len());
    Ok(out)
}

/// `Ind`, `CritIndep`, `Crown`, `Ψ` and `Ω` of one graph, computed once on
/// bit masks and shared by every check that needs them.
#[derive(Clone, Debug)]
pub struct Families {
    n: usize,
    pub(crate) adj: Vec<u64>,
    pub(crate) d: i64,
    pub(crate) alpha: usize,
    pub(crate) ind: MaskFamily,
    pub(crate) crit: MaskFamily,
    pub(crate) crown: MaskFamily,
    pub(crate) psi: MaskFamily,
    pub(crate) omega: MaskFamily,
}

impl Families {
    pub fn compute(g: &Graph, limits: &Limits) -> Result<Self> {
        check_limit("family computation", g.n(), limits.family.min(crate::set_systems::MASK_FAMILY_LIMIT))?;
        let n = g.n();
        let adj = masks(g);
        let all = independent_masks(&adj, full_mask(n));
        let d = critical_difference(g);
        let alpha = all.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0);
        let crit = MaskFamily::new(n, crit_indep_masks(&adj, &all, d));
        let crown = MaskFamily::new(n, crown_masks(&adj, &all));
        let psi = MaskFamily::new(n, psi_masks(&adj, &all, &crown));
        let omega = MaskFamily::new(
            n,
            all.iter().copied().filter(|s| s.count_ones() as usize == alpha).collect(),
        );
        Ok(Families {
            n,
            d,
            alpha,
            ind: MaskFamily::new(n, all),
            crit,
            crown,
            psi,
            omega,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn critical_difference(&self) -> i64 {
        self.d
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn independent_sets(&self) -> SetFamily {
        self.ind.to_set_family()
    }

    pub fn crit_indep(&self) -> SetFamily {
        self.crit.to_set_family()
    }

    pub fn crowns(&self) -> SetFamily {
        self.crown.to_set_family()
    }

    pub fn psi(&self) -> SetFamily {
        self.psi.to_set_family()
    }

    pub fn omega(&self) -> SetFamily {
        self.omega.to_set_family()
    }

    pub(crate) fn closed(&self, s: u64) -> u64 {
        closed_mask(&self.adj, s)
    }

    pub(crate) fn open(&self, s: u64) -> u64 {
        neighborhood_mask(&self.adj, s)
    }

    /// Per-set diagnostics of `G[N[S]]` for `S ∈ Ψ(G)`.
    pub fn diagnose(&self, g: &Graph, s: u64) -> LmisDiagnostic {
        let closed = self.closed(s);
        let ns = closed & !s;
        let h = g.induced(&VertexSet::from_mask(self.n, closed));
        // every edge of G[N[S]] meets N(S), so μ <= |N(S)|; with α = |S| the
        // subgraph is KE exactly when μ = |N(S)|
        let mu = matching_number(&h.graph);
        let ke = mu == ns.count_ones() as usize;
        let pm = 2 * mu == closed.count_ones() as usize;
        LmisDiagnostic {
            set: VertexSet::from_mask(self.n, s),
            konig_egervary: ke,
            perfect_matching: pm,
            unique_perfect_matching: pm && perfect_matching_status(&h.graph).is_unique(),
        }
    }
}

/// How two families compare, with a separating member for each strict
/// difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub equal: bool,
    /// A member of the first family missing from the second.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub only_in_first: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub only_in_second: Option<VertexSet>,
}

impl Relation {
    pub fn between(a: &SetFamily, b: &SetFamily) -> Self {
        let only_in_first = a.minus(b).into_iter().next();
        let only_in_second = b.minus(a).into_iter().next();
        Relation {
            equal: only_in_first.is_none() && only_in_second.is_none(),
            only_in_first,
            only_in_second,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LmisDiagnostic {
    pub set: VertexSet,
    pub konig_egervary: bool,
    pub perfect_matching: bool,
    pub unique_perfect_matching: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyAxioms {
    pub greedoid: AxiomVerdict,
    pub augmentoid: AxiomVerdict,
}

impl FamilyAxioms {
    pub(crate) fn of(f: &MaskFamily) -> Self {
        FamilyAxioms {
            greedoid: f.greedoid(),
            augmentoid: f.augmentation(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRelationReport {
    pub crit_indep: SetFamily,
    pub crowns: SetFamily,
    pub psi: SetFamily,
    pub crit_eq_crown: bool,
    pub crown_eq_psi: bool,
    pub crit_eq_psi: bool,
    pub crit_vs_crown: Relation,
    pub crown_vs_psi: Relation,
    pub crit_vs_psi: Relation,
    /// One entry per member of `Ψ(G)`, in family order.
    pub diagnostics: Vec<LmisDiagnostic>,
    /// Every `S ∈ Ψ(G)` has `G[N[S]]` KE with a perfect matching.
    pub psi_closures_ke_with_perfect_matching: bool,
    /// Every `S ∈ Ψ(G)` has `G[N[S]]` KE with a unique perfect matching.
    pub psi_closures_ke_with_unique_perfect_matching: bool,
    pub crit_indep_axioms: FamilyAxioms,
    pub crown_axioms: FamilyAxioms,
    pub psi_axioms: FamilyAxioms,
}

pub fn family_relations_report(g: &Graph, limits: &Limits) -> Result<FamilyRelationReport> {
    check_limit("family_relations_report", g.n(), limits.enumeration)?;
    let fam = Families::compute(g, limits)?;
    Ok(FamilyRelationReport::from_families(g, &fam))
}

impl FamilyRelationReport {
    pub fn from_families(g: &Graph, fam: &Families) -> Self {
        let (crit, crowns, psi) = (fam.crit_indep(), fam.crowns(), fam.psi());
        let crit_vs_crown = Relation::between(&crit, &crowns);
        let crown_vs_psi = Relation::between(&crowns, &psi);
        let crit_vs_psi = Relation::between(&crit, &psi);
        let mut diagnostics: Vec<LmisDiagnostic> =
            fam.psi.members().iter().map(|&s| fam.diagnose(g, s)).collect();
        diagnostics.sort_by(|a, b| a.set.cmp(&b.set));
        let pm = diagnostics.iter().all(|x| x.konig_egervary && x.perfect_matching);
        let upm = diagnostics
            .iter()
            .all(|x| x.konig_egervary && x.unique_perfect_matching);
        FamilyRelationReport {
            crit_eq_crown: crit_vs_crown.equal,
            crown_eq_psi: crown_vs_psi.equal,
            crit_eq_psi: crit_vs_psi.equal,
            crit_vs_crown,
            crown_vs_psi,
            crit_vs_psi,
            diagnostics,
            psi_closures_ke_with_perfect_matching: pm,
            psi_closures_ke_with_unique_perfect_matching: upm,
            crit_indep_axioms: FamilyAxioms::of(&fam.crit),
            crown_axioms: FamilyAxioms::of(&fam.crown),
            psi_axioms: FamilyAxioms::of(&fam.psi),
            crit_indep: crit,
            crowns,
            psi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::independence::omega_sets;
    use crate::GraphKind;

    fn gen(k: GraphKind) -> Graph {
        k.generate().unwrap()
    }

    #[test]
    fn is_lmis_examples() {
        let l = Limits::default();
        let p3 = gen(GraphKind::Path(3));
        assert!(!is_lmis(&p3, &p3.set([1]), &l).unwrap());
        assert!(is_lmis(&p3, &p3.set([0]), &l).unwrap());
        assert!(is_lmis(&p3, &p3.empty_set(), &l).unwrap());
        assert!(!is_lmis(&p3, &p3.set([0, 1]), &l).unwrap());

        let tree = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        for v in 0..6 {
            if tree.degree(v) == 1 {
                assert!(is_lmis(&tree, &tree.set([v]), &l).unwrap());
            }
        }
        let tight = Limits { exact: 2, ..l };
        assert!(matches!(
            is_lmis(&p3, &p3.set([0]), &tight),
            Ok(true)
        ));
        assert!(matches!(
            is_lmis(&p3, &p3.set([0, 2]), &tight),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn enumerate_examples() {
        let l = Limits::default();
        let c5 = gen(GraphKind::Cycle(5));
        let mut expected: Vec<VertexSet> = omega_sets(&c5, &l).unwrap().members().to_vec();
        expected.push(c5.empty_set());
        assert_eq!(enumerate_psi(&c5, &l).unwrap(), SetFamily::new(5, expected));

        let p3 = gen(GraphKind::Path(3));
        let expected = SetFamily::new(3, [p3.empty_set(), p3.set([0]), p3.set([2]), p3.set([0, 2])]);
        assert_eq!(enumerate_psi(&p3, &l).unwrap(), expected);

        let c4 = gen(GraphKind::Cycle(4));
        let expected = SetFamily::new(4, [c4.empty_set(), c4.set([0, 2]), c4.set([1, 3])]);
        assert_eq!(enumerate_psi(&c4, &l).unwrap(), expected);
    }

    #[test]
    fn augment_examples() {
        let l = Limits::default();
        let p3 = gen(GraphKind::Path(3));
        let (a, ac) = (p3.set([0]), p3.set([0, 2]));
        assert_eq!(lmis_augment(&p3, &a, &ac, &l).unwrap(), ac);
        assert_eq!(lmis_augment(&p3, &a, &a, &l).unwrap(), a);
        assert_eq!(lmis_augment(&p3, &p3.empty_set(), &ac, &l).unwrap(), ac);

        assert!(matches!(
            lmis_augment(&p3, &p3.set([1]), &ac, &l),
            Err(Error::NotLocalMaximum { which: "S1", .. })
        ));
        assert!(matches!(
            lmis_augment(&p3, &ac, &a, &l),
            Err(Error::NeighborhoodNotNested { .. })
        ));
    }

    #[test]
    fn extend_examples() {
        let l = Limits::default();
        let p3 = gen(GraphKind::Path(3));
        assert_eq!(extend_to_maximum_independent(&p3, &p3.set([0]), &l).unwrap(), p3.set([0, 2]));
        assert_eq!(extend_to_maximum_independent(&p3, &p3.set([0, 2]), &l).unwrap(), p3.set([0, 2]));
        assert!(extend_to_maximum_independent(&p3, &p3.set([1]), &l).is_err());

        // {0} is not a local maximum of C6: α(G[{5,0,1}]) = 2
        let c6 = gen(GraphKind::Cycle(6));
        assert!(matches!(
            extend_to_maximum_independent(&c6, &c6.set([0]), &l),
            Err(Error::NotLocalMaximum { .. })
        ));
        let s = extend_to_maximum_independent(&c6, &c6.empty_set(), &l).unwrap();
        assert_eq!(s, c6.set([0, 2, 4]));
        let s = extend_to_maximum_independent(&c6, &c6.set([1, 3, 5]), &l).unwrap();
        assert_eq!(s, c6.set([1, 3, 5]));

        let c5 = gen(GraphKind::Cycle(5));
        assert_eq!(first_maximum_independent(&c5, &l).unwrap(), c5.set([0, 2]));
    }

    #[test]
    fn report_examples() {
        let l = Limits::default();
        let c6 = gen(GraphKind::Cycle(6));
        let r = family_relations_report(&c6, &l).unwrap();
        assert!(r.crit_eq_crown && r.crown_eq_psi && r.crit_eq_psi);
        assert!(r.psi_closures_ke_with_perfect_matching);

        let p3 = gen(GraphKind::Path(3));
        let r = family_relations_report(&p3, &l).unwrap();
        assert!(!r.crit_eq_crown);
        assert!(r.crown_eq_psi);
        assert!(r.crit_vs_crown.only_in_first.is_none());
        let w = r.crit_vs_crown.only_in_second.clone().unwrap();
        assert!(r.crowns.contains(&w) && !r.crit_indep.contains(&w));
        assert!(r.crown_axioms.greedoid.holds);
        assert_eq!(r.diagnostics.len(), 4);

        let k1 = Graph::empty(1);
        let r = family_relations_report(&k1, &l).unwrap();
        assert_eq!(r.crit_vs_psi.only_in_second, Some(k1.empty_set()));
    }

    #[test]
    fn families_match_public_enumerations() {
        let l = Limits::default();
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let f = Families::compute(&g, &l).unwrap();
        assert_eq!(f.crit_indep(), crate::critical::enumerate_crit_indep(&g, &l).unwrap());
        assert_eq!(f.crowns(), crate::crowns::enumerate_crowns(&g, &l).unwrap());
        assert_eq!(f.psi(), enumerate_psi(&g, &l).unwrap());
        assert_eq!(f.omega(), omega_sets(&g, &l).unwrap());
        assert_eq!(f.alpha(), crate::independence::alpha(&g, &l).unwrap());
    }
}

//! Mechanical checks of the structural results relating critical sets,
//! crowns and local maximum independent sets, run one graph at a time.
//!
//! Every check either passes, is skipped (the graph is outside its
//! hypotheses or beyond a size limit), or fails with the offending sets.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::critical::{critical_difference, max_critical_independent_set, DoubleCover};
use crate::crowns::{crown_reduce_vertex_cover, max_crown, saturates_mask, KernelStatus};
use crate::error::Result;
use crate::independence::{alpha, alpha_naive, alpha_of_mask, full_mask, MASK_BITS};
use crate::io::render_edge_list;
use crate::lmis::{Families, LmisDiagnostic};
use crate::matching::{matching_number, max_bipartite_matching, perfect_matching_status, PerfectMatchingStatus};
use crate::oracle;
use crate::set_systems::MaskFamily;
use crate::{Graph, Limits, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `CritIndep ⊆ Crown ⊆ Ψ`.
    InclusionChain,
    /// Double-cover `d(G)` = max `d` over `Ind(G)` = max `d` over all subsets.
    ZhangIdentity,
    /// The extracted set is critical and of maximum size.
    MaxCriticalExtraction,
    /// `MaxCritIndep = MaxCrown`.
    MaxCritEqMaxCrown,
    /// Maximum crowns share `d` and `N[·]`.
    MaxCrownsAgree,
    /// Every crown lies in a maximum crown and in `N[M]` for every maximum
    /// crown `M`.
    CrownsExtend,
    /// KE graphs: `d = |core| - |N(core)| = α - μ`.
    KeDifference,
    /// KE iff every maximum independent set is critical.
    KeIffMaximumCritical,
    /// `ker ⊆ core`, with equality on bipartite graphs.
    KerCore,
    /// `ker` is a crown, and `|ker| ≠ 1` without isolated vertices.
    KerShape,
    /// A perfect matching joins `A ∩ N(B)` and `B ∩ N(A)` for crowns `A, B`.
    BoundaryMatching,
    /// Crowns with independent union have a crown union.
    CrownUnion,
    /// `A ⊆ B` with `B` a crown gives `d(A) <= d(B)`.
    CrownSubsetDifference,
    /// `G[N[S]]` is KE for every crown, with a perfect matching when straight.
    CrownClosureKe,
    /// `α(G) = α(G[N[A]]) + α(G - N[A])` for critical `A`.
    AlphaSplit,
    /// `Crown(G)` is an augmentoid.
    CrownAugmentoid,
    /// `CritIndep(G)` is an augmentoid.
    CritAugmentoid,
    /// The crown augmentation step yields equal-size crowns.
    CrownAugmentStep,
    /// `Ω ⊆ Ψ`.
    OmegaInPsi,
    /// Disjoint local maxima with independent union have a local maximum union.
    LmisUnion,
    /// `S1 ∪ (S2 - N[S1])` is a local maximum of size `|S2|`.
    LmisAugment,
    /// Every local maximum extends to a maximum independent set.
    LmisExtends,
    /// `Crown = Ψ` iff every `G[N[S]]`, `S ∈ Ψ`, is KE; then `G` is KE.
    CrownEqPsiIffClosuresKe,
    /// KE with a perfect matching gives `CritIndep = Crown`.
    KePerfectMatchingCritEqCrown,
    /// `CritIndep = Ψ` gives KE with a perfect matching.
    CritEqPsiGivesPerfectMatching,
    /// `CritIndep = Crown = Ψ` iff every `G[N[S]]`, `S ∈ Ψ`, is KE with a
    /// perfect matching.
    AllEqualIffClosuresPerfect,
    /// Bipartite: `Crown = Ψ`.
    BipartiteCrownEqPsi,
    /// Bipartite: `CritIndep = Ψ` iff a perfect matching exists.
    BipartiteCritEqPsiIffPerfect,
    /// Bipartite: `CritIndep` is a greedoid iff the perfect matching is unique.
    BipartiteGreedoidIffUnique,
    /// Triangle-free, unique perfect matching and every `G[N[S]]` KE with a
    /// perfect matching give a greedoid `CritIndep`.
    TriangleFreeGreedoid,
    /// Very well-covered: `Crown = Ψ`, and `S ∈ Ψ` iff `|S| = |N(S)|`.
    VeryWellCovered,
    /// Trees of order >= 2: five conditions hold together or fail together.
    TreeEquivalence,
    /// Trees: `Ψ(T)` and `Crown(T)` are greedoids.
    TreeGreedoids,
    /// Greedoid implies augmentoid implies every member extends to a maximum.
    AxiomImplications,
    /// Blossom `μ` equals exhaustive search.
    MatchingOracle,
    /// Hopcroft–Karp equals the Hall-deficiency formula on the double cover
    /// and on crown instances.
    BipartiteMatchingOracle,
    /// Perfect matching status agrees with counting perfect matchings.
    PerfectMatchingOracle,
    /// Branch-and-bound `α` equals subset scanning.
    AlphaOracle,
    /// Crown reduction keeps `τ(G) = τ(kernel) + Σ|N(S_i)|` and decides the
    /// budget correctly.
    KernelSoundness,
}

impl Check {
    pub const ALL: [Check; 39] = [
        Check::InclusionChain,
        Check::ZhangIdentity,
        Check::MaxCriticalExtraction,
        Check::MaxCritEqMaxCrown,
        Check::MaxCrownsAgree,
        Check::CrownsExtend,
        Check::KeDifference,
        Check::KeIffMaximumCritical,
        Check::KerCore,
        Check::KerShape,
        Check::BoundaryMatching,
        Check::CrownUnion,
        Check::CrownSubsetDifference,
        Check::CrownClosureKe,
        Check::AlphaSplit,
        Check::CrownAugmentoid,
        Check::CritAugmentoid,
        Check::CrownAugmentStep,
        Check::OmegaInPsi,
        Check::LmisUnion,
        Check::LmisAugment,
        Check::LmisExtends,
        Check::CrownEqPsiIffClosuresKe,
        Check::KePerfectMatchingCritEqCrown,
        Check::CritEqPsiGivesPerfectMatching,
        Check::AllEqualIffClosuresPerfect,
        Check::BipartiteCrownEqPsi,
        Check::BipartiteCritEqPsiIffPerfect,
        Check::BipartiteGreedoidIffUnique,
        Check::TriangleFreeGreedoid,
        Check::VeryWellCovered,
        Check::TreeEquivalence,
        Check::TreeGreedoids,
        Check::AxiomImplications,
        Check::MatchingOracle,
        Check::BipartiteMatchingOracle,
        Check::PerfectMatchingOracle,
        Check::AlphaOracle,
        Check::KernelSoundness,
    ];

    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub detail: String,
    pub sets: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip,
    Fail(Violation),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

fn fail(detail: impl Into<String>, sets: Vec<VertexSet>) -> Outcome {
    Outcome::Fail(Violation {
        detail: detail.into(),
        sets,
    })
}

fn expect(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        fail(detail(), Vec::new())
    }
}

/// A failing check on a concrete graph, serialized as a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: Check,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// The graph in edge-list format.
    pub edge_list: String,
    pub detail: String,
    pub sets: Vec<VertexSet>,
}

impl Counterexample {
    pub fn new(check: Check, g: &Graph, v: Violation) -> Self {
        Counterexample {
            check,
            n: g.n(),
            edges: g.edges().collect(),
            edge_list: render_edge_list(g),
            detail: v.detail,
            sets: v.sets,
        }
    }
}

/// One graph with lazily computed shared data.
pub struct Subject<'a> {
    pub g: &'a Graph,
    limits: Limits,
    families: OnceCell<Option<Families>>,
    mu: OnceCell<usize>,
    pm: OnceCell<PerfectMatchingStatus>,
    alpha: OnceCell<Option<usize>>,
    diagnostics: OnceCell<Vec<LmisDiagnostic>>,
}

impl<'a> Subject<'a> {
    pub fn new(g: &'a Graph, limits: Limits) -> Self {
        Subject {
            g,
            limits,
            families: OnceCell::new(),
            mu: OnceCell::new(),
            pm: OnceCell::new(),
            alpha: OnceCell::new(),
            diagnostics: OnceCell::new(),
        }
    }

    /// `None` when the graph is beyond the family limit.
    pub fn families(&self) -> Option<&Families> {
        self.families
            .get_or_init(|| Families::compute(self.g, &self.limits).ok())
            .as_ref()
    }

    pub fn mu(&self) -> usize {
        *self.mu.get_or_init(|| matching_number(self.g))
    }

    pub fn perfect_matching(&self) -> &PerfectMatchingStatus {
        self.pm.get_or_init(|| perfect_matching_status(self.g))
    }

    pub fn alpha(&self) -> Option<usize> {
        *self.alpha.get_or_init(|| match self.families() {
            Some(f) => Some(f.alpha()),
            None => alpha(self.g, &self.limits).ok(),
        })
    }

    pub fn is_ke(&self) -> Option<bool> {
        self.alpha().map(|a| a + self.mu() == self.g.n())
    }

    fn diagnostics(&self, fam: &Families) -> &[LmisDiagnostic] {
        self.diagnostics
            .get_or_init(|| fam.psi.members().iter().map(|&s| fam.diagnose(self.g, s)).collect())
    }

    fn set(&self, mask: u64) -> VertexSet {
        VertexSet::from_mask(self.g.n(), mask)
    }

    /// Runs one check.
    pub fn run(&self, check: Check) -> Result<Outcome> {
        if self.g.n() > MASK_BITS {
            return Ok(Outcome::Skip);
        }
        let needs_families = !matches!(
            check,
            Check::ZhangIdentity
                | Check::MatchingOracle
                | Check::BipartiteMatchingOracle
                | Check::PerfectMatchingOracle
                | Check::AlphaOracle
                | Check::KernelSoundness
        );
        if needs_families {
            let Some(fam) = self.families() else {
                return Ok(Outcome::Skip);
            };
            return Ok(self.run_family_check(check, fam));
        }
        match check {
            Check::ZhangIdentity => self.zhang(),
            Check::MatchingOracle => self.matching_oracle(),
            Check::BipartiteMatchingOracle => self.bipartite_matching_oracle(),
            Check::PerfectMatchingOracle => self.perfect_matching_oracle(),
            Check::AlphaOracle => self.alpha_oracle(),
            Check::KernelSoundness => self.kernel_soundness(),
            _ => unreachable!("family checks handled above"),
        }
    }

    fn run_family_check(&self, check: Check, fam: &Families) -> Outcome {
        match check {
            Check::InclusionChain => self.inclusion_chain(fam),
            Check::MaxCriticalExtraction => self.max_critical_extraction(fam),
            Check::MaxCritEqMaxCrown => self.max_crit_eq_max_crown(fam),
            Check::MaxCrownsAgree => self.max_crowns_agree(fam),
            Check::CrownsExtend => self.crowns_extend(fam),
            Check::KeDifference => self.ke_difference(fam),
            Check::KeIffMaximumCritical => self.ke_iff_maximum_critical(fam),
            Check::KerCore => self.ker_core(fam),
            Check::KerShape => self.ker_shape(fam),
            Check::BoundaryMatching => self.boundary_matching(fam),
            Check::CrownUnion => self.crown_union(fam),
            Check::CrownSubsetDifference => self.crown_subset_difference(fam),
            Check::CrownClosureKe => self.crown_closure_ke(fam),
            Check::AlphaSplit => self.alpha_split(fam),
            Check::CrownAugmentoid => axiom_outcome(fam.crown.augmentation(), "Crown(G) augmentation"),
            Check::CritAugmentoid => axiom_outcome(fam.crit.augmentation(), "CritIndep(G) augmentation"),
            Check::CrownAugmentStep => self.crown_augment_step(fam),
            Check::OmegaInPsi => subfamily(&fam.omega, &fam.psi, "maximum independent set outside Ψ", |m| self.set(m)),
            Check::LmisUnion => self.lmis_union(fam),
            Check::LmisAugment => self.lmis_augment(fam),
            Check::LmisExtends => self.lmis_extends(fam),
            Check::CrownEqPsiIffClosuresKe => self.crown_eq_psi_iff_closures_ke(fam),
            Check::KePerfectMatchingCritEqCrown => self.ke_pm_crit_eq_crown(fam),
            Check::CritEqPsiGivesPerfectMatching => self.crit_eq_psi_gives_pm(fam),
            Check::AllEqualIffClosuresPerfect => self.all_equal_iff_closures_perfect(fam),
            Check::BipartiteCrownEqPsi => self.bipartite_crown_eq_psi(fam),
            Check::BipartiteCritEqPsiIffPerfect => self.bipartite_crit_eq_psi(fam),
            Check::BipartiteGreedoidIffUnique => self.bipartite_greedoid(fam),
            Check::TriangleFreeGreedoid => self.triangle_free_greedoid(fam),
            Check::VeryWellCovered => self.very_well_covered(fam),
            Check::TreeEquivalence => self.tree_equivalence(fam),
            Check::TreeGreedoids => self.tree_greedoids(fam),
            Check::AxiomImplications => self.axiom_implications(fam),
            _ => unreachable!("non-family checks handled by run"),
        }
    }

    fn inclusion_chain(&self, fam: &Families) -> Outcome {
        let first = subfamily(&fam.crit, &fam.crown, "critical set that is not a crown", |m| self.set(m));
        if first.is_fail() {
            return first;
        }
        subfamily(&fam.crown, &fam.psi, "crown that is not a local maximum", |m| self.set(m))
    }

    fn zhang(&self) -> Result<Outcome> {
        if self.g.n() > oracle::ORACLE_LIMIT {
            return Ok(Outcome::Skip);
        }
        let d = critical_difference(self.g);
        let over_ind = oracle::critical_difference_over_independent(self.g)?;
        let over_all = oracle::critical_difference_over_subsets(self.g)?;
        Ok(expect(d == over_ind && d == over_all, || {
            format!("double cover d = {d}, max over Ind = {over_ind}, max over subsets = {over_all}")
        }))
    }

    fn max_critical_extraction(&self, fam: &Families) -> Outcome {
        let s = max_critical_independent_set(self.g);
        let m = s.to_mask();
        if !fam.crit.contains(m) {
            return fail("extracted set is not critical independent", vec![s]);
        }
        let top = max_popcount(&fam.crit);
        expect(s.len() == top, || format!("extracted size {} but maximum is {top}", s.len()))
    }

    fn max_crit_eq_max_crown(&self, fam: &Families) -> Outcome {
        let crit = maximum_members(&fam.crit);
        let crown = maximum_members(&fam.crown);
        if crit == crown {
            return Outcome::Pass;
        }
        let witness = crit
            .iter()
            .chain(&crown)
            .find(|m| !(crit.contains(m) && crown.contains(m)))
            .copied()
            .unwrap_or(0);
        fail("maximum critical sets differ from maximum crowns", vec![self.set(witness)])
    }

    fn max_crowns_agree(&self, fam: &Families) -> Outcome {
        let tops = maximum_members(&fam.crown);
        let first = tops[0];
        let (d0, n0) = (mask_difference(fam, first), fam.closed(first));
        for &t in &tops[1..] {
            if mask_difference(fam, t) != d0 || fam.closed(t) != n0 {
                return fail("maximum crowns with different d or N[·]", vec![self.set(first), self.set(t)]);
            }
        }
        Outcome::Pass
    }

    fn crowns_extend(&self, fam: &Families) -> Outcome {
        let tops = maximum_members(&fam.crown);
        for &c in fam.crown.members() {
            if !tops.iter().any(|&t| c & !t == 0) {
                return fail("crown not inside any maximum crown", vec![self.set(c)]);
            }
            if let Some(&t) = tops.iter().find(|&&t| c & !fam.closed(t) != 0) {
                return fail("crown not inside N[M] of a maximum crown M", vec![self.set(c), self.set(t)]);
            }
        }
        Outcome::Pass
    }

    fn core_mask(&self, fam: &Families) -> u64 {
        fam.omega.members().iter().fold(full_mask(self.g.n()), |acc, &s| acc & s)
    }

    fn ker_mask(&self, fam: &Families) -> u64 {
        fam.crit.members().iter().fold(full_mask(self.g.n()), |acc, &s| acc & s)
    }

    fn ke_difference(&self, fam: &Families) -> Outcome {
        if self.is_ke() != Some(true) {
            return Outcome::Skip;
        }
        let core = self.core_mask(fam);
        let by_core = mask_difference(fam, core);
        let by_numbers = fam.alpha() as i64 - self.mu() as i64;
        let d = fam.critical_difference();
        if d == by_core && d == by_numbers {
            Outcome::Pass
        } else {
            fail(
                format!("d = {d}, |core| - |N(core)| = {by_core}, α - μ = {by_numbers}"),
                vec![self.set(core)],
            )
        }
    }

    fn ke_iff_maximum_critical(&self, fam: &Families) -> Outcome {
        let ke = fam.alpha() + self.mu() == self.g.n();
        let non_critical = fam.omega.members().iter().find(|&&s| !fam.crit.contains(s)).copied();
        match (ke, non_critical) {
            (true, Some(s)) => fail("KE graph with a non-critical maximum independent set", vec![self.set(s)]),
            (false, None) => fail("non-KE graph whose maximum independent sets are all critical", Vec::new()),
            _ => Outcome::Pass,
        }
    }

    fn ker_core(&self, fam: &Families) -> Outcome {
        let (ker, core) = (self.ker_mask(fam), self.core_mask(fam));
        if ker & !core != 0 {
            return fail("ker not inside core", vec![self.set(ker), self.set(core)]);
        }
        if self.g.is_bipartite() && ker != core {
            return fail("bipartite graph with ker ≠ core", vec![self.set(ker), self.set(core)]);
        }
        Outcome::Pass
    }

    fn ker_shape(&self, fam: &Families) -> Outcome {
        let ker = self.ker_mask(fam);
        if !fam.crown.contains(ker) {
            return fail("ker is not a crown", vec![self.set(ker)]);
        }
        if self.g.isolated().is_empty() && ker.count_ones() == 1 {
            return fail("|ker| = 1 without isolated vertices", vec![self.set(ker)]);
        }
        Outcome::Pass
    }

    fn boundary_matching(&self, fam: &Families) -> Outcome {
        let ms = fam.crown.members();
        for (i, &a) in ms.iter().enumerate() {
            let na = fam.open(a);
            for &b in &ms[i + 1..] {
                let nb = fam.open(b);
                let (x, y) = (a & nb, b & na);
                if x.count_ones() != y.count_ones() || !saturates_mask(&fam.adj, y, x) {
                    return fail("no perfect matching between A ∩ N(B) and B ∩ N(A)", vec![self.set(a), self.set(b)]);
                }
            }
        }
        Outcome::Pass
    }

    fn crown_union(&self, fam: &Families) -> Outcome {
        let ms = fam.crown.members();
        for (i, &a) in ms.iter().enumerate() {
            for &b in &ms[i + 1..] {
                let u = a | b;
                if fam.ind.contains(u) && !fam.crown.contains(u) {
                    return fail("independent union of crowns is not a crown", vec![self.set(a), self.set(b)]);
                }
            }
        }
        Outcome::Pass
    }

    fn crown_subset_difference(&self, fam: &Families) -> Outcome {
        for &b in fam.crown.members() {
            let db = mask_difference(fam, b);
            let mut a = b;
            loop {
                if mask_difference(fam, a) > db {
                    return fail("subset of a crown with larger difference", vec![self.set(a), self.set(b)]);
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & b;
            }
        }
        Outcome::Pass
    }

    fn crown_closure_ke(&self, fam: &Families) -> Outcome {
        for &s in fam.crown.members() {
            let closed = fam.closed(s);
            let h = self.g.induced(&self.set(closed));
            let mu = matching_number(&h.graph);
            let a = alpha_of_mask(&fam.adj, closed);
            if a + mu != h.graph.n() {
                return fail("G[N[S]] is not KE for a crown S", vec![self.set(s)]);
            }
            let straight = s.count_ones() == (closed & !s).count_ones();
            if straight && 2 * mu != h.graph.n() {
                return fail("straight crown without a perfect matching on N[S]", vec![self.set(s)]);
            }
        }
        Outcome::Pass
    }

    fn alpha_split(&self, fam: &Families) -> Outcome {
        let all = full_mask(self.g.n());
        for &a in fam.crit.members() {
            let closed = fam.closed(a);
            let split = alpha_of_mask(&fam.adj, closed) + alpha_of_mask(&fam.adj, all & !closed);
            if split != fam.alpha() {
                return fail(format!("α = {} but split gives {split}", fam.alpha()), vec![self.set(a)]);
            }
        }
        Outcome::Pass
    }

    fn crown_augment_step(&self, fam: &Families) -> Outcome {
        let ms = fam.crown.members();
        for (i, &a) in ms.iter().enumerate() {
            let na = fam.closed(a);
            for &b in &ms[i..] {
                let nb = fam.closed(b);
                let (a1, b1) = (a | (b & !na), b | (a & !nb));
                if a1.count_ones() != b1.count_ones() || !fam.crown.contains(a1) || !fam.crown.contains(b1) {
                    return fail(
                        "augmentation step gave unequal sizes or a non-crown",
                        vec![self.set(a), self.set(b), self.set(a1), self.set(b1)],
                    );
                }
            }
        }
        Outcome::Pass
    }

    fn lmis_union(&self, fam: &Families) -> Outcome {
        let ms = fam.psi.members();
        for (i, &a) in ms.iter().enumerate() {
            for &b in &ms[i + 1..] {
                let u = a | b;
                if a & b == 0 && fam.ind.contains(u) && !fam.psi.contains(u) {
                    return fail("independent disjoint union of local maxima is not one", vec![self.set(a), self.set(b)]);
                }
            }
        }
        Outcome::Pass
    }

    fn lmis_augment(&self, fam: &Families) -> Outcome {
        let ms = fam.psi.members();
        for &s1 in ms {
            let n1 = fam.closed(s1);
            for &s2 in ms {
                if n1 & !fam.closed(s2) != 0 {
                    continue;
                }
                let out = s1 | (s2 & !n1);
                if !fam.psi.contains(out) || out.count_ones() != s2.count_ones() {
                    return fail("local maximum augmentation failed", vec![self.set(s1), self.set(s2), self.set(out)]);
                }
            }
        }
        Outcome::Pass
    }

    fn lmis_extends(&self, fam: &Families) -> Outcome {
        let Some(s2) = fam.omega.members().iter().map(|&m| self.set(m)).min() else {
            return fail("empty Ω", Vec::new());
        };
        let s2 = s2.to_mask();
        for &s in fam.psi.members() {
            let out = s | (s2 & !fam.closed(s));
            if !fam.omega.contains(out) {
                return fail("local maximum did not extend to a maximum independent set", vec![self.set(s), self.set(out)]);
            }
        }
        Outcome::Pass
    }

    fn crown_eq_psi_iff_closures_ke(&self, fam: &Families) -> Outcome {
        let eq = fam.crown.members() == fam.psi.members();
        let diags = self.diagnostics(fam);
        let all_ke = diags.iter().all(|d| d.konig_egervary);
        if eq != all_ke {
            let w = diags.iter().find(|d| !d.konig_egervary).map(|d| d.set.clone());
            return fail(format!("Crown = Ψ is {eq} but all closures KE is {all_ke}"), w.into_iter().collect());
        }
        if eq && self.is_ke() != Some(true) {
            return fail("Crown = Ψ in a non-KE graph", Vec::new());
        }
        Outcome::Pass
    }

    fn ke_pm_crit_eq_crown(&self, fam: &Families) -> Outcome {
        if self.is_ke() != Some(true) || !self.perfect_matching().exists() {
            return Outcome::Skip;
        }
        subfamily(&fam.crown, &fam.crit, "KE graph with perfect matching: crown not critical", |m| self.set(m))
    }

    fn crit_eq_psi_gives_pm(&self, fam: &Families) -> Outcome {
        if fam.crit.members() != fam.psi.members() {
            return Outcome::Skip;
        }
        expect(self.is_ke() == Some(true) && self.perfect_matching().exists(), || {
            "CritIndep = Ψ without KE and a perfect matching".into()
        })
    }

    fn all_equal_iff_closures_perfect(&self, fam: &Families) -> Outcome {
        let eq = fam.crit.members() == fam.crown.members() && fam.crown.members() == fam.psi.members();
        let diags = self.diagnostics(fam);
        let all = diags.iter().all(|d| d.konig_egervary && d.perfect_matching);
        if eq != all {
            let w = diags
                .iter()
                .find(|d| !(d.konig_egervary && d.perfect_matching))
                .map(|d| d.set.clone());
            return fail(format!("families equal is {eq} but closures KE with perfect matching is {all}"), w.into_iter().collect());
        }
        if eq && !(self.is_ke() == Some(true) && self.perfect_matching().exists()) {
            return fail("equal families without KE and a perfect matching", Vec::new());
        }
        Outcome::Pass
    }

    fn bipartite_crown_eq_psi(&self, fam: &Families) -> Outcome {
        if !self.g.is_bipartite() {
            return Outcome::Skip;
        }
        subfamily(&fam.psi, &fam.crown, "bipartite: local maximum that is not a crown", |m| self.set(m))
    }

    fn bipartite_crit_eq_psi(&self, fam: &Families) -> Outcome {
        if !self.g.is_bipartite() {
            return Outcome::Skip;
        }
        let eq = fam.crit.members() == fam.psi.members();
        let pm = self.perfect_matching().exists();
        expect(eq == pm, || format!("bipartite: CritIndep = Ψ is {eq}, perfect matching is {pm}"))
    }

    fn bipartite_greedoid(&self, fam: &Families) -> Outcome {
        if !self.g.is_bipartite() {
            return Outcome::Skip;
        }
        let v = fam.crit.greedoid();
        let unique = self.perfect_matching().is_unique();
        if v.holds == unique {
            return Outcome::Pass;
        }
        let sets = v.witness.map(|w| std::iter::once(w.first).chain(w.second).collect()).unwrap_or_default();
        fail(format!("bipartite: CritIndep greedoid is {}, unique perfect matching is {unique}", v.holds), sets)
    }

    fn triangle_free_greedoid(&self, fam: &Families) -> Outcome {
        if !self.g.is_triangle_free() || !self.perfect_matching().is_unique() {
            return Outcome::Skip;
        }
        let diags = self.diagnostics(fam);
        if !diags.iter().all(|d| d.konig_egervary && d.perfect_matching) {
            return Outcome::Skip;
        }
        axiom_outcome(fam.crit.greedoid(), "triangle-free sufficient condition but CritIndep not a greedoid")
    }

    fn very_well_covered(&self, fam: &Families) -> Outcome {
        match crate::independence::is_very_well_covered(self.g, &self.limits) {
            Ok(true) => {}
            _ => return Outcome::Skip,
        }
        let first = subfamily(&fam.psi, &fam.crown, "very well-covered: local maximum that is not a crown", |m| self.set(m));
        if first.is_fail() {
            return first;
        }
        for &s in fam.ind.members() {
            let straight = s.count_ones() == fam.open(s).count_ones();
            if straight != fam.psi.contains(s) {
                return fail("very well-covered: Ψ membership differs from |S| = |N(S)|", vec![self.set(s)]);
            }
        }
        Outcome::Pass
    }

    fn tree_equivalence(&self, fam: &Families) -> Outcome {
        if self.g.n() < 2 || !self.g.is_tree() {
            return Outcome::Skip;
        }
        let conditions = [
            fam.crit.members() == fam.crown.members(),
            fam.crit.members() == fam.psi.members(),
            fam.critical_difference() == 0,
            self.perfect_matching().exists(),
            fam.crit.greedoid().holds,
        ];
        expect(conditions.iter().all(|&c| c == conditions[0]), || {
            format!("tree conditions disagree: {conditions:?}")
        })
    }

    fn tree_greedoids(&self, fam: &Families) -> Outcome {
        if !self.g.is_tree() {
            return Outcome::Skip;
        }
        let psi = axiom_outcome(fam.psi.greedoid(), "tree: Ψ is not a greedoid");
        if psi.is_fail() {
            return psi;
        }
        axiom_outcome(fam.crown.greedoid(), "tree: Crown is not a greedoid")
    }

    fn axiom_implications(&self, fam: &Families) -> Outcome {
        for (name, f) in [("CritIndep", &fam.crit), ("Crown", &fam.crown), ("Ψ", &fam.psi)] {
            let greedoid = f.greedoid().holds;
            let aug = f.augmentation().holds;
            if greedoid && !aug {
                return fail(format!("{name}: greedoid but not augmentoid"), Vec::new());
            }
            if aug {
                let top = max_popcount(f);
                let tops: Vec<u64> = f.members().iter().copied().filter(|m| m.count_ones() as usize == top).collect();
                if let Some(&x) = f.members().iter().find(|&&x| !tops.iter().any(|&t| x & !t == 0)) {
                    return fail(format!("{name}: augmentoid member not inside a maximum member"), vec![self.set(x)]);
                }
            }
        }
        Outcome::Pass
    }

    fn matching_oracle(&self) -> Result<Outcome> {
        if self.g.n() > oracle::ORACLE_LIMIT {
            return Ok(Outcome::Skip);
        }
        let m = crate::matching::max_matching(self.g);
        if m.validate(self.g).is_err() {
            return Ok(fail("blossom returned an invalid matching", Vec::new()));
        }
        let brute = oracle::matching_number(self.g)?;
        Ok(expect(m.len() == brute, || format!("blossom μ = {}, exhaustive μ = {brute}", m.len())))
    }

    fn bipartite_matching_oracle(&self) -> Result<Outcome> {
        if self.g.n() > oracle::ORACLE_LIMIT {
            return Ok(Outcome::Skip);
        }
        let cover = DoubleCover::new(self.g);
        let (l, r) = (cover.left(), cover.right());
        let hk = max_bipartite_matching(&cover.graph, &l, &r);
        if hk.validate(&cover.graph).is_err() {
            return Ok(fail("Hopcroft–Karp returned an invalid matching", Vec::new()));
        }
        let hall = oracle::bipartite_matching_number(&cover.graph, &l, &r)?;
        if hk.len() != hall {
            return Ok(fail(format!("double cover: Hopcroft–Karp {} vs Hall {hall}", hk.len()), Vec::new()));
        }
        if let Some(fam) = self.families() {
            for &s in fam.crown.members().iter().chain(fam.ind.members().iter().take(64)) {
                let set = self.set(s);
                let ns = self.g.open_neighborhood(&set);
                let hk = max_bipartite_matching(self.g, &ns, &set).len();
                let hall = oracle::bipartite_matching_number(self.g, &ns, &set)?;
                if hk != hall {
                    return Ok(fail(format!("(N(S), S): Hopcroft–Karp {hk} vs Hall {hall}"), vec![set]));
                }
            }
        }
        Ok(Outcome::Pass)
    }

    fn perfect_matching_oracle(&self) -> Result<Outcome> {
        if self.g.n() > oracle::ORACLE_LIMIT {
            return Ok(Outcome::Skip);
        }
        let count = oracle::perfect_matching_count(self.g)?;
        let status = self.perfect_matching();
        let ok = match status {
            PerfectMatchingStatus::None => count == 0,
            PerfectMatchingStatus::Unique { matching } => count == 1 && matching.is_perfect() && matching.validate(self.g).is_ok(),
            PerfectMatchingStatus::Multiple { first, second } => {
                count >= 2 && first != second && first.is_perfect() && second.is_perfect()
            }
        };
        Ok(expect(ok, || format!("perfect matching status disagrees with count {count}")))
    }

    fn alpha_oracle(&self) -> Result<Outcome> {
        if self.g.n() > 16 {
            return Ok(Outcome::Skip);
        }
        let fast = alpha(self.g, &self.limits)?;
        let naive = alpha_naive(self.g)?;
        Ok(expect(fast == naive, || format!("branch and bound α = {fast}, naive α = {naive}")))
    }

    fn kernel_soundness(&self) -> Result<Outcome> {
        let Some(a) = self.alpha() else {
            return Ok(Outcome::Skip);
        };
        let tau = self.g.n() - a;
        let k = crown_reduce_vertex_cover(self.g, tau as i64)?;
        if k.status != KernelStatus::Reduced {
            return Ok(fail(format!("budget τ = {tau} reported infeasible"), Vec::new()));
        }
        let tau_kernel = k.kernel.n() - alpha(&k.kernel, &self.limits)?;
        let removed = k.removed_cover_size();
        if tau != tau_kernel + removed {
            return Ok(fail(format!("τ = {tau}, τ(kernel) = {tau_kernel}, removed {removed}"), Vec::new()));
        }
        if k.budget != tau_kernel as i64 {
            return Ok(fail(format!("remaining budget {} but τ(kernel) = {tau_kernel}", k.budget), Vec::new()));
        }
        if !max_crown(&k.kernel).set.is_empty() {
            return Ok(fail("kernel still has a non-empty crown", Vec::new()));
        }
        let mut covered = VertexSet::empty(self.g.n());
        for step in &k.steps {
            let closed = step.crown.union(&step.neighborhood);
            if !closed.is_disjoint(&covered) || !closed.is_disjoint(&step.remaining) {
                return Ok(fail("kernel steps overlap", vec![step.crown.clone(), step.neighborhood.clone()]));
            }
            covered.union_with(&closed);
        }
        if tau > 0 {
            let short = crown_reduce_vertex_cover(self.g, tau as i64 - 1)?;
            let claims_feasible = short.status == KernelStatus::Reduced
                && (short.kernel.n() - alpha(&short.kernel, &self.limits)?) as i64 <= short.budget;
            if claims_feasible {
                return Ok(fail(format!("budget τ - 1 = {} treated as feasible", tau - 1), Vec::new()));
            }
        }
        Ok(Outcome::Pass)
    }
}

fn subfamily(a: &MaskFamily, b: &MaskFamily, detail: &str, set: impl Fn(u64) -> VertexSet) -> Outcome {
    match a.members().iter().find(|&&m| !b.contains(m)) {
        Some(&m) => fail(detail, vec![set(m)]),
        None => Outcome::Pass,
    }
}

fn axiom_outcome(v: crate::set_systems::AxiomVerdict, detail: &str) -> Outcome {
    if v.holds {
        return Outcome::Pass;
    }
    let sets = v.witness.map(|w| std::iter::once(w.first).chain(w.second).collect()).unwrap_or_default();
    fail(detail, sets)
}

fn max_popcount(f: &MaskFamily) -> usize {
    f.members().iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
}

fn maximum_members(f: &MaskFamily) -> Vec<u64> {
    let top = max_popcount(f);
    f.members().iter().copied().filter(|m| m.count_ones() as usize == top).collect()
}

fn mask_difference(fam: &Families, s: u64) -> i64 {
    s.count_ones() as i64 - fam.open(s).count_ones() as i64
}

/// Pass/skip/fail counts for one check over a corpus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub passed: usize,
    pub skipped: usize,
    pub failed: usize,
}

/// Aggregated results over a corpus; merging is associative so workers can
/// tally independently.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub graphs: usize,
    pub checks: BTreeMap<Check, CheckCount>,
    /// The first failure in corpus order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<(usize, Counterexample)>,
}

impl Tally {
    /// Runs `checks` on graph number `index` of the corpus.
    pub fn record(&mut self, index: usize, g: &Graph, checks: &[Check], limits: Limits) -> Result<()> {
        let subject = Subject::new(g, limits);
        self.graphs += 1;
        for &c in checks {
            let entry = self.checks.entry(c).or_default();
            match subject.run(c)? {
                Outcome::Pass => entry.passed += 1,
                Outcome::Skip => entry.skipped += 1,
                Outcome::Fail(v) => {
                    entry.failed += 1;
                    let earlier = matches!(&self.first_failure, Some((i, _)) if *i <= index);
                    if !earlier {
                        self.first_failure = Some((index, Counterexample::new(c, g, v)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.graphs += other.graphs;
        for (c, n) in other.checks {
            let e = self.checks.entry(c).or_default();
            e.passed += n.passed;
            e.skipped += n.skipped;
            e.failed += n.failed;
        }
        self.first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }

    pub fn failures(&self) -> usize {
        self.checks.values().map(|c| c.failed).sum()
    }

    pub fn count(&self, c: Check) -> CheckCount {
        self.checks.get(&c).copied().unwrap_or_default()
    }
}

/// Runs `checks` on every graph, in parallel. The result does not depend
/// on the thread count.
pub fn verify_corpus(graphs: &[Graph], checks: &[Check], limits: Limits) -> Result<Tally> {
    graphs
        .par_iter()
        .enumerate()
        .try_fold(Tally::default, |mut t, (i, g)| t.record(i, g, checks, limits).map(|()| t))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

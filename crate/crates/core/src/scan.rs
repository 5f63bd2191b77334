//! Exhaustive scans that gather data on two open questions: which graphs
//! have `CritIndep(G) = Crown(G)`, and whether, for triangle-free graphs,
//! `CritIndep(G)` is a greedoid exactly when every `G[N[S]]` with
//! `S ∈ Ψ(G)` is KE with a unique perfect matching.
//!
//! Disagreements with the conjectured equivalence are findings. Violations
//! of the proven statements checked along the way are failures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{exhaustive, GraphClass};
use crate::error::{Error, Result};
use crate::lmis::{Families, FamilyRelationReport};
use crate::matching::perfect_matching_status;
use crate::theorems::{Check, Counterexample, Outcome, Subject};
use crate::{Graph, Limits};

/// Largest order accepted by [`scan`].
pub const SCAN_MAX_N: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanClass {
    #[default]
    All,
    TriangleFree,
    Bipartite,
}

impl ScanClass {
    fn graphs(self) -> GraphClass {
        match self {
            ScanClass::All => GraphClass::All,
            ScanClass::TriangleFree => GraphClass::TriangleFree,
            ScanClass::Bipartite => GraphClass::Bipartite,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphRecord {
    fn of(g: &Graph) -> Self {
        GraphRecord {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

/// A graph with `CritIndep(G) = Crown(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualFamilies {
    pub graph: GraphRecord,
    pub critical_difference: i64,
    pub perfect_matching: bool,
    pub crown_eq_psi: bool,
}

/// A triangle-free graph where the two sides of the conjectured
/// equivalence differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureDisagreement {
    pub graph: GraphRecord,
    pub crit_indep_greedoid: bool,
    pub closures_ke_with_unique_perfect_matching: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanCounts {
    pub graphs: usize,
    pub triangle_free: usize,
    pub crit_eq_crown: usize,
    pub crit_indep_greedoid: usize,
    pub closures_ke_with_unique_perfect_matching: usize,
    /// Graphs whose `Ψ(G)` is an augmentoid.
    pub psi_augmentoid: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub max_n: usize,
    pub class: ScanClass,
    pub counts: ScanCounts,
    /// List (a): every graph with `CritIndep(G) = Crown(G)`.
    pub crit_eq_crown: Vec<EqualFamilies>,
    /// List (b): triangle-free graphs where the conjecture's sides differ.
    pub conjecture_disagreements: Vec<ConjectureDisagreement>,
    /// Proven statements that failed; any entry is an implementation bug.
    pub failures: Vec<Counterexample>,
}

/// Proven statements re-checked on every scanned graph.
const SCAN_CHECKS: [Check; 4] = [
    Check::InclusionChain,
    Check::BipartiteGreedoidIffUnique,
    Check::TriangleFreeGreedoid,
    Check::AllEqualIffClosuresPerfect,
];

#[derive(Default)]
struct Partial {
    counts: ScanCounts,
    equal: Vec<(usize, EqualFamilies)>,
    disagreements: Vec<(usize, ConjectureDisagreement)>,
    failures: Vec<(usize, Counterexample)>,
}

impl Partial {
    fn merge(mut self, mut o: Partial) -> Partial {
        let c = &mut self.counts;
        c.graphs += o.counts.graphs;
        c.triangle_free += o.counts.triangle_free;
        c.crit_eq_crown += o.counts.crit_eq_crown;
        c.crit_indep_greedoid += o.counts.crit_indep_greedoid;
        c.closures_ke_with_unique_perfect_matching += o.counts.closures_ke_with_unique_perfect_matching;
        c.psi_augmentoid += o.counts.psi_augmentoid;
        self.equal.append(&mut o.equal);
        self.disagreements.append(&mut o.disagreements);
        self.failures.append(&mut o.failures);
        self
    }

    fn visit(&mut self, index: usize, g: &Graph, limits: &Limits) -> Result<()> {
        let fam = Families::compute(g, limits)?;
        let rel = FamilyRelationReport::from_families(g, &fam);
        self.counts.graphs += 1;
        let greedoid = rel.crit_indep_axioms.greedoid.holds;
        let rhs = rel.psi_closures_ke_with_unique_perfect_matching;
        self.counts.crit_indep_greedoid += usize::from(greedoid);
        self.counts.closures_ke_with_unique_perfect_matching += usize::from(rhs);
        self.counts.psi_augmentoid += usize::from(rel.psi_axioms.augmentoid.holds);
        if rel.crit_eq_crown {
            self.counts.crit_eq_crown += 1;
            let d = fam.critical_difference();
            if d != 0 {
                self.failures.push((
                    index,
                    Counterexample::new(
                        Check::InclusionChain,
                        g,
                        crate::theorems::Violation {
                            detail: format!("CritIndep = Crown with d = {d}"),
                            sets: Vec::new(),
                        },
                    ),
                ));
            }
            self.equal.push((
                index,
                EqualFamilies {
                    graph: GraphRecord::of(g),
                    critical_difference: d,
                    perfect_matching: perfect_matching_status(g).exists(),
                    crown_eq_psi: rel.crown_eq_psi,
                },
            ));
        }
        if g.is_triangle_free() {
            self.counts.triangle_free += 1;
            if greedoid != rhs {
                self.disagreements.push((
                    index,
                    ConjectureDisagreement {
                        graph: GraphRecord::of(g),
                        crit_indep_greedoid: greedoid,
                        closures_ke_with_unique_perfect_matching: rhs,
                    },
                ));
            }
        }
        let subject = Subject::new(g, *limits);
        for c in SCAN_CHECKS {
            if let Outcome::Fail(v) = subject.run(c)? {
                self.failures.push((index, Counterexample::new(c, g, v)));
            }
        }
        Ok(())
    }
}

/// Scans every graph of `class` on `1..=max_n` vertices.
pub fn scan(max_n: usize, class: ScanClass, limits: &Limits) -> Result<ScanReport> {
    if max_n > SCAN_MAX_N {
        return Err(Error::SizeLimit {
            operation: "scan",
            n: max_n,
            limit: SCAN_MAX_N,
        });
    }
    let graphs = exhaustive(max_n, class.graphs())?;
    let partial = graphs
        .par_iter()
        .enumerate()
        .try_fold(Partial::default, |mut p, (i, g)| p.visit(i, g, limits).map(|()| p))
        .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;
    fn sorted<T>(mut v: Vec<(usize, T)>) -> Vec<T> {
        v.sort_by_key(|(i, _)| *i);
        v.into_iter().map(|(_, x)| x).collect()
    }
    Ok(ScanReport {
        schema: crate::report::SCHEMA,
        max_n,
        class,
        counts: partial.counts,
        crit_eq_crown: sorted(partial.equal),
        conjecture_disagreements: sorted(partial.disagreements),
        failures: sorted(partial.failures),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GraphKind;

    fn record(k: GraphKind) -> GraphRecord {
        let g = k.generate().unwrap();
        GraphRecord::of(&crate::enumerate::canonical_form(&g).unwrap())
    }

    #[test]
    fn small_scan() {
        let r = scan(6, ScanClass::All, &Limits::default()).unwrap();
        assert_eq!(r.counts.graphs, 1 + 2 + 4 + 11 + 34 + 156);
        assert!(r.failures.is_empty());
        assert!(r.crit_eq_crown.iter().all(|e| e.critical_difference == 0));
        let listed: Vec<&GraphRecord> = r.crit_eq_crown.iter().map(|e| &e.graph).collect();
        assert!(listed.contains(&&record(GraphKind::Cycle(4))));
        assert!(listed.contains(&&record(GraphKind::Cycle(6))));
        assert!(!listed.contains(&&record(GraphKind::Path(3))));
    }

    #[test]
    fn rejects_large_orders() {
        assert!(scan(11, ScanClass::Bipartite, &Limits::default()).is_err());
    }
}

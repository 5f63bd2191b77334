//! Per-graph analysis reports, their text rendering, and a self-audit that
//! re-validates every set a serialized report lists.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::critical::{critical_difference, is_critical_independent, ker, max_critical_independent_set};
use crate::crowns::{is_crown, max_crown, CrownCertificate};
use crate::error::{Error, Result};
use crate::independence::{
    alpha, core, is_konig_egervary, is_very_well_covered, is_well_covered, max_independent_set,
};
use crate::lmis::{is_lmis, Families, FamilyRelationReport};
use crate::matching::{max_matching, perfect_matching_status, Matching, PerfectMatchingStatus};
use crate::set_systems::SetFamily;
use crate::theorems::{Check, Outcome, Subject};
use crate::{Graph, Limits, VertexSet};

pub const SCHEMA: u32 = 1;

/// Placeholder for a field whose computation exceeds a configured limit.
pub const SKIPPED: &str = "skipped(limit)";

/// A value, or [`SKIPPED`] when a size limit prevented computing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limited<T> {
    Value(T),
    Skipped,
}

impl<T> Limited<T> {
    /// Maps a size-limit error to `Skipped`; other errors propagate.
    pub fn from_result(r: Result<T>) -> Result<Self> {
        match r {
            Ok(v) => Ok(Limited::Value(v)),
            Err(Error::SizeLimit { .. }) => Ok(Limited::Skipped),
            Err(e) => Err(e),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Limited::Value(v) => Some(v),
            Limited::Skipped => None,
        }
    }
}

impl<T: Serialize> Serialize for Limited<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Limited::Value(v) => v.serialize(s),
            Limited::Skipped => s.serialize_str(SKIPPED),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Settings shared by every command. Thread count changes speed only, so
/// it is not serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub limits: Limits,
    pub seed: u64,
    pub random_count: usize,
    pub max_n: usize,
    pub format: OutputFormat,
    #[serde(skip)]
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            limits: Limits::default(),
            seed: 0,
            random_count: 0,
            max_n: 0,
            format: OutputFormat::Json,
            threads: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.limits.validate()?;
        if self.threads == 0 {
            return Err(Error::InvalidParameter("thread count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub connected: bool,
    pub bipartite: bool,
    pub triangle_free: bool,
    pub konig_egervary: Limited<bool>,
    pub well_covered: Limited<bool>,
    pub very_well_covered: Limited<bool>,
    pub perfect_matching: PerfectMatchingStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySection {
    pub independent_set_count: usize,
    pub omega: SetFamily,
    #[serde(flatten)]
    pub relations: FamilyRelationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckVerdict {
    pub check: Check,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sets: Vec<VertexSet>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub config: RunConfig,
    pub graph: GraphStats,
    pub critical_difference: i64,
    pub alpha: Limited<usize>,
    pub mu: usize,
    pub maximum_matching: Matching,
    pub maximum_independent_set: Limited<VertexSet>,
    pub core: Limited<VertexSet>,
    pub ker: Limited<VertexSet>,
    pub max_crown: CrownCertificate,
    pub max_critical_independent_set: VertexSet,
    pub families: Limited<FamilySection>,
    pub checks: Vec<CheckVerdict>,
}

impl AnalysisReport {
    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| c.outcome == "fail").count()
    }
}

pub fn analyze(g: &Graph, config: &RunConfig) -> Result<AnalysisReport> {
    config.validate()?;
    let limits = &config.limits;
    let matching = max_matching(g);
    let families = Limited::from_result(Families::compute(g, limits))?;
    let section = match &families {
        Limited::Value(f) => Limited::Value(FamilySection {
            independent_set_count: f.independent_sets().len(),
            omega: f.omega(),
            relations: FamilyRelationReport::from_families(g, f),
        }),
        Limited::Skipped => Limited::Skipped,
    };
    let ker = match &section {
        Limited::Value(s) => Limited::Value(s.relations.crit_indep.intersection()),
        Limited::Skipped => Limited::from_result(ker(g, limits))?,
    };
    let subject = Subject::new(g, *limits);
    let mut checks = Vec::with_capacity(Check::ALL.len());
    for c in Check::ALL {
        let (outcome, detail, sets) = match subject.run(c)? {
            Outcome::Pass => ("pass", None, Vec::new()),
            Outcome::Skip => ("skip", None, Vec::new()),
            Outcome::Fail(v) => ("fail", Some(v.detail), v.sets),
        };
        checks.push(CheckVerdict {
            check: c,
            outcome,
            detail,
            sets,
        });
    }
    Ok(AnalysisReport {
        schema: SCHEMA,
        config: config.clone(),
        graph: GraphStats {
            n: g.n(),
            m: g.m(),
            labels: g.labels().map(<[String]>::to_vec),
            connected: g.is_connected(),
            bipartite: g.is_bipartite(),
            triangle_free: g.is_triangle_free(),
            konig_egervary: Limited::from_result(is_konig_egervary(g, limits))?,
            well_covered: Limited::from_result(is_well_covered(g, limits))?,
            very_well_covered: Limited::from_result(is_very_well_covered(g, limits))?,
            perfect_matching: perfect_matching_status(g),
        },
        critical_difference: critical_difference(g),
        alpha: Limited::from_result(alpha(g, limits))?,
        mu: matching.len(),
        maximum_matching: matching,
        maximum_independent_set: Limited::from_result(max_independent_set(g, limits))?,
        core: Limited::from_result(core(g, limits))?,
        ker,
        max_crown: max_crown(g),
        max_critical_independent_set: max_critical_independent_set(g),
        families: section,
        checks,
    })
}

fn fmt_set(g: &Graph, s: &VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| g.label(v)).collect();
    format!("{{{}}}", items.join(","))
}

fn fmt_family(g: &Graph, f: &SetFamily) -> String {
    let items: Vec<String> = f.iter().map(|s| fmt_set(g, s)).collect();
    format!("{{{}}}", items.join(", "))
}

fn fmt_limited<T>(v: &Limited<T>, f: impl FnOnce(&T) -> String) -> String {
    v.value().map_or_else(|| SKIPPED.to_string(), f)
}

/// Human-readable rendering of the same data as the JSON form.
pub fn render_text(g: &Graph, r: &AnalysisReport) -> String {
    let mut out = String::new();
    let st = &r.graph;
    let pm = match &st.perfect_matching {
        PerfectMatchingStatus::None => "none",
        PerfectMatchingStatus::Unique { .. } => "unique",
        PerfectMatchingStatus::Multiple { .. } => "multiple",
    };
    let yes = |b: &bool| b.to_string();
    let _ = writeln!(out, "graph: n={} m={} connected={} bipartite={} triangle-free={}", st.n, st.m, st.connected, st.bipartite, st.triangle_free);
    let _ = writeln!(
        out,
        "KE={} well-covered={} very-well-covered={} perfect-matching={pm}",
        fmt_limited(&st.konig_egervary, yes),
        fmt_limited(&st.well_covered, yes),
        fmt_limited(&st.very_well_covered, yes),
    );
    let _ = writeln!(
        out,
        "d={} alpha={} mu={}",
        r.critical_difference,
        fmt_limited(&r.alpha, usize::to_string),
        r.mu
    );
    let _ = writeln!(out, "core={}", fmt_limited(&r.core, |s| fmt_set(g, s)));
    let _ = writeln!(out, "ker={}", fmt_limited(&r.ker, |s| fmt_set(g, s)));
    let _ = writeln!(out, "max crown={} N={}", fmt_set(g, &r.max_crown.set), fmt_set(g, &r.max_crown.neighborhood));
    let _ = writeln!(out, "max critical independent set={}", fmt_set(g, &r.max_critical_independent_set));
    match &r.families {
        Limited::Skipped => {
            let _ = writeln!(out, "families: {SKIPPED}");
        }
        Limited::Value(f) => {
            let rel = &f.relations;
            let _ = writeln!(out, "CritIndep ({})={}", rel.crit_indep.len(), fmt_family(g, &rel.crit_indep));
            let _ = writeln!(out, "Crown ({})={}", rel.crowns.len(), fmt_family(g, &rel.crowns));
            let _ = writeln!(out, "Psi ({})={}", rel.psi.len(), fmt_family(g, &rel.psi));
            let _ = writeln!(out, "Omega ({})={}", f.omega.len(), fmt_family(g, &f.omega));
            let _ = writeln!(
                out,
                "CritIndep=Crown {} Crown=Psi {} CritIndep=Psi {}",
                rel.crit_eq_crown, rel.crown_eq_psi, rel.crit_eq_psi
            );
            for (name, ax) in [("CritIndep", &rel.crit_indep_axioms), ("Crown", &rel.crown_axioms), ("Psi", &rel.psi_axioms)] {
                let _ = writeln!(out, "{name}: greedoid {} augmentoid {}", ax.greedoid.holds, ax.augmentoid.holds);
            }
        }
    }
    let (mut pass, mut skip) = (0, 0);
    for c in &r.checks {
        match c.outcome {
            "pass" => pass += 1,
            "skip" => skip += 1,
            _ => {
                let _ = writeln!(out, "FAIL {}: {}", c.check, c.detail.as_deref().unwrap_or(""));
            }
        }
    }
    let _ = writeln!(out, "checks: {pass} passed, {skip} skipped, {} failed", r.failed_checks());
    out
}

/// Outcome of re-validating a serialized report against its graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Audit {
    /// Number of sets and scalar fields re-checked.
    pub checked: usize,
    pub problems: Vec<String>,
}

impl Audit {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.problems.push(what());
        }
    }
}

fn is_skipped(v: &Value) -> bool {
    v.as_str() == Some(SKIPPED)
}

fn parse_set(g: &Graph, v: &Value) -> std::result::Result<VertexSet, String> {
    let s: VertexSet = serde_json::from_value(v.clone()).map_err(|e| format!("malformed set {v}: {e}"))?;
    s.with_ground_size(g.n()).ok_or_else(|| format!("set {v} leaves the vertex range"))
}

fn parse_family(g: &Graph, v: &Value) -> std::result::Result<Vec<VertexSet>, String> {
    v.as_array()
        .ok_or_else(|| format!("expected a family, got {v}"))?
        .iter()
        .map(|s| parse_set(g, s))
        .collect()
}

/// Re-ingests a JSON report and re-checks every listed set against its
/// defining predicate, plus the scalar fields against fresh computation.
pub fn audit(g: &Graph, report: &Value, limits: &Limits) -> Result<Audit> {
    let mut a = Audit::default();
    let field = |k: &str| report.get(k).cloned().unwrap_or(Value::Null);
    a.require(field("schema") == Value::from(SCHEMA), || format!("schema is {}", field("schema")));
    let stats = field("graph");
    a.require(stats.get("n") == Some(&Value::from(g.n())), || "graph.n differs".into());
    a.require(stats.get("m") == Some(&Value::from(g.m())), || "graph.m differs".into());

    let d = critical_difference(g);
    a.require(field("critical_difference") == Value::from(d), || format!("critical_difference should be {d}"));
    let mu = max_matching(g).len();
    a.require(field("mu") == Value::from(mu), || format!("mu should be {mu}"));
    match serde_json::from_value::<Vec<(usize, usize)>>(field("maximum_matching")) {
        Ok(edges) => {
            let valid = Matching::from_edges(g.n(), &edges).and_then(|m| m.validate(g).map(|()| m.len()));
            a.require(valid == Ok(mu), || "maximum_matching is not a maximum matching".into());
        }
        Err(e) => a.require(false, || format!("maximum_matching malformed: {e}")),
    }

    let alpha_value = field("alpha");
    let alpha_now = Limited::from_result(alpha(g, limits))?;
    if !is_skipped(&alpha_value) {
        a.require(alpha_now.value().map(|&x| Value::from(x)) == Some(alpha_value.clone()), || {
            format!("alpha {alpha_value} does not match")
        });
    }

    let check_set = |a: &mut Audit, key: &str, pred: &dyn Fn(&VertexSet) -> Result<bool>| -> Result<()> {
        let v = field(key);
        if is_skipped(&v) {
            return Ok(());
        }
        match parse_set(g, &v) {
            Ok(s) => {
                let ok = pred(&s)?;
                a.require(ok, || format!("{key} {s} fails its predicate"));
            }
            Err(e) => a.require(false, || format!("{key}: {e}")),
        }
        Ok(())
    };
    let alpha_n = alpha_now.value().copied();
    check_set(&mut a, "maximum_independent_set", &|s| Ok(g.is_independent(s) && Some(s.len()) == alpha_n))?;
    check_set(&mut a, "core", &|s| Ok(Limited::from_result(core(g, limits))?.value() == Some(s)))?;
    check_set(&mut a, "ker", &|s| Ok(Limited::from_result(ker(g, limits))?.value() == Some(s)))?;
    let top = max_critical_independent_set(g).len();
    check_set(&mut a, "max_critical_independent_set", &|s| Ok(is_critical_independent(g, s) && s.len() == top))?;
    match field("max_crown").get("set").map(|v| parse_set(g, v)) {
        Some(Ok(s)) => {
            let ok = is_crown(g, &s)?.is_crown() && s.len() == top;
            a.require(ok, || format!("max_crown {s} is not a maximum crown"));
        }
        other => a.require(false, || format!("max_crown.set malformed: {other:?}")),
    }

    let fam = field("families");
    if !is_skipped(&fam) {
        audit_families(g, &fam, limits, alpha_n, &mut a)?;
    }
    Ok(a)
}

fn audit_families(g: &Graph, fam: &Value, limits: &Limits, alpha_n: Option<usize>, a: &mut Audit) -> Result<()> {
    let fresh = Families::compute(g, limits)?;
    let lists: [(&str, SetFamily, &dyn Fn(&VertexSet) -> Result<bool>); 4] = [
        ("crit_indep", fresh.crit_indep(), &|s| Ok(is_critical_independent(g, s))),
        ("crowns", fresh.crowns(), &|s| Ok(is_crown(g, s)?.is_crown())),
        ("psi", fresh.psi(), &|s| is_lmis(g, s, limits)),
        ("omega", fresh.omega(), &|s| Ok(g.is_independent(s) && Some(s.len()) == alpha_n)),
    ];
    for (key, expected, pred) in lists {
        let sets = match fam.get(key).map(|v| parse_family(g, v)) {
            Some(Ok(sets)) => sets,
            other => {
                a.require(false, || format!("families.{key} malformed: {other:?}"));
                continue;
            }
        };
        for s in &sets {
            let ok = pred(s)?;
            a.require(ok, || format!("families.{key} member {s} fails its predicate"));
        }
        a.require(sets.len() == expected.len(), || {
            format!("families.{key} lists {} sets, expected {}", sets.len(), expected.len())
        });
    }
    let count = fam.get("independent_set_count").and_then(Value::as_u64);
    a.require(count == Some(fresh.independent_sets().len() as u64), || "independent_set_count differs".into());
    if let Some(diags) = fam.get("diagnostics").and_then(Value::as_array) {
        for d in diags {
            match d.get("set").map(|v| parse_set(g, v)) {
                Some(Ok(s)) => {
                    let ok = is_lmis(g, &s, limits)?;
                    a.require(ok, || format!("diagnostic set {s} is not in Psi"));
                }
                other => a.require(false, || format!("diagnostic set malformed: {other:?}")),
            }
        }
    }
    for (rel, first, second) in [
        ("crit_vs_crown", fresh.crit_indep(), fresh.crowns()),
        ("crown_vs_psi", fresh.crowns(), fresh.psi()),
        ("crit_vs_psi", fresh.crit_indep(), fresh.psi()),
    ] {
        let Some(r) = fam.get(rel) else {
            a.require(false, || format!("families.{rel} missing"));
            continue;
        };
        for (side, inside, outside) in [("only_in_first", &first, &second), ("only_in_second", &second, &first)] {
            if let Some(v) = r.get(side) {
                match parse_set(g, v) {
                    Ok(s) => a.require(inside.contains(&s) && !outside.contains(&s), || {
                        format!("families.{rel}.{side} {s} does not separate the families")
                    }),
                    Err(e) => a.require(false, || format!("families.{rel}.{side}: {e}")),
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GraphKind;

    fn json(r: &AnalysisReport) -> Value {
        serde_json::to_value(r).unwrap()
    }

    #[test]
    fn p3_report() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)])
            .unwrap()
            .with_labels(vec!["a".into(), "b".into(), "c".into()]);
        let r = analyze(&g, &RunConfig::default()).unwrap();
        let v = json(&r);
        assert_eq!(v["critical_difference"], 1);
        assert_eq!(v["families"]["crit_indep"], serde_json::json!([[0, 2]]));
        assert_eq!(v["families"]["crowns"].as_array().unwrap().len(), 4);
        assert_eq!(v["schema"], 1);
        assert_eq!(r.failed_checks(), 0);
        assert!(render_text(&g, &r).contains("CritIndep (1)={{a,c}}"));
    }

    #[test]
    fn c5_and_k1_reports() {
        let c5 = GraphKind::Cycle(5).generate().unwrap();
        let v = json(&analyze(&c5, &RunConfig::default()).unwrap());
        assert_eq!(v["critical_difference"], 0);
        assert_eq!(v["families"]["crowns"], serde_json::json!([[]]));
        assert_eq!(v["graph"]["konig_egervary"], false);

        let k1 = Graph::empty(1);
        let v = json(&analyze(&k1, &RunConfig::default()).unwrap());
        assert_eq!(v["families"]["crit_indep"], serde_json::json!([[0]]));
        assert!(v["families"]["psi"].as_array().unwrap().contains(&serde_json::json!([])));
    }

    #[test]
    fn limits_mark_skipped_fields() {
        let g = GraphKind::Cycle(30).generate().unwrap();
        let config = RunConfig::default();
        let r = analyze(&g, &config).unwrap();
        let v = json(&r);
        assert_eq!(v["families"], SKIPPED);
        assert_eq!(v["well_covered"], Value::Null);
        assert_eq!(v["graph"]["well_covered"], SKIPPED);
        assert_eq!(v["alpha"], 15);
        assert!(audit(&g, &v, &config.limits).unwrap().ok());
    }

    #[test]
    fn deterministic_and_self_auditing() {
        let g = GraphKind::Corona(Box::new(GraphKind::Cycle(4).generate().unwrap()), Box::new(Graph::empty(1)))
            .generate()
            .unwrap();
        let config = RunConfig::default();
        let a = serde_json::to_string(&analyze(&g, &config).unwrap()).unwrap();
        let b = serde_json::to_string(&analyze(&g, &config).unwrap()).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        let audit_result = audit(&g, &v, &config.limits).unwrap();
        assert!(audit_result.ok(), "{:?}", audit_result.problems);
        assert!(audit_result.checked > 20);
    }

    #[test]
    fn audit_catches_tampering() {
        let g = GraphKind::Path(4).generate().unwrap();
        let config = RunConfig::default();
        let mut v = json(&analyze(&g, &config).unwrap());
        v["families"]["crowns"].as_array_mut().unwrap().push(serde_json::json!([1, 2]));
        v["core"] = serde_json::json!([0]);
        let a = audit(&g, &v, &config.limits).unwrap();
        assert!(a.problems.iter().any(|p| p.contains("crowns member {1,2}")));
        assert!(a.problems.iter().any(|p| p.starts_with("core")));
        assert!(a.problems.iter().any(|p| p.contains("lists 4 sets") || p.contains("lists")));
    }
}

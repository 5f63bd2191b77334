//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use critsets::critical::{critical_difference, is_critical_independent, max_critical_independent_set};
use critsets::crowns::{
    boundary_matching, crown_augment, crown_reduce_vertex_cover, extend_to_max_crown, is_crown, max_crown,
    KernelStatus,
};
use critsets::enumerate::{exhaustive, for_each_exhaustive, GraphClass, RandomCorpus};
use critsets::independence::{is_konig_egervary, is_very_well_covered, omega_sets};
use critsets::lmis::Families;
use critsets::matching::{max_matching, perfect_matching_status};
use critsets::oracle;
use critsets::scan::{scan, ScanClass};
use critsets::set_systems::SetFamily;
use critsets::theorems::{verify_corpus, Check, Tally};
use critsets::{Graph, GraphKind, Limits, VertexSet};

const SEED: u64 = 20_240_601;

struct Line {
    passed: bool,
    note: String,
}

fn line(passed: bool, note: impl Into<String>) -> Line {
    Line {
        passed,
        note: note.into(),
    }
}

struct Corpora {
    connected7: Vec<Graph>,
    random12: Vec<Graph>,
    all9: Vec<Graph>,
}

fn tally(graphs: &[Graph], checks: &[Check]) -> Tally {
    verify_corpus(graphs, checks, Limits::default()).expect("checks run within limits")
}

fn failures(t: &Tally, checks: &[Check]) -> String {
    let mut parts: Vec<String> = checks
        .iter()
        .map(|&c| {
            let n = t.count(c);
            format!("{c} {}/{}/{}", n.passed, n.skipped, n.failed)
        })
        .collect();
    if let Some((_, cx)) = &t.first_failure {
        parts.push(format!("first failure {}: {} on {:?}", cx.check, cx.detail, cx.edges));
    }
    parts.join(", ")
}

fn criterion_1(c: &Corpora, started: Instant) -> Line {
    let checks = [Check::InclusionChain];
    let a = tally(&c.connected7, &checks);
    let b = tally(&c.random12, &checks);
    let elapsed = started.elapsed();
    let ok = a.failures() == 0
        && b.failures() == 0
        && a.count(Check::InclusionChain).passed == c.connected7.len()
        && b.count(Check::InclusionChain).passed == c.random12.len()
        && elapsed < Duration::from_secs(60);
    line(
        ok,
        format!(
            "CritIndep ⊆ Crown ⊆ Ψ on {} connected graphs n <= 7 and {} random graphs n <= 12: {} violations, {:.1} s (limit 60 s)",
            c.connected7.len(),
            c.random12.len(),
            a.failures() + b.failures(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2(c: &Corpora) -> Line {
    let mut graphs: Vec<Graph> = c.connected7.iter().chain(&c.random12).filter(|g| g.n() <= 10).cloned().collect();
    let from_corpora = graphs.len();
    graphs.extend(c.all9.iter().cloned());
    let checks = [Check::ZhangIdentity];
    let t = tally(&graphs, &checks);
    let ok = t.failures() == 0 && t.count(Check::ZhangIdentity).passed == graphs.len();
    line(
        ok,
        format!(
            "double-cover d(G) = max d over Ind = max d over all subsets on {from_corpora} corpus graphs n <= 10 plus all {} graphs n <= 9: {}",
            c.all9.len(),
            failures(&t, &checks)
        ),
    )
}

fn criterion_3(c: &Corpora) -> Line {
    let checks = [Check::MaxCritEqMaxCrown, Check::MaxCrownsAgree, Check::MaxCriticalExtraction];
    let t = tally(&c.all9, &checks);
    let ok = t.failures() == 0 && checks.iter().all(|&k| t.count(k).passed == c.all9.len());
    line(ok, format!("all {} graphs n <= 9: {}", c.all9.len(), failures(&t, &checks)))
}

fn criterion_4(c: &Corpora) -> Line {
    let graphs: Vec<Graph> = c.connected7.iter().chain(&c.random12).chain(&c.all9).cloned().collect();
    let checks = [Check::KeDifference, Check::KeIffMaximumCritical];
    let t = tally(&graphs, &checks);
    let ke = t.count(Check::KeDifference).passed;
    let ok = t.failures() == 0
        && ke > 0
        && ke < graphs.len()
        && t.count(Check::KeIffMaximumCritical).passed == graphs.len();
    line(
        ok,
        format!("{} graphs, {ke} of them KE: {}", graphs.len(), failures(&t, &checks)),
    )
}

fn criterion_5() -> Line {
    let graphs = exhaustive(9, GraphClass::ConnectedBipartite).expect("n <= 9");
    let checks = [
        Check::BipartiteCrownEqPsi,
        Check::BipartiteCritEqPsiIffPerfect,
        Check::BipartiteGreedoidIffUnique,
    ];
    let t = tally(&graphs, &checks);
    let (mut perfect, mut unique) = (0, 0);
    for g in &graphs {
        let s = perfect_matching_status(g);
        perfect += usize::from(s.exists());
        unique += usize::from(s.is_unique());
    }
    // both sides of each equivalence must be exercised
    let ok = t.failures() == 0
        && checks.iter().all(|&k| t.count(k).passed == graphs.len())
        && perfect > 0
        && perfect < graphs.len()
        && unique > 0
        && unique < graphs.len();
    line(
        ok,
        format!(
            "{} connected bipartite graphs n <= 9 ({perfect} with a perfect matching, {unique} unique): {}",
            graphs.len(),
            failures(&t, &checks)
        ),
    )
}

fn criterion_6(c: &Corpora) -> Line {
    let checks = [Check::CrownAugmentoid, Check::CritAugmentoid, Check::CrownAugmentStep];
    let t = tally(&c.all9, &checks);
    let ok = t.failures() == 0 && checks.iter().all(|&k| t.count(k).passed == c.all9.len());
    line(ok, format!("all {} graphs n <= 9: {}", c.all9.len(), failures(&t, &checks)))
}

fn criterion_7() -> Line {
    let started = Instant::now();
    let graphs = RandomCorpus {
        count: 300,
        min_n: 1,
        max_n: 14,
        seed: SEED,
    }
    .generate()
    .expect("valid corpus");
    let checks = [Check::KernelSoundness];
    let t = tally(&graphs, &checks);
    let reduced: usize = graphs
        .iter()
        .map(|g| crown_reduce_vertex_cover(g, g.n() as i64).expect("k >= 0").steps.len())
        .filter(|&s| s > 0)
        .count();
    let elapsed = started.elapsed();
    let ok = t.failures() == 0
        && t.count(Check::KernelSoundness).passed == graphs.len()
        && elapsed < Duration::from_secs(120);
    line(
        ok,
        format!(
            "τ(G) = τ(kernel) + Σ|N(S_i)| on 300 random graphs n <= 14 ({reduced} with at least one crown removed): {}, {:.1} s (limit 120 s)",
            failures(&t, &checks),
            elapsed.as_secs_f64()
        ),
    )
}

fn family(n: usize, sets: &[&[usize]]) -> SetFamily {
    SetFamily::new(n, sets.iter().map(|s| VertexSet::from_iter_n(n, s.iter().copied())))
}

fn criterion_8() -> Line {
    let limits = Limits::default();
    let mut facts: Vec<(&str, bool)> = Vec::new();
    let gen = |k: GraphKind| k.generate().expect("valid fixture");
    let fams = |g: &Graph| Families::compute(g, &limits).expect("small fixture");

    // P3 = a - b - c
    let p3 = gen(GraphKind::Path(3));
    let f = fams(&p3);
    facts.push(("P3: CritIndep = {{a,c}}", f.crit_indep() == family(3, &[&[0, 2]])));
    facts.push((
        "P3: Crown = {∅,{a},{c},{a,c}}",
        f.crowns() == family(3, &[&[], &[0], &[2], &[0, 2]]),
    ));
    facts.push(("P3: Crown = Ψ", f.crowns() == f.psi()));
    facts.push(("P3: d = 1", critical_difference(&p3) == 1));
    facts.push(("P3: {a} not critical", !is_critical_independent(&p3, &p3.set([0]))));
    let cert = is_crown(&p3, &p3.set([0])).expect("fixture").into_certificate();
    facts.push((
        "P3: {a} is a crown matched by b-a",
        cert.is_some_and(|c| c.matching.edges() == vec![(0, 1)]),
    ));

    for n in [5, 7] {
        let c = gen(GraphKind::Cycle(n));
        let f = fams(&c);
        let mut omega_and_empty: Vec<VertexSet> = omega_sets(&c, &limits).expect("fixture").iter().cloned().collect();
        omega_and_empty.push(c.empty_set());
        let omega_and_empty = SetFamily::new(n, omega_and_empty);
        facts.push(("odd cycle: CritIndep = Crown = {∅}", f.crit_indep() == family(n, &[&[]]) && f.crowns() == family(n, &[&[]])));
        facts.push(("odd cycle: Ψ = Ω ∪ {∅}", f.psi() == omega_and_empty));
        facts.push(("odd cycle: not KE", !is_konig_egervary(&c, &limits).expect("fixture")));
        facts.push(("odd cycle: max crown = max critical set = ∅", max_crown(&c).set.is_empty() && max_critical_independent_set(&c).is_empty()));
        let k = crown_reduce_vertex_cover(&c, 3).expect("k >= 0");
        facts.push(("odd cycle: kernel unchanged", k.steps.is_empty() && k.kernel == c && k.budget == 3));
    }
    for n in [4, 6, 8] {
        let c = gen(GraphKind::Cycle(n));
        let f = fams(&c);
        facts.push(("even cycle: CritIndep = Crown = Ψ", f.crit_indep() == f.crowns() && f.crowns() == f.psi()));
        let mut omega_and_empty: Vec<VertexSet> = f.omega().iter().cloned().collect();
        omega_and_empty.push(c.empty_set());
        facts.push(("even cycle: CritIndep = Ω ∪ {∅}", f.crit_indep() == SetFamily::new(n, omega_and_empty)));
        facts.push(("even cycle: max critical set is maximum independent", max_critical_independent_set(&c).len() == n / 2));
    }

    for n in [2, 3, 5] {
        let star = gen(GraphKind::Star(n));
        let leaves = star.set(0..n);
        facts.push(("K_{n,1}: d(A) = n - 1", star.difference(&leaves) == n as i64 - 1 && critical_difference(&star) == n as i64 - 1));
        let proper_ok = leaves.subsets_by_size().into_iter().filter(|s| !s.is_empty() && s.len() < n).all(|s| {
            is_crown(&star, &s).expect("fixture").is_crown()
                && !is_critical_independent(&star, &s)
                && star.difference(&s) == s.len() as i64 - 1
        });
        facts.push(("K_{n,1}: proper leaf subsets are crowns, not critical", proper_ok));
        facts.push(("K_{n,1}: A is the maximum critical set and maximum crown", max_critical_independent_set(&star) == leaves && max_crown(&star).set == leaves));
        facts.push((
            "K_{n,1}: one leaf extends to A",
            extend_to_max_crown(&star, &star.set([0])).is_ok_and(|s| s == leaves),
        ));
    }
    let star = gen(GraphKind::Star(5));
    let k = crown_reduce_vertex_cover(&star, 1).expect("k >= 0");
    facts.push(("star(5), k = 1: empty kernel", k.kernel.n() == 0 && k.status == KernelStatus::Reduced));

    // P5 = v1 - v2 - v3 - v4 - v5 on 0..5
    let p5 = gen(GraphKind::Path(5));
    let (a, b) = (p5.set([0, 2]), p5.set([2, 4]));
    let crown = |s: &VertexSet| is_crown(&p5, s).expect("fixture").is_crown();
    facts.push(("P5: {v1,v3}, {v3,v5} are crowns", crown(&a) && crown(&b)));
    facts.push(("P5: {v3} = {v1,v3} ∩ {v3,v5} is not a crown", !crown(&a.intersection(&b))));
    facts.push((
        "P5: crown augmentation gives {v1,v3,v5} twice",
        crown_augment(&p5, &a, &b).is_ok_and(|(x, y)| x == p5.set([0, 2, 4]) && y == x),
    ));
    facts.push(("P5: boundary matching is empty", boundary_matching(&p5, &a, &b).is_ok_and(|m| m.is_empty())));

    let k1 = Graph::empty(1);
    let f = fams(&k1);
    facts.push(("K1: ∅ ∈ Ψ - CritIndep", f.psi().contains(&k1.empty_set()) && !f.crit_indep().contains(&k1.empty_set())));
    facts.push(("K1: tree with CritIndep ≠ Ψ", k1.is_tree() && f.crit_indep() != f.psi()));

    let k3 = gen(GraphKind::Complete(3));
    let corona = gen(GraphKind::Corona(Box::new(k3), Box::new(Graph::empty(1))));
    let f = fams(&corona);
    facts.push(("K3 ∘ K1: very well-covered with Crown = Ψ", is_very_well_covered(&corona, &limits).expect("fixture") && f.crowns() == f.psi()));
    let p3k = crown_reduce_vertex_cover(&p3, 0).expect("k >= 0");
    facts.push(("P3, k = 0: infeasible", p3k.status == KernelStatus::Infeasible));

    let failed: Vec<&str> = facts.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    let note = if failed.is_empty() {
        format!("{} textual examples reproduced", facts.len())
    } else {
        format!("{} of {} examples wrong: {}", failed.len(), facts.len(), failed.join("; "))
    };
    line(failed.is_empty(), note)
}

fn criterion_9() -> Line {
    let trees: Vec<Graph> = exhaustive(9, GraphClass::Tree).expect("n <= 9").into_iter().filter(|t| t.n() >= 2).collect();
    let checks = [Check::TreeEquivalence, Check::TreeGreedoids];
    let t = tally(&trees, &checks);
    let all_true = trees.iter().filter(|g| perfect_matching_status(g).exists()).count();
    let ok = t.failures() == 0
        && checks.iter().all(|&k| t.count(k).passed == trees.len())
        && all_true > 0
        && all_true < trees.len();
    line(
        ok,
        format!(
            "{} trees 2 <= n <= 9 ({all_true} with all five conditions true, {} with all false): {}",
            trees.len(),
            trees.len() - all_true,
            failures(&t, &checks)
        ),
    )
}

fn criterion_10(c: &Corpora) -> Line {
    let mut graphs = 0usize;
    let mut bad: Option<Vec<(usize, usize)>> = None;
    for_each_exhaustive(10, GraphClass::All, |g| {
        graphs += 1;
        let m = max_matching(&g);
        let ok = m.validate(&g).is_ok() && Some(m.len()) == oracle::matching_number(&g).ok();
        if !ok && bad.is_none() {
            bad = Some(g.edges().collect());
        }
    })
    .expect("n <= 10");
    let bipartite_corpus: Vec<Graph> = c.random12.iter().chain(&c.connected7).cloned().collect();
    let checks = [Check::BipartiteMatchingOracle];
    let t = tally(&bipartite_corpus, &checks);
    let ok = bad.is_none() && t.failures() == 0 && t.count(Check::BipartiteMatchingOracle).passed == bipartite_corpus.len();
    line(
        ok,
        format!(
            "blossom = exhaustive μ on all {graphs} graphs n <= 10{}; Hopcroft–Karp = Hall formula on double covers and crown instances of {} graphs n <= 12: {}",
            bad.map(|e| format!(" (mismatch on {e:?})")).unwrap_or_default(),
            bipartite_corpus.len(),
            failures(&t, &checks)
        ),
    )
}

fn criterion_11() -> Line {
    let r = scan(8, ScanClass::TriangleFree, &Limits::default()).expect("n <= 8");
    let mut note = format!(
        "{} triangle-free graphs n <= 8; {} with CritIndep greedoid, {} with every G[N[S]] KE with a unique perfect matching; {} known-theorem failures; {} conjecture disagreements logged as findings",
        r.counts.graphs,
        r.counts.crit_indep_greedoid,
        r.counts.closures_ke_with_unique_perfect_matching,
        r.failures.len(),
        r.conjecture_disagreements.len()
    );
    if let Some(first) = r.conjecture_disagreements.first() {
        note.push_str(&format!(
            " (smallest: n = {} edges {:?}, greedoid {}, closure condition {})",
            first.graph.n, first.graph.edges, first.crit_indep_greedoid, first.closures_ke_with_unique_perfect_matching
        ));
    }
    line(r.failures.is_empty(), note)
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpora = Corpora {
        connected7: exhaustive(7, GraphClass::Connected).expect("n <= 7"),
        random12: RandomCorpus {
            count: 500,
            min_n: 1,
            max_n: 12,
            seed: SEED,
        }
        .generate()
        .expect("valid corpus"),
        all9: Vec::new(),
    };
    let mut results: Vec<(u8, &str, Line, Duration)> = Vec::new();
    let first = criterion_1(&corpora, started);
    results.push((1, "inclusion chain", first, started.elapsed()));

    let t = Instant::now();
    let corpora = Corpora {
        all9: exhaustive(9, GraphClass::All).expect("n <= 9"),
        ..corpora
    };
    let setup = t.elapsed();

    type Run<'a> = Box<dyn Fn() -> Line + 'a>;
    let c = &corpora;
    let runs: Vec<(u8, &str, Run)> = vec![
        (2, "critical difference identity", Box::new(|| criterion_2(c))),
        (3, "maximum critical sets and maximum crowns", Box::new(|| criterion_3(c))),
        (4, "König–Egerváry suite", Box::new(|| criterion_4(c))),
        (5, "bipartite suite", Box::new(criterion_5)),
        (6, "augmentoid suite", Box::new(|| criterion_6(c))),
        (7, "kernelizer soundness", Box::new(criterion_7)),
        (8, "textual examples", Box::new(criterion_8)),
        (9, "tree equivalences", Box::new(criterion_9)),
        (10, "matching oracles", Box::new(|| criterion_10(c))),
        (11, "conjecture scan", Box::new(criterion_11)),
    ];
    for (id, name, run) in runs {
        let t = Instant::now();
        let l = run();
        results.push((id, name, l, t.elapsed()));
    }

    println!();
    println!("acceptance ({} graphs n <= 9 generated in {:.1} s)", corpora.all9.len(), setup.as_secs_f64());
    let mut all = true;
    for (id, name, l, elapsed) in &results {
        all &= l.passed;
        println!(
            "criterion {id:>2} {} {name}: {} [{:.1} s]",
            if l.passed { "PASS" } else { "FAIL" },
            l.note,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "FAILURES" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
